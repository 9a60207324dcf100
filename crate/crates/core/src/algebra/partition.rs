//! Integer partitions labelling monomials c_{-k1}…c_{-ks}.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Nonincreasing list of positive parts with cached level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
    level: u32,
}

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let level = parts.iter().sum();
        Partition { parts, level }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), level: 0 }
    }

    pub fn single(n: u32) -> Self {
        Partition::new(vec![n])
    }

    /// From multiplicities: `mult[m-1]` copies of part m.
    pub fn from_multiplicities(mult: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (i, &k) in mult.iter().enumerate() {
            parts.extend(std::iter::repeat(i as u32 + 1).take(k as usize));
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, m: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == m).count() as u32
    }

    /// Pairs (part, multiplicity) in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Union of parts (product of monomials).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// True when every part is odd.
    pub fn all_odd(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1)
    }
}

impl From<Vec<u32>> for Partition {
    fn from(v: Vec<u32>) -> Self {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Ord for Partition {
    /// By level, then reverse lexicographic on parts (so `[2] < [1,1]`).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.level.cmp(&other.level).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, k) in self.multiplicities() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "c-{p}")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

/// All partitions of `n`, largest parts first: 4; 3+1; 2+2; 2+1+1; 1+1+1+1.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::new(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// Coefficient of q^n in ∏(1−q^k)⁻¹.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            c[m] += c[m - k];
        }
    }
    c[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four: Vec<Vec<u32>> = enumerate_partitions(4).into_iter().map(Vec::from).collect();
        assert_eq!(four, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(enumerate_partitions(6).len(), 11);
    }

    #[test]
    fn counts_match_generating_function() {
        let known = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &k) in known.iter().enumerate() {
            assert_eq!(partition_count(n as u32), k);
            assert_eq!(enumerate_partitions(n as u32).len() as u64, k);
        }
    }

    #[test]
    fn ordering_follows_enumeration() {
        let ps = enumerate_partitions(5);
        let mut sorted = ps.clone();
        sorted.sort();
        assert_eq!(ps, sorted);
    }

    #[test]
    fn multiplicities_roundtrip() {
        let p = Partition::new(vec![1, 3, 1, 2]);
        assert_eq!(p.parts(), &[3, 2, 1, 1]);
        assert_eq!(p.multiplicities(), vec![(3, 1), (2, 1), (1, 2)]);
        assert_eq!(Partition::from_multiplicities(&[2, 1, 1]), p);
        assert_eq!(p.to_string(), "c-3*c-2*c-1^2");
    }
}
