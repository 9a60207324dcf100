//! Subset-sum kernel over all splittings X = X₋ ∪ X₊.
//!
//! A depth-first walk over the binary decision tree decides element k into X₋ or X₊. Each depth
//! carries the kernel product so far, running power sums of both halves, and for every undecided
//! element m the partial products
//!   a[m] = Π_{j ∈ X₊ decided} f(x_m/x_j)   (paid if m goes to X₋),
//!   b[m] = Π_{i ∈ X₋ decided} f(x_i/x_m)   (paid if m goes to X₊),
//! so every node costs O(N) multiplications and no division by a kernel value ever occurs.
//! The output is bucketed by #X₋, so one walk serves every value of a.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{DescendantElement, Partition};
use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::special::kernel::{check_argument, f_value};

/// Top levels split into independent subtrees once N reaches this size.
const PARALLEL_MIN_N: usize = 12;
const PARALLEL_DEPTH: usize = 6;

/// Monomials of an element reduced to the power-sum orders they need.
#[derive(Clone, Debug)]
pub struct CompiledElement {
    /// Distinct orders r ≠ 0 whose power sums are tracked (chiral r > 0, antichiral r < 0).
    pub orders: Vec<i32>,
    /// Per term: (order index, exponent) factors; the P-factor for order r is built from both halves.
    pub terms: Vec<Vec<(usize, u32)>>,
    pub keys: Vec<(Partition, Partition)>,
}

impl CompiledElement {
    pub fn new(g: &DescendantElement) -> Self {
        let mut orders: Vec<i32> = Vec::new();
        let mut terms = Vec::new();
        let mut keys = Vec::new();
        for ((c, a), _) in g.terms() {
            let mut fac = Vec::new();
            for (m, k) in c.multiplicities() {
                fac.push((order_index(&mut orders, m as i32), k));
            }
            for (m, k) in a.multiplicities() {
                fac.push((order_index(&mut orders, -(m as i32)), k));
            }
            terms.push(fac);
            keys.push((c.clone(), a.clone()));
        }
        CompiledElement { orders, terms, keys }
    }

    /// Compiled form of a bare list of monomials.
    pub fn from_monomials(monos: &[(Partition, Partition)]) -> Self {
        let mut g = DescendantElement::zero();
        for (c, a) in monos {
            g = g.add(&DescendantElement::monomial(c.clone(), a.clone(), Complex64::new(1.0, 0.0))).expect("numeric");
        }
        // keep the caller's order
        let base = CompiledElement::new(&g);
        let mut terms = Vec::new();
        for m in monos {
            let idx = base.keys.iter().position(|k| k == m).expect("monomial present");
            terms.push(base.terms[idx].clone());
        }
        CompiledElement { orders: base.orders, terms, keys: monos.to_vec() }
    }

    pub fn needs_inverse(&self) -> bool {
        self.orders.iter().any(|&r| r < 0)
    }
}

fn order_index(orders: &mut Vec<i32>, r: i32) -> usize {
    match orders.iter().position(|&o| o == r) {
        Some(i) => i,
        None => {
            orders.push(r);
            orders.len() - 1
        }
    }
}

/// buckets[k][t] = Σ_{#X₋ = k} P^{term t}(X₋|X₊) Π f(x_i/x_j); `abs` holds the matching sums of moduli.
#[derive(Clone, Debug)]
pub struct Buckets<S> {
    pub values: Vec<Vec<S>>,
    pub abs: Vec<Vec<f64>>,
}

impl<S: Scalar> Buckets<S> {
    fn zeros(n: usize, terms: usize) -> Self {
        Buckets { values: vec![vec![S::zero(); terms]; n + 1], abs: vec![vec![0.0; terms]; n + 1] }
    }

    fn merge(mut self, o: Buckets<S>) -> Self {
        for (row, orow) in self.values.iter_mut().zip(o.values) {
            for (v, w) in row.iter_mut().zip(orow) {
                *v = v.clone() + w;
            }
        }
        for (row, orow) in self.abs.iter_mut().zip(o.abs) {
            for (v, w) in row.iter_mut().zip(orow) {
                *v += w;
            }
        }
        self
    }
}

/// Checks the points are nonzero and no ratio hits ±1.
pub fn check_points(xs: &[Complex64]) -> Result<()> {
    for (i, x) in xs.iter().enumerate() {
        if x.norm() == 0.0 || !x.is_finite() {
            return Err(Error::Domain(format!("point x_{i} = {x} must be finite and nonzero")));
        }
    }
    for i in 0..xs.len() {
        for j in 0..xs.len() {
            if i != j {
                check_argument(xs[i] / xs[j]).map_err(|_| {
                    Error::Pole(format!(
                        "x_{i}/x_{j} = {} is ±1: coincident points are regular only as limits, opposite points (x_j = −x_i) are the kinematic pole; use residue_kinematic",
                        xs[i] / xs[j]
                    ))
                })?;
            }
        }
    }
    Ok(())
}

#[derive(Clone)]
struct Frame<S> {
    prod: S,
    minus: usize,
    sm: Vec<S>,
    sp: Vec<S>,
    a: Vec<S>,
    b: Vec<S>,
}

struct Walk<'a, S> {
    n: usize,
    f: &'a [Vec<S>],
    pow: &'a [Vec<S>],
    orders: &'a [i32],
    terms: &'a [Vec<(usize, u32)>],
}

impl<'a, S: Scalar> Walk<'a, S> {
    fn root(&self) -> Frame<S> {
        let no = self.orders.len();
        Frame {
            prod: S::one(),
            minus: 0,
            sm: vec![S::zero(); no],
            sp: vec![S::zero(); no],
            a: vec![S::one(); self.n],
            b: vec![S::one(); self.n],
        }
    }

    /// Child of `fr` at depth `k` with element k sent to X₋ (`minus`) or X₊.
    fn step(&self, fr: &Frame<S>, k: usize, minus: bool, out: &mut Frame<S>) {
        out.minus = fr.minus + minus as usize;
        for o in 0..self.orders.len() {
            if minus {
                out.sm[o] = fr.sm[o].clone() + self.pow[k][o].clone();
                out.sp[o] = fr.sp[o].clone();
            } else {
                out.sm[o] = fr.sm[o].clone();
                out.sp[o] = fr.sp[o].clone() + self.pow[k][o].clone();
            }
        }
        if minus {
            out.prod = fr.prod.clone() * fr.a[k].clone();
            for m in k + 1..self.n {
                out.a[m] = fr.a[m].clone();
                out.b[m] = fr.b[m].clone() * self.f[k][m].clone();
            }
        } else {
            out.prod = fr.prod.clone() * fr.b[k].clone();
            for m in k + 1..self.n {
                out.a[m] = fr.a[m].clone() * self.f[m][k].clone();
                out.b[m] = fr.b[m].clone();
            }
        }
    }

    fn leaf(&self, fr: &Frame<S>, acc: &mut Buckets<S>) {
        let pvals: Vec<S> = self
            .orders
            .iter()
            .enumerate()
            .map(|(o, &r)| {
                let even = r % 2 == 0;
                // chiral: S_r(X₋) − (−1)^r S_r(X₊); antichiral: S_r(X₊) − (−1)^r S_r(X₋)
                match (r > 0, even) {
                    (true, true) => fr.sm[o].clone() - fr.sp[o].clone(),
                    (false, true) => fr.sp[o].clone() - fr.sm[o].clone(),
                    (_, false) => fr.sm[o].clone() + fr.sp[o].clone(),
                }
            })
            .collect();
        for (t, fac) in self.terms.iter().enumerate() {
            let mut v = fr.prod.clone();
            for &(o, k) in fac {
                v = v * pvals[o].powi(k as i32);
            }
            acc.abs[fr.minus][t] += v.modulus();
            let cur = acc.values[fr.minus][t].clone();
            acc.values[fr.minus][t] = cur + v;
        }
    }

    fn subtree(&self, start: Frame<S>, depth: usize) -> Buckets<S> {
        let mut acc = Buckets::zeros(self.n, self.terms.len());
        let mut frames: Vec<Frame<S>> = vec![start.clone(); self.n - depth + 1];
        frames[0] = start;
        self.descend(&mut frames, 0, depth, &mut acc);
        acc
    }

    fn descend(&self, frames: &mut [Frame<S>], level: usize, k: usize, acc: &mut Buckets<S>) {
        if k == self.n {
            self.leaf(&frames[level], acc);
            return;
        }
        for minus in [true, false] {
            let (head, tail) = frames.split_at_mut(level + 1);
            self.step(&head[level], k, minus, &mut tail[0]);
            self.descend(frames, level + 1, k + 1, acc);
        }
    }
}

/// Runs the walk in the scalar field `S`. Fails on points that hit a kernel pole.
pub fn buckets<S: Scalar>(ce: &CompiledElement, xs: &[Complex64], omega: Complex64) -> Result<Buckets<S>> {
    check_points(xs)?;
    let n = xs.len();
    let sx: Vec<S> = xs.iter().map(|&x| S::from_c64(x)).collect();
    let om = S::from_c64(omega);
    let mut f = vec![vec![S::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                f[i][j] = f_value(sx[i].clone() / sx[j].clone(), om.clone());
            }
        }
    }
    let pow: Vec<Vec<S>> = sx.iter().map(|x| ce.orders.iter().map(|&r| x.powi(r)).collect()).collect();
    let walk = Walk { n, f: &f, pow: &pow, orders: &ce.orders, terms: &ce.terms };
    if n < PARALLEL_MIN_N {
        return Ok(walk.subtree(walk.root(), 0));
    }
    // Fixed prefixes of the top levels; results reduced pairwise in prefix order.
    let depth = PARALLEL_DEPTH.min(n);
    let prefixes: Vec<Frame<S>> = (0..1usize << depth)
        .map(|mask| {
            let mut fr = walk.root();
            let mut next = fr.clone();
            for k in 0..depth {
                let minus = (mask >> (depth - 1 - k)) & 1 == 0;
                walk.step(&fr, k, minus, &mut next);
                std::mem::swap(&mut fr, &mut next);
            }
            fr
        })
        .collect();
    let mut parts: Vec<Buckets<S>> = prefixes.into_par_iter().map(|fr| walk.subtree(fr, depth)).collect();
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(x) = it.next() {
            next.push(match it.next() {
                Some(y) => x.merge(y),
                None => x,
            });
        }
        parts = next;
    }
    Ok(parts.pop().expect("at least one subtree"))
}
