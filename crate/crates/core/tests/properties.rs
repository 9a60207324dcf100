use descff::algebra::{enumerate_partitions, parse_element, Coeff};
use descff::fock::t_vacuum_expectation;
use descff::identities::check_odd_generator;
use descff::jfunctions::{j_rho, j_value, residue_kinematic, residue_numeric};
use descff::kink::{chain_defect, homogeneity_defect, pq_consistency, KinkElement};
use descff::reflection::periodicity_defect;
use descff::sampling::Sampler;
use descff::{DescendantElement, ModelParams, Partition};
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / x.norm().max(y.norm()).max(1e-300)
}

fn generic_a(mp: &ModelParams, seed: u64) -> Complex64 {
    Complex64::new(Sampler::new(seed).generic_a(mp, 0.02), 0.0)
}

/// Up to `terms` monomials of level ≤ (max, max) with random coefficients.
fn element(seed: u64, max: u32, terms: usize, antichiral: bool) -> DescendantElement {
    let mut s = Sampler::new(seed);
    let mut pool: Vec<(Partition, Partition)> = Vec::new();
    for n in 0..=max {
        for nb in 0..=if antichiral { max } else { 0 } {
            for p in enumerate_partitions(n) {
                for q in enumerate_partitions(nb) {
                    pool.push((p.clone(), q));
                }
            }
        }
    }
    let mut g = DescendantElement::zero();
    for _ in 0..terms {
        let key = pool[s.index(pool.len())].clone();
        g.add_term(key, Coeff::Num(s.coefficient())).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn free_field_matches_subset_sum(p in 0.1f64..0.9, seed in any::<u64>(), n in 0usize..7) {
        let mp = ModelParams::new(p);
        let a = generic_a(&mp, seed);
        let x = Sampler::new(seed ^ 1).generic_points(n, &mp);
        let t = t_vacuum_expectation(&x, a, &mp).unwrap();
        let j = j_value(&DescendantElement::one(), a, &x, &mp).unwrap();
        prop_assert!(rel(t, j) < 1e-9);
    }

    #[test]
    fn j_is_symmetric_in_the_points(p in 0.1f64..0.9, seed in any::<u64>(), n in 2usize..7, shift in 1usize..6) {
        let mp = ModelParams::new(p);
        let a = generic_a(&mp, seed);
        let g = element(seed, 2, 3, true);
        let x = Sampler::new(seed ^ 2).generic_points(n, &mp);
        let mut y = x.clone();
        y.rotate_left(shift % n);
        y.swap(0, n - 1);
        let (u, v) = (j_value(&g, a, &x, &mp).unwrap(), j_value(&g, a, &y, &mp).unwrap());
        prop_assert!((u - v).norm() <= 1e-10 * u.norm().max(1.0));
    }

    #[test]
    fn periodicity_in_a(p in 0.1f64..0.9, seed in any::<u64>(), n in 0usize..7) {
        let mp = ModelParams::new(p);
        let a = generic_a(&mp, seed);
        let g = element(seed, 2, 3, true);
        let x = Sampler::new(seed ^ 3).generic_points(n, &mp);
        prop_assert!(periodicity_defect(&g, a, &x, &mp).unwrap() < 1e-10);
    }

    #[test]
    fn exponential_is_palindromic(p in 0.1f64..0.9, seed in any::<u64>(), n in 0usize..9) {
        let mp = ModelParams::new(p);
        let poly = j_rho(&DescendantElement::one(), &Sampler::new(seed).generic_points(n, &mp), &mp).unwrap();
        prop_assert!(poly.palindromy_defect() <= 1e-10 * poly.max_abs());
    }

    #[test]
    fn residues_match_contour(p in 0.15f64..0.85, seed in any::<u64>(), n in 0usize..5) {
        let mp = ModelParams::new(p);
        let a = generic_a(&mp, seed);
        let g = element(seed, 2, 2, true);
        let pts = Sampler::new(seed ^ 4).generic_points(n + 1, &mp);
        let k = residue_kinematic(&g, a, &pts[..n], pts[n], &mp).unwrap();
        let q = residue_numeric(&g, a, &pts[..n], pts[n], &mp, 1e-3, 64).unwrap();
        let mut probe = pts.clone();
        probe.push(-pts[n] * (1.0 - 1e-3));
        let floor = j_value(&g, a, &probe, &mp).unwrap().norm() * 1e-3;
        prop_assert!((k - q).norm() <= 1e-6 * k.norm().max(floor));
    }

    #[test]
    fn odd_generators_multiply(p in 0.1f64..0.9, seed in any::<u64>(), n in 0usize..6, k in 1u32..4) {
        let mp = ModelParams::new(p).with_tolerance(1e-10);
        let a = generic_a(&mp, seed);
        let g = element(seed, 2, 2, true);
        let x = Sampler::new(seed ^ 5).generic_points(n, &mp);
        let r = check_odd_generator(&g, k, &x, a, &mp).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn kink_chain_and_pq(p in 0.1f64..0.9, seed in any::<u64>(), nx in 0usize..4, nz in 0usize..3, nm in 0usize..3) {
        let mp = ModelParams::new(p);
        let h = KinkElement::new(element(seed, 4, 3, false), &mp).unwrap();
        let pts = Sampler::new(seed ^ 6).generic_points(nx + nz + 1, &mp);
        prop_assert!(chain_defect(&h, &pts[..nx], &pts[nx..nx + nz], pts[nx + nz], &mp).unwrap() < 1e-12);
        let pts = Sampler::new(seed ^ 7).generic_points(nm + 1, &mp);
        prop_assert!(pq_consistency(&h, &pts[..nm], &pts[nm..], &mp).unwrap().deviation < 1e-12);
    }

    #[test]
    fn q_is_homogeneous(p in 0.1f64..0.9, seed in any::<u64>(), level in 0u32..6, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        prop_assume!(re.abs() + im.abs() > 0.1);
        let mp = ModelParams::new(p);
        let parts = enumerate_partitions(level);
        let h = KinkElement::new(DescendantElement::chiral(parts[seed as usize % parts.len()].clone()), &mp).unwrap();
        let pts = Sampler::new(seed).generic_points(5, &mp);
        prop_assert!(homogeneity_defect(&h, level, &pts[..3], &pts[3..], Complex64::new(re, im), &mp).unwrap() < 1e-12);
    }

    #[test]
    fn element_text_and_json_round_trip(seed in any::<u64>()) {
        let g = element(seed, 3, 4, true);
        let z = Complex64::new(0.0, 0.0);
        let back = parse_element(&g.to_string()).unwrap();
        prop_assert!(back.distance_at(&g, z) <= 1e-15 * g.distance_at(&DescendantElement::zero(), z).max(1.0));
        let json = serde_json::to_string(&g).unwrap();
        let de: DescendantElement = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(de, g);
    }
}
