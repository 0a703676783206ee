use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rankcc_core::gf::{field_from_q, parse_poly};
use rankcc_core::matq::{enumerate_all, MatQ};
use rankcc_core::qcomb::*;
use rankcc_core::subspaces::{self, Subspace};
use rankcc_core::RngStream;

fn brute_rank_counts(q: u32, n: usize, m: usize) -> Vec<u64> {
    let f = field_from_q(q).unwrap();
    let mut c = vec![0u64; n.min(m) + 1];
    for a in enumerate_all(&f, n, m, 1 << 16).unwrap() {
        c[a.rank()] += 1;
    }
    c
}

#[test]
fn rank_counts_match_enumeration() {
    for q in [2u32, 3] {
        for n in 1..=4usize {
            for m in 1..=4usize {
                if (q as f64).powi((n * m) as i32) > 65536.0 {
                    continue;
                }
                let c = brute_rank_counts(q, n, m);
                for (r, &v) in c.iter().enumerate() {
                    assert_eq!(count_rank_matrices(n as i64, m as i64, r as i64, q as u64), BigInt::from(v));
                }
            }
        }
    }
}

#[test]
fn gauss_binomial_matches_subspace_enumeration() {
    for q in [2u32, 3] {
        let f = field_from_q(q).unwrap();
        for n in 0..=4usize {
            for k in 0..=n {
                let subs = subspaces::enumerate(&f, n, k, 1 << 20).unwrap();
                assert_eq!(BigInt::from(subs.len()), gauss_binomial(n as i64, k as i64, q as u64));
            }
        }
    }
    assert_eq!(gauss_binomial(4, 2, 2), BigInt::from(35));
    assert_eq!(gauss_binomial(3, 5, 2), BigInt::zero());
}

#[test]
fn cauchy_identity_monomials() {
    for q in [2u64, 3, 4] {
        for n in 1..=6i64 {
            for d in 0..n {
                let mut g = vec![BigRat::zero(); d as usize + 1];
                g[d as usize] = rat(1, 1);
                assert!(cauchy_residual(n, q, &g).is_zero(), "q={q} n={n} d={d}");
            }
        }
    }
}

#[test]
fn field_axioms_small() {
    for q in [2u32, 3, 4, 5, 8, 9] {
        let f = field_from_q(q).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
    assert!(field_from_q(6).is_err());
    assert!(field_from_q(64).is_err());
    assert_eq!(parse_poly("x^2+1", 3).unwrap(), vec![1, 0, 1]);
}

#[test]
fn subspace_operations() {
    let f = field_from_q(2).unwrap();
    let s = Subspace::coordinate(&f, 4, &[0, 1]);
    let t = Subspace::coordinate(&f, 4, &[1, 2]);
    assert_eq!(s.intersection_dim(&t).unwrap(), 1);
    assert_eq!(s.sum(&t).unwrap().dim(), 3);
    assert_eq!(s.orth().dim(), 2);
    let mut rng = RngStream::new(3);
    for inter in 0..=2 {
        let (a, b) = subspaces::random_pair_with_intersection(&f, 5, 2, 3, inter, &mut rng).unwrap();
        assert_eq!((a.dim(), b.dim(), a.intersection_dim(&b).unwrap()), (2, 3, inter));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_det_consistent(seed in any::<u64>(), q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 9]), n in 1usize..5) {
        let f = field_from_q(q).unwrap();
        let mut rng = RngStream::new(seed);
        let a = MatQ::sample_uniform(&f, n, n, &mut rng);
        let d = a.det().unwrap();
        prop_assert_eq!(d != 0, a.rank() == n);
        let b = MatQ::sample_uniform(&f, n, n, &mut rng);
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), f.mul(d, b.det().unwrap()));
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn sample_rank_hits_target(seed in any::<u64>(), r in 0usize..4) {
        let f = field_from_q(3).unwrap();
        let mut rng = RngStream::new(seed);
        let a = MatQ::sample_rank(&f, 4, 5, r, &mut rng).unwrap();
        prop_assert_eq!(a.rank(), r);
        prop_assert_eq!(a.kernel().len(), 4 - r + 1);
    }

    #[test]
    fn dimension_formula(seed in any::<u64>(), m in 0usize..5, l in 0usize..5) {
        let f = field_from_q(2).unwrap();
        let mut rng = RngStream::new(seed);
        let a = Subspace::from_row_space(&MatQ::sample_uniform(&f, m, 5, &mut rng));
        let b = Subspace::from_row_space(&MatQ::sample_uniform(&f, l, 5, &mut rng));
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(a.sum(&b).unwrap().dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
        prop_assert_eq!(a.orth().orth(), a.clone());
    }

    #[test]
    fn rng_split_is_stable(seed in any::<u64>(), i in 0u64..1000) {
        let a = RngStream::new(seed).split(i).next_u64();
        let b = RngStream::new(seed).split(i).next_u64();
        prop_assert_eq!(a, b);
    }
}
