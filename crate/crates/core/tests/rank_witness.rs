use num_traits::{One, Zero};
use rankcc_core::gf::field_from_q;
use rankcc_core::qcomb::{count_rank_matrices, rat, BigRat};
use rankcc_core::rank_witness::*;

#[test]
fn gamma_examples() {
    assert_eq!(gamma_full(2, 1, 2).unwrap(), rat(-1, 3));
    assert_eq!(gamma_full(2, 2, 2).unwrap(), rat(1, 3));
    assert_eq!(gamma(2, 1, 1, 2).unwrap(), rat(1, 9));
    assert_eq!(gamma(2, 1, 2, 2).unwrap(), rat(-1, 3));
    assert!(gamma(3, 0, 2, 3).unwrap().is_one());
}

#[test]
fn gamma_matches_character_average() {
    for (n, q) in [(2usize, 2u32), (2, 3), (1, 2), (1, 3), (1, 4), (1, 5)] {
        let f = field_from_q(q).unwrap();
        for s in 0..=n {
            for t in 0..=n {
                let bf = gamma_brute_force(n, s, t, &f, 1 << 16).unwrap();
                let g = gamma(n as i64, s as i64, t as i64, q as u64).unwrap();
                if let Some(x) = bf.exact() {
                    assert_eq!(x, g, "n={n} q={q} s={s} t={t}");
                }
                let (re, im) = bf.complex();
                assert!((re - rankcc_core::qcomb::rat_to_f64(&g)).abs() < 1e-10 && im.abs() < 1e-10);
            }
        }
    }
}

#[test]
fn p_n_distribution() {
    for q in [2u64, 3] {
        for n in 1..=5i64 {
            for s in 0..=n {
                for t in 0..=n {
                    let mut total = BigRat::zero();
                    for r in 0..=n {
                        let p = p_n(n, s, t, r, q).unwrap();
                        if r > s.min(t) || r < s + t - n {
                            assert!(p.is_zero());
                        }
                        total += p;
                    }
                    assert!(total.is_one());
                }
            }
        }
    }
}

#[test]
fn e_phi_small_spectrum() {
    let phi = phi_build(2, 1, 0, 0, 2).unwrap();
    assert_eq!(phi.values, vec![rat(1, 2), rat(-3, 2), rat(1, 1)]);
    let f = field_from_q(2).unwrap();
    let closed = e_phi_spectrum(2, 2, &phi.values).unwrap();
    let numeric = e_phi_spectrum_numeric(2, &f, &phi.values, 1e-9).unwrap();
    assert!(closed.max_relative_residual(&numeric, 1 << 16).unwrap() < 1e-9);
    let m = e_phi_matrix(2, &f, &phi.values).unwrap();
    assert_eq!(m.frobenius_sq(), rat(1, 24));
    assert_eq!(closed.frobenius_sq_exact().unwrap(), rat(1, 24));
    assert_eq!(m.l1(), phi.l1());
    for r in 0..=2 {
        assert_eq!(m.class_sums()[r], phi.values[r]);
        assert!(count_rank_matrices(2, 2, r as i64, 2) > 0.into());
    }
}

#[test]
fn phi_properties_grid() {
    for q in [2u64, 3] {
        for n in 2..=6i64 {
            for k in 1..n {
                for l in 0..=k {
                    for m in 0..=(k - l) {
                        let phi = phi_build(n, k, l, m, q).unwrap();
                        assert!(phi_properties(&phi).unwrap().all_hold(), "n={n} k={k} l={l} m={m} q={q}");
                    }
                }
            }
        }
    }
}

#[test]
fn canonical_bound_shape() {
    let b0 = canonical_rank_bound(0, 2).unwrap();
    assert_eq!(b0.bits, 1.0);
    let mut prev = 0.0;
    for k in 1..120 {
        let b = canonical_rank_bound(k, 2).unwrap();
        assert!(b.bits >= prev);
        prev = b.bits;
        assert!((b.eps - (0.5 - 0.25 * 2f64.powf(-(k as f64) / 3.0))).abs() < 1e-15);
    }
}

#[test]
fn qcc_examples() {
    let x = num_bigint::BigInt::from(16);
    assert_eq!(qcc_lower_bound(&rat(48, 1), &x, &x), 0.0);
    assert_eq!(qcc_lower_bound(&rat(24, 1), &x, &x), 0.0);
}
