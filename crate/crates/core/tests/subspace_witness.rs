use num_bigint::BigInt;
use rankcc_core::gf::field_from_q;
use rankcc_core::qcomb::{gauss_binomial, rat, BigRat};
use rankcc_core::spectrum::ExactValue;
use rankcc_core::subspace_witness::*;

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn lambda_examples() {
    let got: Vec<BigInt> = (0..=2).map(|k| lambda(4, 2, 2, 0, k, 2).unwrap()).collect();
    assert_eq!(got, vec![bi(16), bi(-4), bi(2)]);
    let row: Vec<BigInt> = (0..=2).map(|r| lambda(4, 2, 2, r, 0, 2).unwrap()).collect();
    assert_eq!(row, vec![bi(16), bi(18), bi(1)]);
    assert_eq!(lambda(3, 1, 2, 1, 1, 2).unwrap(), bi(2));
    assert_eq!(lambda(3, 2, 1, 1, 1, 2).unwrap(), bi(1));
}

#[test]
fn normalization_over_grid() {
    for q in [2u64, 3] {
        for n in 0..=6 {
            for m in 0..=n {
                for l in 0..=n {
                    let t = LambdaTable::new(n, m, l, q).unwrap();
                    assert!(t.normalization_holds(), "({n},{m},{l}) q={q}");
                    assert_eq!(t.row_sum_total(), gauss_binomial(n, l, q));
                }
            }
        }
    }
}

#[test]
fn j0_422_dense_and_spectrum() {
    let f = field_from_q(2).unwrap();
    let j = j_matrix(4, 2, 2, 2, &indicator(2, 0), false).unwrap();
    let d = j.dense(&f).unwrap();
    assert_eq!((d.rows, d.cols), (35, 35));
    for i in 0..35 {
        assert_eq!(d.row_sum(i), BigRat::from_integer(bi(16)));
    }
    let closed = j_eigen(4, 2, 2, &indicator(2, 0)).unwrap();
    let vals: Vec<(f64, BigInt)> = closed.entries.iter().map(|e| (e.value, e.multiplicity.clone())).collect();
    assert_eq!(vals, vec![(16.0, bi(1)), (2.0, bi(20)), (-4.0, bi(14))]);
    assert_eq!(closed.frobenius_sq_exact().unwrap(), BigRat::from_integer(bi(560)));
    let numeric = j_eigen_numeric(&f, 4, 2, &indicator(2, 0), 1e-9).unwrap();
    assert!(closed.max_relative_residual(&numeric, 10_000).unwrap() < 1e-9);
}

#[test]
fn j1_312_singular_values() {
    let f = field_from_q(2).unwrap();
    let s = j_singular(3, 1, 2, 2, &indicator(1, 1), false).unwrap();
    assert_eq!(s.entries.len(), 2);
    assert_eq!(s.entries[0].exact, Some(ExactValue::Rational(rat(3, 1))));
    assert_eq!(s.entries[1].exact, Some(ExactValue::Sqrt(rat(2, 1))));
    assert_eq!(s.entries[1].multiplicity, bi(6));
    assert_eq!(s.frobenius_sq_exact().unwrap(), rat(21, 1));
    let numeric = j_singular_numeric(&f, 3, 1, 2, &indicator(1, 1), false, 1e-9).unwrap();
    assert!(s.max_relative_residual(&numeric, 10_000).unwrap() < 1e-9);
}

#[test]
fn psi_small_example() {
    let psi = psi_build(2, 2, 0, 0, 2).unwrap();
    assert_eq!(psi.values, vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
    assert!(psi_properties(&psi).unwrap().all_hold());
}

#[test]
fn intersect_bound_example() {
    let b = intersect_trace_norm_lb(4, 2, 2, 2, 2, 0.0, 0, 0).unwrap();
    assert_eq!(b.correlation, rat(2, 1));
    assert!((b.published_alt - 4.375).abs() < 1e-12);
    assert!(b.dominates_published());
    let f = field_from_q(2).unwrap();
    let closed = j_singular(4, 2, 2, 2, &b.psi.values, true).unwrap();
    let numeric = j_singular_numeric(&f, 4, 2, 2, &b.psi.values, true, 1e-9).unwrap();
    assert!(closed.max_relative_residual(&numeric, 10_000).unwrap() < 1e-9);
}

#[test]
fn ceiling_log_factors() {
    let b = intersect_cc_lower_bound(10, 5, 4, 0, 2, 1.0, 2, DEFAULT_INTERSECT_C).unwrap();
    assert_eq!(b.factors, (4.0, 3.0));
    let t = intersect_cc_lower_bound(6, 2, 2, 0, 2, 1.0, 2, DEFAULT_INTERSECT_C).unwrap();
    assert!(t.trivial);
    assert_eq!(t.bits, 1.0);
}
