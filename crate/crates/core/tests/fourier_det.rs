use num_complex::Complex64;
use rankcc_core::fourier_det::*;
use rankcc_core::gf::field_from_q;
use rankcc_core::qcomb::rat;
use rankcc_core::RngStream;

#[test]
fn parseval_and_roundtrip() {
    for (n, q) in [(1usize, 5u32), (2, 2), (2, 3), (1, 9)] {
        let f = field_from_q(q).unwrap();
        let mut rng = RngStream::new(q as u64);
        for _ in 0..20 {
            let v = MatrixFunction::tabulate(n, &f, |_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5)).unwrap();
            assert!(parseval_residual(&v).unwrap() < 1e-10);
            assert!(roundtrip_residual(&v).unwrap() < 1e-10);
        }
        assert!(h_unitarity_residual(n, &f).unwrap() < 1e-10);
    }
}

#[test]
fn det_witness_q3() {
    let f = field_from_q(3).unwrap();
    let g = g_uv_spectrum(2, &f, 1, 2).unwrap();
    assert_eq!(g.singular_count, 33);
    assert!(g.class_spread < 1e-10);
    assert!(g.sup_norm <= 1.0 / 24f64.sqrt() + 1e-12);
    let w = det_witness(2, &f, 1).unwrap();
    assert_eq!(w.l1(), rat(1, 1));
    let p = pair_norms(2, &f, 1, 2).unwrap();
    assert!(p.spectral <= 24f64.powf(-1.5) + 1e-9);
    assert!((p.spectral - pair_spectral_dense(2, &f, 1, 2).unwrap()).abs() < 1e-9);
}

#[test]
fn n1_examples() {
    let f = field_from_q(3).unwrap();
    let w = det_witness(1, &f, 1).unwrap();
    assert_eq!(w.l1(), rat(1, 1));
    let p = pair_norms(1, &f, 1, 2).unwrap();
    assert!((p.spectral - 1.0 / 3f64.sqrt()).abs() < 1e-9);
    assert!(pair_norms(1, &f, 1, 1).unwrap().spectral < 1e-12);
}

#[test]
fn rankdet_matches_claim() {
    let f = field_from_q(3).unwrap();
    let w = rankdet_witness(2, &f, 1, 1, 0, 0).unwrap();
    assert_eq!(w.mismatches, 0);
    assert_eq!(rankdet_dense_mismatches(&w, &f).unwrap(), 0);
    assert_eq!(w.dense(&f).l1(), w.phi.l1());
    assert!(w.spectral <= w.spectral_bound + 1e-9);
}

#[test]
fn trace_checks() {
    for (n, q) in [(2usize, 2u32), (2, 3), (1, 5)] {
        let f = field_from_q(q).unwrap();
        for r in 0..=n {
            let c = nonsingularity_trace_check(n, &f, r).unwrap();
            assert!(c.residual < 1e-10);
            if q == 2 {
                assert_eq!(c.exact.unwrap(), c.expected);
            }
        }
    }
}

#[test]
fn det_bound_formula() {
    let b = det_cc_bound(4, 2, 1.0).unwrap();
    assert!((b - (0.25 * 13.0 - 0.5 * 12f64.log2())).abs() < 1e-12);
    assert!(det_cc_bound(4, 2, 0.0).is_err());
    let f = field_from_q(3).unwrap();
    let c = det_witness_chain(2, &f, 1, 2, 1.0).unwrap();
    assert!(c.trace_lb >= c.trace_lb_published - 1e-9);
}
