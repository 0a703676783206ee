use num_bigint::BigInt;
use rankcc_core::gf::field_from_q;
use rankcc_core::matq::MatQ;
use rankcc_core::protocols::*;
use rankcc_core::qcomb::rat_to_f64;
use rankcc_core::RngStream;

#[test]
fn two_bit_expectation_matches_exhaustive() {
    for q in [2u32, 3] {
        let f = field_from_q(q).unwrap();
        for rank in 0..=2 {
            let mut rng = RngStream::new(7 + rank as u64);
            let (a, b) = rank_instance(&f, 2, 2, rank, &mut rng).unwrap();
            let exact = two_bit_exhaustive(&a, &b).unwrap();
            assert_eq!(exact, two_bit_expectation(q as u64, rank as i64), "q={q} rank={rank}");
        }
    }
}

#[test]
fn shift_distinguisher_error() {
    let w = two_bit_shift(2, 1).unwrap();
    let lo = w.wrapped_expectation(&w.alpha);
    let hi = w.wrapped_expectation(&w.beta);
    let half = num_rational::BigRational::new(BigInt::from(1), BigInt::from(2));
    // error on negative inputs is (1+E)/2, on positive (1−E)/2
    assert!((&half + &lo / BigInt::from(2)) <= w.error_bound);
    assert!((&half - &hi / BigInt::from(2)) <= w.error_bound);
    assert!(shift_distinguisher(&w.beta, &w.alpha).is_err());
}

#[test]
fn sketch_protocol_never_overshoots() {
    let f = field_from_q(2).unwrap();
    let rep = simulate_rank_sketch(&f, 6, 6, 2, 3, 3, 0.25, 300, 11).unwrap();
    assert!(rep.pass(), "{rep:?}");
    assert_eq!(rep.exact_violations, 0);
}

#[test]
fn two_bit_simulation() {
    let f = field_from_q(3).unwrap();
    let rep = simulate_two_bit(&f, 4, 4, 1, 20000, 3).unwrap();
    assert!(rep.pass(), "{rep:?}");
}

#[test]
fn block_matrix_rank_shift() {
    let f = field_from_q(3).unwrap();
    let mut rng = RngStream::new(5);
    for n in [4usize, 5, 7] {
        let h = n / 2;
        for rk in 0..=h {
            let (a, b) = rank_instance(&f, h, h, rk, &mut rng).unwrap();
            let m = block_matrix(&a, &b, n).unwrap();
            assert_eq!(m.rank(), rk + (n - h));
        }
    }
}

#[test]
fn streaming_and_reduction_agree() {
    let f = field_from_q(2).unwrap();
    let rep = simulate_streaming(&f, 8, 5, 0.2, 2, 200, 9).unwrap();
    assert!(rep.pass(), "{rep:?}");
}

#[test]
fn streaming_handoff_cost() {
    let f = field_from_q(2).unwrap();
    let mut rng = RngStream::new(1);
    let (a, b) = rank_instance(&f, 3, 3, 1, &mut rng).unwrap();
    for k in 1..4 {
        let mut alg = StreamingRank::new(&f, 6, 6, 4, 0.25, &mut rng.clone()).unwrap();
        let s = alg.memory_bits();
        let tr = streaming_to_protocol(&mut alg, &a, &b, 6, k, &rng).unwrap();
        assert_eq!(tr.bits_written, s * (2 * k as u64 - 1) + 1);
    }
}

#[test]
fn blq_query_count() {
    let f = field_from_q(2).unwrap();
    let rep = simulate_blq(&f, 5, 5, 2, 0.25, 200, 4).unwrap();
    assert!(rep.pass(), "{rep:?}");
    assert_eq!(blq_queries(2, 5), 64);
}

#[test]
fn intersect_small_error_runs() {
    let f = field_from_q(2).unwrap();
    let rep = simulate_intersect_small(&f, 6, 2, 3, 1, 1.0 / 3.0, 300, 2).unwrap();
    assert!(rep.pass(), "{rep:?}");
    let rep = simulate_intersect_small(&f, 5, 2, 2, 2, 0.25, 200, 2).unwrap();
    assert!(rep.pass(), "{rep:?}");
}

#[test]
fn intersect_large_error_runs() {
    let f = field_from_q(2).unwrap();
    let rep = simulate_intersect_large(&f, 5, 2, 2, 1, LargeErrorVariant::TwoBit, 100, 6).unwrap();
    assert!(rep.pass(), "{rep:?}");
    let rep = simulate_intersect_large(&f, 5, 2, 2, 1, LargeErrorVariant::Masked(1), 100, 6).unwrap();
    assert!(rep.pass(), "{rep:?}");
    let (a, b) = masked_intersect_bounds(2, 1, 7);
    assert!(rat_to_f64(&b) - rat_to_f64(&a) >= 0.25);
}

#[test]
fn symmetrization_runs() {
    let f = field_from_q(2).unwrap();
    let rep = simulate_symmetrize(&f, 4, 4, 1, 4, 0.25, 300, 8).unwrap();
    assert!(rep.pass(), "{rep:?}");
}

#[test]
fn precondition_errors() {
    let f = field_from_q(2).unwrap();
    let mut rng = RngStream::new(0);
    let a = MatQ::zeros(&f, 2, 2);
    assert!(rank_sketch_protocol(&[a.clone()], 1, 0.1, &mut rng).is_err());
    assert!(simulate_streaming(&f, 8, 2, 0.2, 1, 1, 0).is_err());
}

