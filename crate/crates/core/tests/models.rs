mod common;

use approx::assert_relative_eq;
use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use qsdkit::models::*;
use qsdkit::spectral::{full_spectrum, principal_left_eigenpair};
use qsdkit::Error;

#[test]
fn loopy_examples() {
    let q = make_loopy_chain(0.98).unwrap();
    assert!(q.q().iter().all(|&x| (x - 0.01).abs() < 1e-15));
    let q = make_loopy_chain(0.5).unwrap();
    assert!(q.q().iter().all(|&x| x == 0.25));
    let mut spec = full_spectrum(make_loopy_chain(0.3).unwrap().q()).unwrap();
    spec.sort_by(|a, b| b.re.total_cmp(&a.re));
    assert_relative_eq!(spec[0].re, 0.7, epsilon = 1e-14);
    assert!(spec[1].norm() < 1e-14);
    for eps in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
        assert!(
            matches!(make_loopy_chain(eps), Err(Error::Domain(_))),
            "{eps}"
        );
    }
}

#[test]
fn mm1k_examples() {
    let c = make_mm1k_chain(1.25, 100).unwrap();
    assert_eq!(c.dim(), 100);
    assert_relative_eq!(c.q()[(0, 1)], 5.0 / 9.0, epsilon = 1e-15);

    let c = make_mm1k_chain(1.25, 1).unwrap();
    assert_relative_eq!(c.q()[(0, 0)], 5.0 / 9.0, epsilon = 1e-15);
    assert_relative_eq!(c.absorb_prob(0), 4.0 / 9.0, epsilon = 1e-15);

    let c = make_mm1k_chain(1.25, 3).unwrap();
    let sums: Vec<f64> = (0..3).map(|i| c.q().row(i).sum()).collect();
    assert_relative_eq!(sums[0], 5.0 / 9.0, epsilon = 1e-15);
    assert_relative_eq!(sums[1], 1.0, epsilon = 1e-15);
    assert_relative_eq!(sums[2], 1.0, epsilon = 1e-15);

    assert!(make_mm1k_chain(0.0, 3).is_err());
    assert!(make_mm1k_chain(-1.0, 3).is_err());
    assert!(make_mm1k_chain(1.0, 0).is_err());
}

#[test]
fn contact_examples() {
    let c = make_contact_complete(2, 1.0).unwrap();
    let q = c.q();
    // b(1) = 1, d(1) = 1, b(2) = 0, d(2) = 2
    assert_eq!(q[(0, 1)], 1.0);
    assert_eq!(q[(0, 0)], -2.0);
    assert_eq!(q[(1, 0)], 2.0);
    assert_eq!(q[(1, 1)], -2.0);
    assert_eq!(c.absorb_rate(0), 1.0);
    assert_eq!(c.absorb_rate(1), 0.0);

    let c = make_contact_complete(100, 1.5).unwrap();
    assert_eq!(c.dim(), 100);
    for idx in 0..100 {
        let k = (idx + 1) as f64;
        let birth = if idx < 99 { c.q()[(idx, idx + 1)] } else { 0.0 };
        let death = if idx > 0 {
            c.q()[(idx, idx - 1)]
        } else {
            c.absorb_rate(0)
        };
        assert_eq!(death, k);
        assert_relative_eq!(birth, 1.5 * k * (100.0 - k) / 99.0, epsilon = 1e-12);
        assert_relative_eq!(c.exit_rate(idx), birth + death, epsilon = 1e-12);
    }
    assert!(make_contact_complete(1, 1.0).is_err());
    assert!(make_contact_complete(5, 0.0).is_err());
}

#[test]
fn construction_rejects_invalid_blocks() {
    let bad_dt = [
        DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5]), // stochastic everywhere
        DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 0.5]), // reducible
        DMatrix::from_row_slice(2, 2, &[0.5, 0.6, 0.1, 0.1]), // row sum > 1
        DMatrix::from_row_slice(2, 2, &[-0.1, 0.5, 0.1, 0.1]), // negative entry
        DMatrix::from_row_slice(1, 2, &[0.1, 0.1]),           // not square
    ];
    for q in bad_dt {
        assert!(AbsorbingChainDT::new(q.clone()).is_err(), "{q}");
    }
    let bad_ct = [
        DMatrix::from_row_slice(2, 2, &[-1.0, 1.0, 1.0, -1.0]), // conservative
        DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -1.0]), // reducible
        DMatrix::from_row_slice(2, 2, &[-1.0, -0.5, 1.0, -2.0]), // negative rate
        DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, -2.0]),  // zero diagonal
    ];
    for q in bad_ct {
        assert!(AbsorbingChainCT::new(q.clone()).is_err(), "{q}");
    }
    // slack on row sums
    let q = DMatrix::from_row_slice(2, 2, &[0.5, 0.5 + 5e-13, 0.2, 0.2]);
    assert!(AbsorbingChainDT::new(q).is_ok());
}

#[test]
fn doeblin_examples() {
    let c = make_loopy_chain(0.2).unwrap();
    assert_eq!(doeblinize_dt(&c, 1.0).unwrap().q(), c.q());
    let half = doeblinize_dt(&c, 0.5).unwrap();
    assert!(half.q().iter().all(|&x| (x - 0.2).abs() < 1e-15));
    let mut spec = full_spectrum(half.q()).unwrap();
    spec.sort_by(|a, b| b.re.total_cmp(&a.re));
    assert_relative_eq!(spec[0].re, 0.4, epsilon = 1e-14);
    for a in [0.0, -0.5, 1.1] {
        assert!(doeblinize_dt(&c, a).is_err());
    }

    let m = make_mm1k_chain(1.25, 100).unwrap();
    let m95 = doeblinize_dt(&m, 0.95).unwrap();
    assert_relative_eq!(m95.q()[(5, 6)], 0.95 * 5.0 / 9.0, epsilon = 1e-15);

    let ct = make_contact_complete(10, 1.5).unwrap();
    assert_eq!(doeblinize_ct(&ct, 0.0).unwrap().q(), ct.q());
    assert!(doeblinize_ct(&ct, -0.1).is_err());
    let (lam, _) = principal_left_eigenpair(ct.q(), ChainKind::Ct).unwrap();
    let shifted = doeblinize_ct(&ct, 0.5).unwrap();
    let (lam_s, _) = principal_left_eigenpair(shifted.q(), ChainKind::Ct).unwrap();
    assert_relative_eq!(lam_s, lam - 0.5, epsilon = 1e-10);
}

#[test]
fn uniformize_examples() {
    let ct = make_contact_complete(2, 1.0).unwrap();
    let dt = uniformize(&ct).unwrap();
    // nu = 2: I + Q / 2
    let expected = DMatrix::from_row_slice(2, 2, &[0.0, 0.5, 1.0, 0.0]);
    assert_eq!(dt.q(), &expected);

    let mut gen = rng(4);
    for _ in 0..50 {
        let ct = random_ct(&mut gen, 6);
        let dt = uniformize(&ct).unwrap();
        let nu = (0..6).map(|i| ct.exit_rate(i)).fold(0.0, f64::max);
        for i in 0..6 {
            let expect = 1.0 + ct.q().row(i).sum() / nu;
            assert_relative_eq!(dt.q().row(i).sum(), expect, epsilon = 1e-12);
            assert!(dt.q().row(i).sum() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn chain_text_round_trip() {
    let mut gen = rng(5);
    for d in 1..6 {
        let dt: AnyChain = random_dt(&mut gen, d, 0.2, 0.9).into();
        assert_eq!(parse_chain(&write_chain(&dt)).unwrap().q(), dt.q());
        let ct: AnyChain = random_ct(&mut gen, d).into();
        let back = parse_chain(&write_chain(&ct)).unwrap();
        assert_eq!(back.kind(), ChainKind::Ct);
        assert_eq!(back.q(), ct.q());
    }
    let text = "# two-state\ndt 2\n0.25 0.25\n\n0.25 0.25\n";
    assert_eq!(
        parse_chain(text).unwrap().q(),
        make_loopy_chain(0.5).unwrap().q()
    );
    for bad in [
        "",
        "xt 2\n0 0\n0 0",
        "dt 2\n0.1 0.1\n",
        "dt 2\n0.1\n0.1 0.1",
        "dt 1\n0.5\n0.5",
        "dt 1\nfoo",
    ] {
        assert!(parse_chain(bad).is_err(), "{bad:?}");
    }
}

fn dt_strategy() -> impl Strategy<Value = AbsorbingChainDT> {
    (2usize..=10, any::<u64>()).prop_map(|(d, seed)| random_dt(&mut rng(seed), d, 0.2, 0.99))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn doeblinize_dt_preserves_qsd(chain in dt_strategy(), alpha in 0.01f64..=1.0) {
        let (lam, d0) = principal_left_eigenpair(chain.q(), ChainKind::Dt).unwrap();
        let scaled = doeblinize_dt(&chain, alpha).unwrap();
        let (lam_s, d1) = principal_left_eigenpair(scaled.q(), ChainKind::Dt).unwrap();
        prop_assert!(d0.linf_distance(d1.as_slice()) < 1e-10);
        prop_assert!((lam_s - alpha * lam).abs() < 1e-10);
    }

    #[test]
    fn ct_transforms_preserve_qsd(d in 1usize..=12, seed in any::<u64>(), alpha in 0.0f64..3.0) {
        let ct = random_ct(&mut rng(seed), d);
        let (_, d0) = principal_left_eigenpair(ct.q(), ChainKind::Ct).unwrap();
        let (_, d1) = principal_left_eigenpair(doeblinize_ct(&ct, alpha).unwrap().q(), ChainKind::Ct).unwrap();
        let (_, d2) = principal_left_eigenpair(uniformize(&ct).unwrap().q(), ChainKind::Dt).unwrap();
        prop_assert!(d0.linf_distance(d1.as_slice()) < 1e-10);
        prop_assert!(d0.linf_distance(d2.as_slice()) < 1e-10);
    }

    #[test]
    fn probability_vector_normalizes(w in prop::collection::vec(0.0f64..10.0, 1..20)) {
        prop_assume!(w.iter().sum::<f64>() > 0.0);
        let p = ProbabilityVector::from_weights(w).unwrap();
        prop_assert!((p.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(p.as_slice().iter().all(|x| *x >= 0.0));
    }
}
