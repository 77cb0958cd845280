use gauss_cis::experiments::sign_retrieval_check;
use gauss_cis::fock::{
    consistency_identity, fock_cis_verdict, fock_inner_quadrature, kernel_norm, to_fock, FockCisOptions, FockSeries,
    LogPolarPoint, RadialGrid,
};
use gauss_cis::gauss_space::{collocation_matrix, interpolate, CoefficientVector};
use gauss_cis::lattice::{avdonin_verdict, beurling_densities, AvdoninOptions, IndexRange, NodeSequence};
use gauss_cis::{Complex64, GaussianParam};
use proptest::prelude::*;

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64).prop_map(|(r, i)| Complex64::new(r, i)), len)
}

/// Offsets of an increasing periodic sequence: sorted and spread less than 1.
fn periodic_offsets() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.45..0.45f64, 1..6).prop_map(|mut v| {
        for (i, x) in v.iter_mut().enumerate() {
            *x += 1e-3 * i as f64;
        }
        v
    })
}

fn increasing(offsets: &[f64]) -> bool {
    let p = offsets.len();
    (0..p).all(|i| {
        let next = if i + 1 < p { (i + 1) as f64 + offsets[i + 1] } else { p as f64 + offsets[0] };
        next > i as f64 + offsets[i]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn window_averages_never_beat_the_mean(offsets in periodic_offsets()) {
        prop_assume!(increasing(&offsets));
        let p = offsets.len();
        let mean = offsets.iter().sum::<f64>() / p as f64;
        let seq = NodeSequence::periodic(offsets.clone()).unwrap();
        let v = avdonin_verdict(&seq, &AvdoninOptions::default());
        let star = v.best_window.unwrap().delta_star;
        prop_assert!((star - mean.abs()).abs() < 1e-12);
        for n in 1..=4 * p {
            let sup = (0..p)
                .map(|s| ((0..n).map(|k| offsets[(s + k) % p]).sum::<f64>() / n as f64).abs())
                .fold(0.0f64, f64::max);
            prop_assert!(sup >= mean.abs() - 1e-12);
        }
    }

    #[test]
    fn constant_shift_moves_delta_star(offsets in periodic_offsets(), s in -0.3..0.3f64) {
        prop_assume!(increasing(&offsets));
        // past ±1/2 the enumeration relabels the nodes
        prop_assume!(offsets.iter().all(|d| (d + s).abs() < 0.5));
        let shifted: Vec<f64> = offsets.iter().map(|d| d + s).collect();
        let mean = offsets.iter().sum::<f64>() / offsets.len() as f64;
        let v = avdonin_verdict(&NodeSequence::periodic(shifted).unwrap(), &AvdoninOptions::default());
        let star = v.best_window.unwrap().delta_star;
        prop_assert!((star - (mean + s).abs()).abs() < 1e-12);
    }

    #[test]
    fn removing_points_moves_densities_by_count_over_r(
        holes in prop::collection::btree_set(-60i64..60, 1..5),
        r in prop::sample::select(vec![10.0, 20.0, 40.0]),
    ) {
        let full: Vec<f64> = (-80..=80).map(|n| n as f64).collect();
        let holed: Vec<f64> = (-80..=80).filter(|n| !holes.contains(n)).map(|n| n as f64).collect();
        let d0 = beurling_densities(&NodeSequence::explicit(0, full).unwrap(), &[r]).unwrap();
        let d1 = beurling_densities(&NodeSequence::explicit(0, holed).unwrap(), &[r]).unwrap();
        let bound = holes.len() as f64 / r + 1e-12;
        prop_assert!((d0.sweep[0].d_plus - d1.sweep[0].d_plus).abs() <= bound);
        prop_assert!((d0.sweep[0].d_minus - d1.sweep[0].d_minus).abs() <= bound);
    }

    #[test]
    fn forward_then_interpolate_recovers_interior_coefficients(vals in complex_vec(7), delta in -0.3..0.3f64) {
        let p = GaussianParam::new(1.0, 0.7).unwrap();
        let seq = NodeSequence::affine(1.0, delta).unwrap();
        let range = IndexRange::symmetric(20);
        let a = collocation_matrix(p, &seq, range, 1e-16).unwrap();
        let c = CoefficientVector::new(-3, vals).unwrap();
        prop_assume!(c.norm() > 1e-3);
        let s = a.apply(&c);
        let sol = interpolate(p, &seq, range, &s, 1e-16).unwrap();
        prop_assert!(sol.residual < 1e-10);
        // min-norm solution: null-space leakage decays from the window edges
        for n in -3..=3 {
            prop_assert!((sol.coeffs.get(n) - c.get(n)).norm() < 1e-7 * c.norm());
        }
    }

    #[test]
    fn isometry(vals in complex_vec(21), a in 0.2..2.0f64, b in -3.0..3.0f64) {
        let p = GaussianParam::new(a, b).unwrap();
        let c = CoefficientVector::new(-10, vals).unwrap();
        prop_assume!(c.norm() > 1e-3);
        let d = to_fock(p, &c);
        prop_assert!((d.log_norm_sq(a).exp() / c.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn restricted_line_identity(vals in complex_vec(8), lambda in -5.0..5.0f64, b in prop::sample::select(vec![0.0, 2.0])) {
        let p = GaussianParam::new(0.8, b).unwrap();
        let c = CoefficientVector::new(1, vals).unwrap();
        prop_assume!(c.norm() > 1e-3);
        prop_assert!(consistency_identity(p, &c, lambda).relative_gap < 1e-9);
    }

    #[test]
    fn kernel_series_is_certified(a in 0.2..2.0f64, t in -10.0..30.0f64) {
        let p = LogPolarPoint::new(t, 0.0).unwrap();
        let k = kernel_norm(a, p, None).unwrap();
        let more = kernel_norm(a, p, Some(3 * k.terms_needed + 5)).unwrap();
        prop_assert!((more.log_norm_sq - k.log_norm_sq).exp_m1().abs() < 1e-12);
    }

    #[test]
    fn fock_verdict_ignores_arguments(deltas in prop::collection::vec(-0.4..0.4f64, 12), angles in prop::collection::vec(-3.0..3.0f64, 12), rot in -3.0..3.0f64) {
        let a = 0.7;
        let pts: Vec<LogPolarPoint> = deltas
            .iter()
            .enumerate()
            .map(|(i, d)| LogPolarPoint::new(2.0 * a * ((i + 1) as f64 + d), 0.0).unwrap())
            .collect();
        let turned: Vec<LogPolarPoint> =
            pts.iter().zip(&angles).map(|(p, th)| LogPolarPoint::new(p.log_modulus, th + rot).unwrap()).collect();
        let opts = FockCisOptions::default();
        let v0 = fock_cis_verdict(a, &pts, &opts);
        let v1 = fock_cis_verdict(a, &turned, &opts);
        match (v0, v1) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!(x.passes, y.passes);
                prop_assert_eq!(x.best_window, y.best_window);
                prop_assert_eq!(x.delta_sup, y.delta_sup);
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "verdicts disagree on success"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sign_flip_gives_same_survivors(vals in prop::collection::vec(-1.0..1.0f64, 3), deltas in prop::collection::vec(-0.2..0.2f64, 8)) {
        let p = GaussianParam::real(1.0).unwrap();
        let c = CoefficientVector::from_real(0, &vals).unwrap();
        prop_assume!(c.norm() > 1e-2);
        let v1 = sign_retrieval_check(p, &c, &deltas, 1e-8);
        let v2 = sign_retrieval_check(p, &c.scale(-1.0), &deltas, 1e-8);
        match (v1, v2) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!(x.survivors.len(), y.survivors.len());
                for (s, t) in x.survivors.iter().zip(&y.survivors) {
                    for (u, w) in s.iter().zip(t) {
                        prop_assert!((u - w).abs() < 1e-9);
                    }
                }
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "one sign rejected"),
        }
    }
}

#[test]
fn monomials_are_orthogonal_under_quadrature() {
    for a in [0.25, 0.5, 1.0] {
        let grid = RadialGrid::auto(a, 5);
        for j in 0..=4usize {
            let fj = FockSeries::monomial(j, Complex64::new(1.0, 0.0));
            let djj = fock_inner_quadrature(&fj, &fj, a, &grid).norm();
            for k in j + 1..=5 {
                let fk = FockSeries::monomial(k, Complex64::new(1.0, 0.0));
                let dkk = fock_inner_quadrature(&fk, &fk, a, &grid).norm();
                let cross = fock_inner_quadrature(&fj, &fk, a, &grid).norm();
                assert!(cross < 1e-10 * (djj * dkk).sqrt(), "a {a}: <w^{j}, w^{k}>");
            }
        }
    }
}
