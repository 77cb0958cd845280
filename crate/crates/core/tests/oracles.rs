//! Library results against independently computed values.

use gauss_cis::fock::{
    g0_ratio, generating_product_perturbed, kernel_norm, to_fock, EstimateGrid, GeneratingProduct, LogPolarPoint,
};
use gauss_cis::gauss_space::{
    collocation_matrix, compact_block_hsnorm, evaluate, frame_bounds, CoefficientVector, FrameOptions,
};
use gauss_cis::lattice::{beurling_densities, IndexRange, NodeSequence};
use gauss_cis::{Complex64, GaussianParam};
use nalgebra::DMatrix;

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

#[test]
fn evaluate_matches_plain_sum() {
    let p = GaussianParam::real(1.0).unwrap();
    let c = CoefficientVector::from_real(-20, &[1.0; 41]).unwrap();
    let plain: f64 = (-20..=20).map(|n| (-(0.5 - n as f64).powi(2)).exp()).sum();
    let v = evaluate(p, &c, 0.5, 1e-17);
    assert!(rel(v.value.re, plain) < 1e-15);
    assert_eq!(v.value.im, 0.0);
}

#[test]
fn half_shift_entries() {
    let p = GaussianParam::real(1.0).unwrap();
    let seq = NodeSequence::affine(1.0, 0.5).unwrap();
    let a = collocation_matrix(p, &seq, IndexRange::symmetric(4), 1e-16).unwrap();
    for m in -4..=4 {
        assert!((a.entry(m, m).re - (-0.25f64).exp()).abs() < 1e-16);
        assert!((a.entry(m, m + 1).re - (-0.25f64).exp()).abs() < 1e-16);
    }
}

/// The integer lattice gives a Toeplitz matrix with symbol `Σ e^{-ak²} e^{ikθ}`;
/// its smallest singular value on a big square section is the symbol minimum.
#[test]
fn integer_lattice_sigma_min_vs_toeplitz_section() {
    let symbol_min: f64 = (-30i32..=30).map(|k| (-1f64).powi(k) * (-(k as f64).powi(2)).exp()).sum();
    let n = 301;
    let t = DMatrix::from_fn(n, n, |i, j| (-((i as f64 - j as f64).powi(2))).exp());
    let sv = t.singular_values();
    let section_min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    assert!(rel(section_min, symbol_min) < 1e-3);

    let p = GaussianParam::real(1.0).unwrap();
    let fb = frame_bounds(p, &NodeSequence::integers(), &[64], &FrameOptions::default()).unwrap();
    assert!(rel(fb.records[0].sigma_min, symbol_min) < 0.03, "{}", fb.records[0].sigma_min);
    let symbol_max: f64 = (-30i32..=30).map(|k| (-(k as f64).powi(2)).exp()).sum();
    assert!(fb.records[0].sigma_max <= symbol_max * (1.0 + 1e-12));
}

#[test]
fn hs_norm_vs_double_sum() {
    let p = GaussianParam::real(1.0).unwrap();
    let hs = compact_block_hsnorm(p, &NodeSequence::integers(), 20).unwrap();
    let mut brute = 0.0;
    for m in 1..=200 {
        for n in 1..=200 {
            brute += (-2.0 * ((m + n) as f64).powi(2)).exp();
        }
    }
    assert!(rel(hs.hs_norm_sq, brute) < 1e-12, "{} vs {brute}", hs.hs_norm_sq);
    assert!(rel(hs.hs_norm_sq, (-8.0f64).exp()) < 1e-3);
}

#[test]
fn kernel_norm_vs_plain_series() {
    for a in [0.5, 1.0] {
        for t in [-3.0, -0.5, 0.0, 1.7, 6.0] {
            let plain: f64 = (0..200).map(|n| (2.0 * n as f64 * t - 2.0 * a * ((n + 1) as f64).powi(2)).exp()).sum();
            let k = kernel_norm(a, LogPolarPoint::new(t, 0.4).unwrap(), None).unwrap();
            // the series stops once the tail is below 1e-12 of the partial sum
            assert!(rel(k.log_norm_sq.exp(), plain) < 1e-12, "a {a} t {t}");
        }
    }
}

#[test]
fn first_coefficient_maps_to_unit_norm() {
    let p = GaussianParam::real(1.0).unwrap();
    let d = to_fock(p, &CoefficientVector::unit(1));
    let b0 = d.plus.coeffs[0].to_complex();
    assert!((b0 - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 1e-16);
    assert!(d.log_norm_sq(1.0).abs() < 1e-15);
}

/// Integers on `[-100, 100]` without the origin: a window of length `r`
/// holds `r + 1` integers, one fewer if it straddles the gap.
#[test]
fn holed_integer_densities_by_counting() {
    let nodes: Vec<f64> = (-100..=100).filter(|&n| n != 0).map(|n| n as f64).collect();
    let seq = NodeSequence::explicit(0, nodes).unwrap();
    let d = beurling_densities(&seq, &[25.0, 50.0, 100.0]).unwrap();
    let expect = [(26.0 / 25.0, 24.0 / 25.0), (51.0 / 50.0, 49.0 / 50.0), (1.0, 99.0 / 100.0)];
    for (s, (hi, lo)) in d.sweep.iter().zip(expect) {
        assert!((s.d_plus - hi).abs() < 1e-15 && (s.d_minus - lo).abs() < 1e-15, "{s:?}");
    }
}

/// Extremes of the estimate ratios from an independent double-precision
/// run (direct complex products, `t ∈ [a, 21a]`, 8 angles, step 0.1).
#[test]
fn product_ratio_extremes_vs_independent_run() {
    let cases = [(0.5, 0.170743758, 5.630223500), (1.0, 0.48973, 2.68918)];
    for (a, lo, hi) in cases {
        let grid = EstimateGrid::standard(a);
        let zeros: Vec<f64> = (1..200).map(|m| 2.0 * a * m as f64).collect();
        let r: Vec<f64> = grid.points(&zeros).into_iter().map(|p| g0_ratio(a, p).unwrap()).collect();
        let (mn, mx) = r.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
        assert!(rel(mn, lo) < 1e-5 && rel(mx, hi) < 1e-5, "a {a}: [{mn}, {mx}]");
    }

    let a = 0.5;
    let grid = EstimateGrid::standard(a);
    let prod = GeneratingProduct::periodic(a, &[0.45, -0.35], 200).unwrap();
    let r: Vec<f64> = grid
        .points(prod.log_zeros())
        .into_iter()
        .map(|p| generating_product_perturbed(&prod, p, 0.05).unwrap().ratio)
        .collect();
    let (mn, mx) = r.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    assert!(rel(mn, 0.16586) < 1e-4 && rel(mx, 7.6488) < 1e-4, "[{mn}, {mx}]");
}
