use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde_json::json;

use super::report::{Cell, Check, PlotSeries, Table};
use super::sign::sign_retrieval_check;
use super::ScenarioConfig;
use crate::fock::{
    consistency_identity, fock_cis_verdict, fock_norm, fock_norm_quadrature, fock_points_from_enumeration,
    g0_ratio, generating_product_perturbed, kernel_norm, lattice_to_fock_delta, to_fock, EstimateGrid,
    FockCisOptions, FockSeries, GeneratingProduct, LogPolarPoint, RadialGrid,
};
use crate::gauss_space::{frame_bounds, interpolate, CoefficientVector, FrameBoundReport, FrameOptions, Orientation};
use crate::lattice::{
    avdonin_verdict, beurling_densities, canonical_enumeration, check_separation, AvdoninOptions, AvdoninVerdict,
    IndexRange, NodeSequence, SequenceKind,
};
use crate::{Error, GaussianParam, Result};

/// What a scenario produced before it is stamped with config and timings.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub summary: serde_json::Value,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    pub plots: Vec<PlotSeries>,
}

fn sequence(cfg: &ScenarioConfig) -> Result<NodeSequence> {
    let spec = cfg.sequence.as_ref().ok_or_else(|| Error::ConfigInvalid("this scenario needs a `sequence`".into()))?;
    NodeSequence::try_from(spec.clone()).map_err(|e| Error::ConfigInvalid(e.to_string()))
}

fn avdonin_opts(cfg: &ScenarioConfig) -> AvdoninOptions {
    AvdoninOptions { margin: cfg.tolerances.margin, ..Default::default() }
}

fn frame_opts(cfg: &ScenarioConfig, orientation: Orientation) -> FrameOptions {
    FrameOptions { orientation, interior_fraction: cfg.interior_fraction, tol: cfg.tolerances.truncation }
}

fn na() -> Cell {
    Cell::Text("na".into())
}

fn frame_table(name: &str, report: &FrameBoundReport) -> Table {
    let mut t = Table::new(name, &["size", "rows", "cols", "sigma_min", "sigma_max", "ratio"]);
    for (i, r) in report.records.iter().enumerate() {
        let ratio = if i == 0 { na() } else { report.ratios[i - 1].into() };
        t.push(vec![r.size.into(), r.rows.into(), r.cols.into(), r.sigma_min.into(), r.sigma_max.into(), ratio]);
    }
    t
}

fn sigma_plot(name: &str, report: &FrameBoundReport) -> PlotSeries {
    PlotSeries {
        name: name.into(),
        x: report.records.iter().map(|r| r.size as f64).collect(),
        y: report.records.iter().map(|r| r.sigma_min).collect(),
    }
}

/// Relative change of `σ_min` between the last two sizes.
fn last_variation(report: &FrameBoundReport) -> f64 {
    report.ratios.last().map_or(0.0, |r| (r - 1.0).abs())
}

/// Ratio checks for every consecutive pair of sizes that doubles.
fn halving_checks(label: &str, report: &FrameBoundReport, limit: f64) -> Vec<Check> {
    report
        .records
        .windows(2)
        .zip(&report.ratios)
        .filter(|(w, _)| w[1].size == 2 * w[0].size)
        .map(|(w, &r)| Check::at_most(format!("{label}sigma_min({})/sigma_min({})", w[1].size, w[0].size), r, limit))
        .collect()
}

fn stability_check(label: &str, report: &FrameBoundReport, limit: f64) -> Check {
    let n = report.records.len();
    let name = if n >= 2 {
        format!("{label}sigma_min variation {}->{}", report.records[n - 2].size, report.records[n - 1].size)
    } else {
        format!("{label}sigma_min variation")
    };
    Check::less(name, last_variation(report), limit)
}

fn verdict_json(v: &AvdoninVerdict) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

pub(crate) fn classify(cfg: &ScenarioConfig) -> Result<Outcome> {
    let seq = sequence(cfg)?;
    let v = avdonin_verdict(&seq, &avdonin_opts(cfg));
    let window = seq.data_range().unwrap_or(IndexRange::symmetric(*cfg.sizes.last().unwrap()));
    let sep = check_separation(&seq, window)?;
    let density = match seq.kind() {
        SequenceKind::Explicit { nodes, .. } => {
            let span = nodes.last().unwrap() - nodes[0];
            let r = cfg.r_values.clone().unwrap_or_else(|| vec![span / 8.0, span / 4.0, span / 2.0]);
            Some(beurling_densities(&seq, &r)?)
        }
        _ => Some(beurling_densities(&seq, &[])?),
    };
    let fock = canonical_enumeration(&seq, window, 10.0).and_then(|e| {
        let pts = fock_points_from_enumeration(cfg.param, &e);
        let opts = FockCisOptions { margin: cfg.tolerances.margin, ..Default::default() };
        fock_cis_verdict(cfg.param.a(), &pts, &opts).ok()
    });

    let mut t = Table::new(
        "classify",
        &["separated", "min_gap", "enumerable", "delta_sup", "n", "delta_star", "passes", "fock_passes"],
    );
    let (n, star) = v.best_window.map_or((na(), na()), |w| (w.n.into(), w.delta_star.into()));
    t.push(vec![
        v.separated.into(),
        v.min_gap.into(),
        v.enumerable.into(),
        if v.delta_sup.is_finite() { v.delta_sup.into() } else { na() },
        n,
        star,
        v.passes.into(),
        fock.as_ref().map_or(na(), |f| f.passes.into()),
    ]);
    let mut checks = Vec::new();
    if let Some(expect) = cfg.expect_pass {
        checks.push(Check::holds(format!("verdict passes == {expect}"), v.passes == expect));
    }
    Ok(Outcome {
        summary: json!({
            "verdict": verdict_json(&v),
            "separation": sep,
            "density": density,
            "fock_verdict": fock,
        }),
        checks,
        tables: vec![t],
        plots: Vec::new(),
    })
}

pub(crate) fn framebound_sweep(cfg: &ScenarioConfig) -> Result<Outcome> {
    let seq = sequence(cfg)?;
    let v = avdonin_verdict(&seq, &avdonin_opts(cfg));
    let fb = frame_bounds(cfg.param, &seq, &cfg.sizes, &frame_opts(cfg, cfg.orientation))?;
    let mut checks = Vec::new();
    match cfg.expect_pass {
        Some(true) => checks.push(stability_check("", &fb, cfg.tolerances.variation)),
        Some(false) => checks.extend(halving_checks("", &fb, cfg.tolerances.halving)),
        None => {}
    }
    Ok(Outcome {
        summary: json!({ "verdict": verdict_json(&v), "frame_bounds": fb }),
        checks,
        tables: vec![frame_table("framebound_sweep", &fb)],
        plots: vec![sigma_plot("sigma_min", &fb)],
    })
}

pub(crate) fn critical_half(cfg: &ScenarioConfig) -> Result<Outcome> {
    let seq = match &cfg.sequence {
        Some(_) => sequence(cfg)?,
        None => NodeSequence::affine(1.0, 0.5)?,
    };
    let v = avdonin_verdict(&seq, &avdonin_opts(cfg));
    let fb = frame_bounds(cfg.param, &seq, &cfg.sizes, &frame_opts(cfg, Orientation::Frame))?;
    let mut checks = vec![Check::holds("classifier rejects", !v.passes)];
    if let Some(w) = v.best_window {
        checks.push(Check::at_least("delta_star", w.delta_star, 0.5));
    }
    checks.extend(halving_checks("", &fb, cfg.tolerances.halving));

    // alternating samples on the largest window
    let m = *cfg.sizes.last().unwrap();
    let samples: Vec<Complex64> =
        (-m..=m).map(|n| Complex64::new(if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
    let solve = match interpolate(cfg.param, &seq, IndexRange::symmetric(m), &samples, cfg.tolerances.truncation) {
        Ok(s) => json!({ "residual": s.residual, "gain": s.gain, "sigma_min": s.sigma_min, "sigma_max": s.sigma_max }),
        Err(Error::SingularSystem { sigma_min, threshold }) => {
            json!({ "singular": true, "sigma_min": sigma_min, "threshold": threshold })
        }
        Err(e) => return Err(e),
    };
    Ok(Outcome {
        summary: json!({ "verdict": verdict_json(&v), "frame_bounds": fb, "alternating_solve": solve }),
        checks,
        tables: vec![frame_table("critical_half", &fb)],
        plots: vec![sigma_plot("sigma_min", &fb)],
    })
}

pub(crate) fn kadets_sweep(cfg: &ScenarioConfig) -> Result<Outcome> {
    let deltas = cfg.deltas.clone().unwrap_or_else(|| vec![0.1, 0.3, 0.45, 0.5]);
    let runs = deltas
        .par_iter()
        .map(|&d| {
            let seq = NodeSequence::affine(1.0, d)?;
            let v = avdonin_verdict(&seq, &avdonin_opts(cfg));
            let fb = frame_bounds(cfg.param, &seq, &cfg.sizes, &frame_opts(cfg, Orientation::Frame))?;
            Ok((d, v, fb))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sweep = Table::new("kadets_sweep", &["delta", "size", "rows", "cols", "sigma_min", "sigma_max"]);
    let mut ratios = Table::new("kadets_ratios", &["delta", "from", "to", "ratio"]);
    let mut checks = Vec::new();
    let mut plots = Vec::new();
    let mut summary = Vec::new();
    for (d, v, fb) in &runs {
        for r in &fb.records {
            sweep.push(vec![(*d).into(), r.size.into(), r.rows.into(), r.cols.into(), r.sigma_min.into(), r.sigma_max.into()]);
        }
        for (w, r) in fb.records.windows(2).zip(&fb.ratios) {
            ratios.push(vec![(*d).into(), w[0].size.into(), w[1].size.into(), (*r).into()]);
        }
        let label = format!("delta {d}: ");
        if v.passes {
            checks.push(stability_check(&label, fb, cfg.tolerances.variation));
        } else {
            checks.extend(halving_checks(&label, fb, cfg.tolerances.halving));
        }
        plots.push(sigma_plot(&format!("sigma_min_delta_{d}"), fb));
        summary.push(json!({ "delta": d, "passes": v.passes, "frame_bounds": fb }));
    }
    Ok(Outcome { summary: json!({ "runs": summary }), checks, tables: vec![sweep, ratios], plots })
}

pub(crate) fn density_demo(cfg: &ScenarioConfig) -> Result<Outcome> {
    let alphas = cfg.alphas.clone().unwrap_or_else(|| vec![0.9, 1.1]);
    let runs = alphas
        .par_iter()
        .map(|&alpha| {
            let seq = NodeSequence::affine(alpha, 0.0)?;
            let orientation = if alpha > 1.0 { Orientation::Riesz } else { Orientation::Frame };
            let fb = frame_bounds(cfg.param, &seq, &cfg.sizes, &frame_opts(cfg, orientation))?;
            let d = beurling_densities(&seq, &[])?;
            Ok((alpha, orientation, d, fb))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut frames = Table::new(
        "density_frames",
        &["alpha", "orientation", "density", "size", "rows", "cols", "sigma_min", "sigma_max"],
    );
    let mut checks = Vec::new();
    let mut plots = Vec::new();
    let mut summary = Vec::new();
    for (alpha, o, d, fb) in &runs {
        let oname = match o {
            Orientation::Frame => "frame",
            Orientation::Riesz => "riesz",
        };
        for r in &fb.records {
            frames.push(vec![
                (*alpha).into(),
                oname.into(),
                d.d_plus.into(),
                r.size.into(),
                r.rows.into(),
                r.cols.into(),
                r.sigma_min.into(),
                r.sigma_max.into(),
            ]);
        }
        checks.push(stability_check(&format!("alpha {alpha} ({oname}): "), fb, cfg.tolerances.variation));
        plots.push(sigma_plot(&format!("sigma_min_alpha_{alpha}"), fb));
        summary.push(json!({ "alpha": alpha, "orientation": o, "density": d, "frame_bounds": fb }));
    }

    // integers on [-100, 100] with the origin removed
    let nodes: Vec<f64> = (-100..=100).filter(|&n| n != 0).map(|n| n as f64).collect();
    let holed = NodeSequence::explicit(0, nodes)?;
    let r_values = cfg.r_values.clone().unwrap_or_else(|| vec![25.0, 50.0, 100.0]);
    let dens = beurling_densities(&holed, &r_values)?;
    let mut sweep = Table::new("density_sweep", &["r", "d_plus", "d_minus"]);
    for s in &dens.sweep {
        sweep.push(vec![s.r.into(), s.d_plus.into(), s.d_minus.into()]);
        checks.push(Check::at_most(format!("r {}: |d_minus - 1|", s.r), (s.d_minus - 1.0).abs(), 1.0 / s.r + 1e-12));
        checks.push(Check::at_most(format!("r {}: |d_plus - 1|", s.r), (s.d_plus - 1.0).abs(), 1.0 / s.r + 1e-12));
    }
    plots.push(PlotSeries {
        name: "density_minus".into(),
        x: dens.sweep.iter().map(|s| s.r).collect(),
        y: dens.sweep.iter().map(|s| s.d_minus).collect(),
    });
    Ok(Outcome {
        summary: json!({ "grids": summary, "missing_point": dens, "monotone": dens.is_monotone() }),
        checks,
        tables: vec![frames, sweep],
        plots,
    })
}

pub(crate) fn kernel_asymptotic(cfg: &ScenarioConfig) -> Result<Outcome> {
    let a = cfg.param.a();
    let [lo, hi, step] = cfg.log_modulus_range.unwrap_or([-10.0, 10.0, 0.1]);
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut t = Table::new("kernel_asymptotic", &["log_modulus", "argument", "ratio", "log_norm_sq", "terms"]);
    let mut ts = Vec::new();
    let mut rs = Vec::new();
    let mut worst_doubling: f64 = 0.0;
    for i in 0..=n {
        let lm = lo + i as f64 * step;
        let p = LogPolarPoint::new(lm, 0.0)?;
        let k = kernel_norm(a, p, None)?;
        let k2 = kernel_norm(a, p, Some(2 * k.terms_needed))?;
        worst_doubling = worst_doubling.max((k2.log_norm_sq - k.log_norm_sq).exp_m1().abs());
        t.push(vec![lm.into(), 0.0.into(), k.ratio.into(), k.log_norm_sq.into(), k.terms_used.into()]);
        ts.push(lm);
        rs.push(k.ratio);
    }
    let (rmin, rmax) = rs.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    let (pmin, pmax) = ts
        .iter()
        .zip(&rs)
        .filter(|(t, _)| **t >= 0.0)
        .fold((f64::INFINITY, 0.0f64), |(l, h), (_, &r)| (l.min(r), h.max(r)));
    let checks = vec![
        Check::less("ratio spread max/min", rmax / rmin, cfg.tolerances.kernel_spread),
        Check::less("term doubling change", worst_doubling, 1e-12),
    ];
    Ok(Outcome {
        summary: json!({
            "a": a,
            "bracket": [rmin, rmax],
            "spread": rmax / rmin,
            "bracket_nonnegative_log_modulus": [pmin, pmax],
            "spread_nonnegative_log_modulus": pmax / pmin,
        }),
        checks,
        tables: vec![t],
        plots: vec![PlotSeries { name: "kernel_ratio".into(), x: ts, y: rs }],
    })
}

pub(crate) fn g0_estimate(cfg: &ScenarioConfig) -> Result<Outcome> {
    let a = cfg.param.a();
    let grid = EstimateGrid::standard(a);
    let g0_zeros: Vec<f64> =
        (1..=GeneratingProduct::terms_for(a, grid.t_hi, 0.0)).map(|m| 2.0 * a * m as f64).collect();
    let pts = grid.points(&g0_zeros);
    let ratios = pts.par_iter().map(|&p| g0_ratio(a, p)).collect::<Result<Vec<_>>>()?;
    let mut t = Table::new("g0_estimate", &["log_modulus", "argument", "ratio"]);
    for (p, r) in pts.iter().zip(&ratios) {
        t.push(vec![p.log_modulus.into(), p.argument.into(), (*r).into()]);
    }
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    let mut checks = vec![Check::greater("G0 ratio lower end", lo, 0.0)];
    if let Some([blo, bhi]) = cfg.bracket {
        checks.push(Check::at_least("G0 ratio min vs bracket", lo, blo));
        checks.push(Check::at_most("G0 ratio max vs bracket", hi, bhi));
    }

    // perturbed zeros from a periodic pattern
    let offsets = match &cfg.sequence {
        Some(_) => match sequence(cfg)?.kind() {
            SequenceKind::Periodic { offsets } => offsets.clone(),
            _ => return Err(Error::ConfigInvalid("g0-estimate takes a periodic sequence".into())),
        },
        None => vec![0.45, -0.35],
    };
    let seq = NodeSequence::periodic(offsets.clone())?;
    let v = avdonin_verdict(&seq, &avdonin_opts(cfg));
    let star = v.best_window.map_or(0.0, |w| w.delta_star);
    let fock_delta = lattice_to_fock_delta(a, star);
    let sup = offsets.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let mut m_terms = GeneratingProduct::terms_for(a, grid.t_hi, 2.0 * a * sup);
    let top = LogPolarPoint::new(grid.t_hi, 0.0)?;
    let prod = loop {
        let prod = GeneratingProduct::periodic(a, &offsets, m_terms)?;
        if prod.truncation_error(top) <= crate::fock::PRODUCT_TAIL {
            break prod;
        }
        m_terms += offsets.len();
    };
    let ppts = grid.points(prod.log_zeros());
    let pvals = ppts
        .par_iter()
        .map(|&p| generating_product_perturbed(&prod, p, fock_delta).map(|v| v.ratio))
        .collect::<Result<Vec<_>>>()?;
    let mut tp = Table::new("gplus_estimate", &["log_modulus", "argument", "ratio"]);
    for (p, r) in ppts.iter().zip(&pvals) {
        tp.push(vec![p.log_modulus.into(), p.argument.into(), (*r).into()]);
    }
    let (plo, phi) = pvals.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    checks.push(Check::greater("G+ ratio lower end", plo, 0.0));

    let by_t = |pts: &[LogPolarPoint], rs: &[f64]| {
        // smallest ratio per log-modulus
        let mut x: Vec<f64> = Vec::new();
        let mut y: Vec<f64> = Vec::new();
        for (p, &r) in pts.iter().zip(rs) {
            if x.last() == Some(&p.log_modulus) {
                let l = y.len() - 1;
                y[l] = y[l].min(r);
            } else {
                x.push(p.log_modulus);
                y.push(r);
            }
        }
        (x, y)
    };
    let (gx, gy) = by_t(&pts, &ratios);
    let (px, py) = by_t(&ppts, &pvals);
    Ok(Outcome {
        summary: json!({
            "a": a,
            "grid": grid,
            "g0_points": pts.len(),
            "g0_bracket": [lo, hi],
            "gplus_offsets": offsets,
            "gplus_fock_delta": fock_delta,
            "gplus_points": ppts.len(),
            "gplus_bracket": [plo, phi],
        }),
        checks,
        tables: vec![t, tp],
        plots: vec![
            PlotSeries { name: "g0_min_ratio".into(), x: gx, y: gy },
            PlotSeries { name: "gplus_min_ratio".into(), x: px, y: py },
        ],
    })
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub(crate) fn fock_consistency(cfg: &ScenarioConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let a = cfg.param.a();
    let trials = cfg.trials.unwrap_or(5);

    let mut ident = Table::new(
        "identity",
        &["trial", "b", "lambda", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "relative_gap"],
    );
    let mut worst_gap: f64 = 0.0;
    for trial in 0..trials {
        let vals: Vec<Complex64> = (0..8).map(|_| random_complex(&mut rng)).collect();
        let c = CoefficientVector::new(1, vals)?;
        for b in [0.0, 2.0] {
            let p = GaussianParam::new(a, b)?;
            for i in 0..=10 {
                let lam = -5.0 + i as f64;
                let r = consistency_identity(p, &c, lam);
                worst_gap = worst_gap.max(r.relative_gap);
                ident.push(vec![
                    trial.into(),
                    b.into(),
                    lam.into(),
                    r.lhs.re.into(),
                    r.lhs.im.into(),
                    r.rhs.re.into(),
                    r.rhs.im.into(),
                    r.relative_gap.into(),
                ]);
            }
        }
    }

    let mut iso = Table::new("isometry", &["trial", "norm_sq", "fock_norm_sq", "relative_error"]);
    let mut worst_iso: f64 = 0.0;
    for trial in 0..100usize {
        let vals: Vec<Complex64> = (0..21).map(|_| random_complex(&mut rng)).collect();
        let c = CoefficientVector::new(-10, vals)?;
        let d = to_fock(cfg.param, &c);
        let lhs = c.norm_sqr();
        let rhs = d.log_norm_sq(a).exp();
        let err = (rhs / lhs - 1.0).abs();
        worst_iso = worst_iso.max(err);
        iso.push(vec![trial.into(), lhs.into(), rhs.into(), err.into()]);
    }

    let mut quad = Table::new("quadrature", &["a", "degree", "log_norm_sq", "log_quadrature", "relative_error"]);
    let mut worst_quad: f64 = 0.0;
    for qa in [0.25, 0.5, 1.0] {
        for n in 0..=5usize {
            let f = FockSeries::monomial(n, Complex64::new(1.0, 0.0));
            let exact = fock_norm(&f, qa);
            let q = fock_norm_quadrature(&f, qa, &RadialGrid::auto(qa, n), 1e-8)?;
            let err = (q.log_value - exact).exp_m1().abs();
            worst_quad = worst_quad.max(err);
            quad.push(vec![qa.into(), n.into(), exact.into(), q.log_value.into(), err.into()]);
        }
    }

    let checks = vec![
        Check::less("identity relative gap", worst_gap, cfg.tolerances.identity),
        Check::less("isometry relative error", worst_iso, cfg.tolerances.isometry),
        Check::less("quadrature relative error", worst_quad, cfg.tolerances.quadrature),
    ];
    Ok(Outcome {
        summary: json!({
            "identity_worst_gap": worst_gap,
            "isometry_worst_error": worst_iso,
            "quadrature_worst_error": worst_quad,
        }),
        checks,
        tables: vec![ident, iso, quad],
        plots: Vec::new(),
    })
}

pub(crate) fn sign_retrieval(cfg: &ScenarioConfig) -> Result<Outcome> {
    let trials = cfg.trials.unwrap_or(50);
    let w = cfg.window.unwrap_or(12);
    let k = cfg.coefficients.unwrap_or(6);
    let dmax = cfg.delta_max.unwrap_or(0.2);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let inputs: Vec<(Vec<f64>, Vec<f64>)> = (0..trials)
        .map(|_| {
            let c: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
            let d: Vec<f64> = (0..w).map(|_| if dmax > 0.0 { rng.random_range(-dmax..=dmax) } else { 0.0 }).collect();
            (c, d)
        })
        .collect();
    let verdicts = inputs
        .par_iter()
        .map(|(c, d)| {
            let coeffs = CoefficientVector::from_real(0, c)?;
            sign_retrieval_check(cfg.param, &coeffs, d, cfg.tolerances.sign_residual)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new("sign_retrieval", &["trial", "survivors", "max_deviation", "passes"]);
    for (i, v) in verdicts.iter().enumerate() {
        t.push(vec![i.into(), v.survivors.len().into(), v.max_deviation.into(), v.passes.into()]);
    }
    let passed = verdicts.iter().filter(|v| v.passes).count();
    let checks = vec![Check::at_least("trials unique up to sign", passed as f64, trials as f64)];
    Ok(Outcome {
        summary: json!({ "trials": trials, "window": w, "coefficients": k, "delta_max": dmax, "passed": passed }),
        checks,
        tables: vec![t],
        plots: Vec::new(),
    })
}
