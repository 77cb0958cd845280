//! Recovery of a real `f ∈ V²_a` up to sign from `|f|` on a half-step grid.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::gauss_space::{evaluate, CoefficientVector};
use crate::lattice::{avdonin_verdict, AvdoninOptions, IndexRange, NodeSequence};
use crate::{Error, GaussianParam, Result};

/// Brute force is `2^W`.
pub const MAX_SIGN_WINDOW: usize = 16;

/// The substitution `y = 2x`: `Σ c_n e^{-a(x-n)²} = Σ c_n e^{-(a/4)(y-2n)²}`,
/// so the half-step nodes `m/2 + δ_m` become unit-step nodes `m + 2δ_m` for a
/// function of `V²_{a/4}` with coefficients on the even integers.
#[derive(Debug, Clone, PartialEq)]
pub struct Dilated {
    pub param: GaussianParam,
    pub coeffs: CoefficientVector,
    pub nodes: NodeSequence,
}

pub fn dilate_half_grid(
    param: GaussianParam,
    coeffs: &CoefficientVector,
    first_node: i64,
    half_deltas: &[f64],
) -> Result<Dilated> {
    let c = param.c();
    let dilated_param = GaussianParam::new(c.re / 4.0, c.im / 4.0)?;
    let lo = 2 * coeffs.first_index();
    let mut values = vec![Default::default(); (2 * coeffs.len()).saturating_sub(1)];
    for (n, z) in coeffs.iter() {
        values[(2 * n - lo) as usize] = z;
    }
    let nodes: Vec<f64> =
        half_deltas.iter().enumerate().map(|(i, d)| (first_node + i as i64) as f64 + 2.0 * d).collect();
    Ok(Dilated {
        param: dilated_param,
        coeffs: CoefficientVector::new(lo, values)?,
        nodes: NodeSequence::explicit(first_node, nodes)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignVerdict {
    pub window: usize,
    pub patterns_tried: u64,
    /// Coefficient vectors of every sign pattern whose residual passed.
    pub survivors: Vec<Vec<f64>>,
    /// Largest distance of a survivor from the nearer of `±c`, relative to `‖c‖`.
    pub max_deviation: f64,
    pub passes: bool,
}

/// Samples `s_m = |f(λ_m)|` at `λ_m = m/2 + δ_m` for `W` consecutive `m`
/// centred on the coefficient support, then tries every sign pattern `ε`:
/// the pattern survives when `ε ∘ s` lies in the span of the Gaussians on the
/// support to relative residual `residual_tol`. Passes iff every survivor is
/// `±c` to `1e-8 ‖c‖` and both signs occur (all survivors vanish for `c = 0`).
pub fn sign_retrieval_check(
    param: GaussianParam,
    coeffs: &CoefficientVector,
    half_deltas: &[f64],
    residual_tol: f64,
) -> Result<SignVerdict> {
    let w = half_deltas.len();
    if w > MAX_SIGN_WINDOW {
        return Err(Error::WindowTooLarge(w));
    }
    if !coeffs.is_real() {
        return Err(Error::ComplexInput);
    }
    if param.b() != 0.0 {
        return Err(Error::Precondition("sign retrieval needs a real Gaussian (b = 0)".into()));
    }
    let k = coeffs.len();
    if k == 0 || 2 * k > w {
        return Err(Error::Precondition(format!("window of {w} nodes cannot resolve {k} coefficients")));
    }
    let center = coeffs.first_index() as f64 + (k as f64 - 1.0) / 2.0;
    let first_node = (2.0 * center - (w as f64 - 1.0) / 2.0).round() as i64;
    let dil = dilate_half_grid(param, coeffs, first_node, half_deltas)?;
    let v = avdonin_verdict(&dil.nodes, &AvdoninOptions::default());
    if !v.passes {
        return Err(Error::Precondition("dilated nodes fail the averaged perturbation condition".into()));
    }

    let range = IndexRange::new(first_node, first_node + w as i64 - 1);
    let nodes = dil.nodes.window(range)?.positions;
    let samples: Vec<f64> =
        nodes.iter().map(|&y| evaluate(dil.param, &dil.coeffs, y, 1e-17).value.norm()).collect();
    // columns: Gaussians at the even dilated centres of the support
    let a4 = dil.param.a();
    let cols: Vec<f64> = coeffs.iter().map(|(n, _)| 2.0 * n as f64).collect();
    let mat = DMatrix::from_fn(w, k, |i, j| (-a4 * (nodes[i] - cols[j]).powi(2)).exp());
    let qr = mat.qr();
    let q = qr.q();
    let r = qr.r();

    let s = DVector::from_vec(samples);
    let snorm = s.norm();
    let truth: Vec<f64> = coeffs.values().iter().map(|z| z.re).collect();
    let cnorm = coeffs.norm();
    let patterns = 1u64 << w;
    let mut survivors = Vec::new();
    let mut max_deviation: f64 = 0.0;
    let (mut plus, mut minus) = (false, false);
    for bits in 0..patterns {
        let y = DVector::from_fn(w, |i, _| if bits >> i & 1 == 1 { -s[i] } else { s[i] });
        let qty = q.transpose() * &y;
        let resid = (&y - &q * &qty).norm();
        let ok = if snorm == 0.0 { true } else { resid < residual_tol * snorm };
        if !ok {
            continue;
        }
        let x = r.solve_upper_triangular(&qty).ok_or(Error::SingularSystem { sigma_min: 0.0, threshold: 0.0 })?;
        let dp: f64 = x.iter().zip(&truth).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let dm: f64 = x.iter().zip(&truth).map(|(a, b)| (a + b).powi(2)).sum::<f64>().sqrt();
        plus |= dp <= dm;
        minus |= dm <= dp;
        let dev = if cnorm == 0.0 { dp.min(dm) } else { dp.min(dm) / cnorm };
        max_deviation = max_deviation.max(dev);
        survivors.push(x.iter().copied().collect());
    }
    let passes = if cnorm == 0.0 {
        max_deviation < 1e-8
    } else {
        plus && minus && max_deviation < 1e-8
    };
    Ok(SignVerdict { window: w, patterns_tried: patterns, survivors, max_deviation, passes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a1() -> GaussianParam {
        GaussianParam::real(1.0).unwrap()
    }

    #[test]
    fn dilation_matches_direct_evaluation() {
        let p = GaussianParam::real(0.8).unwrap();
        let c = CoefficientVector::from_real(-2, &[0.3, -1.0, 2.0, 0.5]).unwrap();
        let deltas = [0.1, -0.05, 0.2, 0.0, -0.15, 0.12];
        let d = dilate_half_grid(p, &c, -3, &deltas).unwrap();
        assert!((d.param.a() - 0.2).abs() < 1e-16);
        for (i, dl) in deltas.iter().enumerate() {
            let x = (-3 + i as i64) as f64 / 2.0 + dl;
            let direct = evaluate(p, &c, x, 1e-17).value;
            let y = d.nodes.node(-3 + i as i64).unwrap();
            assert!((y - 2.0 * x).abs() < 1e-15);
            let via = evaluate(d.param, &d.coeffs, y, 1e-17).value;
            assert!((direct - via).norm() < 1e-14);
        }
        assert_eq!(d.coeffs.get(-3).re, 0.0);
        assert_eq!(d.coeffs.get(-4).re, 0.3);
    }

    #[test]
    fn unit_vector_on_regular_grid() {
        let v = sign_retrieval_check(a1(), &CoefficientVector::unit(0), &[0.0; 10], 1e-8).unwrap();
        assert!(v.passes);
        assert_eq!(v.survivors.len(), 2);
        assert_eq!(v.patterns_tried, 1024);
    }

    #[test]
    fn zero_function_is_trivially_unique() {
        let c = CoefficientVector::from_real(0, &[0.0, 0.0]).unwrap();
        let v = sign_retrieval_check(a1(), &c, &[0.0; 8], 1e-8).unwrap();
        assert!(v.passes);
        assert_eq!(v.survivors.len(), 256);
    }

    #[test]
    fn limits() {
        let c = CoefficientVector::unit(0);
        assert!(matches!(sign_retrieval_check(a1(), &c, &[0.0; 17], 1e-8), Err(Error::WindowTooLarge(17))));
        let z = CoefficientVector::new(0, vec![crate::Complex64::new(1.0, 1.0)]).unwrap();
        assert!(matches!(sign_retrieval_check(a1(), &z, &[0.0; 4], 1e-8), Err(Error::ComplexInput)));
        let wide = CoefficientVector::from_real(0, &[1.0; 5]).unwrap();
        assert!(matches!(sign_retrieval_check(a1(), &wide, &[0.0; 8], 1e-8), Err(Error::Precondition(_))));
        // 2δ = 0.5 everywhere after dilation: the critical shift
        assert!(matches!(sign_retrieval_check(a1(), &c, &[0.25; 8], 1e-8), Err(Error::Precondition(_))));
    }

    #[test]
    fn global_sign_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vals: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let deltas: Vec<f64> = (0..10).map(|_| rng.random_range(-0.2..0.2)).collect();
        let c = CoefficientVector::from_real(-1, &vals).unwrap();
        let v1 = sign_retrieval_check(a1(), &c, &deltas, 1e-8).unwrap();
        let v2 = sign_retrieval_check(a1(), &c.scale(-1.0), &deltas, 1e-8).unwrap();
        assert!(v1.passes && v2.passes);
        assert_eq!(v1.survivors, v2.survivors);
    }
}
