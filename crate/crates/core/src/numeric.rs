//! Small numerical helpers shared by the log-domain code.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `log Σ e^{x_i}`; `-∞` for an empty or all-`-∞` input.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let s: f64 = xs.iter().map(|x| (x - max).exp()).sum();
    max + s.ln()
}

/// `ln(1 + e^x)` without overflow.
pub fn softplus(x: f64) -> f64 {
    if x > 35.0 {
        x + (-x).exp()
    } else {
        x.exp().ln_1p()
    }
}

/// Reduces an angle to `(-π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    let mut r = theta.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// `e^z - 1` accurate for small `|z|`.
pub fn expm1_c(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let half = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin())
}

/// `log|e^u - e^v|` for complex logarithms `u`, `v`.
pub fn log_abs_diff(u: Complex64, v: Complex64) -> f64 {
    let (hi, lo) = if u.re >= v.re { (u, v) } else { (v, u) };
    let m = expm1_c(lo - hi).norm();
    if m == 0.0 {
        f64::NEG_INFINITY
    } else {
        hi.re + m.ln()
    }
}

/// `ln(1 + v)` accurate for small `|v|`.
pub fn log1p_c(v: Complex64) -> Complex64 {
    Complex64::new(0.5 * (2.0 * v.re + v.norm_sqr()).ln_1p(), v.im.atan2(1.0 + v.re))
}

/// `log Σ e^{z_i}` for complex `z_i`, imaginary part in `(-π, π]`. An empty
/// or vanishing sum gives real part `-∞`.
pub fn log_sum_exp_c<I: IntoIterator<Item = Complex64>>(zs: I) -> Complex64 {
    let zs: Vec<Complex64> = zs.into_iter().collect();
    let max = zs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    let s: Complex64 = zs.iter().map(|z| Complex64::from_polar((z.re - max).exp(), z.im)).sum();
    if s.norm() == 0.0 {
        return Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    Complex64::new(max + s.norm().ln(), s.arg())
}

/// Fixed 17-significant-digit rendering used in every CSV body.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
