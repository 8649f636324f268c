//! The two-dimensional A-type example with `a = (1, 1)` and `γ = 1`, whose
//! transformed prepotential is written out as
//! `(2/3)(x̂¹)³ + c (x̂¹)²x̂² + 2x̂¹(x̂²)² − (1/3)(x̂²)³ − (2/9) Li₃(e^{−3x̂²})`.
//!
//! The cross coefficient `c` is a parameter here; [`certify_cross_sign`]
//! decides it by the chain-rule check.

use super::LegendreContext;
use crate::error::{Error, Result};
use crate::families::RationalAnParams;
use crate::linalg::ThirdTensor;
use crate::specfn::polylog;
use num_complex::Complex64;

pub const CUBIC_GAMMA: f64 = 2.0 / 3.0;
pub const MIXED_SQUARE: f64 = 2.0;
pub const CUBIC_OTHER: f64 = -1.0 / 3.0;
pub const TRILOG: f64 = -2.0 / 9.0;
/// The cross coefficient as stated in the closed form above.
pub const STATED_CROSS: f64 = 1.0;

pub fn context() -> LegendreContext {
    let one = Complex64::new(1.0, 0.0);
    let p = RationalAnParams::new(vec![one, one]).expect("unit parameters are valid");
    LegendreContext::an(p, 0).expect("γ = 1 is in range")
}

/// Third derivatives of the written-out example, with the trilogarithm term
/// differentiated through `Li₀`.
pub fn example_hat_tensor(cross: f64, xhat: &[Complex64]) -> Result<ThirdTensor> {
    if xhat.len() != 2 {
        return Err(Error::ShapeMismatch {
            expected: 2,
            found: xhat.len(),
        });
    }
    let w = (-3.0 * xhat[1]).exp();
    // d³/dx³ Li₃(e^{−3x}) = −27 Li₀(e^{−3x})
    let f222 = 6.0 * CUBIC_OTHER - 27.0 * TRILOG * polylog(0, w)?;
    let mut t = ThirdTensor::zeros(2);
    t.set_sym(0, 0, 0, Complex64::new(6.0 * CUBIC_GAMMA, 0.0));
    t.set_sym(0, 0, 1, Complex64::new(2.0 * cross, 0.0));
    t.set_sym(0, 1, 1, Complex64::new(2.0 * MIXED_SQUARE, 0.0));
    t.set_sym(1, 1, 1, f222);
    Ok(t)
}

/// Monomial coefficients read off the general closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A2Coefficients {
    pub cubic_gamma: Complex64,
    pub cross: Complex64,
    pub mixed_square: Complex64,
    pub cubic_other: Complex64,
    pub trilog: Complex64,
}

/// Extracts the coefficients from the general closed-form tensor at two
/// points with distinct `x̂²`, separating `(x̂²)³` from the `Li₃` term by
/// solving a 2×2 system.
pub fn extract_coefficients(p: &Complex64, q: &Complex64) -> Result<A2Coefficients> {
    let ctx = context();
    let at = |x2: Complex64| -> Result<(ThirdTensor, Complex64)> {
        let t = ctx.hat_tensor(&[Complex64::new(0.3, 0.1), x2])?;
        Ok((t, polylog(0, (-3.0 * x2).exp())?))
    };
    let (tp, lp) = at(*p)?;
    let (tq, lq) = at(*q)?;
    // F̂_222 = 6 c₃ − 27 c_L Li₀(e^{−3x̂²})
    let det = -27.0 * (lq - lp);
    if det.norm() < 1e-12 {
        return Err(Error::InvalidParams("sample points give a singular system".into()));
    }
    let trilog = (tq[(1, 1, 1)] - tp[(1, 1, 1)]) / det;
    let cubic_other = (tp[(1, 1, 1)] + 27.0 * trilog * lp) / 6.0;
    Ok(A2Coefficients {
        cubic_gamma: tp[(0, 0, 0)] / 6.0,
        cross: tp[(0, 0, 1)] / 2.0,
        mixed_square: tp[(0, 1, 1)] / 2.0,
        cubic_other,
        trilog,
    })
}

/// Outcome of checking both signs of the cross term against the chain rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSignReport {
    /// `+1` or `−1`, whichever passes; `0` if neither or both do.
    pub certified_sign: i8,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

/// Runs the chain-rule check for the example with cross coefficient `+1` and
/// `−1` at `x` and reports which sign passes `tol`.
pub fn certify_cross_sign(x: &[Complex64], tol: f64) -> Result<CrossSignReport> {
    let ctx = context();
    let xhat = ctx.hat_coords(x)?;
    let residual_plus = ctx.consistency_with(x, &example_hat_tensor(1.0, &xhat)?)?;
    let residual_minus = ctx.consistency_with(x, &example_hat_tensor(-1.0, &xhat)?)?;
    let certified_sign = match (residual_plus < tol, residual_minus < tol) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    };
    Ok(CrossSignReport {
        certified_sign,
        residual_plus,
        residual_minus,
    })
}
