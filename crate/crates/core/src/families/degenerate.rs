//! Trigonometric A_n with `bM + c = 0`, where `Σ F_k` degenerates and the
//! diagonal `Q = diag(m)` takes over the role of the metric.

use super::trig_an::{trig_an_tensor, TrigAnParams};
use super::PARAM_EPS;
use crate::error::{Error, Result};
use crate::linalg::{commutator_residual, ComplexMatrix};
use num_complex::Complex64;

/// Tolerance on `bM + c = 0` and `b = ±1`.
pub const HYPOTHESIS_TOL: f64 = 1e-12;

pub fn q_matrix(p: &TrigAnParams) -> ComplexMatrix {
    ComplexMatrix::diagonal(p.m())
}

fn check_cond1_vanishes(p: &TrigAnParams, failures: &mut Vec<String>) {
    let k1 = p.cond1();
    if k1.norm() > HYPOTHESIS_TOL * (p.b() * p.total()).norm().max(1.0) {
        failures.push(format!("bM + c = {k1} is not zero"));
    }
}

fn check_unit_b(p: &TrigAnParams, failures: &mut Vec<String>) {
    let b = p.b();
    if (b - 1.0).norm() > HYPOTHESIS_TOL && (b + 1.0).norm() > HYPOTHESIS_TOL {
        failures.push(format!("b = {b} is not ±1"));
    }
}

fn precondition(failures: Vec<String>) -> Result<()> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition(failures))
    }
}

/// Relative residual of `F_i Q⁻¹ F_j = F_j Q⁻¹ F_i` at `u`. Requires `bM + c = 0`.
pub fn trig_an_q_asymmetry(p: &TrigAnParams, u: &[Complex64]) -> Result<f64> {
    let mut failures = Vec::new();
    check_cond1_vanishes(p, &mut failures);
    precondition(failures)?;
    q_asymmetry_unchecked(p, u)
}

/// As [`trig_an_q_asymmetry`] without the hypothesis check.
pub fn q_asymmetry_unchecked(p: &TrigAnParams, u: &[Complex64]) -> Result<f64> {
    let t = trig_an_tensor(p, u)?;
    let q_inv: Vec<Complex64> = p.m().iter().map(|m| 1.0 / m).collect();
    commutator_residual(&t, &ComplexMatrix::diagonal(&q_inv))
}

/// Weights `h_k = −(aM + 2b) e^{2b u_k} + a Σ m_q e^{2b u_q}` and the scalar
/// `κ = −2b(aM + 2b) Σ m_q e^{2b u_q}`.
pub fn h_weights(p: &TrigAnParams, u: &[Complex64]) -> (Vec<Complex64>, Complex64) {
    let b = p.b();
    let w = p.rank_one_weight();
    let exps: Vec<Complex64> = u.iter().map(|&uk| (2.0 * b * uk).exp()).collect();
    let sum: Complex64 = p.m().iter().zip(&exps).map(|(m, e)| m * e).sum();
    let h = exps.iter().map(|e| -w * e + p.a() * sum).collect();
    (h, -2.0 * b * w * sum)
}

/// Relative residual `‖Σ_k h_k F_k(u) − κQ‖_max / (|κ| ‖Q‖_max)`.
///
/// Requires `bM + c = 0`, `b = ±1`, `aM + 2b ≠ 0` and `κ ≠ 0`.
pub fn trig_an_h_combination(p: &TrigAnParams, u: &[Complex64]) -> Result<f64> {
    let mut failures = Vec::new();
    check_cond1_vanishes(p, &mut failures);
    check_unit_b(p, &mut failures);
    let w = p.rank_one_weight();
    if w.norm() <= PARAM_EPS {
        failures.push(format!("aM + 2b = {w} vanishes"));
    } else if u.len() == p.dim() && h_weights(p, u).1.norm() <= PARAM_EPS {
        failures.push("κ vanishes".into());
    }
    precondition(failures)?;
    h_combination_unchecked(p, u)
}

/// As [`trig_an_h_combination`] without the hypothesis checks.
pub fn h_combination_unchecked(p: &TrigAnParams, u: &[Complex64]) -> Result<f64> {
    let t = trig_an_tensor(p, u)?;
    let (h, kappa) = h_weights(p, u);
    if kappa.norm() <= PARAM_EPS {
        return Err(Error::Precondition(vec!["κ vanishes".into()]));
    }
    let q = q_matrix(p);
    let diff = t.combine(&h).sub(&q.scale(kappa));
    Ok(diff.max_abs() / (kappa.norm() * q.max_abs()))
}
