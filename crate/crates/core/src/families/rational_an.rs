//! Deformed rational A_n prepotential
//! `F = Σ a_i x_i² log x_i + Σ_{i<j} a_i a_j (x_i − x_j)² log(x_i − x_j)`.

use super::{require_dim, require_distance, require_finite, require_nonzero, MetricPair};
use super::SINGULAR_GUARD;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ThirdTensor};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalAnParams {
    a: Vec<Complex64>,
    total: Complex64,
}

impl RationalAnParams {
    /// Requires every `a_i ≠ 0` and `Σ a_i ≠ −1`.
    pub fn new(a: Vec<Complex64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParams("a must have at least one entry".into()));
        }
        for (i, &v) in a.iter().enumerate() {
            require_nonzero(v, &format!("a[{}]", i + 1))?;
        }
        let total: Complex64 = a.iter().sum();
        require_nonzero(total + 1.0, "A + 1")?;
        Ok(Self { a, total })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    /// `A = Σ a_i`.
    pub fn total(&self) -> Complex64 {
        self.total
    }
}

/// Smallest of `|x_i|` and `|x_i − x_j|`.
pub fn singular_distance(x: &[Complex64]) -> f64 {
    let mut d = f64::INFINITY;
    for (i, &xi) in x.iter().enumerate() {
        d = d.min(xi.norm());
        for &xj in &x[..i] {
            d = d.min((xi - xj).norm());
        }
    }
    d
}

pub fn an_rat_tensor(p: &RationalAnParams, x: &[Complex64]) -> Result<ThirdTensor> {
    let n = p.dim();
    require_dim(x, n)?;
    require_distance(singular_distance(x), SINGULAR_GUARD)?;
    let a = &p.a;
    let mut t = ThirdTensor::zeros(n);
    for i in 0..n {
        let mut diag = 2.0 * a[i] / x[i];
        for j in 0..n {
            if j == i {
                continue;
            }
            let w = 2.0 * a[i] * a[j] / (x[i] - x[j]);
            diag += w;
            if j > i {
                // F_iij = −w, F_ijj = +w
                t.set_sym(i, i, j, -w);
                t.set_sym(i, j, j, w);
            }
        }
        t.set_sym(i, i, i, diag);
    }
    Ok(t)
}

/// `η_αα = 2a_α(A − a_α + 1)`, `η_αβ = −2a_α a_β`, with the closed-form inverse.
pub fn an_rat_metric(p: &RationalAnParams) -> Result<MetricPair> {
    let n = p.dim();
    let a = &p.a;
    let big = p.total;
    let eta = ComplexMatrix::from_fn(n, |r, s| {
        if r == s {
            2.0 * a[r] * (big - a[r] + 1.0)
        } else {
            -2.0 * a[r] * a[s]
        }
    });
    let eta_inv = ComplexMatrix::from_fn(n, |r, s| {
        if r == s {
            (a[r] + 1.0) / (2.0 * a[r] * (big + 1.0))
        } else {
            1.0 / (2.0 * (big + 1.0))
        }
    });
    // det η = 2ⁿ (A+1)^{n−1} Π a_i
    let det = a.iter().product::<Complex64>()
        * (big + 1.0).powi(n as i32 - 1)
        * 2f64.powi(n as i32);
    require_finite(det, "det η")?;
    MetricPair { eta, eta_inv, det }.verified()
}
