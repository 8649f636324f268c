//! Deformed rational B_n prepotential
//! `F = Σ 2b_i(b_0 + b_i) x_i² log x_i + Σ_{i<j} b_i b_j (x_i ± x_j)² log(x_i ± x_j)`.

use super::{require_dim, require_distance, require_nonzero, MetricPair, SINGULAR_GUARD};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ThirdTensor};
use num_complex::Complex64;

/// Parameters `b_0, b_1, …, b_n`; the family lives on `n` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalBnParams {
    b: Vec<Complex64>,
    total: Complex64,
}

impl RationalBnParams {
    /// `b` holds `b_0` first. Requires every `b_i ≠ 0` and `Σ b_i ≠ 0`.
    pub fn new(b: Vec<Complex64>) -> Result<Self> {
        if b.len() < 2 {
            return Err(Error::InvalidParams(
                "b needs b_0 and at least one more entry".into(),
            ));
        }
        for (i, &v) in b.iter().enumerate() {
            require_nonzero(v, &format!("b[{i}]"))?;
        }
        let total: Complex64 = b.iter().sum();
        require_nonzero(total, "B")?;
        Ok(Self { b, total })
    }

    pub fn dim(&self) -> usize {
        self.b.len() - 1
    }

    /// All parameters, `b_0` first.
    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn b0(&self) -> Complex64 {
        self.b[0]
    }

    /// Parameter attached to coordinate `i` (0-based), that is `b_{i+1}`.
    pub fn weight(&self, i: usize) -> Complex64 {
        self.b[i + 1]
    }

    /// `B = Σ_{i=0}^{n} b_i`.
    pub fn total(&self) -> Complex64 {
        self.total
    }
}

/// Smallest of `|x_i|` and `|x_i ± x_j|`.
pub fn singular_distance(x: &[Complex64]) -> f64 {
    let mut d = f64::INFINITY;
    for (i, &xi) in x.iter().enumerate() {
        d = d.min(xi.norm());
        for &xj in &x[..i] {
            d = d.min((xi - xj).norm()).min((xi + xj).norm());
        }
    }
    d
}

pub fn bn_rat_tensor(p: &RationalBnParams, x: &[Complex64]) -> Result<ThirdTensor> {
    let n = p.dim();
    require_dim(x, n)?;
    require_distance(singular_distance(x), SINGULAR_GUARD)?;
    let b0 = p.b0();
    let mut t = ThirdTensor::zeros(n);
    for i in 0..n {
        let bi = p.weight(i);
        let mut diag = 4.0 * bi * (b0 + bi) / x[i];
        for j in 0..n {
            if j == i {
                continue;
            }
            let w = 2.0 * bi * p.weight(j);
            let minus = 1.0 / (x[i] - x[j]);
            let plus = 1.0 / (x[i] + x[j]);
            diag += w * (minus + plus);
            if j > i {
                t.set_sym(i, i, j, w * (plus - minus));
                t.set_sym(i, j, j, w * (plus + minus));
            }
        }
        t.set_sym(i, i, i, diag);
    }
    Ok(t)
}

/// `η = diag(4 b_α B)`.
pub fn bn_rat_metric(p: &RationalBnParams) -> Result<MetricPair> {
    let n = p.dim();
    let diag: Vec<Complex64> = (0..n).map(|i| 4.0 * p.weight(i) * p.total).collect();
    let inv: Vec<Complex64> = diag.iter().map(|d| 1.0 / d).collect();
    let det = diag.iter().product();
    MetricPair {
        eta: ComplexMatrix::diagonal(&diag),
        eta_inv: ComplexMatrix::diagonal(&inv),
        det,
    }
    .verified()
}
