//! Trigonometric BC_{n−1} prepotential on coordinates `(ξ_0, ξ_1, …, ξ_{n−1})`:
//! `F = ξ_0³/3 + h ξ_0 Σ m_i ξ_i² + λ r Σ m_i f̃(ξ_i) + λ Σ (s m_i + ½q m_i(m_i − 1)) f̃(2ξ_i)
//!  + λ q Σ_{i<j} m_i m_j f̃(ξ_i ± ξ_j)`.

use super::{require_dim, require_distance, require_finite, require_nonzero, MetricPair};
use super::SINGULAR_GUARD;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ThirdTensor};
use crate::specfn::{cot, distance_to_real_lattice};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct TrigBCnParams {
    m: Vec<Complex64>,
    q: Complex64,
    r: Complex64,
    s: Complex64,
    total: Complex64,
    h: Complex64,
    lambda: Complex64,
}

impl TrigBCnParams {
    /// `λ` is the principal square root of `2h³ / (q(r + 8s + 2q(M − 2)))`.
    pub fn new(m: Vec<Complex64>, q: Complex64, r: Complex64, s: Complex64) -> Result<Self> {
        let lambda_sq = Self::lambda_squared_from(&m, q, r, s)?;
        Self::with_lambda(m, q, r, s, lambda_sq.sqrt())
    }

    /// Same parameters with an explicit branch of `λ`; `λ²` must match the
    /// defining expression to 1e−12 relative.
    pub fn with_lambda(
        m: Vec<Complex64>,
        q: Complex64,
        r: Complex64,
        s: Complex64,
        lambda: Complex64,
    ) -> Result<Self> {
        let lambda_sq = Self::lambda_squared_from(&m, q, r, s)?;
        if (lambda * lambda - lambda_sq).norm() > 1e-12 * lambda_sq.norm() {
            return Err(Error::InvalidParams(format!(
                "λ = {lambda} does not square to {lambda_sq}"
            )));
        }
        let total: Complex64 = m.iter().sum();
        let h = r + 4.0 * s + 2.0 * q * (total - 1.0);
        Ok(Self {
            m,
            q,
            r,
            s,
            total,
            h,
            lambda,
        })
    }

    fn lambda_squared_from(
        m: &[Complex64],
        q: Complex64,
        r: Complex64,
        s: Complex64,
    ) -> Result<Complex64> {
        if m.is_empty() {
            return Err(Error::InvalidParams("m must have at least one entry".into()));
        }
        for (i, &v) in m.iter().enumerate() {
            require_nonzero(v, &format!("m[{}]", i + 1))?;
        }
        require_nonzero(q, "q")?;
        require_finite(r, "r")?;
        require_finite(s, "s")?;
        let total: Complex64 = m.iter().sum();
        let h = r + 4.0 * s + 2.0 * q * (total - 1.0);
        let cond = q * (r + 8.0 * s + 2.0 * q * (total - 2.0));
        require_nonzero(cond, "q(r + 8s + 2q(M − 2))")?;
        require_nonzero(h, "h")?;
        let lambda_sq = 2.0 * h * h * h / cond;
        require_nonzero(lambda_sq, "λ²")?;
        Ok(lambda_sq)
    }

    /// Number of coordinates including `ξ_0`.
    pub fn dim(&self) -> usize {
        self.m.len() + 1
    }

    pub fn m(&self) -> &[Complex64] {
        &self.m
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn r(&self) -> Complex64 {
        self.r
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    /// `M = Σ m_i`.
    pub fn total(&self) -> Complex64 {
        self.total
    }

    /// `h = r + 4s + 2q(M − 1)`.
    pub fn h(&self) -> Complex64 {
        self.h
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// `q(r + 8s + 2q(M − 2))`.
    pub fn nondegeneracy(&self) -> Complex64 {
        self.q * (self.r + 8.0 * self.s + 2.0 * self.q * (self.total - 2.0))
    }

    /// The same parameters with `λ` negated.
    pub fn flipped(&self) -> Self {
        Self {
            lambda: -self.lambda,
            ..self.clone()
        }
    }
}

/// Smallest `|Im|` over the kernel arguments `ξ_i`, `2ξ_i`, `ξ_i ± ξ_j` (`i, j ≥ 1`).
pub fn imaginary_separation(xi: &[Complex64]) -> f64 {
    let mut d = f64::INFINITY;
    for (i, &a) in xi.iter().enumerate().skip(1) {
        d = d.min(a.im.abs()).min((2.0 * a).im.abs());
        for &b in &xi[1..i] {
            d = d.min((a + b).im.abs()).min((a - b).im.abs());
        }
    }
    d
}

fn pole_distance(xi: &[Complex64]) -> f64 {
    let mut d = f64::INFINITY;
    for (i, &a) in xi.iter().enumerate().skip(1) {
        d = d
            .min(distance_to_real_lattice(a))
            .min(distance_to_real_lattice(2.0 * a));
        for &b in &xi[1..i] {
            d = d
                .min(distance_to_real_lattice(a + b))
                .min(distance_to_real_lattice(a - b));
        }
    }
    d
}

pub fn trig_bcn_tensor(p: &TrigBCnParams, xi: &[Complex64]) -> Result<ThirdTensor> {
    let n = p.dim();
    require_dim(xi, n)?;
    require_distance(pole_distance(xi), SINGULAR_GUARD)?;
    let (q, r, s, lam) = (p.q, p.r, p.s, p.lambda);
    let m = |i: usize| p.m[i - 1];
    let mut t = ThirdTensor::zeros(n);
    t.set_sym(0, 0, 0, Complex64::new(2.0, 0.0));
    for i in 1..n {
        let mi = m(i);
        t.set_sym(0, i, i, 2.0 * p.h * mi);
        let mut diag = r * mi * cot(xi[i])?
            + 8.0 * (s * mi + 0.5 * q * mi * (mi - 1.0)) * cot(2.0 * xi[i])?;
        for j in 1..n {
            if j == i {
                continue;
            }
            let plus = cot(xi[i] + xi[j])?;
            let minus = cot(xi[i] - xi[j])?;
            let w = q * mi * m(j);
            diag += w * (plus + minus);
            if j > i {
                t.set_sym(i, i, j, lam * w * (plus - minus));
                t.set_sym(i, j, j, lam * w * (plus + minus));
            }
        }
        t.set_sym(i, i, i, lam * diag);
    }
    Ok(t)
}

/// The `ξ_0` slice `η = diag(2, 2h m_1, …, 2h m_{n−1})`.
pub fn trig_bcn_metric(p: &TrigBCnParams) -> Result<MetricPair> {
    let mut diag = vec![Complex64::new(2.0, 0.0)];
    diag.extend(p.m.iter().map(|&mi| 2.0 * p.h * mi));
    for (i, d) in diag.iter().enumerate() {
        if d.norm() <= super::PARAM_EPS {
            return Err(Error::DegenerateMetric(format!("η_{i}{i} vanishes")));
        }
    }
    let inv: Vec<Complex64> = diag.iter().map(|d| 1.0 / d).collect();
    MetricPair {
        eta: ComplexMatrix::diagonal(&diag),
        eta_inv: ComplexMatrix::diagonal(&inv),
        det: diag.iter().product(),
    }
    .verified()
}
