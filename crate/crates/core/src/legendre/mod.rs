//! Legendre transformation `S_γ` of the rational families: forward and inverse
//! coordinate maps, closed-form transformed tensors, and the chain-rule check
//! `Σ_l F̂_{αβl}(x̂) J^l_k = F_{αβk}(x)` with `J = η⁻¹ F_γ`.

pub mod a2;
pub mod an;
pub mod bn;

use crate::error::{Error, Result};
use crate::families::{
    rational_an, rational_bn, FamilyParams, MetricPair, RationalAnParams, RationalBnParams,
    SINGULAR_GUARD,
};
use crate::linalg::{ComplexMatrix, ThirdTensor};
use crate::specfn::{cubic_trilog_d3, distance_to_imaginary_lattice};
use num_complex::Complex64;

/// Source family of a Legendre transformation.
#[derive(Debug, Clone, PartialEq)]
pub enum RationalFamily {
    An(RationalAnParams),
    Bn(RationalBnParams),
}

/// A rational family together with the distinguished direction `γ` (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreContext {
    family: RationalFamily,
    gamma: usize,
}

impl LegendreContext {
    pub fn new(family: RationalFamily, gamma: usize) -> Result<Self> {
        let n = match &family {
            RationalFamily::An(p) => p.dim(),
            RationalFamily::Bn(p) => p.dim(),
        };
        if gamma >= n {
            return Err(Error::IndexOutOfRange { index: gamma, n });
        }
        Ok(Self { family, gamma })
    }

    pub fn an(p: RationalAnParams, gamma: usize) -> Result<Self> {
        Self::new(RationalFamily::An(p), gamma)
    }

    pub fn bn(p: RationalBnParams, gamma: usize) -> Result<Self> {
        Self::new(RationalFamily::Bn(p), gamma)
    }

    /// Wraps a rational [`FamilyParams`]; trigonometric families are rejected.
    pub fn from_family(p: &FamilyParams, gamma: usize) -> Result<Self> {
        match p {
            FamilyParams::RationalAn(p) => Self::an(p.clone(), gamma),
            FamilyParams::RationalBn(p) => Self::bn(p.clone(), gamma),
            other => Err(Error::InvalidParams(format!(
                "no Legendre transform for the {} family",
                other.kind().tag()
            ))),
        }
    }

    pub fn family(&self) -> &RationalFamily {
        &self.family
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn dim(&self) -> usize {
        match &self.family {
            RationalFamily::An(p) => p.dim(),
            RationalFamily::Bn(p) => p.dim(),
        }
    }

    pub fn metric(&self) -> Result<MetricPair> {
        match &self.family {
            RationalFamily::An(p) => rational_an::an_rat_metric(p),
            RationalFamily::Bn(p) => rational_bn::bn_rat_metric(p),
        }
    }

    pub fn source_tensor(&self, x: &[Complex64]) -> Result<ThirdTensor> {
        match &self.family {
            RationalFamily::An(p) => rational_an::an_rat_tensor(p, x),
            RationalFamily::Bn(p) => rational_bn::bn_rat_tensor(p, x),
        }
    }

    pub fn hat_coords(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        match &self.family {
            RationalFamily::An(p) => an::an_hat_coords(p, self.gamma, x),
            RationalFamily::Bn(p) => bn::bn_hat_coords(p, self.gamma, x),
        }
    }

    pub fn inverse_coords(&self, xhat: &[Complex64]) -> Result<Vec<Complex64>> {
        match &self.family {
            RationalFamily::An(p) => an::an_inverse_coords(p, self.gamma, xhat),
            RationalFamily::Bn(p) => bn::bn_inverse_coords(p, self.gamma, xhat),
        }
    }

    pub fn hat_tensor(&self, xhat: &[Complex64]) -> Result<ThirdTensor> {
        match &self.family {
            RationalFamily::An(p) => an::an_hat_tensor(p, self.gamma, xhat),
            RationalFamily::Bn(p) => bn::bn_hat_tensor(p, self.gamma, xhat),
        }
    }

    /// `J^l_k = ∂x̂^l/∂x^k = (η⁻¹ F_γ)^l_k`.
    pub fn jacobian(&self, x: &[Complex64]) -> Result<ComplexMatrix> {
        let t = self.source_tensor(x)?;
        Ok(&self.metric()?.eta_inv * &t.slice(self.gamma))
    }

    /// Largest deviation of `Σ_l F̂_{αβl}(x̂) J^l_k` from `F_{αβk}(x)`, relative
    /// to `max|F_{αβk}(x)|`.
    pub fn consistency(&self, x: &[Complex64]) -> Result<f64> {
        let xhat = self.hat_coords(x)?;
        self.consistency_with(x, &self.hat_tensor(&xhat)?)
    }

    /// As [`consistency`](Self::consistency) with a caller-supplied `F̂(x̂)`.
    pub fn consistency_with(&self, x: &[Complex64], hat: &ThirdTensor) -> Result<f64> {
        let source = self.source_tensor(x)?;
        let pulled = hat.contract_last(&self.jacobian(x)?);
        Ok(pulled.relative_diff(&source))
    }

    /// `max|x' − x| / max|x|` for `x' = inverse(hat(x))`.
    pub fn round_trip_error(&self, x: &[Complex64]) -> Result<f64> {
        let back = self.inverse_coords(&self.hat_coords(x)?)?;
        let scale = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let diff = back
            .iter()
            .zip(x)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        Ok(diff / scale)
    }
}

/// Adds the third derivatives of `c · x^i x^j x^l`.
pub(crate) fn add_monomial(t: &mut ThirdTensor, c: Complex64, (i, j, l): (usize, usize, usize)) {
    let mut idx = [i, j, l];
    idx.sort_unstable();
    let weight = match (idx[0] == idx[1], idx[1] == idx[2]) {
        (true, true) => 6.0,
        (true, false) | (false, true) => 2.0,
        (false, false) => 1.0,
    };
    t.add_sym(i, j, l, c * weight);
}

/// Adds the third derivatives of `w · f(k ℓ·x̂)`, namely `w k³ coth(k ℓ·x̂) ℓ⊗ℓ⊗ℓ`.
pub(crate) fn add_kernel_term(
    t: &mut ThirdTensor,
    w: Complex64,
    k: Complex64,
    covector: &[Complex64],
    xhat: &[Complex64],
) -> Result<()> {
    let arg: Complex64 = k * covector
        .iter()
        .zip(xhat)
        .map(|(l, x)| l * x)
        .sum::<Complex64>();
    let distance = distance_to_imaginary_lattice(arg);
    if distance <= SINGULAR_GUARD {
        return Err(Error::SingularPoint {
            distance,
            guard: SINGULAR_GUARD,
        });
    }
    t.add_rank_one(w * k * k * k * cubic_trilog_d3(arg)?, covector);
    Ok(())
}

/// Covector with `+1` at `i` and `sign` at `j` (or only `+1` at `i` when `j` is `None`).
pub(crate) fn covector(n: usize, i: usize, j: Option<(usize, f64)>) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[i] = Complex64::new(1.0, 0.0);
    if let Some((j, sign)) = j {
        v[j] = Complex64::new(sign, 0.0);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_validated() {
        let p = RationalAnParams::new(vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        assert_eq!(
            LegendreContext::an(p, 2),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn monomial_weights() {
        let mut t = ThirdTensor::zeros(3);
        add_monomial(&mut t, Complex64::new(1.0, 0.0), (0, 0, 0));
        add_monomial(&mut t, Complex64::new(1.0, 0.0), (1, 0, 1));
        add_monomial(&mut t, Complex64::new(1.0, 0.0), (0, 1, 2));
        assert_eq!(t[(0, 0, 0)].re, 6.0);
        assert_eq!(t[(1, 1, 0)].re, 2.0);
        assert_eq!(t[(0, 1, 1)].re, 2.0);
        assert_eq!(t[(2, 1, 0)].re, 1.0);
        assert_eq!(t.symmetry_defect(), 0.0);
    }
}
