//! Prepotential families as closed-form third-derivative tensors with their
//! constant metrics.

pub mod degenerate;
pub mod rational_an;
pub mod rational_bn;
pub mod trig_an;
pub mod trig_bcn;

pub use rational_an::RationalAnParams;
pub use rational_bn::RationalBnParams;
pub use trig_an::TrigAnParams;
pub use trig_bcn::TrigBCnParams;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ThirdTensor};
use num_complex::Complex64;

/// Minimum distance from the singular set accepted by tensor evaluations.
pub const SINGULAR_GUARD: f64 = 1e-6;

/// Moduli at or below this are treated as zero in parameter validation.
pub const PARAM_EPS: f64 = 1e-12;

/// Tolerance for `η·η⁻¹ = I`, scaled by the condition estimate.
pub const METRIC_CHECK_TOL: f64 = 1e-10;

/// A constant metric with its inverse and determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricPair {
    pub eta: ComplexMatrix,
    pub eta_inv: ComplexMatrix,
    pub det: Complex64,
}

impl MetricPair {
    /// Largest entry of `η·η⁻¹ − I`.
    pub fn identity_defect(&self) -> f64 {
        let n = self.eta.dim();
        (&self.eta * &self.eta_inv)
            .sub(&ComplexMatrix::identity(n))
            .max_abs()
    }

    pub(crate) fn verified(self) -> Result<Self> {
        let cond = (self.eta.inf_norm() * self.eta_inv.inf_norm()).max(1.0);
        let defect = self.identity_defect();
        if defect.is_finite() && defect <= METRIC_CHECK_TOL * cond {
            Ok(self)
        } else {
            Err(Error::DegenerateMetric(format!(
                "η·η⁻¹ deviates from the identity by {defect:e}"
            )))
        }
    }
}

/// Tag naming one of the four families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    RationalAn,
    RationalBn,
    TrigAn,
    TrigBCn,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::RationalAn,
        FamilyKind::RationalBn,
        FamilyKind::TrigAn,
        FamilyKind::TrigBCn,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::RationalAn => "rational-an",
            Self::RationalBn => "rational-bn",
            Self::TrigAn => "trig-an",
            Self::TrigBCn => "trig-bcn",
        }
    }
}

/// Parameters of any of the four families.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyParams {
    RationalAn(RationalAnParams),
    RationalBn(RationalBnParams),
    TrigAn(TrigAnParams),
    TrigBCn(TrigBCnParams),
}

impl FamilyParams {
    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        match self {
            Self::RationalAn(p) => p.dim(),
            Self::RationalBn(p) => p.dim(),
            Self::TrigAn(p) => p.dim(),
            Self::TrigBCn(p) => p.dim(),
        }
    }

    pub fn tensor(&self, x: &[Complex64]) -> Result<ThirdTensor> {
        match self {
            Self::RationalAn(p) => rational_an::an_rat_tensor(p, x),
            Self::RationalBn(p) => rational_bn::bn_rat_tensor(p, x),
            Self::TrigAn(p) => trig_an::trig_an_tensor(p, x),
            Self::TrigBCn(p) => trig_bcn::trig_bcn_tensor(p, x),
        }
    }

    pub fn metric(&self) -> Result<MetricPair> {
        match self {
            Self::RationalAn(p) => rational_an::an_rat_metric(p),
            Self::RationalBn(p) => rational_bn::bn_rat_metric(p),
            Self::TrigAn(p) => trig_an::trig_an_metric(p),
            Self::TrigBCn(p) => trig_bcn::trig_bcn_metric(p),
        }
    }

    /// Weights `q_k` with `η = Σ_k q_k F_k(x)`.
    pub fn metric_weights(&self, x: &[Complex64]) -> Vec<Complex64> {
        match self {
            Self::RationalAn(_) | Self::RationalBn(_) => x.to_vec(),
            Self::TrigAn(p) => vec![Complex64::new(1.0, 0.0); p.dim()],
            Self::TrigBCn(p) => {
                let mut w = vec![Complex64::new(0.0, 0.0); p.dim()];
                w[0] = Complex64::new(1.0, 0.0);
                w
            }
        }
    }

    /// Distance from the family's singular set used when sampling points.
    ///
    /// Rational families measure the moduli of the linear forms in the
    /// arrangement. Trigonometric families measure the real (A) or imaginary (BC)
    /// part of each kernel argument, which also keeps kernel series convergent.
    pub fn sampling_margin(&self, x: &[Complex64]) -> f64 {
        match self {
            Self::RationalAn(_) => rational_an::singular_distance(x),
            Self::RationalBn(_) => rational_bn::singular_distance(x),
            Self::TrigAn(_) => trig_an::real_separation(x),
            Self::TrigBCn(_) => trig_bcn::imaginary_separation(x),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            Self::RationalAn(_) => FamilyKind::RationalAn,
            Self::RationalBn(_) => FamilyKind::RationalBn,
            Self::TrigAn(_) => FamilyKind::TrigAn,
            Self::TrigBCn(_) => FamilyKind::TrigBCn,
        }
    }
}

pub(crate) fn require_nonzero(v: Complex64, what: &str) -> Result<()> {
    if v.is_finite() && v.norm() > PARAM_EPS {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{what} must be nonzero, got {v}")))
    }
}

pub(crate) fn require_finite(v: Complex64, what: &str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{what} must be finite, got {v}")))
    }
}

pub(crate) fn require_dim(x: &[Complex64], n: usize) -> Result<()> {
    if x.len() == n {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            expected: n,
            found: x.len(),
        })
    }
}

pub(crate) fn require_distance(distance: f64, guard: f64) -> Result<()> {
    if distance > guard {
        Ok(())
    } else {
        Err(Error::SingularPoint { distance, guard })
    }
}
