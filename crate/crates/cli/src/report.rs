//! JSON report of a run.

use crate::config::{Command, Cx, FamilySpec, RunConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    /// Index into `draws` when parameters were drawn at random.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub draw: Option<usize>,
    pub dim: usize,
    /// 1-based direction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    /// Point the residual was evaluated at; empty for metric checks.
    pub point: Vec<Cx>,
    pub residual: f64,
    /// Point draws rejected as singular before this one was accepted.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub resamples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub round_trip: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<String>,
    /// Named parts of a composite residual.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Components>,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Components {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_asymmetry: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_combination: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_closed_form: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_lu: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_defect: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flipped_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawRecord {
    pub index: usize,
    pub dim: usize,
    pub family: FamilySpec,
    /// Value of the trigonometric A_n relation for violating draws.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_value: Option<Cx>,
}

/// Parameter map of an equivalence for one direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub draw: Option<usize>,
    pub gamma: usize,
    pub source: FamilySpec,
    pub target: FamilySpec,
    /// Overall scale `(A + 1)/(2a_γ)` of the A_n map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<Cx>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r_scale: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_sq: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_from_source: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_sq_from_source: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_pairing: Option<String>,
    /// Relative error of mapping the parameters there and back.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub round_trip_error: Option<f64>,
}

/// Monomial coefficients of the transformed unit A₂ prepotential and the
/// numerically certified sign of its cross term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct A2Report {
    pub cubic_gamma: Cx,
    pub cross: Cx,
    pub mixed_square: Cx,
    pub cubic_other: Cx,
    pub trilog: Cx,
    /// Largest deviation of the four sign-independent coefficients from
    /// `2/3, 2, −1/3, −2/9`.
    pub coefficient_error: f64,
    pub stated_cross_sign: i8,
    /// `+1` or `−1` if that sign passed at every sample, else `0`.
    pub certified_cross_sign: i8,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub command: Command,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub draws: Vec<DrawRecord>,
    pub samples: Vec<SampleRecord>,
    pub max_residual: f64,
    pub min_residual: f64,
    /// Smallest of the `q_asymmetry` and `h_combination` components.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_component: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_round_trip: Option<f64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mappings: Vec<MappingRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing_note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2_example: Option<A2Report>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation_met: Option<bool>,
    /// Wall-clock milliseconds; only present with `--timing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<f64>,
}

impl ResidualReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
