//! Run configuration as read from JSON.
//!
//! Complex numbers are `[re, im]` pairs. `gamma` is 1-based.

use crate::error::RunError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use wdvv_core::families::{
    FamilyParams, RationalAnParams, RationalBnParams, TrigAnParams, TrigBCnParams,
};

pub const DEFAULT_SAMPLES: usize = 20;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

pub type Cx = [f64; 2];

pub fn to_complex(v: Cx) -> Complex64 {
    Complex64::new(v[0], v[1])
}

pub fn from_complex(z: Complex64) -> Cx {
    [z.re, z.im]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckWdvv,
    LegendreCheck,
    EquivalenceCheck,
    SpecialCaseCheck,
    MetricCheck,
    DerivativeCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::CheckWdvv => "check-wdvv",
            Self::LegendreCheck => "legendre-check",
            Self::EquivalenceCheck => "equivalence-check",
            Self::SpecialCaseCheck => "special-case-check",
            Self::MetricCheck => "metric-check",
            Self::DerivativeCheck => "derivative-check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    RationalAn,
    RationalBn,
    TrigAn,
    TrigBcn,
    AnToTrig,
    BnToBcn,
    BcnToBn,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            Self::RationalAn => "rational-an",
            Self::RationalBn => "rational-bn",
            Self::TrigAn => "trig-an",
            Self::TrigBcn => "trig-bcn",
            Self::AnToTrig => "an-to-trig",
            Self::BnToBcn => "bn-to-bcn",
            Self::BcnToBn => "bcn-to-bn",
        }
    }
}

/// A scalar or a vector of complex numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Scalar(Cx),
    Vector(Vec<Cx>),
}

/// Family selector with explicit parameters.
///
/// Field use by kind: `a` (vector) for `rational-an`/`an-to-trig`; `b`
/// (vector, `b_0` first) for `rational-bn`/`bn-to-bcn`; `m`, `a`, `b`, `c`
/// (scalars) for `trig-an`; `m`, `q`, `r`, `s` for `trig-bcn`/`bcn-to-bn`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: FamilyTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<Cx>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ParamValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ParamValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Cx>,
}

impl FamilySpec {
    pub fn bare(kind: FamilyTag) -> Self {
        Self {
            kind,
            m: None,
            a: None,
            b: None,
            c: None,
            q: None,
            r: None,
            s: None,
        }
    }

    pub fn has_params(&self) -> bool {
        self.m.is_some()
            || self.a.is_some()
            || self.b.is_some()
            || self.c.is_some()
            || self.q.is_some()
            || self.r.is_some()
            || self.s.is_some()
    }

    /// Echo of concrete parameters under `kind`.
    pub fn from_params(kind: FamilyTag, p: &FamilyParams) -> Self {
        let vec = |v: &[Complex64]| v.iter().map(|&z| from_complex(z)).collect::<Vec<_>>();
        let mut spec = Self::bare(kind);
        match p {
            FamilyParams::RationalAn(p) => spec.a = Some(ParamValue::Vector(vec(p.a()))),
            FamilyParams::RationalBn(p) => spec.b = Some(ParamValue::Vector(vec(p.b()))),
            FamilyParams::TrigAn(p) => {
                spec.m = Some(vec(p.m()));
                spec.a = Some(ParamValue::Scalar(from_complex(p.a())));
                spec.b = Some(ParamValue::Scalar(from_complex(p.b())));
                spec.c = Some(from_complex(p.c()));
            }
            FamilyParams::TrigBCn(p) => {
                spec.m = Some(vec(p.m()));
                spec.q = Some(from_complex(p.q()));
                spec.r = Some(from_complex(p.r()));
                spec.s = Some(from_complex(p.s()));
            }
        }
        spec
    }

    /// Builds the concrete parameters.
    ///
    /// For `trig-an` a missing `a` is solved from the WDVV relation, and a
    /// missing `c` is set to `−bM` when `default_c_degenerate` is true.
    pub fn params(&self, default_c_degenerate: bool) -> Result<FamilyParams, RunError> {
        let built = match self.kind {
            FamilyTag::RationalAn | FamilyTag::AnToTrig => {
                self.only(&["a"])?;
                RationalAnParams::new(self.vector("a", &self.a)?).map(FamilyParams::RationalAn)
            }
            FamilyTag::RationalBn | FamilyTag::BnToBcn => {
                self.only(&["b"])?;
                RationalBnParams::new(self.vector("b", &self.b)?).map(FamilyParams::RationalBn)
            }
            FamilyTag::TrigAn => {
                self.only(&["m", "a", "b", "c"])?;
                let m = self.m_vector()?;
                let b = self.scalar("b", &self.b)?;
                let total: Complex64 = m.iter().sum();
                let c = match self.c {
                    Some(c) => to_complex(c),
                    None if default_c_degenerate => -b * total,
                    None => return Err(missing("c")),
                };
                match &self.a {
                    None => TrigAnParams::with_solved_a(m, b, c),
                    Some(_) => TrigAnParams::new(m, self.scalar("a", &self.a)?, b, c),
                }
                .map(FamilyParams::TrigAn)
            }
            FamilyTag::TrigBcn | FamilyTag::BcnToBn => {
                self.only(&["m", "q", "r", "s"])?;
                let get = |name: &str, v: Option<Cx>| v.map(to_complex).ok_or_else(|| missing(name));
                TrigBCnParams::new(
                    self.m_vector()?,
                    get("q", self.q)?,
                    get("r", self.r)?,
                    get("s", self.s)?,
                )
                .map(FamilyParams::TrigBCn)
            }
        };
        built.map_err(|e| RunError::Config(format!("{} parameters: {e}", self.kind.name())))
    }

    fn only(&self, allowed: &[&str]) -> Result<(), RunError> {
        let present = [
            ("m", self.m.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
            ("c", self.c.is_some()),
            ("q", self.q.is_some()),
            ("r", self.r.is_some()),
            ("s", self.s.is_some()),
        ];
        for (name, set) in present {
            if set && !allowed.contains(&name) {
                return Err(RunError::Config(format!(
                    "field `{name}` does not apply to family {}",
                    self.kind.name()
                )));
            }
        }
        Ok(())
    }

    fn m_vector(&self) -> Result<Vec<Complex64>, RunError> {
        let m = self.m.as_ref().ok_or_else(|| missing("m"))?;
        Ok(m.iter().map(|&v| to_complex(v)).collect())
    }

    fn vector(&self, name: &str, v: &Option<ParamValue>) -> Result<Vec<Complex64>, RunError> {
        match v {
            Some(ParamValue::Vector(v)) => Ok(v.iter().map(|&z| to_complex(z)).collect()),
            Some(ParamValue::Scalar(_)) => Err(RunError::Config(format!(
                "`{name}` must be a list of [re, im] pairs for family {}",
                self.kind.name()
            ))),
            None => Err(missing(name)),
        }
    }

    fn scalar(&self, name: &str, v: &Option<ParamValue>) -> Result<Complex64, RunError> {
        match v {
            Some(ParamValue::Scalar(z)) => Ok(to_complex(*z)),
            Some(ParamValue::Vector(_)) => Err(RunError::Config(format!(
                "`{name}` must be a single [re, im] pair for family {}",
                self.kind.name()
            ))),
            None => Err(missing(name)),
        }
    }
}

fn missing(name: &str) -> RunError {
    RunError::Config(format!("missing family field `{name}`"))
}

/// How random trigonometric A_n draws treat the WDVV relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationMode {
    /// `a` solved so the relation holds.
    #[default]
    Solve,
    /// `a` shifted so the relation is off by a random amount of modulus in `[0.5, 2]`.
    Violate,
}

/// Random parameter sets replacing explicit family parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamDraws {
    /// Draws per dimension.
    pub count: usize,
    /// Numbers of coordinates.
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub relation: RelationMode,
}

fn is_default(m: &RelationMode) -> bool {
    *m == RelationMode::Solve
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
}

/// What a config is expected to show; evaluated into `expectation_met`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub outcome: Outcome,
    /// Every sample residual, and every residual component, must exceed this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_residual_above: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Must match the subcommand when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    pub family: FamilySpec,
    /// 1-based direction; all directions when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Scale of the B_n to BC_{n−1} map.
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r_scale: Option<Cx>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param_draws: Option<ParamDraws>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, RunError> {
        serde_json::from_str(text).map_err(|e| RunError::Config(format!("invalid config: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_in() {
        let cfg = RunConfig::from_json(r#"{"family": {"kind": "rational-an", "a": [[1,0],[1,0]]}}"#)
            .unwrap();
        assert_eq!(cfg.samples, DEFAULT_SAMPLES);
        assert_eq!(cfg.tolerance, DEFAULT_TOLERANCE);
        assert_eq!(cfg.seed, 0);
        assert!(matches!(cfg.family.params(false).unwrap(), FamilyParams::RationalAn(_)));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(RunConfig::from_json(r#"{"family": {"kind": "rational-an"}, "sample": 3}"#).is_err());
        assert!(RunConfig::from_json(r#"{"family": {"kind": "rational-xx"}}"#).is_err());
    }

    #[test]
    fn misplaced_parameter_rejected() {
        let spec: FamilySpec =
            serde_json::from_str(r#"{"kind": "rational-an", "a": [[1,0]], "q": [1,0]}"#).unwrap();
        assert!(spec.params(false).is_err());
        let spec: FamilySpec =
            serde_json::from_str(r#"{"kind": "trig-an", "m": [[1,0]], "a": [[1,0]], "b": [1,0], "c": [1,0]}"#)
                .unwrap();
        assert!(spec.params(false).is_err());
    }

    #[test]
    fn trig_an_defaults() {
        let spec: FamilySpec =
            serde_json::from_str(r#"{"kind": "trig-an", "m": [[1,0],[2,0]], "b": [1,0]}"#).unwrap();
        // with c = −bM and b = ±1, M² = c² and a cannot be solved
        assert!(spec.params(true).is_err());
        let spec: FamilySpec = serde_json::from_str(
            r#"{"kind": "trig-an", "m": [[1,0],[2,0]], "a": [0.5,0], "b": [1,0]}"#,
        )
        .unwrap();
        assert!(spec.params(false).is_err());
        let FamilyParams::TrigAn(p) = spec.params(true).unwrap() else {
            panic!("wrong family")
        };
        assert_eq!(p.c(), Complex64::new(-3.0, 0.0));
    }

    #[test]
    fn params_echo_round_trips() {
        let spec: FamilySpec = serde_json::from_str(
            r#"{"kind": "trig-bcn", "m": [[2,0]], "q": [-1,0], "r": [1,0], "s": [1,0]}"#,
        )
        .unwrap();
        let p = spec.params(false).unwrap();
        assert_eq!(FamilySpec::from_params(FamilyTag::TrigBcn, &p), spec);
    }
}
