//! Planning and parallel execution of a run.
//!
//! A run expands into units (one parameter set and direction each) and each
//! unit into samples. Sample `k` in that order draws its point from
//! `stream(seed, k)`, parameter draw `d` from `stream(seed, DRAW_STREAM_BASE + d)`,
//! so reports do not depend on thread scheduling.

use crate::config::{
    from_complex, to_complex, Command, Cx, FamilySpec, FamilyTag, Outcome, RelationMode,
    RunConfig,
};
use crate::error::RunError;
use crate::report::{A2Report, Components, DrawRecord, MappingRecord, ResidualReport, SampleRecord};
use num_complex::Complex64;
use rayon::prelude::*;
use wdvv_core::equivalence::{an_rat_to_trig, bcn_to_bn, bn_to_bcn, AnEquivalence, BnEquivalence, Pairing};
use wdvv_core::families::degenerate::{
    h_combination_unchecked, q_asymmetry_unchecked, HYPOTHESIS_TOL,
};
use wdvv_core::families::trig_an::{trig_an_metric_det, trig_an_relation};
use wdvv_core::families::{
    FamilyKind, FamilyParams, RationalAnParams, TrigAnParams, TrigBCnParams,
};
use wdvv_core::legendre::a2::{self, CrossSignReport};
use wdvv_core::legendre::LegendreContext;
use wdvv_core::linalg::{determinant, wdvv_residual, ComplexMatrix};
use wdvv_core::oracle::derivative_check;
use wdvv_core::sampling::{
    family_point, random_params, random_violating_trig_an, stream, MAX_ATTEMPTS,
};
use wdvv_core::Error;

/// Coordinate round trip tolerance for Legendre checks.
pub const ROUND_TRIP_TOL: f64 = 1e-10;
/// Parameter round trip tolerance for the B_n and BC_{n−1} maps.
pub const PARAM_ROUND_TRIP_TOL: f64 = 1e-12;
/// Tolerance on the unit A₂ monomial coefficients.
pub const COEFFICIENT_TOL: f64 = 1e-10;
pub const DRAW_STREAM_BASE: u64 = 1 << 62;

enum Subject {
    Wdvv {
        family: FamilyParams,
        eta_inv: ComplexMatrix,
    },
    Derivative(FamilyParams),
    Metric(FamilyParams),
    SpecialCase {
        family: FamilyParams,
        params: TrigAnParams,
    },
    Legendre {
        family: FamilyParams,
        ctx: LegendreContext,
        unit_a2: bool,
    },
    AnEquivalence {
        family: FamilyParams,
        ctx: LegendreContext,
        map: AnEquivalence,
    },
    BnEquivalence {
        family: FamilyParams,
        ctx: LegendreContext,
        map: BnEquivalence,
    },
}

impl Subject {
    /// Family whose coordinates are sampled.
    fn sampled(&self) -> &FamilyParams {
        match self {
            Self::Wdvv { family, .. }
            | Self::SpecialCase { family, .. }
            | Self::Legendre { family, .. }
            | Self::AnEquivalence { family, .. }
            | Self::BnEquivalence { family, .. } => family,
            Self::Derivative(f) | Self::Metric(f) => f,
        }
    }
}

struct Unit {
    draw: Option<usize>,
    gamma: Option<usize>,
    subject: Subject,
}

#[derive(Default)]
struct Plan {
    units: Vec<Unit>,
    draws: Vec<DrawRecord>,
    mappings: Vec<MappingRecord>,
    notes: Vec<String>,
}

#[derive(Default)]
struct Measurement {
    residual: f64,
    round_trip: Option<f64>,
    pairing: Option<Pairing>,
    components: Option<Components>,
    cross: Option<CrossSignReport>,
}

fn config_err(context: &str, e: impl std::fmt::Display) -> RunError {
    RunError::Config(format!("{context}: {e}"))
}

fn allowed_families(command: Command) -> &'static [FamilyTag] {
    use FamilyTag::*;
    match command {
        Command::CheckWdvv | Command::DerivativeCheck | Command::MetricCheck => {
            &[RationalAn, RationalBn, TrigAn, TrigBcn]
        }
        Command::LegendreCheck => &[RationalAn, RationalBn],
        Command::EquivalenceCheck => &[AnToTrig, BnToBcn, BcnToBn],
        Command::SpecialCaseCheck => &[TrigAn],
    }
}

fn core_kind(tag: FamilyTag) -> FamilyKind {
    match tag {
        FamilyTag::RationalAn | FamilyTag::AnToTrig => FamilyKind::RationalAn,
        FamilyTag::RationalBn | FamilyTag::BnToBcn => FamilyKind::RationalBn,
        FamilyTag::TrigAn => FamilyKind::TrigAn,
        FamilyTag::TrigBcn | FamilyTag::BcnToBn => FamilyKind::TrigBCn,
    }
}

fn validate(command: Command, cfg: &RunConfig) -> Result<(), RunError> {
    if let Some(c) = cfg.command {
        if c != command {
            return Err(RunError::Config(format!(
                "config is for `{}` but `{}` was requested",
                c.name(),
                command.name()
            )));
        }
    }
    let tag = cfg.family.kind;
    if !allowed_families(command).contains(&tag) {
        return Err(RunError::Config(format!(
            "family {} is not supported by `{}`",
            tag.name(),
            command.name()
        )));
    }
    if !(cfg.tolerance.is_finite() && cfg.tolerance > 0.0) {
        return Err(RunError::Config("tolerance must be positive".into()));
    }
    if cfg.samples == 0 && command != Command::MetricCheck {
        return Err(RunError::Config("samples must be at least 1".into()));
    }
    if cfg.gamma == Some(0) {
        return Err(RunError::Config("gamma is 1-based".into()));
    }
    if cfg.r_scale.is_some() && tag != FamilyTag::BnToBcn {
        return Err(RunError::Config("`R` only applies to bn-to-bcn".into()));
    }
    if let Some(d) = &cfg.param_draws {
        if cfg.family.has_params() {
            return Err(RunError::Config(
                "family parameters and param_draws are mutually exclusive".into(),
            ));
        }
        if command == Command::SpecialCaseCheck {
            return Err(RunError::Config(
                "special-case-check needs explicit parameters".into(),
            ));
        }
        if d.count == 0 || d.dims.is_empty() || d.dims.contains(&0) {
            return Err(RunError::Config(
                "param_draws needs count ≥ 1 and nonempty positive dims".into(),
            ));
        }
        if d.relation == RelationMode::Violate && tag != FamilyTag::TrigAn {
            return Err(RunError::Config(
                "relation `violate` only applies to trig-an".into(),
            ));
        }
    }
    Ok(())
}

type Sources = (Vec<(Option<usize>, FamilyParams)>, Vec<DrawRecord>);

fn sources(cfg: &RunConfig, command: Command) -> Result<Sources, RunError> {
    let tag = cfg.family.kind;
    let Some(d) = &cfg.param_draws else {
        let p = cfg.family.params(command == Command::SpecialCaseCheck)?;
        return Ok((vec![(None, p)], Vec::new()));
    };
    let mut out = Vec::new();
    let mut records = Vec::new();
    for &n in &d.dims {
        for _ in 0..d.count {
            let index = out.len();
            let mut rng = stream(cfg.seed, DRAW_STREAM_BASE + index as u64);
            let p = match d.relation {
                RelationMode::Solve => random_params(&mut rng, core_kind(tag), n),
                RelationMode::Violate => random_violating_trig_an(&mut rng, n),
            }
            .map_err(|e| config_err(&format!("parameter draw {index} (n = {n})"), e))?;
            let relation_value = match (&p, d.relation) {
                (FamilyParams::TrigAn(t), RelationMode::Violate) => {
                    Some(from_complex(trig_an_relation(t)))
                }
                _ => None,
            };
            records.push(DrawRecord {
                index,
                dim: n,
                family: FamilySpec::from_params(tag, &p),
                relation_value,
            });
            out.push((Some(index), p));
        }
    }
    Ok((out, records))
}

fn gammas(cfg: &RunConfig, n: usize) -> Result<Vec<usize>, RunError> {
    match cfg.gamma {
        Some(g) if g > n => Err(RunError::Config(format!(
            "gamma {g} out of range for {n} coordinates"
        ))),
        Some(g) => Ok(vec![g - 1]),
        None => Ok((0..n).collect()),
    }
}

fn cx(z: Complex64) -> Option<Cx> {
    Some(from_complex(z))
}

fn rel_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
}

fn bcn_values(p: &TrigBCnParams) -> Vec<Complex64> {
    let mut v = p.m().to_vec();
    v.extend([p.q(), p.r(), p.s()]);
    v
}

fn bn_mapping(draw: Option<usize>, gamma: usize, tag: FamilyTag, source: &FamilyParams, map: &BnEquivalence, round_trip_error: f64) -> MappingRecord {
    let t = map.target();
    MappingRecord {
        draw,
        gamma: gamma + 1,
        source: FamilySpec::from_params(tag, source),
        target: FamilySpec::from_params(FamilyTag::TrigBcn, &FamilyParams::TrigBCn(t.clone())),
        scale: None,
        r_scale: cx(map.r_scale()),
        h: cx(t.h()),
        lambda: cx(t.lambda()),
        lambda_sq: cx(t.lambda() * t.lambda()),
        h_from_source: cx(map.h_from_source()),
        lambda_sq_from_source: cx(map.lambda_sq_from_source()),
        predicted_pairing: Some(map.predicted_pairing().label().into()),
        round_trip_error: Some(round_trip_error),
    }
}

fn is_unit_a2(p: &RationalAnParams) -> bool {
    p.a() == [Complex64::new(1.0, 0.0); 2]
}

fn plan(command: Command, cfg: &RunConfig) -> Result<Plan, RunError> {
    validate(command, cfg)?;
    let (sources, draws) = sources(cfg, command)?;
    let mut plan = Plan {
        draws,
        ..Plan::default()
    };
    let tag = cfg.family.kind;
    for (draw, family) in sources {
        let label = match draw {
            Some(d) => format!("draw {d}"),
            None => tag.name().to_string(),
        };
        let ctx_err = |e: Error| config_err(&label, e);
        let n = family.dim();
        match command {
            Command::CheckWdvv => {
                let eta_inv = family.metric().map_err(ctx_err)?.eta_inv;
                plan.units.push(Unit {
                    draw,
                    gamma: None,
                    subject: Subject::Wdvv { family, eta_inv },
                });
            }
            Command::DerivativeCheck => plan.units.push(Unit {
                draw,
                gamma: None,
                subject: Subject::Derivative(family),
            }),
            Command::MetricCheck => plan.units.push(Unit {
                draw,
                gamma: None,
                subject: Subject::Metric(family),
            }),
            Command::SpecialCaseCheck => {
                let FamilyParams::TrigAn(params) = family.clone() else {
                    unreachable!("validated family")
                };
                plan.notes.extend(special_case_hypotheses(&params));
                plan.units.push(Unit {
                    draw,
                    gamma: None,
                    subject: Subject::SpecialCase { family, params },
                });
            }
            Command::LegendreCheck => {
                let unit_a2 = matches!(&family, FamilyParams::RationalAn(p) if is_unit_a2(p));
                for g in gammas(cfg, n)? {
                    let ctx = LegendreContext::from_family(&family, g).map_err(ctx_err)?;
                    plan.units.push(Unit {
                        draw,
                        gamma: Some(g),
                        subject: Subject::Legendre {
                            family: family.clone(),
                            ctx,
                            unit_a2: unit_a2 && g == 0,
                        },
                    });
                }
            }
            Command::EquivalenceCheck => {
                for g in gammas(cfg, n)? {
                    let unit = equivalence_unit(cfg, tag, draw, g, &family, &mut plan.mappings)
                        .map_err(ctx_err)?;
                    plan.units.push(unit);
                }
            }
        }
    }
    Ok(plan)
}

fn equivalence_unit(
    cfg: &RunConfig,
    tag: FamilyTag,
    draw: Option<usize>,
    g: usize,
    family: &FamilyParams,
    mappings: &mut Vec<MappingRecord>,
) -> wdvv_core::Result<Unit> {
    match (tag, family) {
        (FamilyTag::AnToTrig, FamilyParams::RationalAn(p)) => {
            let map = an_rat_to_trig(p, g)?;
            let target = FamilyParams::TrigAn(map.target().clone());
            mappings.push(MappingRecord {
                draw,
                gamma: g + 1,
                source: FamilySpec::from_params(tag, family),
                target: FamilySpec::from_params(FamilyTag::TrigAn, &target),
                scale: cx(map.scale()),
                r_scale: None,
                h: None,
                lambda: None,
                lambda_sq: None,
                h_from_source: None,
                lambda_sq_from_source: None,
                predicted_pairing: None,
                round_trip_error: None,
            });
            Ok(Unit {
                draw,
                gamma: Some(g),
                subject: Subject::AnEquivalence {
                    family: family.clone(),
                    ctx: LegendreContext::an(p.clone(), g)?,
                    map,
                },
            })
        }
        (FamilyTag::BnToBcn, FamilyParams::RationalBn(p)) => {
            let r = cfg.r_scale.map(to_complex).unwrap_or(Complex64::new(1.0, 0.0));
            let map = bn_to_bcn(p, g, r)?;
            let (back, back_r) = bcn_to_bn(map.target(), g)?;
            let err = rel_err(back.b(), p.b()).max((back_r - r).norm() / r.norm());
            mappings.push(bn_mapping(draw, g, tag, family, &map, err));
            Ok(Unit {
                draw,
                gamma: Some(g),
                subject: Subject::BnEquivalence {
                    family: family.clone(),
                    ctx: LegendreContext::bn(p.clone(), g)?,
                    map,
                },
            })
        }
        (FamilyTag::BcnToBn, FamilyParams::TrigBCn(p)) => {
            let (b, r) = bcn_to_bn(p, g)?;
            let map = bn_to_bcn(&b, g, r)?;
            let err = rel_err(&bcn_values(map.target()), &bcn_values(p));
            let mut record = bn_mapping(draw, g, tag, family, &map, err);
            // source is the given BC set, target the recovered rational set
            record.target = FamilySpec::from_params(FamilyTag::RationalBn, &FamilyParams::RationalBn(b.clone()));
            mappings.push(record);
            let source = FamilyParams::RationalBn(b.clone());
            Ok(Unit {
                draw,
                gamma: Some(g),
                subject: Subject::BnEquivalence {
                    family: source,
                    ctx: LegendreContext::bn(b, g)?,
                    map,
                },
            })
        }
        _ => unreachable!("validated family"),
    }
}

fn special_case_hypotheses(p: &TrigAnParams) -> Vec<String> {
    let mut notes = Vec::new();
    let k1 = p.cond1();
    if k1.norm() > HYPOTHESIS_TOL * (p.b() * p.total()).norm().max(1.0) {
        notes.push(format!("hypothesis bM + c = 0 fails: bM + c = {k1}"));
    }
    let b = p.b();
    if (b - 1.0).norm() > HYPOTHESIS_TOL && (b + 1.0).norm() > HYPOTHESIS_TOL {
        notes.push(format!("hypothesis b = ±1 fails: b = {b}"));
    }
    if !notes.is_empty() {
        notes.push("residuals computed without the hypothesis checks".into());
    }
    notes
}

fn measure(subject: &Subject, x: &[Complex64], tol: f64) -> wdvv_core::Result<Measurement> {
    let plain = |residual| Measurement {
        residual,
        ..Measurement::default()
    };
    match subject {
        Subject::Wdvv { family, eta_inv } => Ok(plain(wdvv_residual(&family.tensor(x)?, eta_inv)?)),
        Subject::Derivative(family) => Ok(plain(derivative_check(family, x)?)),
        Subject::Metric(family) => {
            let metric = family.metric()?;
            let closed = match family {
                FamilyParams::TrigAn(p) => trig_an_metric_det(p),
                _ => metric.det,
            };
            let lu = determinant(&metric.eta);
            Ok(Measurement {
                residual: (closed - lu).norm() / lu.norm(),
                components: Some(Components {
                    det_closed_form: cx(closed),
                    det_lu: cx(lu),
                    identity_defect: Some(metric.identity_defect()),
                    ..Components::default()
                }),
                ..Measurement::default()
            })
        }
        Subject::SpecialCase { params, .. } => {
            let q = q_asymmetry_unchecked(params, x)?;
            let h = h_combination_unchecked(params, x)?;
            Ok(Measurement {
                residual: q.max(h),
                components: Some(Components {
                    q_asymmetry: Some(q),
                    h_combination: Some(h),
                    ..Components::default()
                }),
                ..Measurement::default()
            })
        }
        Subject::Legendre { ctx, unit_a2, .. } => Ok(Measurement {
            residual: ctx.consistency(x)?,
            round_trip: Some(ctx.round_trip_error(x)?),
            cross: if *unit_a2 {
                Some(a2::certify_cross_sign(x, tol)?)
            } else {
                None
            },
            ..Measurement::default()
        }),
        Subject::AnEquivalence { ctx, map, .. } => Ok(plain(map.verify(&ctx.hat_coords(x)?)?)),
        Subject::BnEquivalence { ctx, map, .. } => {
            let v = map.verify(&ctx.hat_coords(x)?, tol)?;
            Ok(Measurement {
                residual: v.residual,
                pairing: Some(v.pairing),
                components: Some(Components {
                    principal_residual: Some(v.principal_residual),
                    flipped_residual: v.flipped_residual,
                    ..Components::default()
                }),
                ..Measurement::default()
            })
        }
    }
}

fn run_sample(
    unit: &Unit,
    index: usize,
    seed: u64,
    tol: f64,
) -> wdvv_core::Result<(SampleRecord, Option<CrossSignReport>)> {
    let family = unit.subject.sampled();
    let mut record = SampleRecord {
        index,
        draw: unit.draw,
        dim: family.dim(),
        gamma: unit.gamma.map(|g| g + 1),
        point: Vec::new(),
        residual: 0.0,
        resamples: 0,
        round_trip: None,
        pairing: None,
        components: None,
    };
    let finish = |mut record: SampleRecord, m: Measurement| {
        record.residual = m.residual;
        record.round_trip = m.round_trip;
        record.pairing = m.pairing.map(|p| p.label().to_string());
        record.components = m.components;
        (record, m.cross)
    };
    if let Subject::Metric(_) = unit.subject {
        return Ok(finish(record, measure(&unit.subject, &[], tol)?));
    }
    let mut rng = stream(seed, index as u64);
    for attempt in 0..MAX_ATTEMPTS {
        let x = family_point(&mut rng, family)?;
        match measure(&unit.subject, &x, tol) {
            Ok(m) => {
                record.point = x.iter().map(|&z| from_complex(z)).collect();
                record.resamples = attempt;
                return Ok(finish(record, m));
            }
            Err(Error::SingularPoint { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

fn a2_report(crosses: &[CrossSignReport]) -> wdvv_core::Result<A2Report> {
    let c = a2::extract_coefficients(&Complex64::new(0.4, 0.1), &Complex64::new(1.1, -0.2))?;
    let coefficient_error = [
        (c.cubic_gamma, a2::CUBIC_GAMMA),
        (c.mixed_square, a2::MIXED_SQUARE),
        (c.cubic_other, a2::CUBIC_OTHER),
        (c.trilog, a2::TRILOG),
    ]
    .iter()
    .map(|(got, want)| (got - want).norm())
    .fold(0.0, f64::max);
    let first = crosses.first().map_or(0, |r| r.certified_sign);
    let certified = if crosses.iter().all(|r| r.certified_sign == first) {
        first
    } else {
        0
    };
    let max = |f: fn(&CrossSignReport) -> f64| crosses.iter().map(f).fold(0.0, f64::max);
    Ok(A2Report {
        cubic_gamma: from_complex(c.cubic_gamma),
        cross: from_complex(c.cross),
        mixed_square: from_complex(c.mixed_square),
        cubic_other: from_complex(c.cubic_other),
        trilog: from_complex(c.trilog),
        coefficient_error,
        stated_cross_sign: a2::STATED_CROSS as i8,
        certified_cross_sign: certified,
        residual_plus: max(|r| r.residual_plus),
        residual_minus: max(|r| r.residual_minus),
    })
}

fn pairing_note(samples: &[SampleRecord], mappings: &[MappingRecord]) -> Option<String> {
    let paired: Vec<&str> = samples.iter().filter_map(|s| s.pairing.as_deref()).collect();
    if paired.is_empty() {
        return None;
    }
    let flipped = paired
        .iter()
        .filter(|&&p| p == Pairing::FlippedXi0.label())
        .count();
    let predicted_flip = mappings
        .iter()
        .filter(|m| m.predicted_pairing.as_deref() == Some(Pairing::FlippedXi0.label()))
        .count();
    Some(format!(
        "principal pairing at {} of {} samples, ξ₀ flipped at {flipped}; \
         flip predicted for {predicted_flip} of {} maps",
        paired.len() - flipped,
        paired.len(),
        mappings.len()
    ))
}

/// Executes `command` under `cfg`.
pub fn run(command: Command, cfg: &RunConfig) -> Result<ResidualReport, RunError> {
    let plan = plan(command, cfg)?;
    let per_unit = if command == Command::MetricCheck { 1 } else { cfg.samples };
    let tasks: Vec<(usize, &Unit)> = plan
        .units
        .iter()
        .flat_map(|u| std::iter::repeat_n(u, per_unit))
        .enumerate()
        .collect();
    let results = tasks
        .par_iter()
        .map(|&(index, unit)| run_sample(unit, index, cfg.seed, cfg.tolerance))
        .collect::<wdvv_core::Result<Vec<_>>>()?;
    let (samples, crosses): (Vec<SampleRecord>, Vec<Option<CrossSignReport>>) =
        results.into_iter().unzip();
    let crosses: Vec<CrossSignReport> = crosses.into_iter().flatten().collect();

    let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    let min_residual = samples.iter().map(|s| s.residual).fold(f64::INFINITY, f64::min);
    let min_component = samples
        .iter()
        .filter_map(|s| s.components.as_ref())
        .flat_map(|c| [c.q_asymmetry, c.h_combination])
        .flatten()
        .reduce(f64::min);
    let max_round_trip = samples
        .iter()
        .filter_map(|s| s.round_trip)
        .reduce(f64::max);
    let a2_example = if crosses.is_empty() {
        None
    } else {
        Some(a2_report(&crosses)?)
    };

    let mut pass = !samples.is_empty()
        && samples.iter().all(|s| s.residual.is_finite() && s.residual < cfg.tolerance);
    pass &= max_round_trip.is_none_or(|r| r < ROUND_TRIP_TOL);
    pass &= plan
        .mappings
        .iter()
        .filter_map(|m| m.round_trip_error)
        .all(|e| e < PARAM_ROUND_TRIP_TOL);
    if let Some(a2) = &a2_example {
        pass &= a2.coefficient_error < COEFFICIENT_TOL && a2.certified_cross_sign != 0;
    }

    let expectation_met = cfg.expect.as_ref().map(|e| {
        let outcome = match e.outcome {
            Outcome::Pass => pass,
            Outcome::Fail => !pass,
        };
        let floor_met = e.min_residual_above.is_none_or(|floor| {
            min_residual > floor && min_component.is_none_or(|c| c > floor)
        });
        outcome && floor_met
    });

    Ok(ResidualReport {
        command,
        config: cfg.clone(),
        draws: plan.draws,
        pairing_note: pairing_note(&samples, &plan.mappings),
        samples,
        max_residual,
        min_residual,
        min_component,
        max_round_trip,
        pass,
        mappings: plan.mappings,
        a2_example,
        notes: plan.notes,
        expectation_met,
        timing: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(json: &str) -> RunConfig {
        RunConfig::from_json(json).unwrap()
    }

    #[test]
    fn gamma_selects_one_direction() {
        let r = run(
            Command::LegendreCheck,
            &cfg(r#"{"family": {"kind": "rational-an", "a": [[1,0],[0.5,0.5],[2,0]]}, "gamma": 2, "samples": 3}"#),
        )
        .unwrap();
        assert!(r.samples.iter().all(|s| s.gamma == Some(2)));
        assert!(r.pass);
        assert!(r.a2_example.is_none());
    }

    #[test]
    fn unit_a2_only_for_first_direction() {
        let r = run(
            Command::LegendreCheck,
            &cfg(r#"{"family": {"kind": "rational-an", "a": [[1,0],[1,0]]}, "gamma": 2, "samples": 2}"#),
        )
        .unwrap();
        assert!(r.a2_example.is_none());
    }

    #[test]
    fn special_case_notes_failed_hypotheses() {
        let p = TrigAnParams::new(
            vec![Complex64::new(1.0, 0.0); 3],
            Complex64::new(0.3, 0.0),
            Complex64::new(1.5, 0.0),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let notes = special_case_hypotheses(&p);
        assert_eq!(notes.len(), 3);
        let ok = TrigAnParams::new(
            vec![Complex64::new(1.0, 0.0); 3],
            Complex64::new(0.3, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(3.0, 0.0),
        )
        .unwrap();
        assert!(special_case_hypotheses(&ok).is_empty());
    }

    #[test]
    fn expectation_can_fail() {
        let r = run(
            Command::CheckWdvv,
            &cfg(r#"{"family": {"kind": "rational-bn", "b": [[1,0],[2,0],[0.5,0]]}, "samples": 2,
                     "expect": {"outcome": "fail"}}"#),
        )
        .unwrap();
        assert!(r.pass);
        assert_eq!(r.expectation_met, Some(false));
    }

    #[test]
    fn metric_check_ignores_samples() {
        let r = run(
            Command::MetricCheck,
            &cfg(r#"{"family": {"kind": "trig-bcn", "m": [[1,0],[0.5,0.2]], "q": [1,0], "r": [0.3,0], "s": [0.2,0.1]}, "samples": 0}"#),
        )
        .unwrap();
        assert_eq!(r.samples.len(), 1);
        assert!(r.samples[0].point.is_empty());
        assert!(r.pass);
    }

    #[test]
    fn draws_and_params_are_exclusive() {
        let e = run(
            Command::CheckWdvv,
            &cfg(r#"{"family": {"kind": "rational-an", "a": [[1,0]]}, "param_draws": {"count": 1, "dims": [2]}}"#),
        )
        .unwrap_err();
        assert!(matches!(e, RunError::Config(_)));
    }

    #[test]
    fn rel_err_is_relative() {
        let a = [Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)];
        let b = [Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.01)];
        assert!((rel_err(&b, &a) - 0.005).abs() < 1e-12);
    }
}
