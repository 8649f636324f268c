//! Seeded sampling of complex points and parameters.
//!
//! Every sample index gets its own ChaCha stream, so results do not depend on
//! evaluation order.

use crate::error::{Error, Result};
use crate::families::{
    FamilyKind, FamilyParams, RationalAnParams, RationalBnParams, TrigAnParams, TrigBCnParams,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

pub const MIN_MODULUS: f64 = 0.5;
pub const MAX_MODULUS: f64 = 2.0;
/// Required distance from the singular set.
pub const SEPARATION: f64 = 0.1;
pub const MAX_ATTEMPTS: usize = 100;

/// Generator for sample `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Modulus uniform in `[0.5, 2]`, phase uniform.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = rng.random_range(MIN_MODULUS..=MAX_MODULUS);
    let phase = rng.random_range(0.0..TAU);
    Complex64::from_polar(r, phase)
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| random_complex(rng)).collect()
}

/// Draws until `build` succeeds, up to [`MAX_ATTEMPTS`] times.
///
/// `build` returns `None` to reject a draw.
pub fn draw_until<R, T, F>(rng: &mut R, mut build: F) -> Result<T>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Option<T>,
{
    for _ in 0..MAX_ATTEMPTS {
        if let Some(v) = build(rng) {
            return Ok(v);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// A point whose `margin` exceeds [`SEPARATION`].
pub fn separated_point<R, F>(rng: &mut R, n: usize, margin: F) -> Result<Vec<Complex64>>
where
    R: Rng + ?Sized,
    F: Fn(&[Complex64]) -> f64,
{
    draw_until(rng, |rng| {
        let x = random_vector(rng, n);
        (margin(&x) > SEPARATION).then_some(x)
    })
}

/// Random parameters for `kind` on `n` coordinates.
///
/// Draws keep the family's nondegeneracy quantities at least [`SEPARATION`]
/// from zero. Trigonometric A_n parameters satisfy the WDVV relation, with `a`
/// solved from `(m, b, c)`.
pub fn random_params<R: Rng + ?Sized>(
    rng: &mut R,
    kind: FamilyKind,
    n: usize,
) -> Result<FamilyParams> {
    let far = |v: Complex64| v.norm() > SEPARATION;
    match kind {
        FamilyKind::RationalAn => draw_until(rng, |rng| {
            let a = random_vector(rng, n);
            let total: Complex64 = a.iter().sum();
            if !far(total + 1.0) {
                return None;
            }
            RationalAnParams::new(a).ok().map(FamilyParams::RationalAn)
        }),
        FamilyKind::RationalBn => draw_until(rng, |rng| {
            let b = random_vector(rng, n + 1);
            let total: Complex64 = b.iter().sum();
            // B − b_γ also stays away from zero for every γ
            if !far(total) || b[1..].iter().any(|&bg| !far(total - bg)) {
                return None;
            }
            RationalBnParams::new(b).ok().map(FamilyParams::RationalBn)
        }),
        FamilyKind::TrigAn => draw_until(rng, |rng| {
            let m = random_vector(rng, n);
            let b = random_complex(rng);
            let c = random_complex(rng);
            let total: Complex64 = m.iter().sum();
            if !far(total * total - c * c) {
                return None;
            }
            let p = TrigAnParams::with_solved_a(m, b, c).ok()?;
            (far(p.cond1()) && far(p.cond2())).then_some(FamilyParams::TrigAn(p))
        }),
        FamilyKind::TrigBCn => {
            if n < 2 {
                return Err(Error::InvalidParams(
                    "the BC family needs at least two coordinates".into(),
                ));
            }
            draw_until(rng, |rng| {
                let m = random_vector(rng, n - 1);
                let (q, r, s) = (random_complex(rng), random_complex(rng), random_complex(rng));
                let p = TrigBCnParams::new(m, q, r, s).ok()?;
                (far(p.h()) && far(p.nondegeneracy())).then_some(FamilyParams::TrigBCn(p))
            })
        }
    }
}

/// Trigonometric A_n parameters whose WDVV relation is off by a random `δ`
/// with `|δ| ∈ [0.5, 2]`, obtained by shifting `a` of a valid draw. The metric
/// stays nondegenerate.
pub fn random_violating_trig_an<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<FamilyParams> {
    draw_until(rng, |rng| {
        let FamilyParams::TrigAn(p) = random_params(rng, FamilyKind::TrigAn, n).ok()? else {
            return None;
        };
        let delta = random_complex(rng);
        let total = p.total();
        let shift = delta / (total * total - p.c() * p.c());
        let q = TrigAnParams::new(p.m().to_vec(), p.a() + shift, p.b(), p.c()).ok()?;
        (q.cond1().norm() > SEPARATION && q.cond2().norm() > SEPARATION)
            .then_some(FamilyParams::TrigAn(q))
    })
}

/// A point for `family` separated from its singular set.
pub fn family_point<R: Rng + ?Sized>(rng: &mut R, family: &FamilyParams) -> Result<Vec<Complex64>> {
    separated_point(rng, family.dim(), |x| family.sampling_margin(x))
}
