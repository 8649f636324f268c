//! Complex special functions used by the trigonometric prepotentials.
//!
//! The central object is the cubic-trilogarithm kernel
//!
//! ```text
//! f(z) = z³/6 − ¼·Li₃(e^{−2z}),      f'''(z) = coth z
//! ```
//!
//! and its rotated counterpart `f̃(z) = −f(−iz)` with `f̃''' = cot`. Polylogarithms
//! are evaluated by their power series on the closed disk `|z| ≤ 0.999`; every
//! argument the prepotentials need has the form `e^{−2z}` with `Re z > 0`, so no
//! analytic continuation is attempted.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest modulus accepted by the polylogarithm series.
pub const SERIES_RADIUS: f64 = 0.999;

/// Relative size of the last retained series term.
const SERIES_RTOL: f64 = 1e-16;

/// Hard cap on the number of series terms.
const SERIES_MAX_TERMS: usize = 10_000;

/// Minimum distance to a pole of `coth`/`cot` before evaluation is refused.
pub const POLE_GUARD: f64 = 1e-8;

/// `Re z` must exceed this for `f(z)` so that `|e^{−2z}| ≤ 0.999`.
pub const KERNEL_MIN_RE: f64 = 0.0005;

/// Polylogarithm `Li_n(z)` for `n ∈ {0, 1, 2, 3}`.
///
/// `Li₀(z) = z/(1−z)`, `Li₁(z) = −log(1−z)` (principal branch), and `Li₂`, `Li₃`
/// by the truncated series `Σ z^k/k^n`. Orders `n ≥ 1` require `|z| ≤ 0.999`.
pub fn polylog(order: u32, z: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    match order {
        0 => {
            if (one - z).norm() <= f64::EPSILON {
                return Err(Error::Domain {
                    op: "polylog",
                    z,
                    detail: "Li0 has a pole at z = 1",
                });
            }
            Ok(z / (one - z))
        }
        1..=3 => {
            if z.norm().is_nan() || z.norm() > SERIES_RADIUS {
                return Err(Error::Domain {
                    op: "polylog",
                    z,
                    detail: "series requires |z| <= 0.999",
                });
            }
            if order == 1 {
                return Ok(-(one - z).ln());
            }
            Ok(polylog_series(order, z))
        }
        n => Err(Error::UnsupportedOrder(n)),
    }
}

fn polylog_series(order: u32, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut power = z;
    for k in 1..=SERIES_MAX_TERMS {
        let kf = k as f64;
        let term = power / kf.powi(order as i32);
        acc += term;
        if term.norm() <= SERIES_RTOL * acc.norm() {
            break;
        }
        power *= z;
    }
    acc
}

/// Distance from `z` to the nearest point of the lattice `kπi`.
pub fn distance_to_imaginary_lattice(z: Complex64) -> f64 {
    let k = (z.im / PI).round();
    Complex64::new(z.re, z.im - k * PI).norm()
}

/// Distance from `z` to the nearest point of the lattice `kπ` on the real axis.
pub fn distance_to_real_lattice(z: Complex64) -> f64 {
    let k = (z.re / PI).round();
    Complex64::new(z.re - k * PI, z.im).norm()
}

/// Hyperbolic cotangent, refusing arguments within [`POLE_GUARD`] of `kπi`.
pub fn coth(z: Complex64) -> Result<Complex64> {
    if distance_to_imaginary_lattice(z) < POLE_GUARD {
        return Err(Error::Pole {
            op: "coth",
            z,
            guard: POLE_GUARD,
        });
    }
    Ok(coth_unguarded(z))
}

// (1 + e^{-2z}) / (1 - e^{-2z}) is overflow-free for Re z >= 0; odd extension otherwise.
fn coth_unguarded(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -coth_unguarded(-z);
    }
    let w = (-2.0 * z).exp();
    (1.0 + w) / (1.0 - w)
}

/// Trigonometric cotangent, refusing arguments within [`POLE_GUARD`] of `kπ`.
pub fn cot(z: Complex64) -> Result<Complex64> {
    if distance_to_real_lattice(z) < POLE_GUARD {
        return Err(Error::Pole {
            op: "cot",
            z,
            guard: POLE_GUARD,
        });
    }
    // cot z = i·coth(iz)
    Ok(Complex64::i() * coth_unguarded(Complex64::i() * z))
}

/// The kernel `f(z) = z³/6 − ¼·Li₃(e^{−2z})`, defined here for `Re z > 0.0005`.
pub fn cubic_trilog(z: Complex64) -> Result<Complex64> {
    if z.re.is_nan() || z.re <= KERNEL_MIN_RE {
        return Err(Error::Domain {
            op: "cubic_trilog",
            z,
            detail: "requires Re z > 0.0005",
        });
    }
    let li3 = polylog(3, (-2.0 * z).exp())?;
    Ok(z * z * z / 6.0 - 0.25 * li3)
}

/// Third derivative of [`cubic_trilog`]: `coth z = (e^{2z}+1)/(e^{2z}−1)`.
pub fn cubic_trilog_d3(z: Complex64) -> Result<Complex64> {
    coth(z)
}

/// Second derivative of `8·f(κz/2)` with respect to `z`:
/// `κ³z + 2κ²·log(1 − e^{−κz})`, principal logarithm.
pub fn cubic_trilog_d2_scaled(kappa: Complex64, z: Complex64) -> Result<Complex64> {
    if kappa == Complex64::new(0.0, 0.0) {
        return Ok(kappa);
    }
    let arg = kappa * z;
    if arg.re.is_nan() || arg.re <= 0.001 {
        return Err(Error::Domain {
            op: "cubic_trilog_d2_scaled",
            z: arg,
            detail: "requires Re(kappa*z) > 0.001",
        });
    }
    let w = (-arg).exp();
    if (1.0 - w).norm() < 1e-9 {
        return Err(Error::Domain {
            op: "cubic_trilog_d2_scaled",
            z: arg,
            detail: "exp(-kappa*z) within 1e-9 of 1",
        });
    }
    Ok(kappa * kappa * kappa * z + 2.0 * kappa * kappa * (1.0 - w).ln())
}

/// Rotated kernel `f̃(z) = −f(−iz)`, defined for `Re(−iz) = Im z > 0.0005`.
pub fn rotated_cubic_trilog(z: Complex64) -> Result<Complex64> {
    Ok(-cubic_trilog(-Complex64::i() * z)?)
}

/// Third derivative of [`rotated_cubic_trilog`], which is `cot z`.
pub fn rotated_cubic_trilog_d3(z: Complex64) -> Result<Complex64> {
    cot(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    // Partial-sum oracle with an explicit term count, independent of the adaptive loop.
    fn partial_sum(order: i32, z: f64, terms: usize) -> f64 {
        (1..=terms).map(|k| z.powi(k as i32) / (k as f64).powi(order)).sum()
    }

    #[test]
    fn li1_is_minus_log() {
        let v = polylog(1, c(0.5, 0.0)).unwrap();
        assert!((v.re - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn li3_at_zero_is_zero() {
        assert_eq!(polylog(3, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn li3_and_li2_at_half_match_partial_sums() {
        let li3 = polylog(3, c(0.5, 0.0)).unwrap();
        let li2 = polylog(2, c(0.5, 0.0)).unwrap();
        assert!((li3.re - partial_sum(3, 0.5, 60)).abs() < 1e-15);
        assert!((li2.re - partial_sum(2, 0.5, 60)).abs() < 1e-15);
        assert!((li3.re - 0.537_213_193_608_040_2).abs() < 1e-15);
        assert!((li2.re - 0.582_240_526_465_012_5).abs() < 1e-15);
    }

    #[test]
    fn li0_closed_form_and_pole() {
        let v = polylog(0, c(0.5, 0.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(polylog(0, c(1.0, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn series_domain_is_enforced() {
        assert!(matches!(polylog(3, c(0.9995, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(polylog(2, c(0.0, 1.0)), Err(Error::Domain { .. })));
        assert!(polylog(3, c(0.999, 0.0)).is_ok());
        assert_eq!(polylog(4, c(0.1, 0.0)), Err(Error::UnsupportedOrder(4)));
    }

    #[test]
    fn kernel_reference_values() {
        // 1/6 − ¼·Li₃(e^{−2}) and 0.5³/6 − ¼·Li₃(e^{−1}), high-precision references.
        let f1 = cubic_trilog(c(1.0, 0.0)).unwrap();
        assert!(rel(f1, c(0.132_236_121_754_274_67, 0.0)) < 1e-14);
        let fh = cubic_trilog(c(0.5, 0.0)).unwrap();
        let direct = 0.125 / 6.0 - 0.25 * partial_sum(3, (-1.0f64).exp(), 200);
        assert!((fh.re - direct).abs() < 1e-15);
        assert!((fh.re + 0.075_915_522_719_216_61).abs() < 1e-15);
    }

    #[test]
    fn kernel_approaches_cubic_for_large_re() {
        for re in [5.0, 10.0, 20.0] {
            let z = c(re, 0.3);
            let diff = (cubic_trilog(z).unwrap() - z * z * z / 6.0).norm();
            assert!(diff <= 0.25 * (-2.0 * re).exp() * 1.01);
        }
    }

    #[test]
    fn kernel_domain_error() {
        assert!(cubic_trilog(c(0.0001, 1.0)).is_err());
        assert!(cubic_trilog(c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn coth_reference_and_pole() {
        let v = cubic_trilog_d3(c(1.0, 0.0)).unwrap();
        assert!((v.re - 1.313_035_285_499_331_3).abs() < 1e-15);
        assert!(matches!(coth(c(0.0, PI)), Err(Error::Pole { .. })));
        assert!(matches!(coth(c(1e-9, 0.0)), Err(Error::Pole { .. })));
        // large real part must not overflow
        assert!((coth(c(800.0, 0.1)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((coth(c(-800.0, 0.1)).unwrap() + c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn d2_scaled_reference() {
        let v = cubic_trilog_d2_scaled(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        let expect = 8.0 + 8.0 * (1.0 - (-2.0f64).exp()).ln();
        assert!((v.re - expect).abs() < 1e-14);
        assert!((v.re - 6.836_692_337_049_128).abs() < 1e-14);
        assert_eq!(
            cubic_trilog_d2_scaled(c(0.0, 0.0), c(1.0, 0.0)).unwrap(),
            c(0.0, 0.0)
        );
        assert!(cubic_trilog_d2_scaled(c(1.0, 0.0), c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn rotated_kernel_identities() {
        let v = rotated_cubic_trilog_d3(c(PI / 4.0, 0.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        // z = 0.5i gives −f(0.5)
        let w = rotated_cubic_trilog(c(0.0, 0.5)).unwrap();
        assert!(rel(w, -cubic_trilog(c(0.5, 0.0)).unwrap()) < 1e-15);
        // z = −0.5i maps to f(−0.5), outside the series domain
        assert!(rotated_cubic_trilog(c(0.0, -0.5)).is_err());
        assert!(matches!(cot(c(PI, 0.0)), Err(Error::Pole { .. })));
    }

    proptest! {
        #[test]
        fn li1_plus_log_vanishes(r in 0.0f64..0.999, t in 0.0f64..std::f64::consts::TAU) {
            let z = Complex64::from_polar(r, t);
            let v = polylog(1, z).unwrap() + (1.0 - z).ln();
            prop_assert!(v.norm() < 1e-13);
        }

        #[test]
        fn coth_is_odd(re in 0.01f64..3.0, im in -3.0f64..3.0) {
            let z = c(re, im);
            let a = coth(z).unwrap();
            let b = coth(-z).unwrap();
            prop_assert!((a + b).norm() <= 1e-14 * a.norm().max(1.0));
        }

        #[test]
        fn cot_reflection(re in 0.05f64..3.0, im in -2.0f64..2.0) {
            let z = c(re, im);
            let a = cot(z).unwrap();
            let b = cot(c(PI, 0.0) - z).unwrap();
            prop_assert!((a + b).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }
}
