//! `S_γ` for the rational B_n family.

use super::{add_kernel_term, add_monomial, covector};
use crate::error::{Error, Result};
use crate::families::rational_bn::{bn_rat_metric, singular_distance, RationalBnParams};
use crate::families::{require_distance, SINGULAR_GUARD};
use crate::linalg::ThirdTensor;
use num_complex::Complex64;

fn check(p: &RationalBnParams, gamma: usize, x: &[Complex64]) -> Result<()> {
    let n = p.dim();
    if gamma >= n {
        return Err(Error::IndexOutOfRange { index: gamma, n });
    }
    if x.len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: x.len(),
        });
    }
    Ok(())
}

/// Contravariant coordinates
/// `x̂^γ = log x^γ + Σ_{i≠γ} (b_i/2B) log(1 − (x^i/x^γ)²)` and
/// `x̂^α = (b_γ/2B)(log(x^γ + x^α) − log(x^γ − x^α))`, principal logarithms.
pub fn bn_hat_coords(p: &RationalBnParams, gamma: usize, x: &[Complex64]) -> Result<Vec<Complex64>> {
    check(p, gamma, x)?;
    require_distance(singular_distance(x), SINGULAR_GUARD)?;
    let two_b = 2.0 * p.total();
    let xg = x[gamma];
    Ok((0..p.dim())
        .map(|al| {
            if al == gamma {
                let mut s = xg.ln();
                for (i, &xi) in x.iter().enumerate() {
                    if i != gamma {
                        let ratio = xi / xg;
                        s += p.weight(i) / two_b * (1.0 - ratio * ratio).ln();
                    }
                }
                s
            } else {
                p.weight(gamma) / two_b * ((xg + x[al]).ln() - (xg - x[al]).ln())
            }
        })
        .collect())
}

/// `x^α = x^γ tanh(B x̂^α / b_γ)` with
/// `log x^γ = x̂^γ − Σ_{i≠γ} (b_i/2B) log(1 − tanh²(B x̂^i / b_γ))`.
pub fn bn_inverse_coords(
    p: &RationalBnParams,
    gamma: usize,
    xhat: &[Complex64],
) -> Result<Vec<Complex64>> {
    check(p, gamma, xhat)?;
    let big = p.total();
    let bg = p.weight(gamma);
    let ratios: Vec<Complex64> = xhat.iter().map(|&v| (big * v / bg).tanh()).collect();
    let mut log_g = xhat[gamma];
    for (i, &t) in ratios.iter().enumerate() {
        if i != gamma {
            log_g -= p.weight(i) / (2.0 * big) * (1.0 - t * t).ln();
        }
    }
    let xg = log_g.exp();
    let x: Vec<Complex64> = (0..p.dim())
        .map(|al| if al == gamma { xg } else { xg * ratios[al] })
        .collect();
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularPoint {
            distance: 0.0,
            guard: SINGULAR_GUARD,
        });
    }
    require_distance(singular_distance(&x), SINGULAR_GUARD)?;
    Ok(x)
}

/// Third derivatives of the transformed prepotential: `η_γγ/6 (x̂^γ)³ +
/// Σ η_ii/2 x̂^γ (x̂^i)²` plus `f`-terms with scale `k = B/b_γ`.
pub fn bn_hat_tensor(
    p: &RationalBnParams,
    gamma: usize,
    xhat: &[Complex64],
) -> Result<ThirdTensor> {
    check(p, gamma, xhat)?;
    let n = p.dim();
    let g = gamma;
    let big = p.total();
    let bg = p.weight(g);
    let eta = bn_rat_metric(p)?.eta;
    let mut t = ThirdTensor::zeros(n);
    add_monomial(&mut t, eta[(g, g)] / 6.0, (g, g, g));
    let k = big / bg;
    let w0 = bg * bg / (big * big);
    for i in (0..n).filter(|&i| i != g) {
        let bi = p.weight(i);
        add_monomial(&mut t, eta[(i, i)] / 2.0, (g, i, i));
        let e = covector(n, i, None);
        add_kernel_term(&mut t, 4.0 * bi * w0 * (p.b0() + big), -k, &e, xhat)?;
        add_kernel_term(&mut t, bi * w0 * (bi - big), -2.0 * k, &e, xhat)?;
        for j in ((i + 1)..n).filter(|&j| j != g) {
            let w = 2.0 * bi * p.weight(j) * w0;
            for sign in [1.0, -1.0] {
                add_kernel_term(&mut t, w, -k, &covector(n, i, Some((j, sign))), xhat)?;
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn unit3() -> RationalBnParams {
        RationalBnParams::new(vec![c(1.0); 3]).unwrap()
    }

    #[test]
    fn worked_hat_coordinate_and_inverse() {
        let xh = bn_hat_coords(&unit3(), 0, &[c(3.0), c(1.0)]).unwrap();
        assert!((xh[1] - c(2f64.ln() / 6.0)).norm() < 1e-15);
        // tanh(3·log2/6) = (2 − 1)/(2 + 1) = 1/3 = x²/x¹
        assert!(((3.0 * xh[1]).tanh() - c(1.0 / 3.0)).norm() < 1e-15);
        let back = bn_inverse_coords(&unit3(), 0, &xh).unwrap();
        assert!((back[0] - c(3.0)).norm() < 1e-14);
        assert!((back[1] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn cubic_entries() {
        let p = RationalBnParams::new(vec![c(0.5), Complex64::new(1.0, 0.4), c(-0.7), c(1.3)])
            .unwrap();
        let xh = [Complex64::new(0.2, 0.5), Complex64::new(-0.4, 0.3), c(0.6)];
        let t = bn_hat_tensor(&p, 1, &xh).unwrap();
        let big = p.total();
        assert!((t[(1, 1, 1)] - 4.0 * p.weight(1) * big).norm() < 1e-14);
        for i in [0, 2] {
            assert!((t[(1, i, i)] - 4.0 * p.weight(i) * big).norm() < 1e-14);
        }
        assert_eq!(t[(1, 1, 0)], c(0.0));
        assert_eq!(t[(0, 1, 2)], c(0.0));
    }
}
