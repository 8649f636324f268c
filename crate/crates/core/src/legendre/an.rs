//! `S_γ` for the rational A_n family.

use super::{add_kernel_term, add_monomial, covector};
use crate::error::{Error, Result};
use crate::families::rational_an::{an_rat_metric, singular_distance, RationalAnParams};
use crate::families::{require_distance, SINGULAR_GUARD};
use crate::linalg::ThirdTensor;
use num_complex::Complex64;

fn check(p: &RationalAnParams, gamma: usize, x: &[Complex64]) -> Result<()> {
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
/// `x̂^γ = ((a_γ + 1) log x^γ + Σ_{i≠γ} a_i log(x^γ − x^i)) / (A + 1)` and
/// `x̂^α = (a_γ/(A + 1)) (log x^γ − log(x^γ − x^α))`, principal logarithms.
pub fn an_hat_coords(p: &RationalAnParams, gamma: usize, x: &[Complex64]) -> Result<Vec<Complex64>> {
    check(p, gamma, x)?;
    require_distance(singular_distance(x), SINGULAR_GUARD)?;
    let a = p.a();
    let denom = p.total() + 1.0;
    let log_g = x[gamma].ln();
    let logs: Vec<Complex64> = x
        .iter()
        .enumerate()
        .map(|(i, &xi)| if i == gamma { log_g } else { (x[gamma] - xi).ln() })
        .collect();
    Ok((0..p.dim())
        .map(|al| {
            if al == gamma {
                let mut s = (a[gamma] + 1.0) * log_g;
                for (i, &l) in logs.iter().enumerate() {
                    if i != gamma {
                        s += a[i] * l;
                    }
                }
                s / denom
            } else {
                a[gamma] / denom * (log_g - logs[al])
            }
        })
        .collect())
}

/// `log x^γ = Σ_i (a_i/a_γ) x̂^i`, `x^α = (1 − e^{−(A+1) x̂^α / a_γ}) x^γ`.
pub fn an_inverse_coords(
    p: &RationalAnParams,
    gamma: usize,
    xhat: &[Complex64],
) -> Result<Vec<Complex64>> {
    check(p, gamma, xhat)?;
    let a = p.a();
    let ag = a[gamma];
    let log_g: Complex64 = a.iter().zip(xhat).map(|(ai, xi)| ai / ag * xi).sum();
    let xg = log_g.exp();
    let scale = (p.total() + 1.0) / ag;
    let x: Vec<Complex64> = (0..p.dim())
        .map(|al| {
            if al == gamma {
                xg
            } else {
                (1.0 - (-scale * xhat[al]).exp()) * xg
            }
        })
        .collect();
    require_distance(singular_distance(&x), SINGULAR_GUARD)?;
    Ok(x)
}

/// Third derivatives of the transformed prepotential: a cubic form in the
/// metric entries plus `f`-terms with scale `k = (A + 1)/(2a_γ)`.
pub fn an_hat_tensor(
    p: &RationalAnParams,
    gamma: usize,
    xhat: &[Complex64],
) -> Result<ThirdTensor> {
    check(p, gamma, xhat)?;
    let n = p.dim();
    let a = p.a();
    let ag = a[gamma];
    let big1 = p.total() + 1.0;
    let eta = an_rat_metric(p)?.eta;
    let g = gamma;
    let mut t = ThirdTensor::zeros(n);

    add_monomial(&mut t, eta[(g, g)] / 6.0, (g, g, g));
    for i in (0..n).filter(|&i| i != g) {
        add_monomial(&mut t, eta[(i, g)] / 2.0, (g, g, i));
        add_monomial(&mut t, eta[(i, i)] / 2.0, (g, i, i));
        let cube = a[i] * (eta[(i, i)] - eta[(g, g)]) / (12.0 * ag)
            - eta[(i, i)] * eta[(i, i)] / (24.0 * a[i] * ag)
            + eta[(i, g)] / 12.0;
        add_monomial(&mut t, cube, (i, i, i));
        for j in (0..n).filter(|&j| j != g && j != i) {
            add_monomial(
                &mut t,
                (a[j] * eta[(i, i)] + a[i] * eta[(i, j)]) / (4.0 * ag),
                (i, i, j),
            );
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for l in (j + 1)..n {
                add_monomial(&mut t, -2.0 * a[i] * a[j] * a[l] / ag, (i, j, l));
            }
        }
    }

    let k = big1 / (2.0 * ag);
    let w0 = 8.0 * ag * ag / (big1 * big1);
    for i in (0..n).filter(|&i| i != g) {
        add_kernel_term(&mut t, w0 * a[i], k, &covector(n, i, None), xhat)?;
        for j in ((i + 1)..n).filter(|&j| j != g) {
            add_kernel_term(&mut t, w0 * a[i] * a[j], k, &covector(n, i, Some((j, -1.0))), xhat)?;
        }
    }
    Ok(t)
}
