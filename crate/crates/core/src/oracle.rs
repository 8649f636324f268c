//! Independent derivative oracles: prepotential values and contour
//! finite differences.
//!
//! Derivatives use the trapezoidal rule on a circle of radius `h`:
//! `g⁽ᵏ⁾(z) ≈ k!/(N hᵏ) Σ_j g(z + hω^j) ω^{−kj}` with `ω = e^{2πi/N}`. The
//! error is `O(h^N)` rather than `O(h²)`, so the step can be large enough to
//! keep roundoff small.

use crate::error::Result;
use crate::families::{
    FamilyParams, RationalAnParams, RationalBnParams, TrigAnParams, TrigBCnParams,
};
use crate::linalg::{ComplexMatrix, ThirdTensor};
use crate::specfn::{cubic_trilog, rotated_cubic_trilog};
use num_complex::Complex64;
use std::f64::consts::TAU;

pub const FD_STEP: f64 = 1e-2;
pub const FD_NODES: usize = 8;

/// Contour estimate of the `order`-th derivative of a scalar function.
pub fn derivative(
    g: impl Fn(Complex64) -> Result<Complex64>,
    z: Complex64,
    order: u32,
    step: f64,
    nodes: usize,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let w = Complex64::from_polar(1.0, TAU * j as f64 / nodes as f64);
        acc += g(z + step * w)? * w.powi(-(order as i32));
    }
    let factorial: f64 = (1..=order).map(f64::from).product();
    Ok(acc * factorial / (nodes as f64 * step.powi(order as i32)))
}

fn shifted(x: &[Complex64], v: &[Complex64], t: Complex64) -> Vec<Complex64> {
    x.iter().zip(v).map(|(a, b)| a + t * b).collect()
}

/// Third derivative of `g` along `v` at `x`.
pub fn directional_third<G>(g: &G, x: &[Complex64], v: &[Complex64]) -> Result<Complex64>
where
    G: Fn(&[Complex64]) -> Result<Complex64>,
{
    derivative(
        |t| g(&shifted(x, v, t)),
        Complex64::new(0.0, 0.0),
        3,
        FD_STEP,
        FD_NODES,
    )
}

/// Full third-derivative tensor of `g` at `x` by polarisation of directional
/// third derivatives.
pub fn fd_tensor<G>(g: &G, x: &[Complex64]) -> Result<ThirdTensor>
where
    G: Fn(&[Complex64]) -> Result<Complex64>,
{
    let n = x.len();
    let unit = |i: usize| {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[i] = Complex64::new(1.0, 0.0);
        e
    };
    let mut t = ThirdTensor::zeros(n);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let v = if i == j && j == k {
                    directional_third(g, x, &unit(i))?
                } else {
                    // T(u,v,w) = (1/24) Σ ε₂ε₃ C(u + ε₂v + ε₃w)
                    let mut acc = Complex64::new(0.0, 0.0);
                    for e2 in [1.0, -1.0] {
                        for e3 in [1.0, -1.0] {
                            let dir: Vec<Complex64> = (0..n)
                                .map(|l| {
                                    unit(i)[l] + e2 * unit(j)[l] + e3 * unit(k)[l]
                                })
                                .collect();
                            acc += e2 * e3 * directional_third(g, x, &dir)?;
                        }
                    }
                    acc / 24.0
                };
                t.set_sym(i, j, k, v);
            }
        }
    }
    Ok(t)
}

/// Jacobian `∂y_l/∂x_k` of a vector map by first-order contour differences.
pub fn fd_jacobian<G>(map: &G, x: &[Complex64]) -> Result<ComplexMatrix>
where
    G: Fn(&[Complex64]) -> Result<Vec<Complex64>>,
{
    let n = x.len();
    let mut jac = ComplexMatrix::zeros(n);
    for k in 0..n {
        for l in 0..n {
            jac[(l, k)] = derivative(
                |t| {
                    let mut p = x.to_vec();
                    p[k] += t;
                    Ok(map(&p)?[l])
                },
                Complex64::new(0.0, 0.0),
                1,
                FD_STEP,
                FD_NODES,
            )?;
        }
    }
    Ok(jac)
}

/// Logarithm on the branch continuous at `anchor`.
pub fn log_near(z: Complex64, anchor: Complex64) -> Complex64 {
    (z / anchor).ln() + anchor.ln()
}

/// `z² log z` on the branch continuous at `anchor`.
fn sq_log(z: Complex64, anchor: Complex64) -> Complex64 {
    z * z * log_near(z, anchor)
}

/// `f(z)` near `anchor`, replaced by `f(−z)` when `Re anchor < 0`; the two
/// differ by a quadratic polynomial, so third derivatives agree.
fn kernel_near(z: Complex64, anchor: Complex64) -> Result<Complex64> {
    if anchor.re >= 0.0 {
        cubic_trilog(z)
    } else {
        cubic_trilog(-z)
    }
}

/// `f̃(z)` near `anchor`, reflected when `Im anchor < 0`.
fn rotated_kernel_near(z: Complex64, anchor: Complex64) -> Result<Complex64> {
    if anchor.im >= 0.0 {
        rotated_cubic_trilog(z)
    } else {
        rotated_cubic_trilog(-z)
    }
}

pub fn rational_an_value(p: &RationalAnParams, x: &[Complex64], anchor: &[Complex64]) -> Complex64 {
    let a = p.a();
    let n = a.len();
    let mut v = Complex64::new(0.0, 0.0);
    for i in 0..n {
        v += a[i] * sq_log(x[i], anchor[i]);
        for j in (i + 1)..n {
            v += a[i] * a[j] * sq_log(x[i] - x[j], anchor[i] - anchor[j]);
        }
    }
    v
}

pub fn rational_bn_value(p: &RationalBnParams, x: &[Complex64], anchor: &[Complex64]) -> Complex64 {
    let n = p.dim();
    let b0 = p.b0();
    let mut v = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let bi = p.weight(i);
        v += 2.0 * bi * (b0 + bi) * sq_log(x[i], anchor[i]);
        for j in (i + 1)..n {
            let w = bi * p.weight(j);
            v += w * sq_log(x[i] - x[j], anchor[i] - anchor[j]);
            v += w * sq_log(x[i] + x[j], anchor[i] + anchor[j]);
        }
    }
    v
}

pub fn trig_an_value(p: &TrigAnParams, u: &[Complex64], anchor: &[Complex64]) -> Result<Complex64> {
    let m = p.m();
    let n = m.len();
    let mut v = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in (i + 1)..n {
            v += m[i] * m[j] * kernel_near(u[i] - u[j], anchor[i] - anchor[j])?;
        }
    }
    let lin: Complex64 = m.iter().zip(u).map(|(mi, ui)| mi * ui).sum();
    let sq: Complex64 = m.iter().zip(u).map(|(mi, ui)| mi * ui * ui).sum();
    let cube: Complex64 = m.iter().zip(u).map(|(mi, ui)| mi * ui * ui * ui).sum();
    v += p.a() / 6.0 * lin * lin * lin + p.b() / 2.0 * lin * sq + p.c() / 6.0 * cube;
    Ok(v)
}

pub fn trig_bcn_value(
    p: &TrigBCnParams,
    xi: &[Complex64],
    anchor: &[Complex64],
) -> Result<Complex64> {
    let m = p.m();
    let (q, r, s, lam, h) = (p.q(), p.r(), p.s(), p.lambda(), p.h());
    let x0 = xi[0];
    let mut v = x0 * x0 * x0 / 3.0;
    for (i, &mi) in m.iter().enumerate() {
        let (a, a0) = (xi[i + 1], anchor[i + 1]);
        v += h * x0 * mi * a * a;
        v += lam * r * mi * rotated_kernel_near(a, a0)?;
        v += lam
            * (s * mi + 0.5 * q * mi * (mi - 1.0))
            * rotated_kernel_near(2.0 * a, 2.0 * a0)?;
        for (j, &mj) in m.iter().enumerate().skip(i + 1) {
            let (b, b0) = (xi[j + 1], anchor[j + 1]);
            v += lam * q * mi * mj * rotated_kernel_near(a + b, a0 + b0)?;
            v += lam * q * mi * mj * rotated_kernel_near(a - b, a0 - b0)?;
        }
    }
    Ok(v)
}

/// Prepotential value of `family` at `x`, using branches continuous at `anchor`.
pub fn prepotential_value(
    family: &FamilyParams,
    x: &[Complex64],
    anchor: &[Complex64],
) -> Result<Complex64> {
    match family {
        FamilyParams::RationalAn(p) => Ok(rational_an_value(p, x, anchor)),
        FamilyParams::RationalBn(p) => Ok(rational_bn_value(p, x, anchor)),
        FamilyParams::TrigAn(p) => trig_an_value(p, x, anchor),
        FamilyParams::TrigBCn(p) => trig_bcn_value(p, x, anchor),
    }
}

/// Finite-difference third-derivative tensor of `family`'s prepotential at `x`.
pub fn family_fd_tensor(family: &FamilyParams, x: &[Complex64]) -> Result<ThirdTensor> {
    let anchor = x.to_vec();
    fd_tensor(&|p: &[Complex64]| prepotential_value(family, p, &anchor), x)
}

/// `max|closed − oracle| / max|oracle|` at `x`.
pub fn derivative_check(family: &FamilyParams, x: &[Complex64]) -> Result<f64> {
    let closed = family.tensor(x)?;
    let oracle = family_fd_tensor(family, x)?;
    Ok(closed.relative_diff(&oracle))
}
