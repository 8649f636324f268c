//! Multi-parameter trigonometric A_n prepotential
//! `F = Σ_{i<j} m_i m_j f(u_i − u_j) + (a/6)(Σ m_i u_i)³ + (b/2)(Σ m_i u_i)(Σ m_j u_j²) + (c/6) Σ m_i u_i³`.

use super::{require_dim, require_distance, require_finite, require_nonzero, MetricPair};
use super::{PARAM_EPS, SINGULAR_GUARD};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ThirdTensor};
use crate::specfn::{coth, distance_to_imaginary_lattice};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct TrigAnParams {
    m: Vec<Complex64>,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    total: Complex64,
}

impl TrigAnParams {
    /// Requires every `m_i ≠ 0`. The generic-case conditions are checked by
    /// [`trig_an_metric`], not here, so degenerate parameter sets stay usable.
    pub fn new(m: Vec<Complex64>, a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::InvalidParams("m must have at least one entry".into()));
        }
        for (i, &v) in m.iter().enumerate() {
            require_nonzero(v, &format!("m[{}]", i + 1))?;
        }
        require_finite(a, "a")?;
        require_finite(b, "b")?;
        require_finite(c, "c")?;
        let total = m.iter().sum();
        Ok(Self { m, a, b, c, total })
    }

    /// Builds parameters with `a` solved from the WDVV relation. Needs `M² ≠ c²`.
    pub fn with_solved_a(m: Vec<Complex64>, b: Complex64, c: Complex64) -> Result<Self> {
        let total: Complex64 = m.iter().sum();
        let denom = total * total - c * c;
        require_nonzero(denom, "M² − c²")?;
        let a = -(b * b * b * total + 3.0 * b * b * c + 3.0 * b * total + c) / denom;
        Self::new(m, a, b, c)
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[Complex64] {
        &self.m
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// `M = Σ m_i`.
    pub fn total(&self) -> Complex64 {
        self.total
    }

    /// `bM + c`.
    pub fn cond1(&self) -> Complex64 {
        self.b * self.total + self.c
    }

    /// `aM² + 3bM + c`.
    pub fn cond2(&self) -> Complex64 {
        self.a * self.total * self.total + 3.0 * self.b * self.total + self.c
    }

    /// `aM + 2b`.
    pub fn rank_one_weight(&self) -> Complex64 {
        self.a * self.total + 2.0 * self.b
    }
}

/// Left-hand side of `b³M + 3b²c − ac² + aM² + 3bM + c = 0`.
pub fn trig_an_relation(p: &TrigAnParams) -> Complex64 {
    let (a, b, c, big) = (p.a, p.b, p.c, p.total);
    b * b * b * big + 3.0 * b * b * c - a * c * c + a * big * big + 3.0 * b * big + c
}

/// Sum of the moduli of the relation's terms, a natural scale for its value.
pub fn trig_an_relation_scale(p: &TrigAnParams) -> f64 {
    let (a, b, c, big) = (p.a, p.b, p.c, p.total);
    [
        b * b * b * big,
        3.0 * b * b * c,
        a * c * c,
        a * big * big,
        3.0 * b * big,
        c,
    ]
    .iter()
    .map(|t| t.norm())
    .sum()
}

/// Smallest `|Re(u_i − u_j)|`.
pub fn real_separation(u: &[Complex64]) -> f64 {
    let mut d = f64::INFINITY;
    for (i, &ui) in u.iter().enumerate() {
        for &uj in &u[..i] {
            d = d.min((ui - uj).re.abs());
        }
    }
    d
}

fn pole_distance(u: &[Complex64]) -> f64 {
    let mut d = f64::INFINITY;
    for (i, &ui) in u.iter().enumerate() {
        for &uj in &u[..i] {
            d = d.min(distance_to_imaginary_lattice(ui - uj));
        }
    }
    d
}

/// `β_ij = coth(u_i − u_j)` for `i ≠ j`, zero on the diagonal, with `β_ji = −β_ij` exactly.
fn beta_matrix(u: &[Complex64]) -> Result<ComplexMatrix> {
    let n = u.len();
    let mut beta = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = coth(u[i] - u[j])?;
            beta[(i, j)] = v;
            beta[(j, i)] = -v;
        }
    }
    Ok(beta)
}

/// Third derivatives `F_krs = W_krs + V_krs`.
pub fn trig_an_tensor(p: &TrigAnParams, u: &[Complex64]) -> Result<ThirdTensor> {
    let n = p.dim();
    require_dim(u, n)?;
    require_distance(pole_distance(u), SINGULAR_GUARD)?;
    let beta = beta_matrix(u)?;
    let m = &p.m;
    let (a, b, c) = (p.a, p.b, p.c);
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let mut t = ThirdTensor::zeros(n);
    for k in 0..n {
        for r in k..n {
            for s in r..n {
                let mut v = a * m[k] * m[r] * m[s];
                if k == r && r == s {
                    let row: Complex64 = (0..n).map(|q| m[q] * beta[(k, q)]).sum();
                    v += m[k] * (row + c);
                }
                v += delta(k, r) * m[k] * m[s] * (beta[(s, k)] + b);
                v += delta(k, s) * m[k] * m[r] * (beta[(r, k)] + b);
                v += delta(r, s) * m[k] * m[r] * (beta[(k, r)] + b);
                t.set_sym(k, r, s, v);
            }
        }
    }
    Ok(t)
}

/// Closed-form `det η = (aM² + 3bM + c)(bM + c)^{n−1} Π m_i`.
pub fn trig_an_metric_det(p: &TrigAnParams) -> Complex64 {
    p.cond2() * p.cond1().powi(p.dim() as i32 - 1) * p.m.iter().product::<Complex64>()
}

/// `η_rs = (aM + 2b) m_r m_s + δ_rs (bM + c) m_r` with closed-form inverse and determinant.
pub fn trig_an_metric(p: &TrigAnParams) -> Result<MetricPair> {
    let n = p.dim();
    let (k1, k2, w) = (p.cond1(), p.cond2(), p.rank_one_weight());
    if k1.norm() <= PARAM_EPS {
        return Err(Error::DegenerateMetric(format!("bM + c = {k1} vanishes")));
    }
    if k2.norm() <= PARAM_EPS {
        return Err(Error::DegenerateMetric(format!("aM² + 3bM + c = {k2} vanishes")));
    }
    let m = &p.m;
    let eta = ComplexMatrix::from_fn(n, |r, s| {
        let base = w * m[r] * m[s];
        if r == s {
            base + k1 * m[r]
        } else {
            base
        }
    });
    let shift = w / (k2 * k1);
    let eta_inv = ComplexMatrix::from_fn(n, |r, s| {
        if r == s {
            1.0 / (k1 * m[r]) - shift
        } else {
            -shift
        }
    });
    MetricPair {
        eta,
        eta_inv,
        det: trig_an_metric_det(p),
    }
    .verified()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{determinant, wdvv_residual};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn worked() -> TrigAnParams {
        TrigAnParams::new(vec![c(1.0), c(1.0)], c(-1.0 / 3.0), c(0.0), c(1.0)).unwrap()
    }

    #[test]
    fn worked_entry_and_relation() {
        let p = worked();
        assert!(trig_an_relation(&p).norm() < 1e-15);
        let t = trig_an_tensor(&p, &[c(1.5), c(0.5)]).unwrap();
        assert!((t[(0, 0, 0)] - c(1.979_701_952_165_998)).norm() < 1e-14);
    }

    #[test]
    fn pure_pair_term() {
        let p = TrigAnParams::new(
            vec![Complex64::new(0.5, 0.2), c(1.3)],
            c(0.0),
            c(0.0),
            c(0.0),
        )
        .unwrap();
        let u = [Complex64::new(0.4, 0.3), Complex64::new(-0.6, 1.0)];
        let t = trig_an_tensor(&p, &u).unwrap();
        let beta = coth(u[0] - u[1]).unwrap();
        let mm = p.m()[0] * p.m()[1];
        assert!((t[(0, 0, 0)] - mm * beta).norm() < 1e-15);
        assert!((t[(0, 0, 1)] + mm * beta).norm() < 1e-15);
    }

    #[test]
    fn worked_determinant() {
        let p = worked();
        let m = trig_an_metric(&p).unwrap();
        assert!((m.det - c(-1.0 / 3.0)).norm() < 1e-15);
        assert!((determinant(&m.eta) - m.det).norm() < 1e-14);
    }

    #[test]
    fn metric_is_sum_of_slices() {
        let p = TrigAnParams::with_solved_a(
            vec![Complex64::new(0.8, 0.3), c(1.4), Complex64::new(-0.5, 0.9)],
            Complex64::new(0.6, -0.2),
            c(1.1),
        )
        .unwrap();
        let m = trig_an_metric(&p).unwrap();
        let ones = vec![c(1.0); 3];
        for u in [
            [c(0.1), Complex64::new(1.0, 0.4), Complex64::new(-0.9, 2.0)],
            [Complex64::new(0.5, -1.0), c(-0.4), Complex64::new(1.6, 0.1)],
        ] {
            let t = trig_an_tensor(&p, &u).unwrap();
            assert!(t.combine(&ones).sub(&m.eta).max_abs() < 1e-12);
            assert!(wdvv_residual(&t, &m.eta_inv).unwrap() < 1e-12);
        }
        // η − diag((bM+c) m) = (aM+2b) m mᵀ has rank one: every 2×2 minor vanishes
        let mut rest = m.eta.clone();
        for r in 0..3 {
            rest[(r, r)] -= p.cond1() * p.m()[r];
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let minor = rest[(i, i)] * rest[(j, j)] - rest[(i, j)] * rest[(j, i)];
            assert!(minor.norm() < 1e-12);
        }
    }

    #[test]
    fn violated_relation_breaks_wdvv() {
        let p = TrigAnParams::new(vec![c(1.0); 3], c(1.0), c(1.0), c(1.0)).unwrap();
        assert!((trig_an_relation(&p) - c(24.0)).norm() < 1e-13);
        let m = trig_an_metric(&p).unwrap();
        let t = trig_an_tensor(&p, &[c(0.3), Complex64::new(-0.8, 0.5), c(1.4)]).unwrap();
        assert!(wdvv_residual(&t, &m.eta_inv).unwrap() > 1e-4);
    }

    #[test]
    fn degenerate_metric_rejected() {
        let p = TrigAnParams::new(vec![c(1.0); 3], c(2.0), c(1.0), c(-3.0)).unwrap();
        assert!(matches!(trig_an_metric(&p), Err(Error::DegenerateMetric(_))));
    }

    #[test]
    fn pole_rejected() {
        let p = worked();
        assert!(matches!(
            trig_an_tensor(&p, &[c(0.5), Complex64::new(0.5, std::f64::consts::PI)]),
            Err(Error::SingularPoint { .. })
        ));
    }
}
