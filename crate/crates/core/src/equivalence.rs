//! Correspondences between Legendre-transformed rational solutions and the
//! trigonometric families, checked at the level of third derivatives through
//! explicit linear pullbacks.

use crate::error::{Error, Result};
use crate::families::trig_an::{trig_an_relation, trig_an_relation_scale, trig_an_tensor};
use crate::families::trig_bcn::trig_bcn_tensor;
use crate::families::{RationalAnParams, RationalBnParams, TrigAnParams, TrigBCnParams, PARAM_EPS};
use crate::legendre::{an::an_hat_tensor, bn::bn_hat_tensor};
use crate::linalg::ComplexMatrix;
use num_complex::Complex64;

/// Relative tolerance for identities that hold exactly in exact arithmetic.
pub const IDENTITY_RTOL: f64 = 1e-12;

fn check_gamma(gamma: usize, n: usize) -> Result<()> {
    if gamma < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: gamma, n })
    }
}

fn require_nonzero(v: Complex64, what: &str) -> Result<()> {
    if v.is_finite() && v.norm() > PARAM_EPS {
        Ok(())
    } else {
        Err(Error::DegenerateEquivalence(format!("{what} = {v} vanishes")))
    }
}

fn agree(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= IDENTITY_RTOL * a.norm().max(b.norm()).max(1.0)
}

/// Rational A_n with direction `γ` mapped onto trigonometric A_n.
#[derive(Debug, Clone, PartialEq)]
pub struct AnEquivalence {
    source: RationalAnParams,
    gamma: usize,
    target: TrigAnParams,
    scale: Complex64,
    jacobian: ComplexMatrix,
}

/// Builds the target `m_γ = 1`, `m_α = a_α`, `a = −2/(A+1)`, `b = 1`,
/// `c = −(A + a_γ + 1)` and the coordinate map `y_γ = −k x̂^γ`,
/// `y_α = k(x̂^α − x̂^γ)` with `k = (A+1)/(2a_γ)`.
pub fn an_rat_to_trig(p: &RationalAnParams, gamma: usize) -> Result<AnEquivalence> {
    let n = p.dim();
    check_gamma(gamma, n)?;
    let a = p.a();
    let big1 = p.total() + 1.0;
    let one = Complex64::new(1.0, 0.0);
    let m: Vec<Complex64> = (0..n).map(|i| if i == gamma { one } else { a[i] }).collect();
    let target = TrigAnParams::new(m, -2.0 / big1, one, -(p.total() + a[gamma] + 1.0))?;
    let rel = trig_an_relation(&target);
    if rel.norm() > IDENTITY_RTOL * trig_an_relation_scale(&target) {
        return Err(Error::DegenerateEquivalence(format!(
            "mapped parameters violate the WDVV relation by {rel}"
        )));
    }
    require_nonzero(target.cond1(), "bM + c")?;
    require_nonzero(target.cond2(), "aM² + 3bM + c")?;
    let k = big1 / (2.0 * a[gamma]);
    let mut jacobian = ComplexMatrix::zeros(n);
    for al in 0..n {
        jacobian[(al, gamma)] = -k;
        if al != gamma {
            jacobian[(al, al)] = k;
        }
    }
    Ok(AnEquivalence {
        source: p.clone(),
        gamma,
        target,
        scale: big1 * big1 / (8.0 * a[gamma] * a[gamma]),
        jacobian,
    })
}

impl AnEquivalence {
    pub fn source(&self) -> &RationalAnParams {
        &self.source
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn target(&self) -> &TrigAnParams {
        &self.target
    }

    /// `(A+1)² / (8a_γ²)`.
    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    /// Constant matrix `L` with `y = L x̂`.
    pub fn jacobian(&self) -> &ComplexMatrix {
        &self.jacobian
    }

    /// `bM + c` of the target, reported for comparison with `a_γ`.
    pub fn cond1(&self) -> Complex64 {
        self.target.cond1()
    }

    pub fn coords(&self, xhat: &[Complex64]) -> Vec<Complex64> {
        self.jacobian.mul_vec(xhat)
    }

    /// Relative deviation of `scale · F̂(x̂)` from the pullback of `F̃(y)`.
    pub fn verify(&self, xhat: &[Complex64]) -> Result<f64> {
        self.verify_with_scale(xhat, self.scale)
    }

    pub fn verify_with_scale(&self, xhat: &[Complex64], scale: Complex64) -> Result<f64> {
        let hat = an_hat_tensor(&self.source, self.gamma, xhat)?.scale(scale);
        let trig = trig_an_tensor(&self.target, &self.coords(xhat))?;
        Ok(trig.pullback(&self.jacobian).relative_diff(&hat))
    }
}

/// Which sign of `ξ_0` is paired with the principal `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    Principal,
    FlippedXi0,
}

impl Pairing {
    pub fn label(self) -> &'static str {
        match self {
            Self::Principal => "principal",
            Self::FlippedXi0 => "flipped-xi0",
        }
    }

    fn xi0_sign(self) -> f64 {
        match self {
            Self::Principal => 1.0,
            Self::FlippedXi0 => -1.0,
        }
    }
}

/// Rational B_n with direction `γ` mapped onto trigonometric BC_{n−1}.
#[derive(Debug, Clone, PartialEq)]
pub struct BnEquivalence {
    source: RationalBnParams,
    gamma: usize,
    r_scale: Complex64,
    target: TrigBCnParams,
    sigma: Complex64,
    others: Vec<usize>,
    h_from_source: Complex64,
    lambda_sq_from_source: Complex64,
}

/// Outcome of [`BnEquivalence::verify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BnVerification {
    pub residual: f64,
    pub pairing: Pairing,
    pub principal_residual: f64,
    /// Only computed when the principal pairing misses the tolerance.
    pub flipped_residual: Option<f64>,
}

/// `q = −2b_γ²/(RB²)`, `r = −4b_γ²(b_0 + B)/(RB²)`, `s = b_γ²(B − 1)/(RB²)` and
/// `m` the remaining `b_α` in order.
pub fn bn_to_bcn(p: &RationalBnParams, gamma: usize, r_scale: Complex64) -> Result<BnEquivalence> {
    let n = p.dim();
    check_gamma(gamma, n)?;
    require_nonzero(r_scale, "R")?;
    let big = p.total();
    let bg = p.weight(gamma);
    require_nonzero(big - bg, "B − b_γ")?;
    let denom = r_scale * big * big;
    let q = -2.0 * bg * bg / denom;
    let r = -4.0 * bg * bg * (p.b0() + big) / denom;
    let s = bg * bg * (big - 1.0) / denom;
    let others: Vec<usize> = (0..n).filter(|&i| i != gamma).collect();
    if others.is_empty() {
        return Err(Error::DegenerateEquivalence(
            "the source needs at least two coordinates".into(),
        ));
    }
    let m: Vec<Complex64> = others.iter().map(|&i| p.weight(i)).collect();
    let target = TrigBCnParams::new(m, q, r, s)
        .map_err(|e| Error::DegenerateEquivalence(format!("mapped parameters invalid: {e}")))?;
    let h_from_source = 4.0 * bg * bg * (bg - big) / denom;
    let lambda_sq_from_source = 16.0 * bg * (big - bg).powi(3) / denom;
    let lambda_sq = target.lambda() * target.lambda();
    if !agree(target.h(), h_from_source) || !agree(lambda_sq, lambda_sq_from_source) {
        return Err(Error::DegenerateEquivalence(format!(
            "h = {} vs {h_from_source}, λ² = {lambda_sq} vs {lambda_sq_from_source}",
            target.h()
        )));
    }
    let sigma = (4.0 * bg * (big - bg) / r_scale).sqrt();
    Ok(BnEquivalence {
        source: p.clone(),
        gamma,
        r_scale,
        target,
        sigma,
        others,
        h_from_source,
        lambda_sq_from_source,
    })
}

impl BnEquivalence {
    pub fn source(&self) -> &RationalBnParams {
        &self.source
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn r_scale(&self) -> Complex64 {
        self.r_scale
    }

    pub fn target(&self) -> &TrigBCnParams {
        &self.target
    }

    /// `h` from `4b_γ²(b_γ − B)/(RB²)`.
    pub fn h_from_source(&self) -> Complex64 {
        self.h_from_source
    }

    /// `λ²` from `16b_γ(B − b_γ)³/(RB²)`.
    pub fn lambda_sq_from_source(&self) -> Complex64 {
        self.lambda_sq_from_source
    }

    /// Source index feeding each `ξ_α`, `α ≥ 1`.
    pub fn index_table(&self) -> &[usize] {
        &self.others
    }

    /// Principal `√(4b_γ(B − b_γ)/R)`.
    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }

    /// The pairing predicted by `λ = Rσ³/(2b_γB)`.
    pub fn predicted_pairing(&self) -> Pairing {
        let lam = self.target.lambda();
        let want = self.r_scale * self.sigma.powi(3)
            / (2.0 * self.source.weight(self.gamma) * self.source.total());
        if (lam - want).norm() <= (lam + want).norm() {
            Pairing::Principal
        } else {
            Pairing::FlippedXi0
        }
    }

    /// Matrix `L` with `ξ = L x̂`; `xi0_sign` multiplies the `ξ_0` row.
    pub fn jacobian(&self, xi0_sign: f64) -> ComplexMatrix {
        let n = self.source.dim();
        let mut l = ComplexMatrix::zeros(n);
        l[(0, self.gamma)] = xi0_sign * self.sigma;
        let rot = Complex64::new(0.0, 1.0) * self.source.total() / self.source.weight(self.gamma);
        for (row, &col) in self.others.iter().enumerate() {
            l[(row + 1, col)] = rot;
        }
        l
    }

    pub fn coords(&self, xhat: &[Complex64], pairing: Pairing) -> Vec<Complex64> {
        self.jacobian(pairing.xi0_sign()).mul_vec(xhat)
    }

    /// Relative deviation of `(R'/λ')` times the pullback of `F̃(ξ)` from
    /// `F̂(x̂)`, with `λ' = lambda_sign·λ`, `ξ_0` scaled by `xi0_sign`, and
    /// `R'` the supplied scale.
    pub fn residual(
        &self,
        xhat: &[Complex64],
        lambda_sign: f64,
        xi0_sign: f64,
        r_scale: Complex64,
    ) -> Result<f64> {
        let target = if lambda_sign < 0.0 {
            self.target.flipped()
        } else {
            self.target.clone()
        };
        let l = self.jacobian(xi0_sign);
        let bc = trig_bcn_tensor(&target, &l.mul_vec(xhat))?;
        let pulled = bc.pullback(&l).scale(r_scale / target.lambda());
        let hat = bn_hat_tensor(&self.source, self.gamma, xhat)?;
        Ok(pulled.relative_diff(&hat))
    }

    /// Tries the principal pairing first; if it misses `tol`, retries with
    /// `ξ_0` flipped. Flipping `λ` and `ξ_0` together is a symmetry of the
    /// check, so only one of them is flipped.
    pub fn verify(&self, xhat: &[Complex64], tol: f64) -> Result<BnVerification> {
        let principal = self.residual(xhat, 1.0, 1.0, self.r_scale)?;
        if principal < tol {
            return Ok(BnVerification {
                residual: principal,
                pairing: Pairing::Principal,
                principal_residual: principal,
                flipped_residual: None,
            });
        }
        let flipped = self.residual(xhat, 1.0, -1.0, self.r_scale)?;
        let pairing = if flipped < principal {
            Pairing::FlippedXi0
        } else {
            Pairing::Principal
        };
        Ok(BnVerification {
            residual: principal.min(flipped),
            pairing,
            principal_residual: principal,
            flipped_residual: Some(flipped),
        })
    }
}

/// Inverse parameter map: `b_0 = (r − 2q + 4s)/(2q)`,
/// `b_γ = (2q(2 − M) − r − 8s)/(2q)`, the other `b` from `m`, and
/// `R = −(r + 8s + 2q(M − 2))² / (2q(q − 2s)²)`.
pub fn bcn_to_bn(p: &TrigBCnParams, gamma: usize) -> Result<(RationalBnParams, Complex64)> {
    let (q, r, s, big_m) = (p.q(), p.r(), p.s(), p.total());
    let n = p.m().len() + 1;
    check_gamma(gamma, n)?;
    require_nonzero(q - 2.0 * s, "q − 2s")?;
    let b0 = (r - 2.0 * q + 4.0 * s) / (2.0 * q);
    let bg = (2.0 * q * (2.0 - big_m) - r - 8.0 * s) / (2.0 * q);
    let mut b = vec![b0];
    let mut rest = p.m().iter();
    for i in 0..n {
        if i == gamma {
            b.push(bg);
        } else {
            b.push(*rest.next().expect("m has n − 1 entries"));
        }
    }
    let inner = r + 8.0 * s + 2.0 * q * (big_m - 2.0);
    let r_scale = -inner * inner / (2.0 * q * (q - 2.0 * s) * (q - 2.0 * s));
    let params = RationalBnParams::new(b)
        .map_err(|e| Error::DegenerateEquivalence(format!("recovered parameters invalid: {e}")))?;
    Ok((params, r_scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn a2_parameter_map() {
        let p = RationalAnParams::new(vec![c(1.0), c(1.0)]).unwrap();
        let e = an_rat_to_trig(&p, 0).unwrap();
        let t = e.target();
        assert_eq!(t.m(), &[c(1.0), c(1.0)]);
        assert!((t.a() - c(-2.0 / 3.0)).norm() < 1e-15);
        assert_eq!(t.b(), c(1.0));
        assert_eq!(t.c(), c(-4.0));
        assert!(trig_an_relation(t).norm() < 1e-14);
        // bM + c = −2a_γ and aM² + 3bM + c = −2a_γ²/(A+1)
        assert!((e.cond1() - c(-2.0)).norm() < 1e-15);
        assert!((t.cond2() - c(-2.0 / 3.0)).norm() < 1e-14);
        assert!((e.scale() - c(9.0 / 8.0)).norm() < 1e-15);
    }

    #[test]
    fn a2_coordinate_map() {
        let p = RationalAnParams::new(vec![c(1.0), c(1.0)]).unwrap();
        let e = an_rat_to_trig(&p, 0).unwrap();
        assert_eq!(e.coords(&[c(0.0), c(0.0)]), vec![c(0.0), c(0.0)]);
        let y = e.coords(&[c(2.0), c(4.0)]);
        assert!((y[0] - c(-3.0)).norm() < 1e-15 && (y[1] - c(3.0)).norm() < 1e-15);
        let det = crate::linalg::determinant(e.jacobian());
        assert!((det + c(1.5f64.powi(2))).norm() < 1e-14);
    }

    #[test]
    fn worked_bn_instance() {
        let p = RationalBnParams::new(vec![c(1.0); 3]).unwrap();
        let e = bn_to_bcn(&p, 0, c(1.0)).unwrap();
        let t = e.target();
        assert!((t.q() - c(-2.0 / 9.0)).norm() < 1e-15);
        assert!((t.r() - c(-16.0 / 9.0)).norm() < 1e-15);
        assert!((t.s() - c(2.0 / 9.0)).norm() < 1e-15);
        assert!((t.h() - c(-8.0 / 9.0)).norm() < 1e-15);
        assert!((t.lambda() * t.lambda() - c(128.0 / 9.0)).norm() < 1e-13);
        assert!((t.nondegeneracy() - c(-8.0 / 81.0)).norm() < 1e-15);
        assert_eq!(e.predicted_pairing(), Pairing::Principal);
        let xi = e.coords(&[c(1.0), c(1.0)], Pairing::Principal);
        assert!((xi[0] - c(8f64.sqrt())).norm() < 1e-15);
        assert!((xi[1] - Complex64::new(0.0, 3.0)).norm() < 1e-15);

        let (back, r) = bcn_to_bn(t, 0).unwrap();
        assert!((r - c(1.0)).norm() < 1e-12);
        for (x, y) in back.b().iter().zip(p.b()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn r_scaling_is_homogeneous() {
        let p = RationalBnParams::new(vec![c(0.7), c(1.2), Complex64::new(0.4, 0.9)]).unwrap();
        let e1 = bn_to_bcn(&p, 1, c(1.0)).unwrap();
        let e2 = bn_to_bcn(&p, 1, c(2.0)).unwrap();
        let (t1, t2) = (e1.target(), e2.target());
        for (a, b) in [(t1.q(), t2.q()), (t1.r(), t2.r()), (t1.s(), t2.s()), (t1.h(), t2.h())] {
            assert!((a - 2.0 * b).norm() < 1e-14);
        }
        let (l1, l2) = (t1.lambda() * t1.lambda(), t2.lambda() * t2.lambda());
        assert!((l1 - 2.0 * l2).norm() < 1e-13 * l1.norm());
    }

    #[test]
    fn generic_bcn_round_trip() {
        let t = TrigBCnParams::new(vec![c(2.0)], c(-1.0), c(1.0), c(1.0)).unwrap();
        let (b, r) = bcn_to_bn(&t, 0).unwrap();
        let expect = [-3.5, 4.5, 2.0];
        for (x, y) in b.b().iter().zip(expect) {
            assert!((x - c(y)).norm() < 1e-15);
        }
        assert!((b.total() - c(3.0)).norm() < 1e-15);
        assert!((r - c(4.5)).norm() < 1e-14);
        let e = bn_to_bcn(&b, 0, r).unwrap();
        let u = e.target();
        for (x, y) in [(u.q(), t.q()), (u.r(), t.r()), (u.s(), t.s())] {
            assert!((x - y).norm() < 1e-12);
        }
        assert_eq!(u.m(), t.m());
    }

    #[test]
    fn degenerate_inputs() {
        let t = TrigBCnParams::new(vec![c(1.0)], c(2.0), c(1.0), c(1.0)).unwrap();
        assert!(matches!(bcn_to_bn(&t, 0), Err(Error::DegenerateEquivalence(_))));
        // B = b_γ when the remaining parameters cancel
        let p = RationalBnParams::new(vec![c(1.0), c(2.0), c(-1.0)]).unwrap();
        assert!(matches!(
            bn_to_bcn(&p, 0, c(1.0)),
            Err(Error::DegenerateEquivalence(_))
        ));
    }
}
