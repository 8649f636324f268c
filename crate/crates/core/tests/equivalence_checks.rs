use wdvv_core::equivalence::{an_rat_to_trig, bcn_to_bn, bn_to_bcn, Pairing};
use wdvv_core::families::trig_an::{trig_an_relation, trig_an_relation_scale};
use wdvv_core::families::{FamilyKind, FamilyParams, RationalAnParams};
use wdvv_core::legendre::LegendreContext;
use wdvv_core::linalg::wdvv_residual;
use wdvv_core::families::trig_bcn::{trig_bcn_metric, trig_bcn_tensor};
use wdvv_core::sampling::{family_point, random_complex, random_params, stream};
use wdvv_core::{Complex64, Error};

fn rational(kind: FamilyKind, n: usize, seed: u64) -> FamilyParams {
    random_params(&mut stream(seed, u64::MAX), kind, n).unwrap()
}

/// x̂ samples from x samples; kernel poles on the target side are resampled.
fn hat_points<F>(p: &FamilyParams, gamma: usize, seed: u64, mut accept: F) -> Vec<Vec<Complex64>>
where
    F: FnMut(&[Complex64]) -> bool,
{
    let ctx = LegendreContext::from_family(p, gamma).unwrap();
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < 20 {
        let x = family_point(&mut stream(seed, i), p).unwrap();
        i += 1;
        let xhat = ctx.hat_coords(&x).unwrap();
        if accept(&xhat) {
            out.push(xhat);
        }
        assert!(i < 200, "too many rejections");
    }
    out
}

#[test]
fn an_equivalence_sweep() {
    for n in 2..=4 {
        let p = rational(FamilyKind::RationalAn, n, 400 + n as u64);
        let FamilyParams::RationalAn(ap) = &p else { unreachable!() };
        for gamma in 0..n {
            let e = an_rat_to_trig(ap, gamma).unwrap();
            let t = e.target();
            assert!(trig_an_relation(t).norm() < 1e-12 * (1.0 + t.a().norm() * 20.0));
            assert!((e.cond1() + 2.0 * ap.a()[gamma]).norm() < 1e-12);
            let want = -2.0 * ap.a()[gamma].powi(2) / (ap.total() + 1.0);
            assert!((t.cond2() - want).norm() < 1e-12 * want.norm().max(1.0));
            for xhat in hat_points(&p, gamma, 500 + n as u64, |xh| e.verify(xh).is_ok()) {
                let r = e.verify(&xhat).unwrap();
                assert!(r < 1e-8, "n={n} γ={gamma}: {r:e}");
            }
        }
    }
}

#[test]
fn mapped_parameters_satisfy_relation() {
    for draw in 0..100u64 {
        let n = 2 + (draw % 3) as usize;
        let FamilyParams::RationalAn(p) = rational(FamilyKind::RationalAn, n, 9000 + draw) else {
            unreachable!()
        };
        for gamma in 0..n {
            let t = an_rat_to_trig(&p, gamma).unwrap();
            let t = t.target();
            let rel = trig_an_relation(t).norm() / trig_an_relation_scale(t);
            assert!(rel < 1e-12, "draw {draw} γ={gamma}: {rel:e}");
        }
    }
}

#[test]
fn non_first_direction_with_mixed_weights() {
    let a: Vec<Complex64> = [1.0, 2.0, 1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let p = FamilyParams::RationalAn(RationalAnParams::new(a).unwrap());
    let FamilyParams::RationalAn(ap) = &p else { unreachable!() };
    let e = an_rat_to_trig(ap, 1).unwrap();
    for xhat in hat_points(&p, 1, 77, |xh| e.verify(xh).is_ok()) {
        let r = e.verify(&xhat).unwrap();
        assert!(r < 1e-8, "{r:e}");
    }
}

#[test]
fn an_equivalence_detects_wrong_scale() {
    let p = rational(FamilyKind::RationalAn, 3, 41);
    let FamilyParams::RationalAn(ap) = &p else { unreachable!() };
    let e = an_rat_to_trig(ap, 1).unwrap();
    let xhat = &hat_points(&p, 1, 42, |xh| e.verify(xh).is_ok())[0];
    assert!(e.verify_with_scale(xhat, 2.0 * e.scale()).unwrap() > 1e-3);
}

#[test]
fn bn_equivalence_sweep() {
    for n in 2..=4 {
        let p = rational(FamilyKind::RationalBn, n, 600 + n as u64);
        let FamilyParams::RationalBn(bp) = &p else { unreachable!() };
        for gamma in 0..n {
            let r_scale = random_complex(&mut stream(700, (n * 10 + gamma) as u64));
            let e = bn_to_bcn(bp, gamma, r_scale).unwrap();
            let metric = trig_bcn_metric(e.target()).unwrap();
            let pts = hat_points(&p, gamma, 800 + n as u64, |xh| e.verify(xh, 1e-8).is_ok());
            for xhat in pts {
                let v = e.verify(&xhat, 1e-8).unwrap();
                assert!(v.residual < 1e-8, "n={n} γ={gamma}: {v:?}");
                assert_eq!(v.pairing, e.predicted_pairing());
                // simultaneous (λ, ξ₀) flip leaves the check unchanged
                let s = if v.pairing == Pairing::Principal { 1.0 } else { -1.0 };
                let both = e.residual(&xhat, -1.0, -s, r_scale).unwrap();
                assert!((both - v.residual).abs() < 1e-10);
                let xi = e.coords(&xhat, v.pairing);
                let bc = trig_bcn_tensor(e.target(), &xi).unwrap();
                assert!(wdvv_residual(&bc, &metric.eta_inv).unwrap() < 1e-11);
            }
            let (back, r_back) = bcn_to_bn(e.target(), gamma).unwrap();
            assert!((r_back - r_scale).norm() < 1e-12 * r_scale.norm().max(1.0));
            for (x, y) in back.b().iter().zip(bp.b()) {
                assert!((x - y).norm() < 1e-12 * y.norm().max(1.0));
            }
        }
    }
}

#[test]
fn bn_equivalence_detects_wrong_r() {
    let p = rational(FamilyKind::RationalBn, 3, 61);
    let FamilyParams::RationalBn(bp) = &p else { unreachable!() };
    let e = bn_to_bcn(bp, 1, Complex64::new(1.0, 0.0)).unwrap();
    let xhat = &hat_points(&p, 1, 62, |xh| e.verify(xh, 1e-8).is_ok())[0];
    let s = if e.predicted_pairing() == Pairing::Principal { 1.0 } else { -1.0 };
    assert!(e.residual(xhat, 1.0, s, Complex64::new(2.0, 0.0)).unwrap() > 1e-3);
}

#[test]
fn worked_bn_sweep() {
    let one = Complex64::new(1.0, 0.0);
    let bp = wdvv_core::families::RationalBnParams::new(vec![one; 3]).unwrap();
    let p = FamilyParams::RationalBn(bp.clone());
    let e = bn_to_bcn(&bp, 0, one).unwrap();
    for xhat in hat_points(&p, 0, 9, |xh| e.verify(xh, 1e-8).is_ok()) {
        let v = e.verify(&xhat, 1e-8).unwrap();
        assert!(v.residual < 1e-8);
        assert_eq!(v.pairing, Pairing::Principal);
    }
    assert!(matches!(bn_to_bcn(&bp, 2, one), Err(Error::IndexOutOfRange { .. })));
}
