use wdvv_core::families::{FamilyKind, FamilyParams, RationalAnParams};
use wdvv_core::legendre::{a2, LegendreContext};
use wdvv_core::linalg::wdvv_residual;
use wdvv_core::oracle::fd_jacobian;
use wdvv_core::sampling::{family_point, random_params, stream};
use wdvv_core::Complex64;

fn contexts() -> Vec<(LegendreContext, Vec<Vec<Complex64>>)> {
    let mut out = Vec::new();
    for kind in [FamilyKind::RationalAn, FamilyKind::RationalBn] {
        for n in 2..=4 {
            let seed = 300 + n as u64 + 10 * (kind == FamilyKind::RationalBn) as u64;
            let p = random_params(&mut stream(seed, u64::MAX), kind, n).unwrap();
            for gamma in 0..n {
                let ctx = LegendreContext::from_family(&p, gamma).unwrap();
                let pts = (0..20)
                    .map(|i| family_point(&mut stream(seed + 1000 * gamma as u64, i), &p).unwrap())
                    .collect();
                out.push((ctx, pts));
            }
        }
    }
    out
}

#[test]
fn chain_rule_round_trip_and_wdvv() {
    for (ctx, pts) in contexts() {
        let metric = ctx.metric().unwrap();
        for x in &pts {
            let c = ctx.consistency(x).unwrap();
            assert!(c < 1e-8, "consistency {c:e} at γ={}", ctx.gamma());
            let r = ctx.round_trip_error(x).unwrap();
            assert!(r < 1e-10, "round trip {r:e}");
            let xhat = ctx.hat_coords(x).unwrap();
            let hat = ctx.hat_tensor(&xhat).unwrap();
            assert!(wdvv_residual(&hat, &metric.eta_inv).unwrap() < 1e-11);
        }
    }
}

#[test]
fn jacobian_matches_finite_differences_of_hat_map() {
    for (ctx, pts) in contexts().into_iter().step_by(3) {
        let x = &pts[0];
        let fd = fd_jacobian(&|p: &[Complex64]| ctx.hat_coords(p), x).unwrap();
        let j = ctx.jacobian(x).unwrap();
        assert!(j.sub(&fd).max_abs() < 1e-7 * j.max_abs().max(1.0));
    }
}

#[test]
fn worked_jacobian_and_metric_weights() {
    let ctx = a2::context();
    let x = [Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)];
    let j = ctx.jacobian(&x).unwrap();
    let fd = fd_jacobian(&|p: &[Complex64]| ctx.hat_coords(p), &x).unwrap();
    assert!(j.sub(&fd).max_abs() < 1e-7);
    // q̂ = J·x: x̂ coordinates of the position field
    let qhat = j.mul_vec(&x);
    let direct: Vec<Complex64> = (0..2)
        .map(|l| (0..2).map(|k| x[k] * j[(l, k)]).sum())
        .collect();
    assert_eq!(qhat, direct);
}

#[test]
fn perturbed_cubic_coefficient_is_detected() {
    let (ctx, pts) = contexts().into_iter().nth(1).unwrap();
    let x = &pts[0];
    let g = ctx.gamma();
    let mut hat = ctx.hat_tensor(&ctx.hat_coords(x).unwrap()).unwrap();
    // coefficient of (x̂^γ)³ shifted by 1e−2 moves F̂_γγγ by 6e−2
    let v = hat[(g, g, g)] + 0.06;
    hat.set_sym(g, g, g, v);
    assert!(ctx.consistency_with(x, &hat).unwrap() > 1e-4);
}

#[test]
fn a2_coefficients_and_cross_sign() {
    let c = a2::extract_coefficients(&Complex64::new(0.7, 0.2), &Complex64::new(1.3, -0.4)).unwrap();
    assert!((c.cubic_gamma - a2::CUBIC_GAMMA).norm() < 1e-10);
    assert!((c.mixed_square - a2::MIXED_SQUARE).norm() < 1e-10);
    assert!((c.cubic_other - a2::CUBIC_OTHER).norm() < 1e-10);
    assert!((c.trilog - a2::TRILOG).norm() < 1e-10);
    // the general closed form carries η_12/2 = −1
    assert!((c.cross + 1.0).norm() < 1e-12);

    let one = Complex64::new(1.0, 0.0);
    let unit = FamilyParams::RationalAn(RationalAnParams::new(vec![one, one]).unwrap());
    for i in 0..20 {
        let x = family_point(&mut stream(77, i), &unit).unwrap();
        let r = a2::certify_cross_sign(&x, 1e-8).unwrap();
        assert_eq!(r.certified_sign, -1, "{r:?}");
        assert!(r.residual_minus < 1e-12);
        assert!(r.residual_plus > 1e-2);
        let xhat = a2::context().hat_coords(&x).unwrap();
        let general = a2::context().hat_tensor(&xhat).unwrap();
        let example = a2::example_hat_tensor(-1.0, &xhat).unwrap();
        assert!(general.relative_diff(&example) < 1e-10);
    }
}
