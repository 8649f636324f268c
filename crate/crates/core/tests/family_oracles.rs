use wdvv_core::families::{FamilyKind, FamilyParams};
use wdvv_core::linalg::wdvv_residual;
use wdvv_core::oracle::derivative_check;
use wdvv_core::sampling::{family_point, random_params, stream};

fn sweep(kind: FamilyKind, n: usize, seed: u64) -> (FamilyParams, Vec<Vec<wdvv_core::Complex64>>) {
    let p = random_params(&mut stream(seed, u64::MAX), kind, n).unwrap();
    let pts = (0..20)
        .map(|i| family_point(&mut stream(seed, i), &p).unwrap())
        .collect();
    (p, pts)
}

#[test]
fn closed_forms_match_finite_differences() {
    for kind in FamilyKind::ALL {
        for n in 2..=4 {
            let (p, pts) = sweep(kind, n, 100 + n as u64);
            let worst = pts
                .iter()
                .map(|x| derivative_check(&p, x).unwrap())
                .fold(0.0, f64::max);
            println!("{} n={n}: {worst:e}", kind.tag());
            assert!(worst < 1e-6, "{} n={n}: {worst:e}", kind.tag());
        }
    }
}

#[test]
fn sampled_families_solve_wdvv() {
    for kind in FamilyKind::ALL {
        for n in 2..=4 {
            let (p, pts) = sweep(kind, n, 200 + n as u64);
            let m = p.metric().unwrap();
            for x in &pts {
                let t = p.tensor(x).unwrap();
                let r = wdvv_residual(&t, &m.eta_inv).unwrap();
                // the BC family solves WDVV only on the image of the B_n map
                if kind != FamilyKind::TrigBCn {
                    assert!(r < 1e-11, "{} n={n}: {r:e}", kind.tag());
                }
                let q = p.metric_weights(x);
                assert!(t.combine(&q).sub(&m.eta).max_abs() < 1e-10 * m.eta.max_abs());
                assert!(t.symmetry_defect() < 1e-12);
            }
        }
    }
}
