use mackey_field::analytic_sl2::quadrature::{gauss_legendre, schur_residual, Su2Quadrature};
use mackey_field::analytic_sl2::su2::{euler, exp_a, exp_n};
use mackey_field::analytic_sl2::*;
use proptest::prelude::*;

const CHEAP: Orders = Orders { k_angle: 8, k_polar: 8, radial: 10, polar: 12, azimuth: 16 };

fn spin_zero(nu: f64, section: &str) -> Sl2Scenario {
    let mut s = Sl2Scenario::new(0, nu, section, vec![0.2, 0.1]);
    s.phi = Some(KFinite::single(0, 0, 0, C64::new(1.0, 0.0)));
    s.psi = Some(KFinite::single(0, 0, 0, C64::new(1.0, 0.0)));
    s.orders = CHEAP;
    s.tolerance = 1e-4;
    s
}

/// `½ · 16π ∫₀¹ r² (1 - r²)³ sinc(νr) dr`: the radial section paired with
/// the spin-0 vectors, by one-dimensional quadrature.
fn radial_limit(nu: f64) -> f64 {
    let sinc = |x: f64| if x == 0.0 { 1.0 } else { x.sin() / x };
    let s: f64 = gauss_legendre(40)
        .into_iter()
        .map(|(u, w)| {
            let r = 0.5 * (u + 1.0);
            0.5 * w * r * r * (1.0 - r * r).powi(3) * sinc(nu * r)
        })
        .sum();
    0.5 * 16.0 * std::f64::consts::PI * s
}

#[test]
fn spin_zero_limit_matches_radial_transform() {
    assert!((radial_limit(0.0) - 0.5 * 256.0 * std::f64::consts::PI / 315.0).abs() < 1e-13);
    for nu in [0.0, 1.5] {
        let s = spin_zero(nu, "radial");
        let lim = motion_limit_coeff(&s).unwrap();
        let rep = motion_rep_coeff(&s).unwrap();
        let want = radial_limit(nu);
        assert!((lim.value - C64::new(want, 0.0)).norm() < 1e-10, "{nu}: {} vs {want}", lim.value);
        assert!((rep.value - lim.value).norm() < 1e-10);
    }
}

#[test]
fn scaled_coefficient_approaches_limit() {
    let s = spin_zero(0.5, "tilted");
    let lim = motion_limit_coeff(&s).unwrap().value;
    let mut prev = f64::INFINITY;
    for t in [0.4, 0.2, 0.1, 0.05] {
        let e = (scaled_matrix_coeff(&s, t).unwrap().value - lim).norm();
        assert!(e < prev, "t={t}: {e} !< {prev}");
        prev = e;
    }
    assert!(prev < 0.05);
}

#[test]
fn key_property_with_cheap_orders() {
    let s = Sl2Scenario { orders: CHEAP, ..shipped_scenarios()[2].clone() };
    let p = key_property_probe(&s, 0.25).unwrap();
    assert!(p.rel < 1e-4, "rel {}", p.rel);
    assert!(key_property_probe(&s, -1.0).is_err());
    assert!(key_property_probe(&s, 0.0).is_err());
}

#[test]
fn zero_section_and_bad_scenarios() {
    let s = spin_zero(1.0, "zero");
    assert_eq!(scaled_matrix_coeff(&s, 0.3).unwrap().value, C64::new(0.0, 0.0));
    assert_eq!(motion_limit_coeff(&s).unwrap().value, C64::new(0.0, 0.0));
    let bad = spin_zero(1.0, "nonexistent");
    assert!(matches!(scaled_matrix_coeff(&bad, 0.3), Err(Sl2Error::UnknownSection(_))));
    let text = r#"{"sigma":0,"nu":0,"section":"radial","orders":{"k_angle":1,"k_polar":4,"radial":4,"polar":4,"azimuth":4},"t_schedule":[0.1]}"#;
    assert!(Sl2Scenario::from_json(text).is_err());
    let aliased = Sl2Scenario { orders: Orders { k_angle: 6, ..CHEAP }, ..shipped_scenarios()[2].clone() };
    assert!(matches!(motion_limit_coeff(&aliased), Err(Sl2Error::Invalid(_))));
}

#[test]
fn self_consistency_failure_is_reported() {
    let mut s = spin_zero(0.0, "drifting");
    s.orders = Orders { k_angle: 8, k_polar: 2, radial: 2, polar: 2, azimuth: 2 };
    s.tolerance = 1e-14;
    assert!(matches!(scaled_matrix_coeff(&s, 0.4), Err(Sl2Error::QuadratureUnconverged { .. })));
}

#[test]
fn experiment_writes_reports() {
    let mut s = spin_zero(0.0, "tilted");
    s.t_schedule = vec![0.4, 0.2, 0.1];
    s.nu_samples = vec![1.0];
    s.tolerance = 1e-4;
    let r = convergence_experiment(&s).unwrap();
    assert_eq!(r.rows.len(), 3);
    assert!(r.strictly_decreasing);
    assert_eq!(r.nu_sweep.len(), 1);
    let dir = tempfile::tempdir().unwrap();
    r.write_csv(&dir.path().join("e.csv")).unwrap();
    r.write_json(&dir.path().join("e.json")).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("e.csv")).unwrap();
    assert!(csv.starts_with("t,e_t,value_re,value_im"));
    let back: ConvergenceReport = serde_json::from_str(&std::fs::read_to_string(dir.path().join("e.json")).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn schur_at_shipped_orders() {
    for s in shipped_scenarios() {
        let q = Su2Quadrature::new(s.orders.k_angle, s.orders.k_polar);
        assert!(schur_residual(&q, 4) <= 1e-10);
    }
}

fn group_element() -> impl Strategy<Value = Mat2> {
    (0.0..6.3f64, 0.0..3.15f64, 0.0..6.3f64, -3.0..3.0f64, -4.0..4.0f64, -4.0..4.0f64, 0.0..6.3f64, 0.0..3.15f64)
        .prop_map(|(a, b, c, x, zr, zi, a2, b2)| {
            euler(a, b, c).mul(&exp_a(x)).mul(&exp_n(C64::new(zr, zi))).mul(&euler(a2, b2, 0.0))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn iwasawa_reconstructs(g in group_element()) {
        let f = iwasawa(&g).unwrap();
        let scale = g.frobenius().max(1.0);
        prop_assert!(f.reconstruct().sub(&g).frobenius() <= 1e-12 * scale);
        prop_assert!(f.kappa.mul(&f.kappa.adjoint()).sub(&Mat2::IDENTITY).frobenius() < 1e-13);
        prop_assert!((f.kappa.det() - C64::new(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn iwasawa_of_kan_recovers_factors(a in 0.0..6.3f64, b in 0.0..3.15f64, c in 0.0..6.3f64, x in -2.0..2.0f64, zr in -3.0..3.0f64, zi in -3.0..3.0f64) {
        let k = euler(a, b, c);
        let z = C64::new(zr, zi);
        let f = iwasawa(&k.mul(&exp_a(x)).mul(&exp_n(z))).unwrap();
        prop_assert!((f.h - x).abs() < 1e-12);
        prop_assert!((f.n - z).norm() < 1e-11);
        prop_assert!(f.kappa.sub(&k).frobenius() < 1e-12);
    }
}
