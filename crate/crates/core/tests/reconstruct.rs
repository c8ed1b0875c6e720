use mrsw_core::reconstruct::*;
use mrsw_core::Error;
use proptest::prelude::*;

#[test]
fn minmod_examples() {
    assert_eq!(minmod(&[1.0, 2.0, 3.0]).unwrap(), 1.0);
    assert_eq!(minmod(&[-2.0, -1.0, -3.0]).unwrap(), -1.0);
    assert_eq!(minmod(&[1.0, -1.0, 2.0]).unwrap(), 0.0);
    assert_eq!(minmod(&[0.0, 1.0]).unwrap(), 0.0);
    assert!(matches!(minmod(&[]), Err(Error::EmptyInput)));
    assert_eq!(minmod3(4.0, 2.0, 3.0), 2.0);
}

#[test]
fn linear_data_is_reproduced() {
    let dy = 0.25;
    let psi: Vec<f64> = (0..10).map(|k| 2.0 * (k as f64 * dy)).collect();
    for theta in [1.0, 1.3, 2.0] {
        let r = linear_reconstruct(&psi, dy, theta).unwrap();
        for c in 1..9 {
            assert!((r.slopes[c] - 2.0).abs() < 1e-14);
            assert!((r.east[c] - 2.0 * (c as f64 + 0.5) * dy).abs() < 1e-14);
            assert!((r.west[c] - 2.0 * (c as f64 - 0.5) * dy).abs() < 1e-14);
        }
    }
}

#[test]
fn constant_and_extremum_data_have_zero_slopes() {
    let r = linear_reconstruct(&[3.0; 6], 0.1, 1.3).unwrap();
    assert!(r.slopes.iter().all(|&s| s == 0.0));
    assert!(r.east.iter().chain(&r.west).all(|&v| v == 3.0));
    let r = linear_reconstruct(&[0.0, 1.0, 0.0], 1.0, 1.3).unwrap();
    assert_eq!(r.slopes[1], 0.0);
    assert!(matches!(linear_reconstruct(&[1.0, 2.0], 1.0, 1.3), Err(Error::TooShort { .. })));
}

#[test]
fn weno_constant_and_hand_values() {
    let cfg = WenoZConfig::default();
    assert_eq!(weno_z_value(&[2.5; 5], &cfg), 2.5);
    // Symmetric spike: equal outer indicators, so τ = 0 and the weights are linear.
    // Candidates 15/8, 3/4, 3/8 with weights 1/16, 5/8, 5/16 give 45/64.
    assert!((weno_z_value(&[0.0, 0.0, 1.0, 0.0, 0.0], &cfg) - 45.0 / 64.0).abs() < 1e-15);
    // Discontinuity right of the centre cell: the smooth left candidate (value 0) dominates.
    assert!(weno_z_value(&[0.0, 0.0, 0.0, 1.0, 0.0], &cfg).abs() < 1e-20);
    // The left-face value mirrors the stencil.
    let s = [0.3, -1.0, 2.0, 0.5, 4.0];
    assert_eq!(weno_z_value_left(&s, &cfg), weno_z_value(&[4.0, 0.5, 2.0, -1.0, 0.3], &cfg));
}

#[test]
fn divergence_free_factor_examples() {
    assert_eq!(divergence_free_factor(0.5, 10.0, 1.0, 1.0), 0.5);
    assert_eq!(divergence_free_factor(-0.5, 1.0, 1.0, 1.0), 0.0);
    assert_eq!(divergence_free_factor(3.0, 3.0, 1.0, 1.0), 1.0);
    let f = magnetic_interface_2d(2.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.1, 0.1);
    assert_eq!((f.ha_east, f.ha_west, f.hb_north, f.hb_south), (2.0, 2.0, 3.0, 3.0));
}

#[test]
fn magnetic_faces_use_scaled_derivatives() {
    let f = magnetic_interface_2d(1.0, 2.0, 4.0, -4.0, 2.0, -3.0, 0.2, 0.4);
    assert_eq!(f.sigma, 0.5);
    assert!((f.ha_east - (1.0 + 0.5 * 4.0 * 0.1)).abs() < 1e-15);
    assert!((f.hb_south - (2.0 + 0.5 * 4.0 * 0.2)).abs() < 1e-15);
    // Face differences reproduce σĀΔx and σB̄Δy, which cancel in the divergence.
    let div = (f.ha_east - f.ha_west) / 0.2 + (f.hb_north - f.hb_south) / 0.4;
    assert!(div.abs() < 1e-14);
}

proptest! {
    #[test]
    fn minmod_sign_and_magnitude(v in prop::collection::vec(-10.0f64..10.0, 1..6)) {
        let m = minmod(&v).unwrap();
        let min_abs = v.iter().fold(f64::INFINITY, |a, x| a.min(x.abs()));
        prop_assert!(m.abs() <= min_abs);
        if m != 0.0 {
            prop_assert!(v.iter().all(|x| x.signum() == m.signum()));
        }
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        prop_assert_eq!(minmod(&neg).unwrap(), -m);
    }

    #[test]
    fn linear_reconstruction_is_bounded(v in prop::collection::vec(-5.0f64..5.0, 3..40), theta in 1.0f64..2.0) {
        let r = linear_reconstruct(&v, 0.1, theta).unwrap();
        let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        for c in 1..v.len() - 1 {
            for x in [r.east[c], r.west[c]] {
                prop_assert!(x <= hi + 1e-12 && x >= lo - 1e-12);
            }
        }
    }

    #[test]
    fn reconstruction_is_scale_equivariant(v in prop::collection::vec(-5.0f64..5.0, 3..30), c in -4.0f64..4.0) {
        let r = linear_reconstruct(&v, 0.3, 1.3).unwrap();
        let scaled: Vec<f64> = v.iter().map(|x| c * x).collect();
        let rs = linear_reconstruct(&scaled, 0.3, 1.3).unwrap();
        for k in 0..v.len() {
            prop_assert!((rs.east[k] - c * r.east[k]).abs() <= 1e-12 * (1.0 + c.abs() * r.east[k].abs()));
        }
        let s: [f64; 5] = [v[0], v[1], v[2], v[0] * 0.5, v[1] - 1.0];
        let cfg = WenoZConfig::default();
        let ws = weno_z_value(&s.map(|x| c * x), &cfg);
        prop_assert!((ws - c * weno_z_value(&s, &cfg)).abs() <= 1e-10 * (1.0 + s.iter().fold(0.0f64, |m, x| m.max(x.abs())) * c.abs()));
    }

    #[test]
    fn weno_reproduces_quadratics(a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0, dx in 0.01f64..2.0, y0 in -5.0f64..5.0) {
        let q = |y: f64| a * y * y + b * y + c;
        let s: [f64; 5] = std::array::from_fn(|i| q(y0 + (i as f64 - 2.0) * dx));
        let exact = q(y0 + 0.5 * dx);
        let got = weno_z_value(&s, &WenoZConfig::default());
        let scale = s.iter().fold(exact.abs(), |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
        prop_assert!((got - exact).abs() <= 10.0 * f64::EPSILON * scale, "got {} exact {}", got, exact);
    }

    #[test]
    fn zero_divergence_survives_sigma(a in -5.0f64..5.0, sx in -5.0f64..5.0, sy in -5.0f64..5.0) {
        let sigma = divergence_free_factor(sx, sy, a, -a);
        prop_assert!((0.0..=1.0).contains(&sigma));
        prop_assert_eq!(sigma * a + sigma * (-a), 0.0);
    }
}
