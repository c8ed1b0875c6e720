use mrsw_core::cubic::*;
use mrsw_core::grid::Grid1D;
use mrsw_core::model::{ModelConfig, H_FLOOR};
use mrsw_core::solver1d::{equilibrium_from_conserved, SteadyTargets1D};
use mrsw_core::topography::{Topography1D, TopographyDescriptor};
use mrsw_core::verification::{bisection_roots, cubic_oracle};
use proptest::prelude::*;

fn cubic(c_kin: f64, z_eff: f64, e_tgt: f64, h_guess: f64) -> EnergyCubic {
    EnergyCubic { c_kin, z_eff, e_tgt, g: 1.0, h_guess }
}

#[test]
fn lake_at_rest_reduction() {
    for guess in [0.1, 1.0, 2.0, 50.0] {
        let h = solve_energy_cubic(&cubic(0.0, 0.0, 2.0, guess)).unwrap();
        assert!((h - 2.0).abs() < 1e-15);
    }
}

#[test]
fn example_one_cell_root() {
    let cfg = ModelConfig { f_c: 1.0, ..ModelConfig::default() };
    let grid = Grid1D::new(100, -10.0, 10.0).unwrap();
    let topo = Topography1D::new(&TopographyDescriptor::parse("gaussian(0.5,0,1)").unwrap(), &grid).unwrap();
    let targets = SteadyTargets1D { hv: 0.5, e: 1.0, hb: 3.0, u_c: 0.3, a_c: 2.0 };
    let w = mrsw_core::solver1d::steady_state_discrete(&cfg, &grid, &topo, &targets).unwrap();
    let eq = equilibrium_from_conserved(&w, &topo, &grid, &cfg, targets.u_at(&cfg, -10.0)).unwrap();
    for k in [0, 37, 50, 99] {
        let c = EnergyCubic { c_kin: -35.0 / 8.0, z_eff: topo.center(k) + eq.p_center[k], e_tgt: 1.0, g: 1.0, h_guess: w.comps[0][k] };
        let h = solve_energy_cubic(&c).unwrap();
        assert!(c.residual(h).abs() < 1e-13);
        let oracle = bisection_roots(&c);
        assert!(oracle.iter().any(|r| (r - h).abs() <= 1e-12 * h), "{h} vs {oracle:?}");
    }
}

#[test]
fn no_positive_root_falls_back_to_guess() {
    let c = cubic(1.0, 100.0, 0.0, 0.7);
    let r = solve_energy_cubic_detailed(&c).unwrap();
    assert!(r.fallback);
    assert_eq!(r.h, 0.7);
    assert!(admissible_roots(&c).unwrap().is_empty());
}

#[test]
fn non_finite_coefficients_are_rejected() {
    assert!(solve_energy_cubic(&cubic(f64::NAN, 0.0, 1.0, 1.0)).is_err());
    assert!(solve_energy_cubic(&EnergyCubic { g: f64::INFINITY, ..cubic(0.0, 0.0, 1.0, 1.0) }).is_err());
}

#[test]
fn two_roots_pick_the_closest() {
    // (h - 1)(h - 2)(h + 2/3) = h³ - (7/3)h² + 0·h + 4/3: roots 1 and 2.
    let c = cubic(4.0 / 3.0, 0.0, 7.0 / 3.0, 1.2);
    assert!((solve_energy_cubic(&c).unwrap() - 1.0).abs() < 1e-14);
    let c = cubic(4.0 / 3.0, 0.0, 7.0 / 3.0, 1.8);
    assert!((solve_energy_cubic(&c).unwrap() - 2.0).abs() < 1e-14);
    // Equidistant guess goes to the larger root.
    let c = cubic(4.0 / 3.0, 0.0, 7.0 / 3.0, 1.5);
    assert!((solve_energy_cubic(&c).unwrap() - 2.0).abs() < 1e-14);
}

#[test]
fn random_oracle_agreement() {
    let (ok, detail) = cubic_oracle(10_000, 2024);
    assert!(ok, "{detail}");
}

proptest! {
    #[test]
    fn returned_roots_have_small_residual(c_kin in -50.0f64..50.0, z in -5.0f64..5.0, e in -5.0f64..20.0, guess in 0.01f64..10.0, g in 0.1f64..10.0) {
        let c = EnergyCubic { c_kin, z_eff: z, e_tgt: e, g, h_guess: guess };
        let r = solve_energy_cubic_detailed(&c).unwrap();
        if !r.fallback {
            prop_assert!(r.h >= H_FLOOR && r.h <= H_MAX);
            // The polynomial form is the scale-free test; the residual form divides by h².
            let scale = (g * r.h).abs().max((z - e).abs()).max(1.0) * r.h * r.h + c_kin.abs();
            prop_assert!(c.poly(r.h).abs() <= 1e-12 * scale.max(1.0), "poly {} at {}", c.poly(r.h), r.h);
        }
    }

    #[test]
    fn fallback_matches_oracle(c_kin in -50.0f64..50.0, z in -5.0f64..5.0, e in -5.0f64..20.0, guess in 0.01f64..10.0) {
        let c = cubic(c_kin, z, e, guess);
        let r = solve_energy_cubic_detailed(&c).unwrap();
        prop_assert_eq!(r.fallback, bisection_roots(&c).is_empty());
    }

    #[test]
    fn solver_is_deterministic(c_kin in -50.0f64..50.0, z in -5.0f64..5.0, e in -5.0f64..20.0, guess in 0.01f64..10.0) {
        let c = cubic(c_kin, z, e, guess);
        prop_assert_eq!(solve_energy_cubic(&c).unwrap().to_bits(), solve_energy_cubic(&c).unwrap().to_bits());
    }
}
