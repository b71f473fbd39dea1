use gswwe_core::pipeline::SetId;
use gswwe_core::solutions::{ExpansionParams, ModelParams, Phi, TravelingWave};
use gswwe_core::verifier::{
    linspace, ode_residual, ode_residual_of, pde_convergence_order, pde_residual, pde_residual_of,
    traveling_form_residual, Grid2D, OdeCoefficients, ODE_STEP,
};

fn wave(set: SetId, c: f64, k1: f64) -> TravelingWave {
    TravelingWave::new(set, ModelParams::unit(), ExpansionParams::new(0.0, 1.0, c, k1, 1.0).unwrap()).unwrap()
}

#[test]
fn reduced_ode_residual_of_bounded_wave() {
    for set in [SetId::Set1, SetId::Set2] {
        let r = ode_residual(&wave(set, 0.1, 1.0), &linspace(-10.0, 10.0, 2001)).unwrap();
        assert_eq!(r.masked, 0);
        assert!(r.max_abs < 1e-6, "{set}: {:e}", r.max_abs);
    }
}

#[test]
fn pde_residual_of_bounded_wave() {
    let w = wave(SetId::Set1, 0.1, 1.0);
    let r = pde_residual(&w, &Grid2D::default_residual()).unwrap();
    assert_eq!(r.points, 201 * 201);
    assert_eq!(r.masked, 0);
    assert!(r.relative_max() < 1e-3, "{:e}", r.relative_max());
}

#[test]
fn pde_residual_converges_at_fourth_order() {
    let w = wave(SetId::Set1, 0.1, 1.0);
    let (maxima, slope) =
        pde_convergence_order(&w, &[(0.0, 0.0), (1.0, 0.5), (-2.0, -0.3)], &[0.2, 0.1, 0.05]).unwrap();
    assert!(maxima.windows(2).all(|m| m[1] < m[0]));
    assert!((3.5..=4.5).contains(&slope), "slope {slope}");
}

#[test]
fn grid_residual_matches_traveling_form() {
    // A non-solution: the frame and eta of fig1 with perturbed coefficients.
    let w = wave(SetId::Set1, 0.1, 1.0);
    let [_, a0, a1, a2] = w.coefficients;
    let p = w.clone().with_ansatz_coefficients([a0 + 0.3, a1 - 0.2, a2 * 1.1]);
    let om = p.omega();
    let h = 0.02;
    for (xc, tc) in [(0.0, 0.0), (1.5, 0.4), (-3.0, -0.2)] {
        let g = Grid2D::centred(xc, tc, h, 9).unwrap();
        let r = pde_residual(&p, &g).unwrap();
        let centre = r.residual[4 * 9 + 4];
        let zeta = p.frame.zeta(xc, 0.0, tc);
        let along = traveling_form_residual(|z| p.phi(z), &p.model, om, zeta, 1e-2).unwrap();
        assert!(along.abs() > 1e-3, "perturbation should break the equation");
        assert!((centre - along).abs() < 1e-6, "({xc},{tc}): {centre:e} vs {along:e}");
    }
}

#[test]
fn traveling_form_vanishes_for_exact_waves() {
    let w = wave(SetId::Set2, 0.1, 1.0);
    for z in linspace(-5.0, 5.0, 21) {
        let r = traveling_form_residual(|s| w.phi(s), &w.model, w.omega(), z, 1e-2).unwrap();
        assert!(r.abs() < 1e-6, "{z}: {r:e}");
    }
}

#[test]
fn ode_mask_never_consumes_poles() {
    let w = wave(SetId::Set2, 1.1, 1.5);
    let zetas = linspace(-10.0, 10.0, 2001);
    let r = ode_residual(&w, &zetas).unwrap();
    assert!(r.masked > 0);
    for (k, &z) in zetas.iter().enumerate() {
        let span_has_pole = !w.ratio().poles_in(z - 2.0 * ODE_STEP, z + 2.0 * ODE_STEP).is_empty();
        let touches = (-2..=2).any(|s| w.phi(z + s as f64 * ODE_STEP).is_pole());
        if !r.pole_mask[k] {
            assert!(!span_has_pole && !touches, "unmasked sample {z} straddles a pole");
            assert!(r.residual[k].is_finite());
        } else {
            assert_eq!(r.residual[k], 0.0);
        }
    }
}

#[test]
fn stencil_touching_a_pole_marker_is_masked() {
    let zetas = linspace(-1.0, 1.0, 201);
    let phi = |z: f64| if (z - 0.5).abs() < 1e-9 { Phi::Pole } else { Phi::Value(0.0) };
    let coeffs = OdeCoefficients { nonlinear: 1.0, linear: 0.0 };
    let r = ode_residual_of(phi, |_, _| false, coeffs, &zetas, 0.01).unwrap();
    let masked: Vec<f64> = zetas.iter().zip(&r.pole_mask).filter(|(_, &m)| m).map(|(&z, _)| z).collect();
    assert_eq!(masked.len(), 5);
    assert!(masked.iter().all(|z| (z - 0.5).abs() <= 0.02 + 1e-12));
    assert_eq!(r.max_abs, 0.0);
}

#[test]
fn pde_mask_never_consumes_poles() {
    let g = Grid2D::new(-2.0, 2.0, -1.0, 1.0, 41, 21).unwrap();
    let v = |x: f64, t: f64| {
        let hole = (x - 0.5).abs() < 1e-9 && t.abs() < 1e-9;
        (!hole).then_some(x * x - t)
    };
    let r = pde_residual_of(v, &ModelParams::unit(), &g).unwrap();
    // the hole sits at i = 25, j = 10 and poisons a 7 x 5 block
    assert_eq!(r.masked, 35);
    for j in 0..21usize {
        for i in 0..41usize {
            let inside = i.abs_diff(25) <= 3 && j.abs_diff(10) <= 2;
            assert_eq!(r.pole_mask[j * 41 + i], inside, "({i},{j})");
        }
    }
    // v = x^2 - t: terms v_xxxt = 0, beta v_t v_xx = -2, -gamma v_xx = -2
    assert!((r.max_abs - 4.0).abs() < 1e-9);
}
