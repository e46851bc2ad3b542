use bmoment::codomain::ExtendedPoint;
use bmoment::lattice::Covector;
use bmoment::models::*;
use bmoment::rational::{self, int};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn local_model() -> ManifoldSpec {
    ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1))
}

#[test]
fn moment_examples() {
    let m = local_model()
        .moment_eval(&ManifoldPoint::main(&[[-0.4, 1.0], [(-2.0f64).exp(), 0.5]]))
        .unwrap();
    assert!((m.values[0] - 0.3).abs() < 1e-12 && (m.values[1] + 2.0).abs() < 1e-12);
    let m = ManifoldSpec::b_torus()
        .moment_eval(&ManifoldPoint::main(&[[std::f64::consts::FRAC_PI_2, 0.0]]))
        .unwrap();
    assert!(m.values[0].abs() < 1e-15);
    let m = ManifoldSpec::r_action_counterexample()
        .moment_eval(&ManifoldPoint::main(&[[2.0, 5.0]]))
        .unwrap();
    assert_eq!(m.values, vec![2.0]);
}

#[test]
fn b_torus_hamiltonian_matches_quadrature() {
    // H(θ) − H(π/2) = −∫_{π/2}^{θ} dθ / sin θ, by composite Simpson.
    let spec = ManifoldSpec::b_torus();
    let h = |t: f64| spec.moment_eval(&ManifoldPoint::main(&[[t, 0.0]])).unwrap().values[0];
    for theta in [0.3, 1.0, 2.0, 2.9] {
        let (a, b, n) = (std::f64::consts::FRAC_PI_2, theta, 2000);
        let step = (b - a) / n as f64;
        let f = |x: f64| 1.0 / x.sin();
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + i as f64 * step) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let integral = s * step / 3.0;
        assert!((h(theta) - (-integral)).abs() < 1e-9, "θ = {theta}");
    }
}

#[test]
fn image_ranges() {
    let s = image_sample(&ManifoldSpec::zero_weight_product(BSurface::BSphere), 10_000, 1, &tol()).unwrap();
    assert!(s.samples.iter().all(|x| x.moment[0] >= -1.0 && x.moment[0] <= 1.0));
    let s = image_sample(&ManifoldSpec::b_sphere(), 10_000, 1, &tol()).unwrap();
    assert!(s.finite_moments().iter().all(|m| m[0] >= -1e-12));
    let s = image_sample(&local_model(), 10_000, 1, &tol()).unwrap();
    for m in s.finite_moments() {
        assert!((0.0..=1.0).contains(&m[0]) && m[1] <= 0.0);
    }
}

#[test]
fn nonzero_families_stay_in_their_polytopes() {
    for spec in [ManifoldSpec::b_sphere(), local_model()] {
        let polytope = spec.b_polytope().unwrap();
        let s = image_sample(&spec, 10_000, 2, &tol()).unwrap();
        let mut checked = 0;
        for x in s.samples.iter().filter(|x| x.is_finite()) {
            let xi = x.moment.iter().map(|&v| rational::from_f64(v).unwrap()).collect();
            let p = ExtendedPoint::interior(x.stratum.clone().unwrap(), Covector::new(xi));
            assert!(polytope.contains(&p).unwrap(), "{:?}", x);
            checked += 1;
        }
        assert!(checked > 9_900);
    }
}

#[test]
fn weight_examples() {
    let e = modular_weight_estimate(&local_model(), "z", &tol()).unwrap();
    assert!((e.coefficients[1] - 1.0).abs() < 1e-3);
    let spec = ManifoldSpec::b_torus();
    let a = modular_weight_estimate(&spec, "theta_0", &tol()).unwrap();
    let b = modular_weight_estimate(&spec, "theta_pi", &tol()).unwrap();
    assert!(a.coefficients[0] * b.coefficients[0] < 0.0);
    let e = modular_weight_estimate(&ManifoldSpec::zero_weight_product(BSurface::BTorus), "theta_0", &tol()).unwrap();
    assert!(e.coefficients[0].abs() < 1e-3);
}

#[test]
fn fixed_point_signatures_fill_the_dimension() {
    for spec in ManifoldSpec::builtins().values() {
        let FixedPointOutcome::Fixed { components } = fixed_points(spec, &tol()) else {
            continue;
        };
        for c in components {
            for p in &c.points {
                let x = vec![1.0; spec.torus_dim()];
                let h = hessian_indices(spec, p, &x, &tol()).unwrap();
                assert_eq!(h.index + h.coindex + h.nullity, spec.dimension());
                assert!(!h.ill_conditioned);
            }
        }
    }
}

#[test]
fn zero_weight_product_pole_signatures() {
    let spec = ManifoldSpec::zero_weight_product(BSurface::BTorus);
    let FixedPointOutcome::Fixed { components } = fixed_points(&spec, &tol()) else {
        panic!("circle action");
    };
    let mut seen = Vec::new();
    for c in components {
        let h = hessian_indices(&spec, &c.points[0], &[1.0], &tol()).unwrap();
        seen.push((c.moment[0].round() as i64, h.index, h.coindex, h.nullity));
    }
    seen.sort();
    assert_eq!(seen, vec![(-1, 0, 2, 2), (1, 2, 0, 2)]);
}

#[test]
fn b_sphere_poles() {
    let FixedPointOutcome::Fixed { components } = fixed_points(&ManifoldSpec::b_sphere(), &tol()) else {
        panic!("circle action");
    };
    assert_eq!(components.len(), 2);
    assert!(components.iter().all(|c| c.moment[0].abs() < 1e-12 && c.dimension == 0));
}

#[test]
fn convexity_examples() {
    let line = MomentSampleSet::from_points((0..2001).map(|i| vec![-1.0 + i as f64 / 1000.0]).collect());
    assert_eq!(convexity_check(&line, 1000, 0.05, 3).unwrap().violations, 0);
    let clusters = MomentSampleSet::from_points(
        (0..2000)
            .map(|i| {
                let c = if i % 2 == 0 { -5.0 } else { 5.0 };
                vec![c + (i as f64 * 0.618).fract() * 0.1, (i as f64 * 0.414).fract() * 0.1]
            })
            .collect(),
    );
    assert!(convexity_check(&clusters, 1000, 0.05, 3).unwrap().violations > 0);
    assert!(matches!(
        convexity_check(&MomentSampleSet::from_points(vec![vec![0.0]]), 10, 0.05, 3),
        Err(ModelError::InsufficientSamples(1))
    ));
}

#[test]
fn leaf_image_sharpens_with_n() {
    let spec = ManifoldSpec::zero_weight_product(BSurface::BSphere);
    let d: Vec<f64> = [100, 1_000, 10_000]
        .iter()
        .map(|&n| verify_leaf_image(&spec, n, 9, &tol()).unwrap().hausdorff)
        .collect();
    assert!(d[0] < 0.3);
    assert!(d[2] < 0.05);
    assert!(d[1] <= 1.2 * d[0] && d[2] <= 1.2 * d[1], "{d:?}");
}

#[test]
fn level_examples() {
    let spec = ManifoldSpec::zero_weight_product(BSurface::BSphere);
    assert_eq!(level_connectivity(&spec, 0.0, 200).unwrap(), 1);
    assert_eq!(level_connectivity(&spec, 1.0, 200).unwrap(), 1);
    assert!(matches!(level_connectivity(&spec, 3.0, 50), Err(ModelError::EmptyLevel { .. })));
}

#[test]
fn cut_examples() {
    let cut = symplectic_cut(&local_model(), "z", &int(5), &tol()).unwrap();
    let s = image_sample(&cut.spec, 5_000, 2, &tol()).unwrap();
    for m in s.finite_moments() {
        assert!((0.0..=1.0).contains(&m[0]) && m[1] >= -5.0 - 1e-6 && m[1] <= 0.0);
    }
    let cut = symplectic_cut(&ManifoldSpec::b_sphere(), "equator", &int(3), &tol()).unwrap();
    let s = image_sample(&cut.spec, 5_000, 2, &tol()).unwrap();
    assert!(s.finite_moments().iter().all(|m| m[0] >= -1e-12 && m[0] <= 3.0 + 1e-6));
    let err = symplectic_cut(&ManifoldSpec::zero_weight_product(BSurface::BSphere), "equator", &int(3), &tol());
    assert!(matches!(err, Err(ModelError::ZeroWeightCut { .. })));
    assert!(symplectic_cut(&local_model(), "z", &int(0), &tol()).is_err());
}

#[test]
fn corner_rejection() {
    let spec = ManifoldSpec::c_symplectic_product();
    assert!(stratified_weights_at(&spec, 0.1, &tol()).is_ok());
    assert!(matches!(stratified_weights_at(&spec, 1e-3, &tol()), Err(ModelError::NearCorner { .. })));
    assert!(stratified_weights(&ManifoldSpec::b_sphere(), &tol()).is_err());
}

#[test]
fn tolerance_scale() {
    let t = Tolerances::scaled(10.0);
    assert_eq!(t.weight, 1e-2);
    assert_eq!(t.hessian_step, 1e-4);
}
