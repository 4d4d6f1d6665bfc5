use gnr_core::curve::ParametricCurve3;
use gnr_core::developable::{classify_point, weingarten, PointClass};
use gnr_core::gallery::circular_helix_curve;
use gnr_core::grid::{Interval, SampleGrid};
use gnr_core::invariants::oracle_tolerance;
use gnr_core::oracle::{fd_curvatures, fd_normal, OracleConfig};
use gnr_core::parallel::Execution;
use gnr_core::ruled_frame::frame_at;
use gnr_core::surface::{GnrSurface, RulingCoefficients, SurfaceOptions};
use proptest::prelude::*;

fn helix(a: f64, b: f64) -> ParametricCurve3 {
    let c = (a * a + b * b).sqrt();
    ParametricCurve3::from_strings(
        &format!("({a:?})*cos(s/({c:?}))"),
        &format!("({a:?})*sin(s/({c:?}))"),
        &format!("({b:?})*s/({c:?})"),
        Interval::new(-3.0, 3.0).unwrap(),
    )
    .unwrap()
}

fn surface(base: ParametricCurve3, theta: &str) -> GnrSurface {
    GnrSurface::new(
        base,
        RulingCoefficients::angle_from_string(theta).unwrap(),
        SurfaceOptions {
            u_range: Interval::new(-1.5, 1.5).unwrap(),
            ..Default::default()
        },
    )
    .unwrap()
}

/// Helix of radius `a`, pitch `b` with ruling angle `c0 + c1 sin s + c2 cos 2s`.
fn general_surface() -> impl Strategy<Value = GnrSurface> {
    (0.3f64..2.0, -1.5f64..1.5, -3.0f64..3.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_map(|(a, b, c0, c1, c2)| surface(helix(a, b), &format!("({c0:?}) + ({c1:?})*sin(s) + ({c2:?})*cos(2*s)")))
}

/// Helix with `theta = -tau s + c0`, so `f` vanishes identically.
fn developable_surface() -> impl Strategy<Value = GnrSurface> {
    (0.3f64..2.0, -1.5f64..1.5, -3.0f64..3.0).prop_map(|(a, b, c0)| {
        let tau = b / (a * a + b * b);
        surface(helix(a, b), &format!("({c0:?}) - ({tau:?})*s"))
    })
}

fn map(surface: &GnrSurface) -> impl Fn(f64, f64) -> Result<gnr_core::curve::Vec3, String> + '_ {
    |s, u| surface.position(s, u).map_err(|e| e.to_string())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn regular_point_identities(surf in general_surface(), s in -2.8f64..2.8, u in -1.5f64..1.5) {
        let p = surf.evaluate(s, u).unwrap();
        prop_assume!(!p.is_singular());
        let n = p.normal.unwrap();
        prop_assert!((n.norm() - 1.0).abs() < 1e-12);
        prop_assert!(n.dot(&p.dfds).abs() < 1e-9 && n.dot(&p.dfdu).abs() < 1e-9);
        let cross = p.dfds.cross(&p.dfdu).norm_squared();
        prop_assert!((cross - (p.e * p.g_coeff - p.f_coeff.powi(2))).abs() < 1e-9 * cross.max(1.0));
        prop_assert!(p.k.unwrap() <= 0.0);
        let w = surf.local(s).unwrap().normal_norm_squared(u).sqrt();
        prop_assert!((p.k.unwrap() + p.chars.f.powi(2) / w.powi(4)).abs() < 1e-9 * p.k.unwrap().abs().max(1.0));
    }

    #[test]
    fn curvatures_match_finite_differences(surf in general_surface(), s in -2.8f64..2.8, u in -1.5f64..1.5) {
        let local = surf.local(s).unwrap();
        prop_assume!(local.normal_norm_squared(u).sqrt() >= 1e-2);
        let p = surf.evaluate(s, u).unwrap();
        let cfg = OracleConfig::default();
        let (k, h) = fd_curvatures(&map(&surf), s, u, &cfg).unwrap();
        let (ka, ha) = (p.k.unwrap(), p.h.unwrap());
        prop_assert!((ka - k).abs() <= oracle_tolerance(ka), "K {ka} vs {k}");
        prop_assert!((ha - h).abs() <= oracle_tolerance(ha), "H {ha} vs {h}");
        let n = fd_normal(&map(&surf), s, u, &cfg).unwrap();
        prop_assert!((n - p.normal.unwrap()).norm() < 1e-6);
    }

    #[test]
    fn developable_surfaces_are_flat(surf in developable_surface(), s in -2.5f64..2.5, u1 in -1.5f64..1.5, u2 in -1.5f64..1.5) {
        let local = surf.local(s).unwrap();
        prop_assert!(local.f().abs() < 1e-12);
        let (p1, p2) = (surf.evaluate(s, u1).unwrap(), surf.evaluate(s, u2).unwrap());
        prop_assume!(!p1.is_singular() && !p2.is_singular());
        prop_assert!(p1.k.unwrap().abs() < 1e-20);
        // the unit normal is constant along each ruling, up to the sign of g
        let (n1, n2) = (p1.normal.unwrap(), p2.normal.unwrap());
        prop_assert!(n1.cross(&n2).norm() < 1e-12);
        prop_assert!((n1.dot(&n2) - (local.g(u1) * local.g(u2)).signum()).abs() < 1e-12);
        prop_assume!(local.g(u1).abs() > 1e-6);
        let w = weingarten(&surf, s, u1).unwrap();
        // the shape operator is taken w.r.t. -a2 N + a1 B, which is U up to sign(g)
        prop_assert!((w.lambda1 * local.g(u1).signum() - 2.0 * p1.h.unwrap()).abs() < 1e-8 * w.lambda1.abs().max(1.0));
        let class = classify_point(&surf, s, u1).unwrap();
        prop_assert_eq!(class == PointClass::Planar, (local.a2[0] * local.kappa).abs() <= 1e-10);
    }

    #[test]
    fn ruled_frame_is_orthonormal(surf in general_surface(), s in -2.8f64..2.8) {
        let local = surf.local(s).unwrap();
        prop_assume!(local.ruling_prime_norm_squared() > 1e-6);
        let f = frame_at(&surf, s).unwrap();
        for v in [f.q_n, f.h, f.a] {
            prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        }
        prop_assert!(f.q_n.dot(&f.h).abs() < 1e-12);
        prop_assert!((f.q_n.cross(&f.h) - f.a).norm() < 1e-12);
        prop_assert!((local.ruling_prime() - f.h * local.ruling_prime_norm_squared().sqrt()).norm() < 1e-10);
        prop_assert!((f.z + local.f()).abs() < 1e-12);
    }

    #[test]
    fn sequential_and_parallel_sweeps_agree(surf in general_surface()) {
        let grid = SampleGrid::uniform(surf.domain(), 17, surf.u_range(), 9).unwrap();
        let seq = surf.clone().with_execution(Execution::Sequential).evaluate_grid(&grid).unwrap();
        let par = surf.with_execution(Execution::Parallel).evaluate_grid(&grid).unwrap();
        prop_assert_eq!(seq, par);
    }
}

#[test]
fn binormal_surface_of_a_circle_is_a_cylinder() {
    let circle = ParametricCurve3::from_strings("cos(s)", "sin(s)", "0", Interval::new(0.0, 6.0).unwrap()).unwrap();
    let surf = GnrSurface::new(
        circle,
        RulingCoefficients::from_strings("0", "1").unwrap(),
        SurfaceOptions::default(),
    )
    .unwrap();
    for (s, u) in [(0.5, -0.7), (3.0, 0.2)] {
        let p = surf.evaluate(s, u).unwrap();
        assert!(p.k.unwrap().abs() < 1e-15);
        assert!((p.h.unwrap().abs() - 0.5).abs() < 1e-12);
    }
    let helix_surface = surface(circular_helix_curve(Interval::new(-3.0, 3.0).unwrap()), "-s/2");
    assert!(helix_surface.local(1.0).unwrap().f().abs() < 1e-12);
}
