mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::{inside_polygon, iso, profile_strategy, scene_strategy};
use finsnell::interface::invert_raypath;
use finsnell::trajectory::Segment;
use finsnell::{Branch, RefractionOutcome, Region, Scene, Trajectory, TrajectoryKind, Vector2};
use proptest::prelude::*;

fn left_point() -> impl Strategy<Value = Vector2> {
    (-3.0f64..-0.1, -3.0f64..3.0).prop_map(|(x, y)| Vector2::new(x, y))
}

fn right_point() -> impl Strategy<Value = Vector2> {
    (0.1f64..3.0, -3.0f64..3.0).prop_map(|(x, y)| Vector2::new(x, y))
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cost_is_positively_homogeneous(p in profile_strategy(), th in -PI..PI, r in 0.01f64..10.0, lam in 0.01f64..100.0) {
        let v = Vector2::from_angle(th) * r;
        prop_assert!(rel_close(p.finsler_cost(v * lam), lam * p.finsler_cost(v), 1e-12));
    }

    #[test]
    fn cost_satisfies_triangle_inequality(
        p in profile_strategy(),
        (a1, r1) in (-PI..PI, 0.0f64..5.0),
        (a2, r2) in (-PI..PI, 0.0f64..5.0),
    ) {
        let (u, v) = (Vector2::from_angle(a1) * r1, Vector2::from_angle(a2) * r2);
        prop_assert!(p.finsler_cost(u + v) <= p.finsler_cost(u) + p.finsler_cost(v) + 1e-9);
    }

    #[test]
    fn raypath_derivative_matches_finite_difference(p in profile_strategy(), th in (-FRAC_PI_2 + 0.05)..(FRAC_PI_2 - 0.05)) {
        let h = 1e-5;
        let fd = (p.raypath_parameter(th + h) - p.raypath_parameter(th - h)) / (2.0 * h);
        prop_assert!(rel_close(p.raypath_derivative(th), fd, 1e-5), "{} vs {}", p.raypath_derivative(th), fd);
    }

    #[test]
    fn speed_derivs_match_finite_differences(p in profile_strategy(), th in -PI..PI) {
        let h = 1e-4;
        let d = p.speed_derivs(th);
        let d1 = (p.speed(th + h) - p.speed(th - h)) / (2.0 * h);
        let d2 = (p.speed(th + h) - 2.0 * p.speed(th) + p.speed(th - h)) / (h * h);
        prop_assert!((d.d1 - d1).abs() <= 1e-5 * d.value.max(d.d1.abs()));
        prop_assert!((d.d2 - d2).abs() <= 1e-5 * d.value.max(d.d2.abs()) + 1e-6);
    }

    #[test]
    fn raypath_parameter_increases(p in profile_strategy()) {
        let vals: Vec<f64> = (0..=1000).map(|i| -FRAC_PI_2 + PI * i as f64 / 1000.0).map(|t| p.raypath_parameter(t)).collect();
        prop_assert!(vals.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn raypath_endpoint_identities(p in profile_strategy()) {
        prop_assert!((p.raypath_parameter(FRAC_PI_2) - 1.0 / p.speed(FRAC_PI_2)).abs() < 1e-12);
        prop_assert!((p.raypath_parameter(-FRAC_PI_2) + 1.0 / p.speed(-FRAC_PI_2)).abs() < 1e-12);
    }

    #[test]
    fn snell_round_trip(s in scene_strategy(), th2 in (-FRAC_PI_2 + 1e-3)..(FRAC_PI_2 - 1e-3)) {
        let target = s.profile2().raypath_parameter(th2);
        let Ok(th1) = invert_raypath(s.profile1(), target, Branch::Front) else {
            // Unreachable from the left medium.
            return Ok(());
        };
        prop_assume!(th1.abs() < FRAC_PI_2);
        match s.refract(th1).unwrap() {
            RefractionOutcome::Refracted { theta2 } => prop_assert!((theta2 - th2).abs() < 1e-9, "{theta2} vs {th2}"),
            other => prop_assert!(false, "unexpected {other:?}"),
        }
    }

    #[test]
    fn reflection_preserves_raypath_value(s in scene_strategy(), th1 in (-FRAC_PI_2 + 1e-6)..(FRAC_PI_2 - 1e-6)) {
        let th3 = s.reflect(th1).unwrap();
        prop_assert!((s.profile1().raypath_parameter(th3) - s.profile1().raypath_parameter(th1)).abs() <= 1e-10);
    }

    #[test]
    fn classical_snell(n1 in 0.5f64..2.0, n2 in 0.5f64..2.0, th1 in (-FRAC_PI_2 + 1e-6)..(FRAC_PI_2 - 1e-6)) {
        let s = Scene::new(iso(1.0 / n1), iso(1.0 / n2)).unwrap();
        if let RefractionOutcome::Refracted { theta2 } = s.refract(th1).unwrap() {
            prop_assert!((n1 * th1.sin() - n2 * theta2.sin()).abs() <= 1e-10);
        }
    }

    #[test]
    fn refraction_map_increases(s in scene_strategy(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = s.subcritical_range();
        let (a, b) = (a.min(b), a.max(b));
        prop_assume!(b - a > 1e-6);
        let t = |u: f64| match s.refract(lo + (hi - lo) * (0.001 + 0.998 * u)).unwrap() {
            RefractionOutcome::Refracted { theta2 } => theta2,
            other => panic!("unexpected {other:?}"),
        };
        prop_assert!(t(b) > t(a));
    }

    #[test]
    fn subdivision_keeps_traveltime(s in scene_strategy(), q1 in left_point(), q2 in left_point(), u in 0.01f64..0.99) {
        let whole = s.straight_between(q1, q2).unwrap();
        let mid = q1.lerp(q2, u);
        let a = Segment::priced(&s, Region::Q1, q1, mid, 0.0, 0.0);
        let b = Segment::priced(&s, Region::Q1, mid, q2, 0.0, a.t_end);
        let split = Trajectory::new(vec![a, b], TrajectoryKind::Reflected);
        prop_assert!((s.traveltime(&split).unwrap() - s.traveltime(&whole).unwrap()).abs() <= 1e-12 * (1.0 + whole.duration()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn refracted_between_obeys_snell(s in scene_strategy(), q1 in left_point(), q2 in right_point()) {
        let traj = s.refracted_between(q1, q2).unwrap();
        prop_assert!(traj.end().unwrap().distance(q2) <= 1e-8);
        let (th1, th2) = (traj.segments[0].theta, traj.segments[1].theta);
        prop_assert!((s.profile1().raypath_parameter(th1) - s.profile2().raypath_parameter(th2)).abs() <= 1e-10);
    }

    #[test]
    fn reflected_between_obeys_reflection_law(s in scene_strategy(), q1 in left_point(), q2 in left_point()) {
        let traj = s.reflected_between(q1, q2).unwrap();
        prop_assert!(traj.end().unwrap().distance(q2) <= 1e-8);
        let p = s.profile1();
        let (th1, th3) = (traj.segments[0].theta, traj.segments[1].theta);
        prop_assert!((p.raypath_parameter(th1) - p.raypath_parameter(th3)).abs() <= 1e-10);
        prop_assert!(traj.duration() >= s.straight_between(q1, q2).unwrap().duration() - 1e-9);
    }

    #[test]
    fn global_minimizer_is_contiguous(s in scene_strategy(), q1 in left_point(), q2 in prop_oneof![left_point(), right_point()]) {
        let g = s.global_minimizer(q1, q2).unwrap();
        prop_assert!(g.trajectory.check_contiguity().is_ok());
        prop_assert!(g.trajectory.has_kind_shape());
        prop_assert!(g.trajectory.end().unwrap().distance(q2) <= 1e-8);
        prop_assert!((s.traveltime(&g.trajectory).unwrap() - g.time).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wavefront_samples_are_equal_time(s in scene_strategy(), q1 in left_point(), extra in 0.05f64..2.0, pick in 0usize..1000) {
        let t0 = s.time_to_interface(q1).unwrap() + extra;
        let front = s.composite_wavefront(q1, t0, 128).unwrap();
        prop_assert!(front.closed, "{:?}", front.gaps());
        let points: Vec<Vector2> = front.points().collect();
        for k in 0..20 {
            let p = points[(pick + 37 * k) % points.len()];
            let g = s.global_minimizer(q1, p).unwrap();
            prop_assert!((g.time - t0).abs() <= 1e-6, "{p}: {} vs {t0}", g.time);
        }
    }

    #[test]
    fn wavefronts_grow(s in scene_strategy(), q1 in left_point(), t0 in 0.2f64..3.0) {
        let inner = s.composite_wavefront(q1, t0, 256).unwrap();
        let outer = s.composite_wavefront(q1, t0 + 0.25, 1024).unwrap();
        let poly: Vec<Vector2> = outer.points().collect();
        for p in inner.points() {
            prop_assert!(inside_polygon(p, &poly), "{p}");
        }
    }

    #[test]
    fn isotropic_front_is_a_circle(c in 0.5f64..2.0, q1 in left_point(), t0 in 0.1f64..5.0) {
        let s = Scene::new(iso(c), iso(c)).unwrap();
        let front = s.composite_wavefront(q1, t0, 128).unwrap();
        for p in front.points() {
            prop_assert!((p.distance(q1) - c * t0).abs() <= 1e-8);
        }
        prop_assert!(s.critical_angles().is_empty());
    }

    #[test]
    fn cut_locus_is_sandwiched(s in scene_strategy(), q1 in left_point()) {
        let times = s.critical_times(q1).unwrap();
        for sign in finsnell::Sign::BOTH {
            let Some(tau) = times.get(sign) else { continue };
            for k in 1..=8 {
                let t = tau + 0.25 * k as f64;
                let ends = s.reflected_wavefront(q1, t, sign, 2).unwrap();
                let (gamma, phi) = (ends.first(), ends.last());
                prop_assert!(s.profile1().finsler_cost(phi - q1) < t);
                prop_assert!(t < s.profile1().finsler_cost(gamma - q1));
            }
        }
    }
}
