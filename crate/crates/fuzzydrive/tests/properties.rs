//! Property tests for the kinematics, fuzzy, path, and metrics invariants.

use proptest::prelude::*;
use std::f64::consts::PI;

use fuzzydrive::fuzzy::default_controller;
use fuzzydrive::kinematics::{
    body_to_wheel, integrate_pose, wheel_to_body, wrap_angle, BodyTwist, Pose, RobotParams,
    WheelSpeeds,
};
use fuzzydrive::metrics::rmse;
use fuzzydrive::path::{default_course, Path, Point, Segment};

fn params_strategy() -> impl Strategy<Value = RobotParams> {
    (0.02..0.5f64, 0.1..1.0f64).prop_map(|(wheel_radius, wheel_separation)| RobotParams {
        wheel_radius,
        wheel_separation,
        ..RobotParams::default()
    })
}

fn twist_strategy() -> impl Strategy<Value = BodyTwist> {
    (-2.0..2.0f64, -5.0..5.0f64).prop_map(|(v, omega)| BodyTwist { v, omega })
}

proptest! {
    #[test]
    fn wheel_body_round_trip(t in twist_strategy(), p in params_strategy()) {
        let back = wheel_to_body(body_to_wheel(t, &p), &p);
        prop_assert!((back.v - t.v).abs() <= 1e-12 * t.v.abs().max(1.0));
        prop_assert!((back.omega - t.omega).abs() <= 1e-12 * t.omega.abs().max(1.0));
    }

    #[test]
    fn forward_kinematics_is_linear(
        w1 in (-20.0..20.0f64, -20.0..20.0f64),
        w2 in (-20.0..20.0f64, -20.0..20.0f64),
        a in -3.0..3.0f64,
        b in -3.0..3.0f64,
        p in params_strategy(),
    ) {
        let w1 = WheelSpeeds::new(w1.0, w1.1);
        let w2 = WheelSpeeds::new(w2.0, w2.1);
        let combined = WheelSpeeds::new(
            a * w1.omega_r + b * w2.omega_r,
            a * w1.omega_l + b * w2.omega_l,
        );
        let direct = wheel_to_body(combined, &p);
        let t1 = wheel_to_body(w1, &p);
        let t2 = wheel_to_body(w2, &p);
        prop_assert!((direct.v - (a * t1.v + b * t2.v)).abs() < 1e-9);
        prop_assert!((direct.omega - (a * t1.omega + b * t2.omega)).abs() < 1e-9);
    }

    #[test]
    fn equal_wheels_never_rotate(w in -20.0..20.0f64, p in params_strategy()) {
        prop_assert_eq!(wheel_to_body(WheelSpeeds::new(w, w), &p).omega, 0.0);
    }

    #[test]
    fn opposite_wheels_never_translate(w in -20.0..20.0f64, p in params_strategy()) {
        prop_assert_eq!(wheel_to_body(WheelSpeeds::new(w, -w), &p).v, 0.0);
    }

    #[test]
    fn wrap_angle_is_idempotent_and_in_range(a in -100.0..100.0f64) {
        let once = wrap_angle(a);
        prop_assert!(once > -PI && once <= PI);
        prop_assert_eq!(wrap_angle(once), once);
        // Same angle modulo 2*pi.
        let k = (a - once) / (2.0 * PI);
        prop_assert!((k - k.round()).abs() < 1e-9);
    }

    #[test]
    fn fuzzy_output_is_bounded(e in -10.0..10.0f64, s in -1.0..3.0f64) {
        let c = default_controller(false);
        let out = c.evaluate(e, s);
        prop_assert!(out.abs() <= 5.0);
    }

    #[test]
    fn fuzzy_evaluate_is_odd(e in -PI..PI, s in 0.0..1.5f64) {
        let c = default_controller(false);
        prop_assert_eq!(c.evaluate(-e, s), -c.evaluate(e, s));
    }

    #[test]
    fn rmse_scales_linearly(series in prop::collection::vec(-10.0..10.0f64, 1..50), k in 0.0..5.0f64) {
        let scaled: Vec<f64> = series.iter().map(|e| k * e).collect();
        let lhs = rmse(&scaled).unwrap();
        let rhs = k * rmse(&series).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
    }

    #[test]
    fn rmse_dominates_mean(series in prop::collection::vec(-10.0..10.0f64, 1..50)) {
        let mean = series.iter().sum::<f64>() / series.len() as f64;
        prop_assert!(rmse(&series).unwrap() >= mean.abs() - 1e-12);
    }
}

fn sample_paths() -> Vec<Path> {
    vec![
        default_course(60.0),
        Path::new(vec![Segment::Line {
            start: Point::new(-3.0, 2.0),
            end: Point::new(7.0, -4.0),
        }])
        .unwrap(),
        Path::new(vec![Segment::Arc {
            center: Point::new(1.0, -2.0),
            radius: 3.0,
            start_angle: 0.7,
            sweep: -4.0,
        }])
        .unwrap(),
    ]
}

proptest! {
    #[test]
    fn arc_length_parameterization_is_unit_speed(frac in 0.001..0.999f64, which in 0usize..3) {
        let path = &sample_paths()[which];
        let s = frac * path.total_length();
        let delta = 1e-6;
        let step = path.point_at(s).distance(path.point_at(s + delta));
        // Stay clear of junctions where the direction turns.
        let near_junction = path
            .segments()
            .iter()
            .scan(0.0, |acc, seg| {
                *acc += seg.length();
                Some(*acc)
            })
            .any(|junction| (s - junction).abs() < 2.0 * delta || s + delta > path.total_length());
        if !near_junction {
            prop_assert!((step - delta).abs() <= 1e-4 * delta, "step {step} vs {delta}");
        }
    }

    #[test]
    fn closest_point_beats_random_samples(
        px in -30.0..60.0f64,
        py in -30.0..60.0f64,
        samples in prop::collection::vec(0.0..1.0f64, 1000),
        which in 0usize..3,
    ) {
        let path = &sample_paths()[which];
        let p = Point::new(px, py);
        let best = p.distance(path.point_at(path.closest_arc_length(p)));
        for frac in samples {
            let s = frac * path.total_length();
            prop_assert!(best <= p.distance(path.point_at(s)) + 1e-9);
        }
    }

    #[test]
    fn heading_matches_finite_difference(frac in 0.01..0.99f64, which in 0usize..3) {
        let path = &sample_paths()[which];
        let s = frac * path.total_length();
        let delta = 1e-6;
        let near_junction = path
            .segments()
            .iter()
            .scan(0.0, |acc, seg| {
                *acc += seg.length();
                Some(*acc)
            })
            .any(|junction| (s - junction).abs() < 2.0 * delta);
        if !near_junction {
            let a = path.point_at(s - delta);
            let b = path.point_at(s + delta);
            let fd = (b.y - a.y).atan2(b.x - a.x);
            let diff = wrap_angle(path.heading_at(s) - fd).abs();
            prop_assert!(diff < 1e-4, "heading mismatch {diff}");
        }
    }
}

/// Halving the Euler step roughly halves the endpoint error on a known
/// circular motion (measured order of accuracy at least 0.9).
#[test]
fn euler_integration_is_first_order() {
    let twist = BodyTwist::new(1.0, 1.0);
    let exact = Pose::new(1.0_f64.sin(), 1.0 - 1.0_f64.cos(), 1.0);

    let endpoint_error = |dt: f64| -> f64 {
        let steps = (1.0 / dt).round() as usize;
        let mut pose = Pose::new(0.0, 0.0, 0.0);
        for _ in 0..steps {
            pose = integrate_pose(pose, twist, dt).unwrap();
        }
        ((pose.x - exact.x).powi(2) + (pose.y - exact.y).powi(2)).sqrt()
    };

    let coarse = endpoint_error(0.01);
    let fine = endpoint_error(0.005);
    let order = (coarse / fine).log2();
    assert!(order >= 0.9, "measured order {order} (errors {coarse} / {fine})");
}
