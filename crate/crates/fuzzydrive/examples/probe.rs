//! Scratch probe of closed-loop numbers (not part of the test suite).

use fuzzydrive::controller::ControllerConfig;
use fuzzydrive::fuzzy::default_controller;
use fuzzydrive::kinematics::{Pose, RobotParams};
use fuzzydrive::metrics::{aggregate, evaluate_trace};
use fuzzydrive::path::{default_course, Path, Point, Segment};
use fuzzydrive::simulation::{run, run_trials, NoiseModel, SimConfig};

fn base_config(v_ref: f64) -> SimConfig {
    SimConfig {
        robot: RobotParams::default(),
        controller: ControllerConfig {
            v_ref,
            ..Default::default()
        },
        fuzzy: default_controller(false),
        path: default_course(60.0),
        dt: 0.01,
        initial_pose: Pose::new(0.0, 0.0, 0.0),
        noise: NoiseModel {
            seed: 42,
            ..Default::default()
        },
        completion_threshold: 0.05,
        max_steps: 200_000,
    }
}

fn main() {
    for &v in &[0.3, 0.6, 1.2] {
        let cfg = base_config(v);
        let t0 = std::time::Instant::now();
        let trace = run(&cfg);
        let dt_run = t0.elapsed();
        let rep = evaluate_trace(&trace, &cfg.path, v).unwrap();
        println!(
            "noiseless v={v}: completed={} steps={} dur={:.1}s rmse_x={:.5} rmse_y={:.5} rmse_v={:e} rmse_w={:.5} [{:?}]",
            trace.completed(),
            trace.records.len(),
            trace.duration(cfg.dt),
            rep.rmse_x,
            rep.rmse_y,
            rep.rmse_v,
            rep.rmse_omega,
            dt_run
        );

        let mut noisy_cfg = cfg.clone();
        noisy_cfg.noise.enabled = true;
        let t0 = std::time::Instant::now();
        let traces = run_trials(&noisy_cfg, 30);
        let dt_run = t0.elapsed();
        let reports: Vec<_> = traces
            .iter()
            .map(|t| evaluate_trace(t, &noisy_cfg.path, v).unwrap())
            .collect();
        let agg = aggregate(&reports).unwrap();
        let all_done = traces.iter().all(|t| t.completed());
        println!(
            "noisy     v={v}: completed={all_done} rmse_x={:.5} rmse_y={:.5} rmse_v={:.5} rmse_w={:.5} [{:?} for 30 trials]",
            agg.rmse_x, agg.rmse_y, agg.rmse_v, agg.rmse_omega, dt_run
        );
        println!(
            "  margins (noisy - noiseless): x={:+.3e} y={:+.3e} v={:+.3e} w={:+.3e}",
            agg.rmse_x - rep.rmse_x,
            agg.rmse_y - rep.rmse_y,
            agg.rmse_v - rep.rmse_v,
            agg.rmse_omega - rep.rmse_omega
        );
    }

    // Regulation from a 0.3 m lateral offset on a straight path at 0.6 m/s.
    let path = Path::new(vec![Segment::Line {
        start: Point::new(0.0, 0.0),
        end: Point::new(50.0, 0.0),
    }])
    .unwrap();
    let mut cfg = base_config(0.6);
    cfg.path = path;
    cfg.initial_pose = Pose::new(0.0, 0.3, 0.0);
    cfg.max_steps = 6000; // 60 s
    cfg.completion_threshold = 0.0;
    let trace = run(&cfg);
    let settle = trace
        .records
        .iter()
        .find(|r| r.time >= 10.0)
        .map(|r| r.time);
    let max_after_10: f64 = trace
        .records
        .iter()
        .filter(|r| r.time >= 10.0)
        .map(|r| r.pose.y.abs())
        .fold(0.0, f64::max);
    let first_below = trace
        .records
        .iter()
        .find(|r| r.pose.y.abs() < 0.02)
        .map(|r| r.time);
    println!(
        "regulation: steps={} first |y|<0.02 at t={:?} max|y| after 10s = {:.5} (checked from {:?})",
        trace.records.len(),
        first_below,
        max_after_10,
        settle
    );
}
