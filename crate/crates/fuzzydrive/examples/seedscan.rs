//! Scratch scan for a base seed with comfortable noisy-vs-noiseless margins
//! (not part of the test suite).

use fuzzydrive::controller::ControllerConfig;
use fuzzydrive::fuzzy::default_controller;
use fuzzydrive::kinematics::{Pose, RobotParams};
use fuzzydrive::metrics::{aggregate, evaluate_trace, ErrorReport};
use fuzzydrive::path::default_course;
use fuzzydrive::simulation::{run, run_trials, NoiseModel, SimConfig};

fn base_config(v_ref: f64, seed: u64) -> SimConfig {
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
            seed,
            ..Default::default()
        },
        completion_threshold: 0.05,
        max_steps: 200_000,
    }
}

fn main() {
    let speeds = [0.3, 0.6, 1.2];
    let quiet: Vec<ErrorReport> = speeds
        .iter()
        .map(|&v| {
            let cfg = base_config(v, 0);
            evaluate_trace(&run(&cfg), &cfg.path, v).unwrap()
        })
        .collect();

    for seed in 0..6u64 {
        for (i, &v) in speeds.iter().enumerate() {
            let mut cfg = base_config(v, seed);
            cfg.noise.enabled = true;
            let traces = run_trials(&cfg, 30);
            let reports: Vec<_> = traces
                .iter()
                .map(|t| evaluate_trace(t, &cfg.path, v).unwrap())
                .collect();
            let agg = aggregate(&reports).unwrap();
            println!(
                "seed {seed:3} v={v}: dx={:+.3e} dy={:+.3e} dv={:+.3e} dw={:+.3e}",
                agg.rmse_x - quiet[i].rmse_x,
                agg.rmse_y - quiet[i].rmse_y,
                agg.rmse_v - quiet[i].rmse_v,
                agg.rmse_omega - quiet[i].rmse_omega
            );
        }
    }
}
