//! Scratch: margins for a tangent-continuous bias junction course variant
//! (not part of the test suite).

use fuzzydrive::controller::ControllerConfig;
use fuzzydrive::fuzzy::default_controller;
use fuzzydrive::kinematics::{Pose, RobotParams};
use fuzzydrive::metrics::{aggregate, evaluate_trace, ErrorReport};
use fuzzydrive::path::{Path, Point, Segment};
use fuzzydrive::simulation::{run, run_trials, NoiseModel, SimConfig};
use std::f64::consts::{FRAC_PI_2, PI};

fn course_tangent(scale: f64) -> Path {
    let k = scale / 60.0;
    let line = Segment::Line {
        start: Point::new(0.0, 0.0),
        end: Point::new(20.0 * k, 0.0),
    };
    let sweep = 3.0 * PI / 4.0;
    let arc = Segment::Arc {
        center: Point::new(20.0 * k, 10.0 * k),
        radius: 10.0 * k,
        start_angle: -FRAC_PI_2,
        sweep,
    };
    let bias_len = (60.0 - 20.0 - 10.0 * sweep / 1.0) * k;
    let bias_dir = 3.0 * PI / 4.0;
    let bias_start = arc.end_point();
    let bias = Segment::Line {
        start: bias_start,
        end: Point::new(
            bias_start.x + bias_len * bias_dir.cos(),
            bias_start.y + bias_len * bias_dir.sin(),
        ),
    };
    Path::new(vec![line, arc, bias]).unwrap()
}

fn base_config(v_ref: f64, seed: u64) -> SimConfig {
    SimConfig {
        robot: RobotParams::default(),
        controller: ControllerConfig {
            v_ref,
            ..Default::default()
        },
        fuzzy: default_controller(false),
        path: course_tangent(60.0),
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
    let path = course_tangent(60.0);
    println!("total length {} (target 60)", path.total_length());

    let speeds = [0.3, 0.6, 1.2];
    let quiet: Vec<ErrorReport> = speeds
        .iter()
        .map(|&v| {
            let cfg = base_config(v, 0);
            let t = run(&cfg);
            let r = evaluate_trace(&t, &cfg.path, v).unwrap();
            println!(
                "quiet v={v}: completed={} rmse_x={:.6} rmse_y={:.6} rmse_w={:.6}",
                t.completed(),
                r.rmse_x,
                r.rmse_y,
                r.rmse_omega
            );
            r
        })
        .collect();

    // Well-separated base seeds (adjacent seeds share 29 of 30 trials).
    for &seed in &[0u64, 100, 200, 300, 400, 7000] {
        let mut worst = f64::INFINITY;
        let mut worst_cell = String::new();
        let mut aggs = Vec::new();
        for (i, &v) in speeds.iter().enumerate() {
            let mut cfg = base_config(v, seed);
            cfg.noise.enabled = true;
            let traces = run_trials(&cfg, 30);
            let reports: Vec<_> = traces
                .iter()
                .map(|t| evaluate_trace(t, &cfg.path, v).unwrap())
                .collect();
            let agg = aggregate(&reports).unwrap();
            for (name, n, q) in [
                ("x", agg.rmse_x, quiet[i].rmse_x),
                ("y", agg.rmse_y, quiet[i].rmse_y),
                ("v", agg.rmse_v, quiet[i].rmse_v),
                ("w", agg.rmse_omega, quiet[i].rmse_omega),
            ] {
                if n - q < worst {
                    worst = n - q;
                    worst_cell = format!("{name}@{v}");
                }
            }
            aggs.push(agg);
        }
        let mut mono = f64::INFINITY;
        for w in aggs.windows(2) {
            mono = mono.min(w[1].rmse_x - w[0].rmse_x);
            mono = mono.min(w[1].rmse_y - w[0].rmse_y);
            mono = mono.min(w[1].rmse_omega - w[0].rmse_omega);
        }
        println!("seed {seed:5}: worst margin {worst:+.3e} at {worst_cell}, worst noisy mono {mono:+.3e}");
    }
}
