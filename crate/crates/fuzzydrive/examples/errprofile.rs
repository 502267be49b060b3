//! Scratch: where along the course does squared x-error accumulate, with and
//! without noise (not part of the test suite).

use fuzzydrive::controller::ControllerConfig;
use fuzzydrive::fuzzy::default_controller;
use fuzzydrive::kinematics::{Pose, RobotParams};
use fuzzydrive::path::default_course;
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
            seed: 0,
            ..Default::default()
        },
        completion_threshold: 0.05,
        max_steps: 200_000,
    }
}

fn profile(trace: &fuzzydrive::simulation::Trace, bins: usize, total: f64) -> (Vec<f64>, Vec<usize>) {
    let mut sumsq = vec![0.0; bins];
    let mut counts = vec![0usize; bins];
    for r in &trace.records {
        let b = ((r.ref_s / total) * bins as f64).min(bins as f64 - 1.0) as usize;
        let ex = r.pose.x - r.ref_point.x;
        sumsq[b] += ex * ex;
        counts[b] += 1;
    }
    (sumsq, counts)
}

fn main() {
    let v = 1.2;
    let cfg = base_config(v);
    let total = cfg.path.total_length();
    let quiet = run(&cfg);
    let bins = 12;
    let (q_sums, q_counts) = profile(&quiet, bins, total);
    let qn = quiet.records.len() as f64;

    let mut noisy_cfg = cfg.clone();
    noisy_cfg.noise.enabled = true;
    let traces = run_trials(&noisy_cfg, 30);
    let mut n_sums = vec![0.0; bins];
    let mut n_counts = vec![0usize; bins];
    let mut nn = 0.0;
    for t in &traces {
        let (s, c) = profile(t, bins, total);
        for i in 0..bins {
            n_sums[i] += s[i];
            n_counts[i] += c[i];
        }
        nn += t.records.len() as f64;
    }
    nn /= traces.len() as f64;

    println!("bin  s-range      quiet MSE_x/n     noisy MSE_x/n     delta");
    for i in 0..bins {
        let q = q_sums[i] / qn;
        let n = n_sums[i] / (traces.len() as f64) / nn;
        println!(
            "{i:3}  {:5.1}-{:5.1}  {q:.6e}  {n:.6e}  {:+.3e}   (quiet samples {})",
            total * i as f64 / bins as f64,
            total * (i + 1) as f64 / bins as f64,
            n - q,
            q_counts[i]
        );
    }
    println!("quiet steps {} noisy mean steps {:.1}", quiet.records.len(), nn);
}
