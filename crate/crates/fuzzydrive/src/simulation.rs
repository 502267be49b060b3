//! Closed-loop simulation at a fixed time step: steering command, inverse
//! kinematics, saturation, optional actuator noise, forward kinematics,
//! pose integration. Every step is recorded; seeded batches reproduce
//! bit-identically.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::controller::{compute_command, heading_error, ControllerConfig};
use crate::error::ScenarioError;
use crate::fuzzy::FuzzyController;
use crate::kinematics::{
    body_to_wheel, integrate_pose, saturate_wheels, wheel_to_body, BodyTwist, Pose, RobotParams,
    WheelSpeeds,
};
use crate::path::{Path, Point};

/// Additive-plus-multiplicative Gaussian jitter on realized wheel speeds,
/// emulating the unmodeled disturbances of a physical run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NoiseModel {
    pub enabled: bool,
    /// Standard deviation as a fraction of the commanded wheel speed.
    pub wheel_noise_rel: f64,
    /// Additive standard deviation (rad/s).
    pub wheel_noise_abs: f64,
    /// RNG seed; identical seeds yield bit-identical traces.
    pub seed: u64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel {
            enabled: false,
            wheel_noise_rel: 0.02,
            wheel_noise_abs: 0.01,
            seed: 0,
        }
    }
}

impl NoiseModel {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        for (field, value) in [
            ("noise.wheel_noise_rel", self.wheel_noise_rel),
            ("noise.wheel_noise_abs", self.wheel_noise_abs),
        ] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(ScenarioError::invalid(
                    field,
                    format!("must be nonnegative and finite, got {value}"),
                ));
            }
        }
        Ok(())
    }
}

/// Everything one closed-loop run needs.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub robot: RobotParams,
    pub controller: ControllerConfig,
    pub fuzzy: FuzzyController,
    pub path: Path,
    /// Integration and control time step (s).
    pub dt: f64,
    pub initial_pose: Pose,
    pub noise: NoiseModel,
    /// The run completes once the closest arc length is within this many
    /// meters of the path end.
    pub completion_threshold: f64,
    /// Hard step limit; hitting it reports non-completion.
    pub max_steps: usize,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.robot
            .validate()
            .map_err(|e| ScenarioError::invalid("robot", e))?;
        self.controller.validate()?;
        self.noise.validate()?;
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(ScenarioError::invalid(
                "sim.dt",
                format!("must be positive and finite, got {}", self.dt),
            ));
        }
        if self.max_steps == 0 {
            return Err(ScenarioError::invalid("sim.max_steps", "must be at least 1"));
        }
        if !(self.completion_threshold >= 0.0) || !self.completion_threshold.is_finite() {
            return Err(ScenarioError::invalid(
                "sim.completion_threshold",
                format!("must be nonnegative and finite, got {}", self.completion_threshold),
            ));
        }
        for (field, value) in [
            ("sim.initial_pose.x", self.initial_pose.x),
            ("sim.initial_pose.y", self.initial_pose.y),
            ("sim.initial_pose.theta", self.initial_pose.theta),
        ] {
            if !value.is_finite() {
                return Err(ScenarioError::invalid(field, "must be finite"));
            }
        }
        Ok(())
    }
}

/// Signals captured at one control step, before integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    /// Simulated time (s) of the decision, starting at 0.
    pub time: f64,
    pub pose: Pose,
    /// Arc length of the reference point closest to the pose (m).
    pub ref_s: f64,
    pub ref_point: Point,
    pub ref_heading: f64,
    /// Heading error fed to the fuzzy block (rad).
    pub epsilon: f64,
    pub twist_cmd: BodyTwist,
    /// Twist realized by the plant (post saturation and noise).
    pub twist_real: BodyTwist,
    pub wheels_cmd: WheelSpeeds,
    pub wheels_real: WheelSpeeds,
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    /// Reached the completion threshold before the path end.
    Completed,
    /// Hit `max_steps` first.
    MaxStepsReached,
}

/// A complete closed-loop run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
    pub outcome: RunOutcome,
    pub final_pose: Pose,
}

impl Trace {
    pub fn completed(&self) -> bool {
        self.outcome == RunOutcome::Completed
    }

    /// Simulated duration (s): one `dt` per recorded step.
    pub fn duration(&self, dt: f64) -> f64 {
        self.records.len() as f64 * dt
    }
}

/// Mutable state carried across steps.
#[derive(Debug, Clone)]
pub struct SimState {
    pose: Pose,
    step_index: usize,
    rng: ChaCha8Rng,
}

impl SimState {
    pub fn new(config: &SimConfig) -> Self {
        SimState {
            pose: config.initial_pose,
            step_index: 0,
            rng: ChaCha8Rng::seed_from_u64(config.noise.seed),
        }
    }

    pub fn pose(&self) -> Pose {
        self.pose
    }

    pub fn step_index(&self) -> usize {
        self.step_index
    }
}

fn perturb_wheels(w: WheelSpeeds, noise: &NoiseModel, rng: &mut ChaCha8Rng) -> WheelSpeeds {
    // Fixed draw order: right wheel (relative, additive), then left wheel.
    let mut jitter = |cmd: f64| {
        let rel: f64 = rng.sample(StandardNormal);
        let abs: f64 = rng.sample(StandardNormal);
        cmd + noise.wheel_noise_rel * cmd * rel + noise.wheel_noise_abs * abs
    };
    WheelSpeeds {
        omega_r: jitter(w.omega_r),
        omega_l: jitter(w.omega_l),
    }
}

/// Executes one loop iteration and advances the state.
///
/// Order: heading error -> fuzzy command -> inverse kinematics ->
/// saturation -> noise (if enabled) -> forward kinematics -> Euler step.
///
/// When saturation and noise leave the wheel commands untouched the plant
/// is ideal, and the realized twist IS the commanded twist; this keeps the
/// noiseless realized linear velocity bit-equal to `v_ref`. Otherwise the
/// realized twist is recomputed from the realized wheel speeds.
pub fn step(state: &mut SimState, config: &SimConfig) -> TraceRecord {
    let pose = state.pose;
    let position = Point::new(pose.x, pose.y);
    let ref_s = config.path.closest_arc_length(position);

    let epsilon = heading_error(pose, &config.path, &config.controller).epsilon;
    let twist_cmd = compute_command(pose, &config.path, &config.controller, &config.fuzzy);
    let wheels_cmd = body_to_wheel(twist_cmd, &config.robot);
    let saturated = saturate_wheels(wheels_cmd, &config.robot);
    let wheels_real = if config.noise.enabled {
        perturb_wheels(saturated, &config.noise, &mut state.rng)
    } else {
        saturated
    };
    let twist_real = if wheels_real == wheels_cmd {
        twist_cmd
    } else {
        wheel_to_body(wheels_real, &config.robot)
    };

    let record = TraceRecord {
        time: state.step_index as f64 * config.dt,
        pose,
        ref_s,
        ref_point: config.path.point_at(ref_s),
        ref_heading: config.path.heading_at(ref_s),
        epsilon,
        twist_cmd,
        twist_real,
        wheels_cmd,
        wheels_real,
    };

    state.pose = integrate_pose(pose, twist_real, config.dt).expect("dt is validated positive");
    state.step_index += 1;
    record
}

/// Runs the loop until the path is completed or `max_steps` is hit.
pub fn run(config: &SimConfig) -> Trace {
    let goal = config.path.total_length() - config.completion_threshold;
    let mut state = SimState::new(config);
    let mut records = Vec::new();
    let outcome = loop {
        let position = Point::new(state.pose.x, state.pose.y);
        if config.path.closest_arc_length(position) >= goal {
            break RunOutcome::Completed;
        }
        if records.len() >= config.max_steps {
            break RunOutcome::MaxStepsReached;
        }
        records.push(step(&mut state, config));
    };
    Trace {
        records,
        outcome,
        final_pose: state.pose,
    }
}

/// Seed for the trial at `index` in a batch based at `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index)
}

/// Runs `n_trials` independent seeded runs: trial `i` uses
/// `trial_seed(config.noise.seed, i)`. With noise disabled the trials are
/// identical by construction.
pub fn run_trials(config: &SimConfig, n_trials: u32) -> Vec<Trace> {
    (0..n_trials)
        .map(|i| {
            let mut cfg = config.clone();
            cfg.noise.seed = trial_seed(config.noise.seed, i as u64);
            run(&cfg)
        })
        .collect()
}
