//! Scenario files: one TOML document describing a full evaluation batch —
//! robot, controller, fuzzy tables, path, noise, time stepping, speeds, and
//! trial count. Everything is validated at load time with field-level error
//! locations; omitted sections fall back to the stock defaults.
//!
//! ```toml
//! name = "paper-course"
//! speeds = [0.3, 0.6, 1.2]
//! trials = 30
//! output_dir = "out/paper_course"
//!
//! [robot]
//! wheel_radius = 0.1
//! wheel_separation = 0.4
//!
//! [path]
//! default_course_scale = 60.0
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Deserialize;

use crate::controller::ControllerConfig;
use crate::error::ScenarioError;
use crate::fuzzy::{
    self, FuzzyController, LinguisticVariable, OutputSingletons, RuleTable,
};
use crate::kinematics::{Pose, RobotParams};
use crate::path::{self, Path, Segment};
use crate::simulation::{NoiseModel, SimConfig};

/// A fully validated evaluation batch.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    /// Commanded speeds to sweep (m/s).
    pub speeds: Vec<f64>,
    /// Trials per noisy run.
    pub trials: u32,
    pub output_dir: PathBuf,
    pub robot: RobotParams,
    /// Loop parameters; `v_ref` here is a placeholder replaced per speed.
    pub controller: ControllerConfig,
    pub dt: f64,
    pub max_steps: usize,
    pub completion_threshold: f64,
    pub initial_pose: Pose,
    pub noise: NoiseModel,
    pub fuzzy: FuzzyController,
    pub path: Path,
}

impl Scenario {
    /// Loads and validates a scenario file.
    pub fn load(file: &std::path::Path) -> Result<Scenario, ScenarioError> {
        let text = std::fs::read_to_string(file)?;
        Scenario::from_toml_str(&text)
    }

    /// Parses and validates a scenario from TOML text.
    pub fn from_toml_str(text: &str) -> Result<Scenario, ScenarioError> {
        let raw: RawScenario = toml::from_str(text)?;
        raw.build()
    }

    /// The run configuration for one (speed, mode, seed) cell of the batch.
    pub fn sim_config(&self, v_ref: f64, noisy: bool, seed: u64) -> SimConfig {
        SimConfig {
            robot: self.robot,
            controller: ControllerConfig {
                v_ref,
                ..self.controller
            },
            fuzzy: self.fuzzy.clone(),
            path: self.path.clone(),
            dt: self.dt,
            initial_pose: self.initial_pose,
            noise: NoiseModel {
                enabled: noisy,
                seed,
                ..self.noise
            },
            completion_threshold: self.completion_threshold,
            max_steps: self.max_steps,
        }
    }
}

fn default_trials() -> u32 {
    1
}

fn default_dt() -> f64 {
    0.01
}

fn default_max_steps() -> usize {
    200_000
}

fn default_completion_threshold() -> f64 {
    0.05
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    speeds: Vec<f64>,
    #[serde(default = "default_trials")]
    trials: u32,
    output_dir: Option<PathBuf>,
    #[serde(default)]
    robot: RobotParams,
    #[serde(default)]
    controller: RawController,
    #[serde(default)]
    sim: RawSim,
    #[serde(default)]
    noise: RawNoise,
    #[serde(default)]
    fuzzy: RawFuzzy,
    #[serde(default)]
    path: RawPath,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawController {
    lookahead_base: Option<f64>,
    lookahead_gain: Option<f64>,
    omega_limit: Option<f64>,
}

impl Default for RawController {
    fn default() -> Self {
        RawController {
            lookahead_base: None,
            lookahead_gain: None,
            omega_limit: None,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSim {
    #[serde(default = "default_dt")]
    dt: f64,
    #[serde(default = "default_max_steps")]
    max_steps: usize,
    #[serde(default = "default_completion_threshold")]
    completion_threshold: f64,
    initial_pose: Option<RawPose>,
}

impl Default for RawSim {
    fn default() -> Self {
        RawSim {
            dt: default_dt(),
            max_steps: default_max_steps(),
            completion_threshold: default_completion_threshold(),
            initial_pose: None,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPose {
    x: f64,
    y: f64,
    theta: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNoise {
    wheel_noise_rel: Option<f64>,
    wheel_noise_abs: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFuzzy {
    #[serde(default)]
    paper_exact_rules: bool,
    /// Heading-error universe `[min, max]` (rad).
    error_universe: Option<[f64; 2]>,
    /// Speed universe `[min, max]` (m/s).
    speed_universe: Option<[f64; 2]>,
    /// Term label -> membership peak (rad), ruler partition.
    error_peaks: Option<BTreeMap<String, f64>>,
    /// Term label -> membership peak (m/s), ruler partition.
    speed_peaks: Option<BTreeMap<String, f64>>,
    /// Output label -> crisp value (rad/s).
    output_values: Option<BTreeMap<String, f64>>,
    /// Error label -> one output label per speed term, speed terms ordered
    /// by increasing peak.
    rules: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPath {
    /// Build the stock line+arc+bias course at this total length (m).
    default_course_scale: Option<f64>,
    /// Explicit segment list (mutually exclusive with the above).
    segments: Option<Vec<Segment>>,
}

impl RawScenario {
    fn build(self) -> Result<Scenario, ScenarioError> {
        if self.speeds.is_empty() {
            return Err(ScenarioError::invalid("speeds", "must list at least one speed"));
        }
        for (i, v) in self.speeds.iter().enumerate() {
            if !(*v > 0.0) || !v.is_finite() {
                return Err(ScenarioError::invalid(
                    format!("speeds[{i}]"),
                    format!("must be positive and finite, got {v}"),
                ));
            }
        }
        if self.trials < 1 {
            return Err(ScenarioError::invalid("trials", "must be at least 1"));
        }

        self.robot.validate().map_err(|e| match e {
            crate::error::KinematicsError::NonPositiveParam { field, value } => {
                ScenarioError::invalid(
                    format!("robot.{field}"),
                    format!("must be positive and finite, got {value}"),
                )
            }
            other => ScenarioError::invalid("robot", other),
        })?;

        let defaults = ControllerConfig::default();
        let controller = ControllerConfig {
            lookahead_base: self.controller.lookahead_base.unwrap_or(defaults.lookahead_base),
            lookahead_gain: self.controller.lookahead_gain.unwrap_or(defaults.lookahead_gain),
            // Placeholder; each run substitutes its own commanded speed.
            v_ref: self.speeds[0],
            omega_limit: self.controller.omega_limit.unwrap_or(defaults.omega_limit),
        };
        controller.validate()?;

        let noise_defaults = NoiseModel::default();
        let noise = NoiseModel {
            enabled: false,
            wheel_noise_rel: self.noise.wheel_noise_rel.unwrap_or(noise_defaults.wheel_noise_rel),
            wheel_noise_abs: self.noise.wheel_noise_abs.unwrap_or(noise_defaults.wheel_noise_abs),
            seed: self.noise.seed.unwrap_or(0),
        };
        noise.validate()?;

        let initial_pose = match self.sim.initial_pose {
            Some(raw) => {
                for (field, value) in [
                    ("sim.initial_pose.x", raw.x),
                    ("sim.initial_pose.y", raw.y),
                    ("sim.initial_pose.theta", raw.theta),
                ] {
                    if !value.is_finite() {
                        return Err(ScenarioError::invalid(field, "must be finite"));
                    }
                }
                Pose::new(raw.x, raw.y, raw.theta)
            }
            None => Pose::new(0.0, 0.0, 0.0),
        };

        let fuzzy = self.fuzzy.build()?;
        let path = self.path.build()?;

        let name = self.name.unwrap_or_else(|| "scenario".to_string());
        let output_dir = self
            .output_dir
            .unwrap_or_else(|| PathBuf::from("out").join(&name));

        let scenario = Scenario {
            name,
            speeds: self.speeds,
            trials: self.trials,
            output_dir,
            robot: self.robot,
            controller,
            dt: self.sim.dt,
            max_steps: self.sim.max_steps,
            completion_threshold: self.sim.completion_threshold,
            initial_pose,
            noise,
            fuzzy,
            path,
        };

        // One more pass through the run-level validator so nothing slips by.
        scenario
            .sim_config(scenario.speeds[0], false, 0)
            .validate()?;
        Ok(scenario)
    }
}

impl RawFuzzy {
    fn build(self) -> Result<FuzzyController, ScenarioError> {
        let as_fuzzy_err = |field: &str, e: crate::error::FuzzyError| {
            ScenarioError::invalid(format!("fuzzy.{field}"), e)
        };

        // Sort a label->peak map into a ruler partition.
        let ruler = |name: &str,
                     universe: (f64, f64),
                     peaks: &BTreeMap<String, f64>|
         -> Result<LinguisticVariable, ScenarioError> {
            let mut pairs: Vec<(&str, f64)> =
                peaks.iter().map(|(l, &p)| (l.as_str(), p)).collect();
            pairs.sort_by(|a, b| a.1.total_cmp(&b.1));
            LinguisticVariable::ruler(name, universe, &pairs)
                .map_err(|e| as_fuzzy_err(&format!("{name}_peaks"), e))
        };

        let error_var = match &self.error_peaks {
            Some(peaks) => {
                let universe = self
                    .error_universe
                    .map(|[a, b]| (a, b))
                    .unwrap_or((-std::f64::consts::PI, std::f64::consts::PI));
                ruler("heading_error", universe, peaks)?
            }
            None => {
                if self.error_universe.is_some() {
                    return Err(ScenarioError::invalid(
                        "fuzzy.error_universe",
                        "needs fuzzy.error_peaks alongside it",
                    ));
                }
                fuzzy::default_error_variable()
            }
        };

        let speed_var = match &self.speed_peaks {
            Some(peaks) => {
                let universe = self.speed_universe.map(|[a, b]| (a, b)).unwrap_or((0.0, 1.5));
                ruler("speed", universe, peaks)?
            }
            None => {
                if self.speed_universe.is_some() {
                    return Err(ScenarioError::invalid(
                        "fuzzy.speed_universe",
                        "needs fuzzy.speed_peaks alongside it",
                    ));
                }
                fuzzy::default_speed_variable()
            }
        };

        let outputs = match self.output_values {
            Some(values) => {
                let mut pairs: Vec<(String, f64)> = values.into_iter().collect();
                pairs.sort_by(|a, b| a.1.total_cmp(&b.1));
                OutputSingletons::new(pairs).map_err(|e| as_fuzzy_err("output_values", e))?
            }
            None => fuzzy::default_output_singletons(),
        };

        let rules = match self.rules {
            Some(rows) => {
                // Column order follows the speed terms by increasing peak.
                let col_labels: Vec<String> = speed_var
                    .terms()
                    .iter()
                    .map(|t| t.label.clone())
                    .collect();
                let mut row_labels = Vec::with_capacity(rows.len());
                let mut cells = Vec::with_capacity(rows.len());
                for (label, row) in rows {
                    row_labels.push(label);
                    cells.push(row);
                }
                RuleTable::new(row_labels, col_labels, cells)
                    .map_err(|e| as_fuzzy_err("rules", e))?
            }
            None => fuzzy::default_rule_table(self.paper_exact_rules),
        };

        FuzzyController::new(error_var, speed_var, rules, outputs)
            .map_err(|e| ScenarioError::invalid("fuzzy", e))
    }
}

impl RawPath {
    fn build(self) -> Result<Path, ScenarioError> {
        match (self.default_course_scale, self.segments) {
            (Some(_), Some(_)) => Err(ScenarioError::invalid(
                "path",
                "give either default_course_scale or segments, not both",
            )),
            (Some(scale), None) => {
                if !(scale > 0.0) || !scale.is_finite() {
                    return Err(ScenarioError::invalid(
                        "path.default_course_scale",
                        format!("must be positive and finite, got {scale}"),
                    ));
                }
                Ok(path::default_course(scale))
            }
            (None, Some(segments)) => {
                Path::new(segments).map_err(|e| ScenarioError::invalid("path.segments", e))
            }
            (None, None) => Ok(path::default_course(60.0)),
        }
    }
}
