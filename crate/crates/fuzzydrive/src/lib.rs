//! Fuzzy-logic trajectory tracking for differential-drive mobile robots.
//!
//! The crate simulates the classic loop: a reference path of lines and arcs,
//! a heading-error computation against a lookahead target, a fuzzy inference
//! block that turns heading error and commanded speed into a steering rate,
//! inverse and forward wheel kinematics around an optionally noisy plant,
//! and RMSE evaluation of the resulting traces.
//!
//! Quick tour:
//!
//! ```
//! use fuzzydrive::fuzzy::default_controller;
//! use fuzzydrive::path::default_course;
//! use fuzzydrive::controller::ControllerConfig;
//! use fuzzydrive::kinematics::{Pose, RobotParams};
//! use fuzzydrive::simulation::{run, NoiseModel, SimConfig};
//! use fuzzydrive::metrics::evaluate_trace;
//!
//! let config = SimConfig {
//!     robot: RobotParams::default(),
//!     controller: ControllerConfig { v_ref: 0.6, ..Default::default() },
//!     fuzzy: default_controller(false),
//!     path: default_course(60.0),
//!     dt: 0.01,
//!     initial_pose: Pose::new(0.0, 0.0, 0.0),
//!     noise: NoiseModel::default(),
//!     completion_threshold: 0.05,
//!     max_steps: 200_000,
//! };
//! let trace = run(&config);
//! assert!(trace.completed());
//! let report = evaluate_trace(&trace, &config.path, 0.6).unwrap();
//! assert_eq!(report.rmse_v, 0.0); // ideal plant holds the commanded speed
//! ```
//!
//! The `book/` directory of the repository walks through each piece; the
//! `simulate` binary drives whole scenario files from the command line.

pub mod controller;
pub mod error;
pub mod fuzzy;
pub mod kinematics;
pub mod metrics;
pub mod path;
pub mod scenario;
pub mod simulation;

pub use error::{FuzzyError, KinematicsError, MetricsError, PathError, ScenarioError};
pub use kinematics::{BodyTwist, Pose, RobotParams, WheelSpeeds};
pub use scenario::Scenario;
