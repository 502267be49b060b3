//! The steering loop body: heading error from pose and path, fuzzy steering,
//! commanded body twist.
//!
//! The heading error is a lookahead-bearing error: the robot steers toward a
//! path point a short arc length beyond its closest path point, which
//! corrects lateral offset as well as heading (a pure tangent error cannot).

use serde::{Deserialize, Serialize};

use crate::error::ScenarioError;
use crate::fuzzy::FuzzyController;
use crate::kinematics::{wrap_angle, BodyTwist, Pose};
use crate::path::{Path, Point};

/// Steering-loop parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ControllerConfig {
    /// Minimum lookahead distance (m).
    pub lookahead_base: f64,
    /// Velocity scaling of the lookahead (s); effective lookahead is
    /// `max(lookahead_base, lookahead_gain * v_ref)`.
    pub lookahead_gain: f64,
    /// Commanded linear velocity (m/s).
    pub v_ref: f64,
    /// Clamp on the commanded angular velocity (rad/s).
    pub omega_limit: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        ControllerConfig {
            lookahead_base: 0.3,
            lookahead_gain: 0.5,
            v_ref: 0.6,
            omega_limit: 5.0,
        }
    }
}

impl ControllerConfig {
    pub fn effective_lookahead(&self) -> f64 {
        self.lookahead_base.max(self.lookahead_gain * self.v_ref)
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let positive = [
            ("controller.lookahead_base", self.lookahead_base),
            ("controller.v_ref", self.v_ref),
            ("controller.omega_limit", self.omega_limit),
        ];
        for (field, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(ScenarioError::invalid(
                    field,
                    format!("must be positive and finite, got {value}"),
                ));
            }
        }
        if !self.lookahead_gain.is_finite() || self.lookahead_gain < 0.0 {
            return Err(ScenarioError::invalid(
                "controller.lookahead_gain",
                format!("must be nonnegative and finite, got {}", self.lookahead_gain),
            ));
        }
        Ok(())
    }
}

/// Heading angle error in `(-pi, pi]`; positive means the robot's heading
/// has deviated left (counterclockwise) of the bearing to the lookahead
/// target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeadingError {
    pub epsilon: f64,
}

/// Heading error of `pose` with respect to the lookahead target on `path`.
///
/// If the pose sits exactly on the target, the bearing degenerates; the
/// path tangent at the target stands in.
pub fn heading_error(pose: Pose, path: &Path, cfg: &ControllerConfig) -> HeadingError {
    let position = Point::new(pose.x, pose.y);
    let lookahead = cfg.effective_lookahead();
    let target = path.lookahead_point(position, lookahead);
    let bearing = if position.distance(target) < 1e-12 {
        let s = (path.closest_arc_length(position) + lookahead).min(path.total_length());
        path.heading_at(s)
    } else {
        (target.y - pose.y).atan2(target.x - pose.x)
    };
    HeadingError {
        epsilon: wrap_angle(pose.theta - bearing),
    }
}

/// One pass of the control law: constant commanded speed, fuzzy steering.
///
/// The fuzzy output is rightward-turn-positive, so it is negated into the
/// world frame (counterclockwise positive) and clamped to `omega_limit`.
pub fn compute_command(
    pose: Pose,
    path: &Path,
    cfg: &ControllerConfig,
    fz: &FuzzyController,
) -> BodyTwist {
    let eps = heading_error(pose, path, cfg).epsilon;
    let steer = fz.evaluate(eps, cfg.v_ref);
    BodyTwist {
        v: cfg.v_ref,
        omega: (-steer).clamp(-cfg.omega_limit, cfg.omega_limit),
    }
}
