//! Differential-drive kinematics and unicycle pose integration.
//!
//! The robot body moves with a linear velocity `v` (along its heading) and an
//! angular velocity `omega` (counterclockwise positive). Two wheels of radius
//! `R` separated by `b` produce that twist:
//!
//! ```text
//! v     = (omega_r + omega_l) * R / 2
//! omega = (omega_r - omega_l) * R / b
//! ```
//!
//! [`body_to_wheel`] is the exact algebraic inverse of [`wheel_to_body`], so
//! the round trip recovers a twist to floating-point accuracy.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::KinematicsError;

/// Robot position and heading in the global frame.
///
/// `theta` is kept in the half-open interval `(-pi, pi]`; every operation
/// that produces a `Pose` re-wraps it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    /// Global-frame x position (m).
    pub x: f64,
    /// Global-frame y position (m).
    pub y: f64,
    /// Heading (rad), counterclockwise from the +x axis, in `(-pi, pi]`.
    pub theta: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Pose {
            x,
            y,
            theta: wrap_angle(theta),
        }
    }
}

/// Physical parameters of the differential-drive platform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RobotParams {
    /// Wheel radius (m).
    pub wheel_radius: f64,
    /// Distance between the two drive wheels (m).
    pub wheel_separation: f64,
    /// Saturation bound on each wheel's angular speed (rad/s).
    pub max_wheel_speed: f64,
    /// Saturation bound on the commanded body angular velocity (rad/s).
    pub max_body_omega: f64,
}

impl Default for RobotParams {
    fn default() -> Self {
        RobotParams {
            wheel_radius: 0.1,
            wheel_separation: 0.4,
            max_wheel_speed: 20.0,
            max_body_omega: 5.0,
        }
    }
}

impl RobotParams {
    /// Checks the positivity invariants, naming the offending field.
    pub fn validate(&self) -> Result<(), KinematicsError> {
        let positive = [
            ("wheel_radius", self.wheel_radius),
            ("wheel_separation", self.wheel_separation),
            ("max_wheel_speed", self.max_wheel_speed),
            ("max_body_omega", self.max_body_omega),
        ];
        for (field, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(KinematicsError::NonPositiveParam { field, value });
            }
        }
        Ok(())
    }
}

/// Linear and angular velocity of the robot body.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BodyTwist {
    /// Linear velocity (m/s).
    pub v: f64,
    /// Angular velocity (rad/s), counterclockwise positive.
    pub omega: f64,
}

impl BodyTwist {
    pub fn new(v: f64, omega: f64) -> Self {
        BodyTwist { v, omega }
    }
}

/// Angular velocities of the right and left wheels.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WheelSpeeds {
    /// Right wheel angular velocity (rad/s).
    pub omega_r: f64,
    /// Left wheel angular velocity (rad/s).
    pub omega_l: f64,
}

impl WheelSpeeds {
    pub fn new(omega_r: f64, omega_l: f64) -> Self {
        WheelSpeeds { omega_r, omega_l }
    }
}

/// Forward kinematics: body twist produced by the given wheel speeds.
pub fn wheel_to_body(w: WheelSpeeds, p: &RobotParams) -> BodyTwist {
    let r = p.wheel_radius;
    BodyTwist {
        v: (w.omega_r + w.omega_l) * r / 2.0,
        omega: (w.omega_r - w.omega_l) * r / p.wheel_separation,
    }
}

/// Inverse kinematics: wheel speeds that realize the given body twist.
///
/// Exact algebraic inverse of [`wheel_to_body`]:
/// `omega_r = (v + b*omega/2) / R`, `omega_l = (v - b*omega/2) / R`.
pub fn body_to_wheel(t: BodyTwist, p: &RobotParams) -> WheelSpeeds {
    let half_track = p.wheel_separation * t.omega / 2.0;
    WheelSpeeds {
        omega_r: (t.v + half_track) / p.wheel_radius,
        omega_l: (t.v - half_track) / p.wheel_radius,
    }
}

/// Clamps each wheel speed to `[-max_wheel_speed, +max_wheel_speed]`.
///
/// Values within bounds pass through bit-unchanged.
pub fn saturate_wheels(w: WheelSpeeds, p: &RobotParams) -> WheelSpeeds {
    let m = p.max_wheel_speed;
    WheelSpeeds {
        omega_r: w.omega_r.clamp(-m, m),
        omega_l: w.omega_l.clamp(-m, m),
    }
}

/// One forward-Euler step of the unicycle model.
///
/// `x' = x + v cos(theta) dt`, `y' = y + v sin(theta) dt`,
/// `theta' = wrap(theta + omega dt)`. Rejects `dt <= 0`.
pub fn integrate_pose(pose: Pose, t: BodyTwist, dt: f64) -> Result<Pose, KinematicsError> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(KinematicsError::InvalidTimeStep(dt));
    }
    Ok(Pose {
        x: pose.x + t.v * pose.theta.cos() * dt,
        y: pose.y + t.v * pose.theta.sin() * dt,
        theta: wrap_angle(pose.theta + t.omega * dt),
    })
}

/// Wraps an angle to `(-pi, pi]`; `-pi` maps to the included `+pi` endpoint.
pub fn wrap_angle(a: f64) -> f64 {
    if a > -PI && a <= PI {
        return a;
    }
    // rem_euclid lands in [0, 2*pi]; shift the upper half down. The closed
    // upper end covers tiny negative inputs that round up to exactly 2*pi.
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}
