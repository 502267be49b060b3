//! RMSE evaluation of traces: position error against the closest reference
//! point, velocity error against the commanded speed, angular-velocity error
//! against the curvature-implied reference.

use serde::{Deserialize, Serialize};

use crate::error::MetricsError;
use crate::path::Path;
use crate::simulation::Trace;

/// Per-run (or pooled) RMSE summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    /// RMSE of the x component of position error (m).
    pub rmse_x: f64,
    /// RMSE of the y component of position error (m).
    pub rmse_y: f64,
    /// RMSE of realized linear velocity minus `v_ref` (m/s).
    pub rmse_v: f64,
    /// RMSE of realized angular velocity minus `curvature * v_ref` (rad/s).
    pub rmse_omega: f64,
    pub n_samples: usize,
    pub n_trials: usize,
}

/// Root of the mean of squares.
pub fn rmse(series: &[f64]) -> Result<f64, MetricsError> {
    if series.is_empty() {
        return Err(MetricsError::EmptySeries);
    }
    let mean_sq = series.iter().map(|e| e * e).sum::<f64>() / series.len() as f64;
    Ok(mean_sq.sqrt())
}

/// Evaluates one trace against its reference path.
///
/// Position errors are componentwise differences from the CLOSEST reference
/// point (the controller regulates geometry, not a time schedule). The
/// angular-velocity reference is the steady-state value of perfect tracking,
/// `curvature(s) * v_ref`: zero on lines, `±v_ref / r` on arcs.
pub fn evaluate_trace(trace: &Trace, path: &Path, v_ref: f64) -> Result<ErrorReport, MetricsError> {
    if trace.records.is_empty() {
        return Err(MetricsError::EmptyTrace);
    }
    let n = trace.records.len();
    let mut ex = Vec::with_capacity(n);
    let mut ey = Vec::with_capacity(n);
    let mut ev = Vec::with_capacity(n);
    let mut ew = Vec::with_capacity(n);
    for rec in &trace.records {
        ex.push(rec.pose.x - rec.ref_point.x);
        ey.push(rec.pose.y - rec.ref_point.y);
        ev.push(rec.twist_real.v - v_ref);
        ew.push(rec.twist_real.omega - path.curvature_at(rec.ref_s) * v_ref);
    }
    Ok(ErrorReport {
        rmse_x: rmse(&ex)?,
        rmse_y: rmse(&ey)?,
        rmse_v: rmse(&ev)?,
        rmse_omega: rmse(&ew)?,
        n_samples: n,
        n_trials: 1,
    })
}

/// Pools per-trial reports: `sqrt(mean of per-trial mean squared errors)`
/// per component, unweighted across trials.
pub fn aggregate(reports: &[ErrorReport]) -> Result<ErrorReport, MetricsError> {
    if reports.is_empty() {
        return Err(MetricsError::NoReports);
    }
    let n = reports.len() as f64;
    let pooled = |get: fn(&ErrorReport) -> f64| -> f64 {
        (reports.iter().map(|r| get(r) * get(r)).sum::<f64>() / n).sqrt()
    };
    Ok(ErrorReport {
        rmse_x: pooled(|r| r.rmse_x),
        rmse_y: pooled(|r| r.rmse_y),
        rmse_v: pooled(|r| r.rmse_v),
        rmse_omega: pooled(|r| r.rmse_omega),
        n_samples: reports.iter().map(|r| r.n_samples).sum(),
        n_trials: reports.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{BodyTwist, Pose, WheelSpeeds};
    use crate::path::{Point, Segment};
    use crate::simulation::{RunOutcome, TraceRecord};

    #[test]
    fn rmse_basics() {
        assert_eq!(rmse(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!((rmse(&[0.01, 0.01, 0.01]).unwrap() - 0.01).abs() < 1e-15);
        // sqrt((9e-6 + 16e-6) / 2) = 0.0035355339...
        assert!((rmse(&[0.003, -0.004]).unwrap() - 0.0035355339059327377).abs() < 1e-15);
        assert_eq!(rmse(&[]).unwrap_err(), MetricsError::EmptySeries);
    }

    // Length 8 keeps the projection arithmetic exact (powers of two), so
    // the zero-error cases below really score 0.0.
    fn straight_path() -> Path {
        Path::new(vec![Segment::Line {
            start: Point::new(0.0, 0.0),
            end: Point::new(8.0, 0.0),
        }])
        .unwrap()
    }

    /// A hand-built trace of poses riding a straight +x path at `vexact`,
    /// displaced by (dx, dy) from the reference.
    fn synthetic_trace(path: &Path, v: f64, dx: f64, dy: f64) -> Trace {
        let records = (0..50)
            .map(|i| {
                let s = 0.1 * i as f64;
                let pose = Pose::new(s + dx, dy, 0.0);
                let ref_s = path.closest_arc_length(Point::new(pose.x, pose.y));
                TraceRecord {
                    time: 0.01 * i as f64,
                    pose,
                    ref_s,
                    ref_point: path.point_at(ref_s),
                    ref_heading: path.heading_at(ref_s),
                    epsilon: 0.0,
                    twist_cmd: BodyTwist::new(v, 0.0),
                    twist_real: BodyTwist::new(v, 0.0),
                    wheels_cmd: WheelSpeeds::default(),
                    wheels_real: WheelSpeeds::default(),
                }
            })
            .collect();
        Trace {
            records,
            outcome: RunOutcome::Completed,
            final_pose: Pose::new(5.0, dy, 0.0),
        }
    }

    #[test]
    fn perfect_trace_scores_zero() {
        let path = straight_path();
        let r = evaluate_trace(&synthetic_trace(&path, 0.6, 0.0, 0.0), &path, 0.6).unwrap();
        assert_eq!(r.rmse_x, 0.0);
        assert_eq!(r.rmse_y, 0.0);
        assert_eq!(r.rmse_v, 0.0);
        assert_eq!(r.rmse_omega, 0.0);
        assert_eq!(r.n_samples, 50);
    }

    #[test]
    fn along_track_shift_projects_away() {
        // Shifted along the path, every pose still lies on the reference.
        let path = straight_path();
        let r = evaluate_trace(&synthetic_trace(&path, 0.6, 0.01, 0.0), &path, 0.6).unwrap();
        assert_eq!(r.rmse_x, 0.0);
        assert_eq!(r.rmse_y, 0.0);
    }

    #[test]
    fn lateral_offset_lands_in_y() {
        let path = straight_path();
        let r = evaluate_trace(&synthetic_trace(&path, 0.6, 0.0, 0.01), &path, 0.6).unwrap();
        assert_eq!(r.rmse_x, 0.0);
        assert!((r.rmse_y - 0.01).abs() < 1e-12);
    }

    #[test]
    fn velocity_error_against_reference() {
        let path = straight_path();
        let r = evaluate_trace(&synthetic_trace(&path, 0.61, 0.0, 0.0), &path, 0.6).unwrap();
        assert!((r.rmse_v - 0.01).abs() < 1e-12);
    }

    #[test]
    fn empty_trace_is_rejected() {
        let path = straight_path();
        let empty = Trace {
            records: vec![],
            outcome: RunOutcome::Completed,
            final_pose: Pose::new(0.0, 0.0, 0.0),
        };
        assert_eq!(
            evaluate_trace(&empty, &path, 0.6).unwrap_err(),
            MetricsError::EmptyTrace
        );
    }

    #[test]
    fn aggregate_pools_mean_squares() {
        let base = ErrorReport {
            rmse_x: 0.0,
            rmse_y: 0.0,
            rmse_v: 0.0,
            rmse_omega: 0.0,
            n_samples: 100,
            n_trials: 1,
        };
        // Per-trial MSEs 1e-4 and 3e-4 pool to sqrt(2e-4).
        let a = ErrorReport { rmse_x: 0.01, ..base };
        let b = ErrorReport {
            rmse_x: 3.0e-4_f64.sqrt(),
            ..base
        };
        let pooled = aggregate(&[a, b]).unwrap();
        assert!((pooled.rmse_x - 2.0e-4_f64.sqrt()).abs() < 1e-15);
        assert_eq!(pooled.n_trials, 2);
        assert_eq!(pooled.n_samples, 200);

        let single = aggregate(&[a]).unwrap();
        assert!((single.rmse_x - a.rmse_x).abs() < 1e-15);
        assert_eq!(single.n_trials, 1);

        let twin = aggregate(&[a, a]).unwrap();
        assert!((twin.rmse_x - a.rmse_x).abs() < 1e-15);
        assert_eq!(twin.n_trials, 2);

        assert_eq!(aggregate(&[]).unwrap_err(), MetricsError::NoReports);
    }
}
