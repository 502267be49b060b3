//! Reference paths as ordered line and arc segments, parameterized by arc
//! length.
//!
//! All queries are pure: point and tangent at an arc length `s`, the arc
//! length closest to an arbitrary point, and the lookahead target used by
//! the steering loop.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::PathError;
use crate::kinematics::wrap_angle;

/// A point in the global frame (m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// One piece of a path: a straight line or a circular arc.
///
/// Arc sweep is signed; positive sweeps run counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    Line {
        start: Point,
        end: Point,
    },
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

impl Segment {
    pub fn length(&self) -> f64 {
        match *self {
            Segment::Line { start, end } => start.distance(end),
            Segment::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn start_point(&self) -> Point {
        match *self {
            Segment::Line { start, .. } => start,
            Segment::Arc {
                center,
                radius,
                start_angle,
                ..
            } => point_on_circle(center, radius, start_angle),
        }
    }

    pub fn end_point(&self) -> Point {
        match *self {
            Segment::Line { end, .. } => end,
            Segment::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => point_on_circle(center, radius, start_angle + sweep),
        }
    }

    /// Signed curvature: 0 on lines, `sign(sweep) / radius` on arcs.
    pub fn curvature(&self) -> f64 {
        match *self {
            Segment::Line { .. } => 0.0,
            Segment::Arc { radius, sweep, .. } => sweep.signum() / radius,
        }
    }

    fn validate(&self, index: usize) -> Result<(), PathError> {
        let fail = |reason: String| Err(PathError::BadSegment { index, reason });
        match *self {
            Segment::Line { start, end } => {
                for v in [start.x, start.y, end.x, end.y] {
                    if !v.is_finite() {
                        return fail("line endpoints must be finite".into());
                    }
                }
                if start == end {
                    return fail("line start and end coincide".into());
                }
            }
            Segment::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                for v in [center.x, center.y, radius, start_angle, sweep] {
                    if !v.is_finite() {
                        return fail("arc parameters must be finite".into());
                    }
                }
                if !(radius > 0.0) {
                    return fail(format!("arc radius must be positive, got {radius}"));
                }
                if sweep == 0.0 {
                    return fail("arc sweep must be nonzero".into());
                }
            }
        }
        Ok(())
    }

    /// Point at local arc length `s` in `[0, length]`.
    fn point_at_local(&self, s: f64) -> Point {
        match *self {
            Segment::Line { start, end } => {
                let t = s / self.length();
                Point::new(start.x + (end.x - start.x) * t, start.y + (end.y - start.y) * t)
            }
            Segment::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => point_on_circle(center, radius, start_angle + sweep.signum() * s / radius),
        }
    }

    /// Tangent direction of travel at local arc length `s`, wrapped.
    fn heading_at_local(&self, s: f64) -> f64 {
        match *self {
            Segment::Line { start, end } => (end.y - start.y).atan2(end.x - start.x),
            Segment::Arc {
                radius,
                start_angle,
                sweep,
                ..
            } => {
                let dir = sweep.signum();
                wrap_angle(start_angle + dir * s / radius + dir * FRAC_PI_2)
            }
        }
    }

    /// Local arc length and distance of the point on this segment closest
    /// to `p`.
    fn closest_local(&self, p: Point) -> (f64, f64) {
        match *self {
            Segment::Line { start, end } => {
                let dx = end.x - start.x;
                let dy = end.y - start.y;
                let len2 = dx * dx + dy * dy;
                let t = (((p.x - start.x) * dx + (p.y - start.y) * dy) / len2).clamp(0.0, 1.0);
                let s = t * self.length();
                (s, p.distance(self.point_at_local(s)))
            }
            Segment::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                // Angular parameter of the circle point nearest to p, measured
                // along the direction of travel from the arc start.
                let phi = (p.y - center.y).atan2(p.x - center.x);
                let along = (sweep.signum() * (phi - start_angle)).rem_euclid(2.0 * PI);
                if along <= sweep.abs() {
                    let s = radius * along;
                    (s, p.distance(self.point_at_local(s)))
                } else {
                    // Off the swept sector: one of the two endpoints wins;
                    // ties go to the segment start.
                    let d_start = p.distance(self.start_point());
                    let d_end = p.distance(self.end_point());
                    if d_end < d_start {
                        (self.length(), d_end)
                    } else {
                        (0.0, d_start)
                    }
                }
            }
        }
    }
}

fn point_on_circle(center: Point, radius: f64, angle: f64) -> Point {
    Point::new(center.x + radius * angle.cos(), center.y + radius * angle.sin())
}

/// A connected chain of segments with cumulative arc length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    segments: Vec<Segment>,
    cumulative_lengths: Vec<f64>,
}

/// Maximum junction gap tolerated between consecutive segments (m).
pub const CONNECTIVITY_TOLERANCE: f64 = 1e-9;

impl Path {
    pub fn new(segments: Vec<Segment>) -> Result<Self, PathError> {
        if segments.is_empty() {
            return Err(PathError::Empty);
        }
        for (i, seg) in segments.iter().enumerate() {
            seg.validate(i)?;
        }
        for i in 0..segments.len() - 1 {
            let gap = segments[i].end_point().distance(segments[i + 1].start_point());
            if gap > CONNECTIVITY_TOLERANCE {
                return Err(PathError::Disconnected(i, i + 1, gap));
            }
        }
        let mut cumulative_lengths = Vec::with_capacity(segments.len());
        let mut total = 0.0;
        for seg in &segments {
            total += seg.length();
            cumulative_lengths.push(total);
        }
        Ok(Path {
            segments,
            cumulative_lengths,
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative_lengths.last().unwrap()
    }

    /// Segment index and local arc length for a global `s` (clamped).
    ///
    /// Arc lengths exactly at a junction resolve to the earlier segment.
    fn locate(&self, s: f64) -> (usize, f64) {
        let s = s.clamp(0.0, self.total_length());
        let idx = self
            .cumulative_lengths
            .partition_point(|&c| c < s)
            .min(self.segments.len() - 1);
        let offset = if idx == 0 {
            0.0
        } else {
            self.cumulative_lengths[idx - 1]
        };
        let local = (s - offset).clamp(0.0, self.segments[idx].length());
        (idx, local)
    }

    /// Point on the path at arc length `s` (clamped to `[0, total_length]`).
    pub fn point_at(&self, s: f64) -> Point {
        let (idx, local) = self.locate(s);
        self.segments[idx].point_at_local(local)
    }

    /// Tangent direction of travel at arc length `s`, in `(-pi, pi]`.
    pub fn heading_at(&self, s: f64) -> f64 {
        let (idx, local) = self.locate(s);
        self.segments[idx].heading_at_local(local)
    }

    /// Signed curvature at arc length `s`.
    pub fn curvature_at(&self, s: f64) -> f64 {
        let (idx, _) = self.locate(s);
        self.segments[idx].curvature()
    }

    /// Arc length of the path point closest to `p`, minimized per segment
    /// analytically; ties resolve to the smallest arc length.
    pub fn closest_arc_length(&self, p: Point) -> f64 {
        let mut best_s = 0.0;
        let mut best_d = f64::INFINITY;
        let mut offset = 0.0;
        for (i, seg) in self.segments.iter().enumerate() {
            let (local, d) = seg.closest_local(p);
            if d < best_d {
                best_d = d;
                best_s = offset + local;
            }
            offset = self.cumulative_lengths[i];
        }
        best_s
    }

    /// Path point `lookahead` meters beyond the closest point to `p`,
    /// clamped to the path end.
    pub fn lookahead_point(&self, p: Point, lookahead: f64) -> Point {
        self.point_at(self.closest_arc_length(p) + lookahead)
    }
}

/// The default evaluation course: an axis-aligned straight line, a
/// counterclockwise circular arc, and a 135-degree bias line, with total
/// length `scale` meters (60 m at the stock scale).
///
/// At `scale = 60` the pieces are: line (0,0) to (20,0); a 135-degree arc of
/// radius 10 centered at (20,10); and a tangent-continuous bias line for the
/// remaining 40 - 7.5*pi (about 16.44) meters. All three junctions are
/// tangent, so only the curvature steps at the segment boundaries.
pub fn default_course(scale: f64) -> Path {
    assert!(scale > 0.0 && scale.is_finite(), "course scale must be positive");
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
    let bias_len = (40.0 - 10.0 * sweep) * k;
    let bias_dir = 3.0 * PI / 4.0; // equals the arc's exit tangent
    let bias_start = arc.end_point();
    let bias = Segment::Line {
        start: bias_start,
        end: Point::new(
            bias_start.x + bias_len * bias_dir.cos(),
            bias_start.y + bias_len * bias_dir.sin(),
        ),
    };
    Path::new(vec![line, arc, bias]).expect("stock course is connected by construction")
}
