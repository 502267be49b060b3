//! The fuzzy heading controller: fuzzification, rule inference, and singleton
//! defuzzification.
//!
//! Two inputs — the heading angle error and the commanded linear velocity —
//! are fuzzified over triangular membership functions, a 9x5 rule grid maps
//! every input-term pair to an output term, and the crisp angular-velocity
//! command is the firing-strength-weighted average of the output singletons.
//!
//! Sign convention: a positive heading error means the robot's heading has
//! deviated to the LEFT (counterclockwise) of where it should point, so the
//! "left deviation" terms (`SL`..`VBL`) live on the positive side of the
//! error universe. The output is a rightward-turn-positive steering value;
//! the loop in [`crate::controller`] negates it into the world frame.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::FuzzyError;

/// Triangular membership function, optionally flattened into a shoulder on
/// either side (membership stays 1 beyond the peak).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangularMf {
    /// Abscissa where the rising edge leaves zero.
    pub left: f64,
    /// Abscissa of full membership.
    pub peak: f64,
    /// Abscissa where the falling edge reaches zero.
    pub right: f64,
    /// Membership stays 1 for every x below the peak.
    pub shoulder_left: bool,
    /// Membership stays 1 for every x above the peak.
    pub shoulder_right: bool,
}

impl TriangularMf {
    pub fn new(left: f64, peak: f64, right: f64) -> Result<Self, FuzzyError> {
        Self::with_shoulders(left, peak, right, false, false)
    }

    pub fn with_shoulders(
        left: f64,
        peak: f64,
        right: f64,
        shoulder_left: bool,
        shoulder_right: bool,
    ) -> Result<Self, FuzzyError> {
        if !(left <= peak && peak <= right) || !left.is_finite() || !right.is_finite() {
            return Err(FuzzyError::MalformedMembership { left, peak, right });
        }
        Ok(TriangularMf {
            left,
            peak,
            right,
            shoulder_left,
            shoulder_right,
        })
    }

    /// Membership degree of `x`, in `[0, 1]`.
    ///
    /// The two slopes are evaluated as `(x - left)/(peak - left)` and
    /// `(right - x)/(right - peak)`; for a partition whose parameters mirror
    /// exactly under negation, degrees mirror exactly too.
    pub fn membership(&self, x: f64) -> f64 {
        if x < self.peak {
            if self.shoulder_left {
                1.0
            } else if x <= self.left {
                0.0
            } else {
                (x - self.left) / (self.peak - self.left)
            }
        } else if x > self.peak {
            if self.shoulder_right {
                1.0
            } else if x >= self.right {
                0.0
            } else {
                (self.right - x) / (self.right - self.peak)
            }
        } else {
            1.0
        }
    }
}

/// One labeled term of a linguistic variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyTerm {
    pub label: String,
    pub mf: TriangularMf,
}

/// An input variable: a universe of discourse covered by ordered,
/// overlapping terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticVariable {
    name: String,
    universe: (f64, f64),
    terms: Vec<FuzzyTerm>,
}

impl LinguisticVariable {
    /// Builds and validates a variable. Term peaks must be strictly
    /// increasing, labels unique, and the terms must jointly cover the
    /// universe (checked on a dense sample grid).
    pub fn new(
        name: impl Into<String>,
        universe: (f64, f64),
        terms: Vec<FuzzyTerm>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        let fail = |reason: String| {
            Err(FuzzyError::MalformedVariable {
                variable: name.clone(),
                reason,
            })
        };

        if !(universe.0 < universe.1) || !universe.0.is_finite() || !universe.1.is_finite() {
            return fail(format!("universe [{}, {}] is not a proper interval", universe.0, universe.1));
        }
        if terms.is_empty() {
            return fail("needs at least one term".into());
        }
        for pair in terms.windows(2) {
            if !(pair[0].mf.peak < pair[1].mf.peak) {
                return fail(format!(
                    "term peaks must be strictly increasing (`{}` at {} vs `{}` at {})",
                    pair[0].label, pair[0].mf.peak, pair[1].label, pair[1].mf.peak
                ));
            }
        }
        for (i, t) in terms.iter().enumerate() {
            if terms[..i].iter().any(|o| o.label == t.label) {
                return fail(format!("duplicate term label `{}`", t.label));
            }
        }
        // Coverage: every sampled point of the universe must excite a term.
        let samples = 4096;
        for i in 0..=samples {
            let x = universe.0 + (universe.1 - universe.0) * i as f64 / samples as f64;
            if !terms.iter().any(|t| t.mf.membership(x) > 0.0) {
                return fail(format!("terms leave the universe uncovered near x = {x}"));
            }
        }

        Ok(LinguisticVariable {
            name,
            universe,
            terms,
        })
    }

    /// Ruler partition: triangular terms peaked at the given (strictly
    /// increasing) abscissas, each foot at the neighboring peak, with
    /// shoulders at both extremes.
    pub fn ruler(
        name: impl Into<String>,
        universe: (f64, f64),
        labeled_peaks: &[(&str, f64)],
    ) -> Result<Self, FuzzyError> {
        let n = labeled_peaks.len();
        let mut terms = Vec::with_capacity(n);
        for (i, &(label, peak)) in labeled_peaks.iter().enumerate() {
            let left = if i == 0 {
                universe.0.min(peak)
            } else {
                labeled_peaks[i - 1].1
            };
            let right = if i == n - 1 {
                universe.1.max(peak)
            } else {
                labeled_peaks[i + 1].1
            };
            terms.push(FuzzyTerm {
                label: label.to_string(),
                mf: TriangularMf::with_shoulders(left, peak, right, i == 0, i == n - 1)?,
            });
        }
        Self::new(name, universe, terms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> (f64, f64) {
        self.universe
    }

    pub fn terms(&self) -> &[FuzzyTerm] {
        &self.terms
    }

    /// Membership degree of every term at `x` (clamped into the universe).
    pub fn fuzzify(&self, x: f64) -> Vec<(&str, f64)> {
        let x = x.clamp(self.universe.0, self.universe.1);
        self.terms
            .iter()
            .map(|t| (t.label.as_str(), t.mf.membership(x)))
            .collect()
    }
}

/// Crisp output value per output term, ordered by increasing value.
///
/// Exactly nine antisymmetric values with a zero center, mirroring the
/// steering vocabulary `VBL..VBR`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputSingletons {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl OutputSingletons {
    pub fn new(pairs: Vec<(String, f64)>) -> Result<Self, FuzzyError> {
        let fail = |reason: String| Err(FuzzyError::MalformedSingletons(reason));
        if pairs.len() != 9 {
            return fail(format!("expected exactly 9 output labels, got {}", pairs.len()));
        }
        for w in pairs.windows(2) {
            if !(w[0].1 < w[1].1) {
                return fail(format!(
                    "values must be strictly increasing (`{}` = {} vs `{}` = {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                ));
            }
        }
        for (i, (label, value)) in pairs.iter().enumerate() {
            if pairs[..i].iter().any(|(o, _)| o == label) {
                return fail(format!("duplicate label `{label}`"));
            }
            let (mirror_label, mirror_value) = &pairs[pairs.len() - 1 - i];
            if *value != -mirror_value {
                return fail(format!(
                    "values must be antisymmetric: `{label}` = {value} vs `{mirror_label}` = {mirror_value}"
                ));
            }
        }
        let (labels, values) = pairs.into_iter().unzip();
        Ok(OutputSingletons { labels, values })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_of(&self, label: &str) -> Option<f64> {
        self.index_of(label).map(|i| self.values[i])
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Weighted average of the singleton values under the given firing
    /// strengths: `sum(strength_i * value_i) / sum(strength_i)`.
    ///
    /// Terms are accumulated in mirror pairs (first with last, and so on
    /// inward) so that mirrored strengths produce an exactly negated output;
    /// this keeps the controller's odd symmetry bit-exact.
    pub fn defuzzify(&self, strengths: &[(&str, f64)]) -> Result<f64, FuzzyError> {
        let n = self.values.len();
        let mut s = vec![0.0_f64; n];
        for &(label, strength) in strengths {
            let i = self
                .index_of(label)
                .ok_or_else(|| FuzzyError::UnknownLabel(label.to_string()))?;
            s[i] = s[i].max(strength);
        }

        let mut num = 0.0;
        let mut den = 0.0;
        let (mut i, mut j) = (0, n - 1);
        while i < j {
            num += s[i] * self.values[i] + s[j] * self.values[j];
            den += s[i] + s[j];
            i += 1;
            j -= 1;
        }
        if i == j {
            num += s[i] * self.values[i];
            den += s[i];
        }

        if den <= 0.0 {
            return Err(FuzzyError::DegenerateInput);
        }
        Ok((num / den).clamp(self.values[0], self.values[n - 1]))
    }
}

/// The 9x5 rule grid: rows indexed by heading-error term, columns by speed
/// term, each cell naming an output term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleTable {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    cells: Vec<Vec<String>>,
}

impl RuleTable {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        cells: Vec<Vec<String>>,
    ) -> Result<Self, FuzzyError> {
        let fail = |reason: String| Err(FuzzyError::MalformedRules(reason));
        if row_labels.len() != 9 || col_labels.len() != 5 {
            return fail(format!(
                "expected a 9x5 grid, got {} rows x {} columns",
                row_labels.len(),
                col_labels.len()
            ));
        }
        if cells.len() != row_labels.len() {
            return fail(format!("expected {} rule rows, got {}", row_labels.len(), cells.len()));
        }
        for (r, row) in cells.iter().enumerate() {
            if row.len() != col_labels.len() {
                return fail(format!(
                    "row `{}` has {} cells, expected {}",
                    row_labels[r],
                    row.len(),
                    col_labels.len()
                ));
            }
        }
        Ok(RuleTable {
            row_labels,
            col_labels,
            cells,
        })
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn cell(&self, row: usize, col: usize) -> &str {
        &self.cells[row][col]
    }
}

/// A fully assembled fuzzy controller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyController {
    error_var: LinguisticVariable,
    speed_var: LinguisticVariable,
    rules: RuleTable,
    outputs: OutputSingletons,
}

impl FuzzyController {
    /// Assembles a controller, checking that rule row/column labels match
    /// the variables' terms and that every cell names a known output.
    pub fn new(
        error_var: LinguisticVariable,
        speed_var: LinguisticVariable,
        rules: RuleTable,
        outputs: OutputSingletons,
    ) -> Result<Self, FuzzyError> {
        let fail = |reason: String| Err(FuzzyError::MismatchedController(reason));

        let check_labels = |grid: &[String], var: &LinguisticVariable, what: &str| -> Option<String> {
            if grid.len() != var.terms().len() {
                return Some(format!(
                    "{what} labels ({}) do not match `{}` terms ({})",
                    grid.len(),
                    var.name(),
                    var.terms().len()
                ));
            }
            for label in grid {
                if !var.terms().iter().any(|t| &t.label == label) {
                    return Some(format!("{what} label `{label}` is not a term of `{}`", var.name()));
                }
            }
            None
        };
        if let Some(reason) = check_labels(&rules.row_labels, &error_var, "rule row") {
            return fail(reason);
        }
        if let Some(reason) = check_labels(&rules.col_labels, &speed_var, "rule column") {
            return fail(reason);
        }
        for row in &rules.cells {
            for cell in row {
                if outputs.index_of(cell).is_none() {
                    return fail(format!("rule output `{cell}` is not a known output label"));
                }
            }
        }

        Ok(FuzzyController {
            error_var,
            speed_var,
            rules,
            outputs,
        })
    }

    pub fn error_var(&self) -> &LinguisticVariable {
        &self.error_var
    }

    pub fn speed_var(&self) -> &LinguisticVariable {
        &self.speed_var
    }

    pub fn rules(&self) -> &RuleTable {
        &self.rules
    }

    pub fn outputs(&self) -> &OutputSingletons {
        &self.outputs
    }

    /// Fires all 45 rules with min-AND, aggregates same-consequent strengths
    /// with max, and returns the output labels with positive strength.
    pub fn infer(
        &self,
        e_degrees: &[(&str, f64)],
        s_degrees: &[(&str, f64)],
    ) -> Vec<(&str, f64)> {
        let lookup = |degrees: &[(&str, f64)], label: &str| -> f64 {
            degrees
                .iter()
                .find(|(l, _)| *l == label)
                .map(|&(_, d)| d)
                .unwrap_or(0.0)
        };

        let mut agg = vec![0.0_f64; self.outputs.labels.len()];
        for (r, row_label) in self.rules.row_labels.iter().enumerate() {
            let de = lookup(e_degrees, row_label);
            if de <= 0.0 {
                continue;
            }
            for (c, col_label) in self.rules.col_labels.iter().enumerate() {
                let ds = lookup(s_degrees, col_label);
                let strength = de.min(ds);
                if strength <= 0.0 {
                    continue;
                }
                let out = self
                    .outputs
                    .index_of(self.rules.cell(r, c))
                    .expect("cells validated at construction");
                agg[out] = agg[out].max(strength);
            }
        }

        agg.iter()
            .enumerate()
            .filter(|(_, &s)| s > 0.0)
            .map(|(i, &s)| (self.outputs.labels[i].as_str(), s))
            .collect()
    }

    /// Crisp steering command for a heading error (rad) and speed (m/s):
    /// fuzzify both inputs, fire the rules, defuzzify.
    ///
    /// Positive output means "turn right"; magnitude never exceeds the
    /// extreme singleton values.
    pub fn evaluate(&self, heading_error: f64, speed: f64) -> f64 {
        let e = self.error_var.fuzzify(heading_error);
        let s = self.speed_var.fuzzify(speed);
        let strengths = self.infer(&e, &s);
        self.outputs
            .defuzzify(&strengths)
            .expect("universe coverage guarantees an active rule")
    }
}

/// Output labels in increasing singleton-value order.
pub const OUTPUT_LABELS: [&str; 9] = ["VBL", "BL", "L", "SL", "Z", "SR", "R", "BR", "VBR"];

/// Default output singleton values (rad/s), one per label in
/// [`OUTPUT_LABELS`] order.
pub const OUTPUT_VALUES: [f64; 9] = [-5.0, -3.0, -1.75, -0.5, 0.0, 0.5, 1.75, 3.0, 5.0];

/// Heading-error rule rows in grid order (largest left deviation first).
pub const ERROR_ROW_LABELS: [&str; 9] = ["VBL", "BL", "L", "SL", "Z", "SR", "R", "BR", "VBR"];

/// Speed rule columns in grid order (slowest first).
pub const SPEED_COL_LABELS: [&str; 5] = ["VS", "S", "M", "F", "VF"];

/// The default rule grid, row-major in [`ERROR_ROW_LABELS`] x
/// [`SPEED_COL_LABELS`] order.
///
/// The grid is antisymmetric: mirroring the error term (L and R prefixes
/// swapped) mirrors the output term. One historical variant of the grid has
/// `VBL` in the (VBL, VF) cell instead, which breaks that symmetry and
/// commands a hard left turn for a maximal left deviation at top speed;
/// `paper_exact_rules` restores it for comparison runs.
pub fn default_rule_table(paper_exact_rules: bool) -> RuleTable {
    let grid: [[&str; 5]; 9] = [
        // VS     S      M      F      VF
        ["BR", "VBR", "VBR", "VBR", if paper_exact_rules { "VBL" } else { "VBR" }], // VBL
        ["BR", "BR", "VBR", "VBR", "VBR"],                                          // BL
        ["R", "R", "BR", "BR", "BR"],                                               // L
        ["SR", "SR", "R", "R", "R"],                                                // SL
        ["Z", "Z", "Z", "Z", "Z"],                                                  // Z
        ["SL", "SL", "L", "L", "L"],                                                // SR
        ["L", "L", "BL", "BL", "BL"],                                               // R
        ["BL", "BL", "VBL", "VBL", "VBL"],                                          // BR
        ["BL", "VBL", "VBL", "VBL", "VBL"],                                         // VBR
    ];
    RuleTable::new(
        ERROR_ROW_LABELS.iter().map(|s| s.to_string()).collect(),
        SPEED_COL_LABELS.iter().map(|s| s.to_string()).collect(),
        grid.iter()
            .map(|row| row.iter().map(|s| s.to_string()).collect())
            .collect(),
    )
    .expect("static table is well formed")
}

/// Default heading-error variable: universe `[-pi, pi]` rad, nine terms in a
/// symmetric ruler partition.
///
/// Left-deviation terms sit on the positive side (left = counterclockwise =
/// positive error), so by increasing peak the order is `VBR..VBL`.
pub fn default_error_variable() -> LinguisticVariable {
    let p2 = PI / 2.0;
    let p4 = PI / 4.0;
    let p12 = PI / 12.0;
    LinguisticVariable::ruler(
        "heading_error",
        (-PI, PI),
        &[
            ("VBR", -PI),
            ("BR", -p2),
            ("R", -p4),
            ("SR", -p12),
            ("Z", 0.0),
            ("SL", p12),
            ("L", p4),
            ("BL", p2),
            ("VBL", PI),
        ],
    )
    .expect("static partition is well formed")
}

/// Default speed variable: universe `[0, 1.5]` m/s with terms peaked at the
/// evaluation speeds.
pub fn default_speed_variable() -> LinguisticVariable {
    LinguisticVariable::ruler(
        "speed",
        (0.0, 1.5),
        &[("VS", 0.1), ("S", 0.3), ("M", 0.6), ("F", 0.9), ("VF", 1.2)],
    )
    .expect("static partition is well formed")
}

/// Default output singletons (rad/s).
pub fn default_output_singletons() -> OutputSingletons {
    OutputSingletons::new(
        OUTPUT_LABELS
            .iter()
            .zip(OUTPUT_VALUES)
            .map(|(l, v)| (l.to_string(), v))
            .collect(),
    )
    .expect("static singletons are well formed")
}

/// The stock controller. `paper_exact_rules` keeps the asymmetric
/// (VBL, VF) = VBL rule cell instead of the symmetric correction.
pub fn default_controller(paper_exact_rules: bool) -> FuzzyController {
    FuzzyController::new(
        default_error_variable(),
        default_speed_variable(),
        default_rule_table(paper_exact_rules),
        default_output_singletons(),
    )
    .expect("default tables are mutually consistent")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree(degrees: &[(&str, f64)], label: &str) -> f64 {
        degrees.iter().find(|(l, _)| *l == label).unwrap().1
    }

    #[test]
    fn membership_is_one_at_peak_and_zero_at_feet() {
        let mf = TriangularMf::new(-1.0, 0.0, 2.0).unwrap();
        assert_eq!(mf.membership(0.0), 1.0);
        assert_eq!(mf.membership(-1.0), 0.0);
        assert_eq!(mf.membership(2.0), 0.0);
        assert_eq!(mf.membership(-5.0), 0.0);
        assert!((mf.membership(1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn shoulders_hold_membership_at_one() {
        let mf = TriangularMf::with_shoulders(0.0, 0.1, 0.3, true, false).unwrap();
        assert_eq!(mf.membership(-10.0), 1.0);
        assert_eq!(mf.membership(0.05), 1.0);
        assert!((mf.membership(0.2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn malformed_membership_is_rejected() {
        assert!(TriangularMf::new(1.0, 0.0, 2.0).is_err());
        assert!(TriangularMf::new(0.0, 3.0, 2.0).is_err());
    }

    #[test]
    fn fuzzify_peaks_and_crossings() {
        let var = default_error_variable();
        // At a term's peak the degree is 1.
        let d = var.fuzzify(PI / 4.0);
        assert_eq!(degree(&d, "L"), 1.0);
        // Midway between two adjacent peaks both degrees are 0.5.
        let d = var.fuzzify((PI / 4.0 + PI / 2.0) / 2.0);
        assert!((degree(&d, "L") - 0.5).abs() < 1e-12);
        assert!((degree(&d, "BL") - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fuzzify_interpolates_between_peaks() {
        // pi/8 lies between the SL peak (pi/12) and the L peak (pi/4):
        // degree(SL) = (pi/4 - pi/8) / (pi/4 - pi/12) = 0.75, degree(L) = 0.25.
        let var = default_error_variable();
        let d = var.fuzzify(PI / 8.0);
        assert!((degree(&d, "SL") - 0.75).abs() < 1e-12);
        assert!((degree(&d, "L") - 0.25).abs() < 1e-12);
        for label in ["VBR", "BR", "R", "SR", "Z", "BL", "VBL"] {
            assert_eq!(degree(&d, label), 0.0, "term {label} should be silent");
        }
    }

    #[test]
    fn fuzzify_clamps_to_universe() {
        let var = default_speed_variable();
        let d = var.fuzzify(7.0);
        assert_eq!(degree(&d, "VF"), 1.0);
        let d = var.fuzzify(-1.0);
        assert_eq!(degree(&d, "VS"), 1.0);
    }

    #[test]
    fn variable_validation_rejects_gaps_and_duplicates() {
        let gap = LinguisticVariable::new(
            "gappy",
            (0.0, 10.0),
            vec![
                FuzzyTerm {
                    label: "a".into(),
                    mf: TriangularMf::new(0.0, 1.0, 2.0).unwrap(),
                },
                FuzzyTerm {
                    label: "b".into(),
                    mf: TriangularMf::new(5.0, 6.0, 7.0).unwrap(),
                },
            ],
        );
        assert!(gap.is_err());

        let dup = LinguisticVariable::new(
            "dup",
            (0.0, 2.0),
            vec![
                FuzzyTerm {
                    label: "a".into(),
                    mf: TriangularMf::with_shoulders(0.0, 0.5, 1.5, true, false).unwrap(),
                },
                FuzzyTerm {
                    label: "a".into(),
                    mf: TriangularMf::with_shoulders(0.5, 1.5, 2.0, false, true).unwrap(),
                },
            ],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn singleton_validation() {
        assert!(default_output_singletons().value_of("BR").unwrap() == 3.0);

        // Not antisymmetric.
        let skewed = OutputSingletons::new(
            OUTPUT_LABELS
                .iter()
                .zip([-5.0, -3.0, -1.75, -0.5, 0.0, 0.5, 1.75, 3.0, 4.0])
                .map(|(l, v)| (l.to_string(), v))
                .collect(),
        );
        assert!(skewed.is_err());

        // Wrong cardinality.
        let short = OutputSingletons::new(vec![("Z".to_string(), 0.0)]);
        assert!(short.is_err());
    }

    #[test]
    fn infer_single_dominant_rule() {
        let c = default_controller(false);
        let out = c.infer(&[("VBL", 1.0)], &[("VS", 1.0)]);
        assert_eq!(out, vec![("BR", 1.0)]);
    }

    #[test]
    fn infer_zero_row_commands_zero() {
        let c = default_controller(false);
        let out = c.infer(&[("Z", 1.0)], &[("M", 0.7), ("F", 0.3)]);
        assert_eq!(out, vec![("Z", 0.7)]);
    }

    #[test]
    fn infer_blends_adjacent_rules() {
        let c = default_controller(false);
        let out = c.infer(&[("SL", 0.5), ("Z", 0.5)], &[("VS", 1.0)]);
        assert_eq!(out.len(), 2);
        assert_eq!(degree(&out, "SR"), 0.5);
        assert_eq!(degree(&out, "Z"), 0.5);
    }

    #[test]
    fn defuzzify_singletons() {
        let outputs = default_output_singletons();
        assert_eq!(outputs.defuzzify(&[("Z", 1.0)]).unwrap(), 0.0);
        assert_eq!(outputs.defuzzify(&[("BR", 1.0)]).unwrap(), 3.0);
        // (0.5*0.5 + 0.5*0.0) / 1.0 = 0.25
        let v = outputs.defuzzify(&[("SR", 0.5), ("Z", 0.5)]).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
    }

    #[test]
    fn defuzzify_rejects_all_zero_strengths() {
        let outputs = default_output_singletons();
        assert_eq!(
            outputs.defuzzify(&[("Z", 0.0)]).unwrap_err(),
            FuzzyError::DegenerateInput
        );
        assert_eq!(outputs.defuzzify(&[]).unwrap_err(), FuzzyError::DegenerateInput);
    }

    #[test]
    fn defuzzify_rejects_unknown_labels() {
        let outputs = default_output_singletons();
        assert!(matches!(
            outputs.defuzzify(&[("XXL", 1.0)]),
            Err(FuzzyError::UnknownLabel(_))
        ));
    }

    #[test]
    fn evaluate_zero_error_is_zero_for_any_speed() {
        let c = default_controller(false);
        for speed in [0.0, 0.1, 0.3, 0.45, 0.6, 0.9, 1.2, 1.5] {
            assert_eq!(c.evaluate(0.0, speed), 0.0);
        }
    }

    #[test]
    fn evaluate_extreme_left_deviation_slow() {
        // Full VBL at full VS fires (VBL, VS) -> BR, value 3.
        let c = default_controller(false);
        assert_eq!(c.evaluate(PI, 0.1), 3.0);
    }

    #[test]
    fn evaluate_left_peak_slow() {
        // Error at the L peak (+pi/4), speed at the S peak: (L, S) -> R = 1.75.
        let c = default_controller(false);
        assert!((c.evaluate(PI / 4.0, 0.3) - 1.75).abs() < 1e-15);
    }

    #[test]
    fn evaluate_is_odd_spot_checks() {
        let c = default_controller(false);
        for &e in &[0.1, 0.5, PI / 8.0, 1.2, 2.9, PI] {
            for &s in &[0.1, 0.35, 0.6, 1.0, 1.4] {
                assert_eq!(c.evaluate(-e, s), -c.evaluate(e, s));
            }
        }
    }

    #[test]
    fn legacy_cell_breaks_symmetry_only_at_top_left() {
        let exact = default_controller(true);
        // (VBL, VF): error pi, speed 1.2 -> VBL = -5 under the legacy grid.
        assert_eq!(exact.evaluate(PI, 1.2), -5.0);
        // Everywhere else the variants agree.
        let corrected = default_controller(false);
        assert_eq!(exact.evaluate(PI, 0.1), corrected.evaluate(PI, 0.1));
        assert_eq!(exact.evaluate(-PI, 1.2), corrected.evaluate(-PI, 1.2));
    }

    #[test]
    fn controller_assembly_rejects_mismatched_labels() {
        let bad_rows = RuleTable::new(
            ["A", "B", "C", "D", "E", "F", "G", "H", "I"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            SPEED_COL_LABELS.iter().map(|s| s.to_string()).collect(),
            vec![vec!["Z".to_string(); 5]; 9],
        )
        .unwrap();
        let built = FuzzyController::new(
            default_error_variable(),
            default_speed_variable(),
            bad_rows,
            default_output_singletons(),
        );
        assert!(built.is_err());
    }
}
