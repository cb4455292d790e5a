//! Linguistic variables: labeled fuzzy sets over a numeric universe.

use crate::error::{Error, Result};
use crate::membership::MembershipFunction;

/// One labeled fuzzy set of a linguistic variable.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    pub label: String,
    pub mf: MembershipFunction,
}

impl FuzzySet {
    pub fn new(label: impl Into<String>, mf: MembershipFunction) -> Self {
        FuzzySet { label: label.into(), mf }
    }
}

/// A named variable partitioned into labeled fuzzy sets over `[lo, hi]`.
///
/// Sets are kept in increasing-risk order. For the detection input the
/// numeric scale runs opposite to the linguistic one (rating 1 means
/// detection is near-certain), so its first set carries the label
/// `VeryHigh` and its last `VeryLow`; the ordering by numeric position
/// is what the rule generator indexes.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub sets: Vec<FuzzySet>,
}

/// Membership degrees of one crisp value across all sets of one variable.
///
/// `clamped` flags inputs that fell outside the universe and were snapped
/// to the nearest bound before evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzifiedValue {
    pub variable: String,
    pub degrees: Vec<(String, f64)>,
    pub clamped: bool,
}

impl FuzzifiedValue {
    /// Degree for `label`, or `None` if the variable has no such set.
    pub fn degree(&self, label: &str) -> Option<f64> {
        self.degrees.iter().find(|(l, _)| l == label).map(|&(_, d)| d)
    }
}

impl LinguisticVariable {
    /// Build a variable, rejecting an empty or inverted universe and
    /// duplicate labels.
    pub fn new(name: impl Into<String>, lo: f64, hi: f64, sets: Vec<FuzzySet>) -> Result<Self> {
        let name = name.into();
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidUniverse { variable: name, lo, hi });
        }
        for (i, set) in sets.iter().enumerate() {
            if sets[..i].iter().any(|s| s.label == set.label) {
                return Err(Error::DuplicateLabel { variable: name, label: set.label.clone() });
            }
        }
        Ok(LinguisticVariable { name, lo, hi, sets })
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.sets.iter().position(|s| s.label == label)
    }

    /// Clamp `x` into the universe.
    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    /// Fuzzify a crisp value: one (label, degree) pair per set.
    ///
    /// Out-of-universe inputs are clamped to the nearest bound and flagged
    /// rather than rejected; ratings come from hand-filled spreadsheets.
    pub fn fuzzify(&self, x: f64) -> Result<FuzzifiedValue> {
        if !x.is_finite() {
            return Err(Error::NonFiniteInput { name: "crisp value", value: x });
        }
        let clamped = x < self.lo || x > self.hi;
        let x = self.clamp(x);
        let degrees = self
            .sets
            .iter()
            .map(|s| (s.label.clone(), s.mf.evaluate(x)))
            .collect();
        Ok(FuzzifiedValue { variable: self.name.clone(), degrees, clamped })
    }
}

/// The five standard linguistic labels in increasing-risk order.
pub const RISK_LABELS: [&str; 5] = ["VeryLow", "Low", "Moderate", "High", "VeryHigh"];

/// Rating universe shared by the three inputs.
pub const RATING_LO: f64 = 1.0;
pub const RATING_HI: f64 = 10.0;

/// Output universe of the fuzzy RPN.
pub const RPN_LO: f64 = 0.0;
pub const RPN_HI: f64 = 1000.0;

/// Centers of the five output sets, in increasing-risk order.
pub const RPN_CENTERS: [f64; 5] = [100.0, 300.0, 500.0, 700.0, 900.0];

/// Width of the output gaussians. Narrow enough that the truncation of a
/// corner set by the universe boundary moves its centroid by well under
/// half an output unit.
pub const RPN_SIGMA: f64 = 30.0;

fn partition_centers(lo: f64, hi: f64) -> [f64; 5] {
    let step = (hi - lo) / 4.0;
    [lo, lo + step, lo + 2.0 * step, lo + 3.0 * step, hi]
}

/// Five triangular sets peaked at evenly spaced centers, each foot on the
/// neighboring center, with shoulders at both ends. Degrees sum to 1
/// everywhere on the universe (a Ruspini partition).
pub fn triangular_partition(
    name: impl Into<String>,
    lo: f64,
    hi: f64,
    labels: [&str; 5],
) -> Result<LinguisticVariable> {
    let c = partition_centers(lo, hi);
    let sets = vec![
        FuzzySet::new(labels[0], MembershipFunction::triangular(c[0], c[0], c[1])?),
        FuzzySet::new(labels[1], MembershipFunction::triangular(c[0], c[1], c[2])?),
        FuzzySet::new(labels[2], MembershipFunction::triangular(c[1], c[2], c[3])?),
        FuzzySet::new(labels[3], MembershipFunction::triangular(c[2], c[3], c[4])?),
        FuzzySet::new(labels[4], MembershipFunction::triangular(c[3], c[4], c[4])?),
    ];
    LinguisticVariable::new(name, lo, hi, sets)
}

/// Default severity input: five triangular sets over [1, 10].
pub fn default_severity() -> LinguisticVariable {
    triangular_partition("S", RATING_LO, RATING_HI, RISK_LABELS).expect("static partition")
}

/// Default occurrence input: same shape as severity.
pub fn default_occurrence() -> LinguisticVariable {
    triangular_partition("O", RATING_LO, RATING_HI, RISK_LABELS).expect("static partition")
}

/// Default detection input. Numeric D follows the FMEA convention
/// (1 = certain detection, 10 = undetectable), so the linguistic labels
/// run VeryHigh..VeryLow over the same increasing-risk positions.
pub fn default_detection() -> LinguisticVariable {
    let reversed = ["VeryHigh", "High", "Moderate", "Low", "VeryLow"];
    triangular_partition("D", RATING_LO, RATING_HI, reversed).expect("static partition")
}

/// Default fuzzy-RPN output: five gaussians on [0, 1000].
pub fn default_rpn_output() -> LinguisticVariable {
    let labels = ["VeryLow", "Low", "Medium", "High", "VeryHigh"];
    let sets = RPN_CENTERS
        .iter()
        .zip(labels)
        .map(|(&center, label)| {
            FuzzySet::new(label, MembershipFunction::gaussian(center, RPN_SIGMA).expect("static sigma"))
        })
        .collect();
    LinguisticVariable::new("RPN", RPN_LO, RPN_HI, sets).expect("static universe")
}
