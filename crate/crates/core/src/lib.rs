//! Fuzzy FMEA toolkit.
//!
//! A Mamdani fuzzy inference engine (triangular rating inputs, gaussian
//! risk output, min/max operators, centroid defuzzification) together with
//! an FMEA layer that scores failure-mode registers under both the
//! traditional `S*O*D` risk priority number and the fuzzy RPN, ranks the
//! register under both schemes, and compares the rankings.
//!
//! The sibling `fuzzy-fmea-cli` crate exposes the same operations as a
//! command-line tool over the file formats implemented in [`io`].

pub mod defuzz;
pub mod error;
pub mod fmea;
pub mod inference;
pub mod io;
pub mod membership;
pub mod rules;
pub mod stats;
pub mod variable;

pub use defuzz::{centroid_defuzzify, CrispOutput, DefuzzConfig, DefuzzMethod, ZeroAreaPolicy};
pub use error::{Error, Result};
pub use fmea::{
    assess_register, build_default_fis, compare_rankings, fuzzy_rpn, traditional_rpn,
    Displacement, EqualTrpnGroup, FailureModeRecord, Fis, FisEngine, RankingComparison,
    RiskAssessment, DEFAULT_SAMPLES,
};
pub use inference::{fire_rule, infer, Engine, SampledFuzzySet};
pub use membership::{gaussian_membership, triangular_membership, MembershipFunction};
pub use rules::{
    generate_rules, FactorWeights, Rule, RuleBase, ValidationReport,
};
pub use variable::{FuzzifiedValue, FuzzySet, LinguisticVariable};
