//! Rule base for the three-input Mamdani system.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::variable::LinguisticVariable;

/// An AND-conjunctive if-then rule over the S, O, D inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub s: String,
    pub o: String,
    pub d: String,
    pub rpn: String,
    pub weight: f64,
}

impl Rule {
    /// Rule with explicit weight in (0, 1].
    pub fn weighted(
        s: impl Into<String>,
        o: impl Into<String>,
        d: impl Into<String>,
        rpn: impl Into<String>,
        weight: f64,
    ) -> Result<Self> {
        if !weight.is_finite() || weight <= 0.0 || weight > 1.0 {
            return Err(Error::InvalidWeight { weight });
        }
        Ok(Rule { s: s.into(), o: o.into(), d: d.into(), rpn: rpn.into(), weight })
    }

    /// Rule with the default weight of 1.
    pub fn new(
        s: impl Into<String>,
        o: impl Into<String>,
        d: impl Into<String>,
        rpn: impl Into<String>,
    ) -> Self {
        Rule { s: s.into(), o: o.into(), d: d.into(), rpn: rpn.into(), weight: 1.0 }
    }

    pub fn antecedent(&self) -> (&str, &str, &str) {
        (&self.s, &self.o, &self.d)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IF S={} AND O={} AND D={} THEN RPN={}", self.s, self.o, self.d, self.rpn)?;
        if self.weight != 1.0 {
            write!(f, " WEIGHT={}", self.weight)?;
        }
        Ok(())
    }
}

/// The three input variables, the output variable, and the rule list.
///
/// Construction does not validate the rules; run [`RuleBase::validate`]
/// to get a report, or load through the config-file reader which rejects
/// broken bases outright.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    pub severity: LinguisticVariable,
    pub occurrence: LinguisticVariable,
    pub detection: LinguisticVariable,
    pub rpn: LinguisticVariable,
    pub rules: Vec<Rule>,
}

/// Two rules that share an antecedent triple.
#[derive(Debug, Clone, PartialEq)]
pub struct DuplicateAntecedent {
    pub s: String,
    pub o: String,
    pub d: String,
    /// Consequent labels of every rule with this antecedent, in rule order.
    pub consequents: Vec<String>,
}

/// A rule label that its variable does not declare.
#[derive(Debug, Clone, PartialEq)]
pub struct UnknownRuleLabel {
    pub rule_index: usize,
    pub variable: String,
    pub label: String,
}

/// A pair of comparable antecedents whose consequents are out of order.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityViolation {
    pub lower: (String, String, String),
    pub higher: (String, String, String),
    pub lower_consequent: String,
    pub higher_consequent: String,
}

/// Outcome of [`RuleBase::validate`]; report-only, never fails.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub rule_count: usize,
    pub expected_rule_count: usize,
    pub duplicates: Vec<DuplicateAntecedent>,
    pub unknown_labels: Vec<UnknownRuleLabel>,
    pub missing: Vec<(String, String, String)>,
    pub monotonicity_violations: Vec<MonotonicityViolation>,
}

impl ValidationReport {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }

    /// True when the base is usable: labels resolve, no duplicate
    /// antecedents, every combination covered.
    pub fn is_clean(&self) -> bool {
        self.duplicates.is_empty() && self.unknown_labels.is_empty() && self.missing.is_empty()
    }

    pub fn finding_count(&self) -> usize {
        self.duplicates.len()
            + self.unknown_labels.len()
            + self.missing.len()
            + self.monotonicity_violations.len()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rules: {} (expected {})", self.rule_count, self.expected_rule_count)?;
        writeln!(f, "missing combinations: {}", self.missing.len())?;
        for (s, o, d) in &self.missing {
            writeln!(f, "  missing: S={s} O={o} D={d}")?;
        }
        writeln!(f, "duplicate antecedents: {}", self.duplicates.len())?;
        for dup in &self.duplicates {
            writeln!(
                f,
                "  duplicate: S={} O={} D={} -> [{}]",
                dup.s,
                dup.o,
                dup.d,
                dup.consequents.join(", ")
            )?;
        }
        writeln!(f, "unknown labels: {}", self.unknown_labels.len())?;
        for u in &self.unknown_labels {
            writeln!(f, "  rule {}: '{}' not in variable {}", u.rule_index + 1, u.label, u.variable)?;
        }
        writeln!(f, "monotonicity violations: {}", self.monotonicity_violations.len())?;
        for v in &self.monotonicity_violations {
            writeln!(
                f,
                "  ({},{},{}) -> {} but ({},{},{}) -> {}",
                v.lower.0,
                v.lower.1,
                v.lower.2,
                v.lower_consequent,
                v.higher.0,
                v.higher.1,
                v.higher.2,
                v.higher_consequent
            )?;
        }
        Ok(())
    }
}

impl RuleBase {
    pub fn new(
        severity: LinguisticVariable,
        occurrence: LinguisticVariable,
        detection: LinguisticVariable,
        rpn: LinguisticVariable,
        rules: Vec<Rule>,
    ) -> Self {
        RuleBase { severity, occurrence, detection, rpn, rules }
    }

    /// Number of antecedent combinations a complete base must cover.
    pub fn expected_rule_count(&self) -> usize {
        self.severity.sets.len() * self.occurrence.sets.len() * self.detection.sets.len()
    }

    /// Check for duplicate antecedents, unknown labels, missing
    /// combinations, and consequent-ordering violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            rule_count: self.rules.len(),
            expected_rule_count: self.expected_rule_count(),
            ..ValidationReport::default()
        };

        // Resolve labels to set indices; collect the unresolvable ones.
        let mut resolved: Vec<Option<([usize; 3], usize)>> = Vec::with_capacity(self.rules.len());
        for (i, rule) in self.rules.iter().enumerate() {
            let mut ok = true;
            let mut check = |var: &LinguisticVariable, label: &str| -> usize {
                match var.label_index(label) {
                    Some(idx) => idx,
                    None => {
                        report.unknown_labels.push(UnknownRuleLabel {
                            rule_index: i,
                            variable: var.name.clone(),
                            label: label.to_string(),
                        });
                        ok = false;
                        0
                    }
                }
            };
            let si = check(&self.severity, &rule.s);
            let oi = check(&self.occurrence, &rule.o);
            let di = check(&self.detection, &rule.d);
            let ri = check(&self.rpn, &rule.rpn);
            resolved.push(if ok { Some(([si, oi, di], ri)) } else { None });
        }

        // Duplicates: group resolvable rules by antecedent triple.
        let mut by_antecedent: HashMap<[usize; 3], Vec<usize>> = HashMap::new();
        for (i, r) in resolved.iter().enumerate() {
            if let Some((key, _)) = r {
                by_antecedent.entry(*key).or_default().push(i);
            }
        }
        let mut dup_keys: Vec<[usize; 3]> =
            by_antecedent.iter().filter(|(_, v)| v.len() > 1).map(|(k, _)| *k).collect();
        dup_keys.sort_unstable();
        for key in dup_keys {
            let indices = &by_antecedent[&key];
            let first = &self.rules[indices[0]];
            report.duplicates.push(DuplicateAntecedent {
                s: first.s.clone(),
                o: first.o.clone(),
                d: first.d.clone(),
                consequents: indices.iter().map(|&i| self.rules[i].rpn.clone()).collect(),
            });
        }

        // Missing combinations, in label order.
        for si in 0..self.severity.sets.len() {
            for oi in 0..self.occurrence.sets.len() {
                for di in 0..self.detection.sets.len() {
                    if !by_antecedent.contains_key(&[si, oi, di]) {
                        report.missing.push((
                            self.severity.sets[si].label.clone(),
                            self.occurrence.sets[oi].label.clone(),
                            self.detection.sets[di].label.clone(),
                        ));
                    }
                }
            }
        }

        // Monotonicity of the consequent mapping: componentwise-comparable
        // antecedents must have ordered consequents. Quadratic in the rule
        // count, which is tiny.
        let usable: Vec<([usize; 3], usize, usize)> = resolved
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.map(|(k, c)| (k, c, i)))
            .collect();
        for (i, &(ka, ca, _ia)) in usable.iter().enumerate() {
            for &(kb, cb, _ib) in &usable[i + 1..] {
                let (le, ge) = (
                    ka.iter().zip(&kb).all(|(a, b)| a <= b),
                    ka.iter().zip(&kb).all(|(a, b)| a >= b),
                );
                let ((klo, clo), (khi, chi)) = if le && !ge {
                    ((ka, ca), (kb, cb))
                } else if ge && !le {
                    ((kb, cb), (ka, ca))
                } else {
                    continue;
                };
                if clo > chi {
                    let label = |k: [usize; 3]| {
                        (
                            self.severity.sets[k[0]].label.clone(),
                            self.occurrence.sets[k[1]].label.clone(),
                            self.detection.sets[k[2]].label.clone(),
                        )
                    };
                    report.monotonicity_violations.push(MonotonicityViolation {
                        lower: label(klo),
                        higher: label(khi),
                        lower_consequent: self.rpn.sets[clo].label.clone(),
                        higher_consequent: self.rpn.sets[chi].label.clone(),
                    });
                }
            }
        }

        report
    }
}

/// Relative importance of the three risk factors in the generated base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorWeights {
    pub s: f64,
    pub o: f64,
    pub d: f64,
}

impl FactorWeights {
    pub const TOLERANCE: f64 = 1e-9;

    /// Weights must be positive and sum to 1 within 1e-9.
    pub fn new(s: f64, o: f64, d: f64) -> Result<Self> {
        let reason = if !(s.is_finite() && o.is_finite() && d.is_finite()) {
            Some("weights must be finite")
        } else if s <= 0.0 || o <= 0.0 || d <= 0.0 {
            Some("weights must be positive")
        } else if (s + o + d - 1.0).abs() > Self::TOLERANCE {
            Some("weights must sum to 1")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidFactorWeights { s, o, d, reason: reason.into() }),
            None => Ok(FactorWeights { s, o, d }),
        }
    }
}

impl Default for FactorWeights {
    /// Severity weighted highest, the common FMEA convention.
    fn default() -> Self {
        FactorWeights { s: 0.4, o: 0.3, d: 0.3 }
    }
}

/// Consequent set index (0-based) for 0-based antecedent indices.
///
/// The weighted 1-based index is snapped to a 1e-9 grid before rounding so
/// that weights given as short decimals produce exact half-integer ties,
/// which round up (toward higher risk).
pub fn consequent_index(weights: FactorWeights, si: usize, oi: usize, di: usize, n_out: usize) -> usize {
    let raw = weights.s * (si + 1) as f64 + weights.o * (oi + 1) as f64 + weights.d * (di + 1) as f64;
    let snapped = (raw * 1e9).round() / 1e9;
    let idx = snapped.round() as i64;
    (idx.clamp(1, n_out as i64) - 1) as usize
}

/// Generate one rule per antecedent combination, all with weight 1, the
/// consequent picked by the rounded weighted mean of the risk indices.
pub fn generate_rules(
    weights: FactorWeights,
    severity: &LinguisticVariable,
    occurrence: &LinguisticVariable,
    detection: &LinguisticVariable,
    rpn: &LinguisticVariable,
) -> Vec<Rule> {
    let n_out = rpn.sets.len();
    let mut rules = Vec::with_capacity(severity.sets.len() * occurrence.sets.len() * detection.sets.len());
    for (si, s) in severity.sets.iter().enumerate() {
        for (oi, o) in occurrence.sets.iter().enumerate() {
            for (di, d) in detection.sets.iter().enumerate() {
                let ri = consequent_index(weights, si, oi, di, n_out);
                rules.push(Rule::new(&s.label, &o.label, &d.label, &rpn.sets[ri].label));
            }
        }
    }
    rules
}
