//! FIS configuration files.
//!
//! Line-oriented UTF-8 text; `#` starts a comment anywhere on a line.
//! A config declares any of the four variables (undeclared ones keep the
//! built-in defaults) and then either explicit rules or one generation
//! directive:
//!
//! ```text
//! VARIABLE S 1 10
//! SET VeryLow TRIANGULAR 1 1 3.25
//! SET Low     TRIANGULAR 1 3.25 5.5
//! ...
//! VARIABLE RPN 0 1000
//! SET VeryLow GAUSSIAN 100 30
//! ...
//! IF S=VeryLow AND O=Low AND D=Moderate THEN RPN=Low WEIGHT=0.9
//! GENERATE WEIGHTS 0.4 0.3 0.3
//! ALLOW INCOMPLETE
//! ```
//!
//! Variables must be named `S`, `O`, `D`, and `RPN`; sets are listed in
//! increasing-risk order, which is the order the generation directive
//! indexes. Exactly one of explicit `IF` rules or a `GENERATE` directive
//! must be present. Without `ALLOW INCOMPLETE`, a base that does not
//! cover every label combination is rejected.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::defuzz::DefuzzConfig;
use crate::error::{Error, Result};
use crate::fmea::Fis;
use crate::membership::MembershipFunction;
use crate::rules::{generate_rules, FactorWeights, Rule, RuleBase};
use crate::variable::{
    default_detection, default_occurrence, default_rpn_output, default_severity, FuzzySet,
    LinguisticVariable,
};

/// Parse-level metadata that is not part of the assembled FIS.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FisMeta {
    pub allow_incomplete: bool,
    pub generated: bool,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::FisParse { line, message: message.into() }
}

struct VariableDraft {
    line: usize,
    lo: f64,
    hi: f64,
    sets: Vec<FuzzySet>,
}

fn parse_f64(token: &str, line: usize, what: &str) -> Result<f64> {
    token.parse::<f64>().map_err(|_| err(line, format!("{what}: '{token}' is not a number")))
}

/// Split `S=VeryLow` style assignments after checking the variable name.
fn parse_assignment<'a>(token: &'a str, variable: &str, line: usize) -> Result<&'a str> {
    let (var, label) = token
        .split_once('=')
        .ok_or_else(|| err(line, format!("expected {variable}=<label>, found '{token}'")))?;
    if var != variable {
        return Err(err(line, format!("expected {variable}=<label>, found '{token}'")));
    }
    if label.is_empty() {
        return Err(err(line, format!("empty label in '{token}'")));
    }
    Ok(label)
}

/// Parse a config without validating the assembled rule base.
///
/// Syntax errors still fail; semantic problems (unknown labels, duplicate
/// antecedents, missing combinations) are left for [`RuleBase::validate`]
/// so that callers can report all of them at once.
pub fn parse_fis_unchecked(text: &str) -> Result<(Fis, FisMeta, Vec<usize>)> {
    let mut vars: [Option<VariableDraft>; 4] = [None, None, None, None];
    let var_slot = |name: &str| match name {
        "S" => Some(0),
        "O" => Some(1),
        "D" => Some(2),
        "RPN" => Some(3),
        _ => None,
    };
    let mut current: Option<usize> = None;
    let mut rules: Vec<Rule> = Vec::new();
    let mut rule_lines: Vec<usize> = Vec::new();
    let mut generate: Option<(usize, FactorWeights)> = None;
    let mut allow_incomplete = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "VARIABLE" => {
                if tokens.len() != 4 {
                    return Err(err(line, "expected: VARIABLE <name> <lo> <hi>"));
                }
                let slot = var_slot(tokens[1]).ok_or_else(|| {
                    err(line, format!("variable must be one of S, O, D, RPN; found '{}'", tokens[1]))
                })?;
                if vars[slot].is_some() {
                    return Err(err(line, format!("variable '{}' declared twice", tokens[1])));
                }
                let lo = parse_f64(tokens[2], line, "universe lower bound")?;
                let hi = parse_f64(tokens[3], line, "universe upper bound")?;
                if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
                    return Err(err(line, format!("universe must satisfy lo < hi, got [{lo}, {hi}]")));
                }
                vars[slot] = Some(VariableDraft { line, lo, hi, sets: Vec::new() });
                current = Some(slot);
            }
            "SET" => {
                let slot = current.ok_or_else(|| err(line, "SET before any VARIABLE"))?;
                let draft = vars[slot].as_mut().expect("current points at a declared variable");
                if tokens.len() < 3 {
                    return Err(err(line, "expected: SET <label> <SHAPE> <params...>"));
                }
                let label = tokens[1];
                if draft.sets.iter().any(|s| s.label == label) {
                    return Err(err(line, format!("duplicate label '{label}'")));
                }
                let mf = match tokens[2] {
                    "TRIANGULAR" => {
                        if tokens.len() != 6 {
                            return Err(err(line, "expected: SET <label> TRIANGULAR <a> <b> <c>"));
                        }
                        let a = parse_f64(tokens[3], line, "triangular a")?;
                        let b = parse_f64(tokens[4], line, "triangular b")?;
                        let c = parse_f64(tokens[5], line, "triangular c")?;
                        MembershipFunction::triangular(a, b, c)
                            .map_err(|e| err(line, e.to_string()))?
                    }
                    "GAUSSIAN" => {
                        if tokens.len() != 5 {
                            return Err(err(line, "expected: SET <label> GAUSSIAN <center> <sigma>"));
                        }
                        let center = parse_f64(tokens[3], line, "gaussian center")?;
                        let sigma = parse_f64(tokens[4], line, "gaussian sigma")?;
                        MembershipFunction::gaussian(center, sigma)
                            .map_err(|e| err(line, e.to_string()))?
                    }
                    other => {
                        return Err(err(line, format!("unknown shape '{other}' (TRIANGULAR or GAUSSIAN)")))
                    }
                };
                draft.sets.push(FuzzySet::new(label, mf));
            }
            "IF" => {
                // IF S=<l> AND O=<l> AND D=<l> THEN RPN=<l> [WEIGHT=<w>]
                if tokens.len() != 8 && tokens.len() != 9 {
                    return Err(err(
                        line,
                        "expected: IF S=<label> AND O=<label> AND D=<label> THEN RPN=<label> [WEIGHT=<w>]",
                    ));
                }
                if tokens[2] != "AND" || tokens[4] != "AND" || tokens[6] != "THEN" {
                    return Err(err(line, "rule keywords must read IF .. AND .. AND .. THEN .."));
                }
                let s = parse_assignment(tokens[1], "S", line)?;
                let o = parse_assignment(tokens[3], "O", line)?;
                let d = parse_assignment(tokens[5], "D", line)?;
                let rpn = parse_assignment(tokens[7], "RPN", line)?;
                let weight = if tokens.len() == 9 {
                    let raw = tokens[8].strip_prefix("WEIGHT=").ok_or_else(|| {
                        err(line, format!("expected WEIGHT=<w>, found '{}'", tokens[8]))
                    })?;
                    parse_f64(raw, line, "rule weight")?
                } else {
                    1.0
                };
                rules.push(Rule::weighted(s, o, d, rpn, weight).map_err(|e| err(line, e.to_string()))?);
                rule_lines.push(line);
            }
            "GENERATE" => {
                if tokens.len() != 5 || tokens[1] != "WEIGHTS" {
                    return Err(err(line, "expected: GENERATE WEIGHTS <wS> <wO> <wD>"));
                }
                if generate.is_some() {
                    return Err(err(line, "GENERATE given twice"));
                }
                let ws = parse_f64(tokens[2], line, "severity weight")?;
                let wo = parse_f64(tokens[3], line, "occurrence weight")?;
                let wd = parse_f64(tokens[4], line, "detection weight")?;
                let weights =
                    FactorWeights::new(ws, wo, wd).map_err(|e| err(line, e.to_string()))?;
                generate = Some((line, weights));
            }
            "ALLOW" => {
                if tokens.len() != 2 || tokens[1] != "INCOMPLETE" {
                    return Err(err(line, "expected: ALLOW INCOMPLETE"));
                }
                allow_incomplete = true;
            }
            other => return Err(err(line, format!("unrecognized directive '{other}'"))),
        }
    }

    for (slot, name) in [(0usize, "S"), (1, "O"), (2, "D"), (3, "RPN")] {
        if let Some(draft) = &vars[slot] {
            if draft.sets.is_empty() {
                return Err(err(draft.line, format!("variable '{name}' declares no sets")));
            }
        }
    }

    fn build(
        draft: Option<VariableDraft>,
        name: &str,
        default: LinguisticVariable,
    ) -> Result<LinguisticVariable> {
        match draft {
            Some(d) => LinguisticVariable::new(name, d.lo, d.hi, d.sets),
            None => Ok(default),
        }
    }
    let [s_draft, o_draft, d_draft, rpn_draft] = vars;
    let severity = build(s_draft, "S", default_severity())?;
    let occurrence = build(o_draft, "O", default_occurrence())?;
    let detection = build(d_draft, "D", default_detection())?;
    let rpn = build(rpn_draft, "RPN", default_rpn_output())?;

    let meta = FisMeta { allow_incomplete, generated: generate.is_some() };
    let rules = match (generate, rules.is_empty()) {
        (Some((gline, _)), false) => {
            return Err(err(gline, "config has both explicit rules and a GENERATE directive"));
        }
        (Some((_, weights)), true) => {
            rule_lines.clear();
            generate_rules(weights, &severity, &occurrence, &detection, &rpn)
        }
        (None, false) => rules,
        (None, true) => {
            return Err(Error::FisInvalid {
                message: "config declares no rules and no GENERATE directive".into(),
            })
        }
    };

    let base = RuleBase::new(severity, occurrence, detection, rpn, rules);
    Ok((Fis::new(base, DefuzzConfig::default()), meta, rule_lines))
}

/// Parse and fully validate a config. Unknown labels and duplicate
/// antecedents are rejected with the offending line; missing combinations
/// are rejected unless `ALLOW INCOMPLETE` is present.
pub fn parse_fis(text: &str) -> Result<Fis> {
    let (fis, meta, rule_lines) = parse_fis_unchecked(text)?;
    let report = fis.base.validate();

    if let Some(unknown) = report.unknown_labels.first() {
        let line = rule_lines.get(unknown.rule_index).copied().unwrap_or(0);
        return Err(err(
            line,
            format!("unknown label '{}' for variable {}", unknown.label, unknown.variable),
        ));
    }
    if let Some(dup) = report.duplicates.first() {
        // Point at the second rule with the shared antecedent.
        let mut seen = None;
        for (i, rule) in fis.base.rules.iter().enumerate() {
            if rule.s == dup.s && rule.o == dup.o && rule.d == dup.d {
                if seen.is_some() {
                    seen = Some(i);
                    break;
                }
                seen = Some(i);
            }
        }
        let line = seen.and_then(|i| rule_lines.get(i).copied()).unwrap_or(0);
        return Err(err(
            line,
            format!("duplicate antecedent S={} O={} D={}", dup.s, dup.o, dup.d),
        ));
    }
    if !meta.allow_incomplete && !report.missing.is_empty() {
        let (s, o, d) = &report.missing[0];
        return Err(Error::FisInvalid {
            message: format!(
                "rule base covers {} of {} combinations; first missing: S={s} O={o} D={d} \
                 (add ALLOW INCOMPLETE to accept)",
                report.rule_count, report.expected_rule_count
            ),
        });
    }
    Ok(fis)
}

/// Load and validate a config file.
pub fn load_fis(path: impl AsRef<Path>) -> Result<Fis> {
    parse_fis(&fs::read_to_string(path)?)
}

/// Serialize a FIS to the config format. Generated bases are written as
/// explicit rules; numbers keep full round-trip precision.
pub fn write_fis(fis: &Fis) -> String {
    let mut out = String::new();
    let var = |out: &mut String, v: &LinguisticVariable| {
        writeln!(out, "VARIABLE {} {} {}", v.name, v.lo, v.hi).unwrap();
        for set in &v.sets {
            match set.mf {
                MembershipFunction::Triangular { a, b, c } => {
                    writeln!(out, "SET {} TRIANGULAR {} {} {}", set.label, a, b, c).unwrap()
                }
                MembershipFunction::Gaussian { center, sigma } => {
                    writeln!(out, "SET {} GAUSSIAN {} {}", set.label, center, sigma).unwrap()
                }
            }
        }
    };
    var(&mut out, &fis.base.severity);
    var(&mut out, &fis.base.occurrence);
    var(&mut out, &fis.base.detection);
    var(&mut out, &fis.base.rpn);
    if !fis.base.validate().is_complete() {
        out.push_str("ALLOW INCOMPLETE\n");
    }
    for rule in &fis.base.rules {
        writeln!(out, "{rule}").unwrap();
    }
    out
}

/// Write a FIS config file.
pub fn save_fis(fis: &Fis, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_fis(fis))?;
    Ok(())
}
