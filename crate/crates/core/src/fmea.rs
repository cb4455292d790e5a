//! FMEA domain layer: traditional and fuzzy risk priority numbers, dual
//! ranking of failure-mode registers, and ranking comparison.

use crate::defuzz::{centroid_defuzzify, DefuzzConfig};
use crate::error::{Error, Result};
use crate::inference::Engine;
use crate::rules::{generate_rules, FactorWeights, RuleBase};
use crate::stats::spearman;
use crate::variable::{
    default_detection, default_occurrence, default_rpn_output, default_severity,
};

/// One failure mode of one component with its 1-10 ratings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureModeRecord {
    pub component: String,
    pub failure_mode: String,
    pub severity: u8,
    pub occurrence: u8,
    pub detection: u8,
}

fn check_rating(field: &'static str, value: i64, row: Option<usize>) -> Result<u8> {
    if (1..=10).contains(&value) {
        Ok(value as u8)
    } else {
        Err(Error::InvalidRating { field, value, row })
    }
}

impl FailureModeRecord {
    pub fn new(
        component: impl Into<String>,
        failure_mode: impl Into<String>,
        severity: i64,
        occurrence: i64,
        detection: i64,
    ) -> Result<Self> {
        Ok(FailureModeRecord {
            component: component.into(),
            failure_mode: failure_mode.into(),
            severity: check_rating("severity", severity, None)?,
            occurrence: check_rating("occurrence", occurrence, None)?,
            detection: check_rating("detection", detection, None)?,
        })
    }

    fn validate(&self, row: usize) -> Result<()> {
        check_rating("severity", self.severity as i64, Some(row))?;
        check_rating("occurrence", self.occurrence as i64, Some(row))?;
        check_rating("detection", self.detection as i64, Some(row))?;
        Ok(())
    }
}

/// Traditional risk priority number: the plain product of the ratings.
pub fn traditional_rpn(severity: i64, occurrence: i64, detection: i64) -> Result<u32> {
    let s = check_rating("severity", severity, None)? as u32;
    let o = check_rating("occurrence", occurrence, None)? as u32;
    let d = check_rating("detection", detection, None)? as u32;
    Ok(s * o * d)
}

/// A complete fuzzy inference system: rule base plus defuzzifier settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Fis {
    pub base: RuleBase,
    pub defuzz: DefuzzConfig,
}

/// Default number of output samples used by the CLI and the reports.
pub const DEFAULT_SAMPLES: usize = 1001;

impl Fis {
    pub fn new(base: RuleBase, defuzz: DefuzzConfig) -> Self {
        Fis { base, defuzz }
    }

    /// Compile an evaluation engine with `samples` output samples.
    pub fn engine(&self, samples: usize) -> Result<FisEngine> {
        Ok(FisEngine { inner: Engine::new(&self.base, samples)?, defuzz: self.defuzz })
    }
}

/// A compiled FIS ready for repeated fuzzify -> infer -> defuzzify runs.
#[derive(Debug)]
pub struct FisEngine {
    inner: Engine,
    defuzz: DefuzzConfig,
}

impl FisEngine {
    /// Crisp fuzzy RPN for (possibly real-valued) ratings. Inputs outside
    /// the rating universe are clamped.
    pub fn fuzzy_rpn(&self, s: f64, o: f64, d: f64) -> Result<f64> {
        let aggregate = self.inner.aggregate(s, o, d)?;
        let out = centroid_defuzzify(&aggregate, &self.defuzz).map_err(|e| match e {
            Error::DegenerateOutput { .. } => Error::DegenerateOutput {
                context: Some(format!("inputs S={s}, O={o}, D={d}")),
            },
            other => other,
        })?;
        Ok(out.value)
    }

    pub fn samples(&self) -> usize {
        self.inner.samples()
    }
}

/// Build the default FIS: standard variables, generated rule base, default
/// defuzzifier. `validate` reports it complete and clean.
pub fn build_default_fis(weights: FactorWeights) -> Fis {
    let severity = default_severity();
    let occurrence = default_occurrence();
    let detection = default_detection();
    let rpn = default_rpn_output();
    let rules = generate_rules(weights, &severity, &occurrence, &detection, &rpn);
    Fis::new(
        RuleBase::new(severity, occurrence, detection, rpn, rules),
        DefuzzConfig::default(),
    )
}

/// One fuzzify -> infer -> defuzzify pipeline run.
pub fn fuzzy_rpn(fis: &Fis, s: f64, o: f64, d: f64, samples: usize) -> Result<f64> {
    fis.engine(samples)?.fuzzy_rpn(s, o, d)
}

/// Per-record assessment under both schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskAssessment {
    pub record: FailureModeRecord,
    pub t_rpn: u32,
    pub f_rpn: f64,
    pub t_rank: usize,
    pub f_rank: usize,
}

/// Ranks 1..=N by descending `primary`, with deterministic tie-breaking:
/// the other scheme's value first, then higher S, O, D, then input order.
fn assign_ranks(
    primary: &[f64],
    secondary: &[f64],
    records: &[FailureModeRecord],
) -> Vec<usize> {
    let mut order: Vec<usize> = (0..primary.len()).collect();
    order.sort_by(|&a, &b| {
        primary[b]
            .partial_cmp(&primary[a])
            .unwrap()
            .then(secondary[b].partial_cmp(&secondary[a]).unwrap())
            .then(records[b].severity.cmp(&records[a].severity))
            .then(records[b].occurrence.cmp(&records[a].occurrence))
            .then(records[b].detection.cmp(&records[a].detection))
        // sort_by is stable: full ties stay in input order.
    });
    let mut ranks = vec![0usize; primary.len()];
    for (rank0, &idx) in order.iter().enumerate() {
        ranks[idx] = rank0 + 1;
    }
    ranks
}

/// Assess a register: traditional and fuzzy RPN per record, then ranks
/// under both schemes. Output order matches input order.
pub fn assess_register(
    records: &[FailureModeRecord],
    fis: &Fis,
    samples: usize,
) -> Result<Vec<RiskAssessment>> {
    if records.is_empty() {
        return Err(Error::EmptyRegister);
    }
    let engine = fis.engine(samples)?;
    let mut t_rpns = Vec::with_capacity(records.len());
    let mut f_rpns = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate() {
        record.validate(i + 1)?;
        t_rpns.push(traditional_rpn(
            record.severity as i64,
            record.occurrence as i64,
            record.detection as i64,
        )?);
        f_rpns.push(engine.fuzzy_rpn(
            record.severity as f64,
            record.occurrence as f64,
            record.detection as f64,
        )?);
    }
    let t_as_f64: Vec<f64> = t_rpns.iter().map(|&t| t as f64).collect();
    let t_ranks = assign_ranks(&t_as_f64, &f_rpns, records);
    let f_ranks = assign_ranks(&f_rpns, &t_as_f64, records);
    Ok(records
        .iter()
        .enumerate()
        .map(|(i, record)| RiskAssessment {
            record: record.clone(),
            t_rpn: t_rpns[i],
            f_rpn: f_rpns[i],
            t_rank: t_ranks[i],
            f_rank: f_ranks[i],
        })
        .collect())
}

/// How far one record moved between the two rankings.
#[derive(Debug, Clone, PartialEq)]
pub struct Displacement {
    pub record: FailureModeRecord,
    pub t_rank: usize,
    pub f_rank: usize,
    /// `t_rank - f_rank`: positive when the fuzzy scheme considers the
    /// record more critical than the traditional one.
    pub delta: i64,
}

/// Records sharing one traditional RPN, with the fuzzy values that
/// disambiguate them.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualTrpnGroup {
    pub t_rpn: u32,
    /// (record, f_rpn) ordered by fuzzy rank.
    pub members: Vec<(FailureModeRecord, f64)>,
}

/// Comparison of the two ranking schemes over one register.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingComparison {
    /// Tie-adjusted Spearman correlation of the raw T-RPN and F-RPN values.
    pub spearman: f64,
    pub displaced: Vec<Displacement>,
    pub equal_trpn_groups: Vec<EqualTrpnGroup>,
}

/// Quantify how the fuzzy ranking rearranged the traditional one.
///
/// Spearman is computed on the raw RPN values (average ranks), not on the
/// tie-broken presentation ranks, so the tie-break policy cannot inflate
/// the correlation.
pub fn compare_rankings(assessments: &[RiskAssessment]) -> Result<RankingComparison> {
    if assessments.len() < 2 {
        return Err(Error::TooFewRecords { count: assessments.len() });
    }
    let t: Vec<f64> = assessments.iter().map(|a| a.t_rpn as f64).collect();
    let f: Vec<f64> = assessments.iter().map(|a| a.f_rpn).collect();
    let rho = spearman(&t, &f);

    let displaced = assessments
        .iter()
        .map(|a| Displacement {
            record: a.record.clone(),
            t_rank: a.t_rank,
            f_rank: a.f_rank,
            delta: a.t_rank as i64 - a.f_rank as i64,
        })
        .collect();

    // Group records sharing a T-RPN; only groups of two or more matter.
    let mut by_trpn: Vec<(u32, Vec<usize>)> = Vec::new();
    for (i, a) in assessments.iter().enumerate() {
        match by_trpn.iter_mut().find(|(t, _)| *t == a.t_rpn) {
            Some((_, v)) => v.push(i),
            None => by_trpn.push((a.t_rpn, vec![i])),
        }
    }
    by_trpn.sort_by(|a, b| b.0.cmp(&a.0));
    let equal_trpn_groups = by_trpn
        .into_iter()
        .filter(|(_, members)| members.len() > 1)
        .map(|(t_rpn, mut members)| {
            members.sort_by_key(|&i| assessments[i].f_rank);
            EqualTrpnGroup {
                t_rpn,
                members: members
                    .into_iter()
                    .map(|i| (assessments[i].record.clone(), assessments[i].f_rpn))
                    .collect(),
            }
        })
        .collect();

    Ok(RankingComparison { spearman: rho, displaced, equal_trpn_groups })
}
