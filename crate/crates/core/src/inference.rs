//! Mamdani inference: min conjunction, min implication, max aggregation.

use crate::error::{Error, Result};
use crate::rules::{Rule, RuleBase};
use crate::variable::{FuzzifiedValue, LinguisticVariable};

/// An aggregated fuzzy set carried on a uniform sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFuzzySet {
    pub lo: f64,
    pub hi: f64,
    pub degrees: Vec<f64>,
}

impl SampledFuzzySet {
    pub fn new(lo: f64, hi: f64, degrees: Vec<f64>) -> Result<Self> {
        if degrees.len() < 2 {
            return Err(Error::InvalidSampleCount { n: degrees.len() });
        }
        Ok(SampledFuzzySet { lo, hi, degrees })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Abscissa of sample `i`: evenly spaced, endpoints exact.
    pub fn abscissa(&self, i: usize) -> f64 {
        sample_point(self.lo, self.hi, self.degrees.len(), i)
    }
}

pub(crate) fn sample_point(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (n - 1) as f64
}

#[inline]
fn activation(weight: f64, ds: f64, do_: f64, dd: f64) -> f64 {
    weight * ds.min(do_).min(dd)
}

/// Firing strength of one rule: weight times the min of the three
/// antecedent degrees.
pub fn fire_rule(
    rule: &Rule,
    fs: &FuzzifiedValue,
    fo: &FuzzifiedValue,
    fd: &FuzzifiedValue,
) -> Result<f64> {
    let lookup = |fv: &FuzzifiedValue, label: &str| {
        fv.degree(label).ok_or_else(|| Error::UnknownLabel {
            variable: fv.variable.clone(),
            label: label.to_string(),
        })
    };
    let ds = lookup(fs, &rule.s)?;
    let do_ = lookup(fo, &rule.o)?;
    let dd = lookup(fd, &rule.d)?;
    Ok(activation(rule.weight, ds, do_, dd))
}

/// A rule base compiled for repeated evaluation: labels resolved to set
/// indices and output-set memberships tabulated on the sample grid.
///
/// Evaluating through an engine and through [`infer`] gives bit-identical
/// results; `infer` simply builds a throwaway engine.
#[derive(Debug)]
pub struct Engine {
    severity: LinguisticVariable,
    occurrence: LinguisticVariable,
    detection: LinguisticVariable,
    out_lo: f64,
    out_hi: f64,
    samples: usize,
    /// (s index, o index, d index, output index, weight) per rule.
    resolved: Vec<(usize, usize, usize, usize, f64)>,
    /// Output-set membership at each sample point, one row per output set.
    consequent_tables: Vec<Vec<f64>>,
}

impl Engine {
    pub fn new(base: &RuleBase, samples: usize) -> Result<Self> {
        if samples < 2 {
            return Err(Error::InvalidSampleCount { n: samples });
        }
        let mut resolved = Vec::with_capacity(base.rules.len());
        for rule in &base.rules {
            let resolve = |var: &LinguisticVariable, label: &str| {
                var.label_index(label).ok_or_else(|| Error::UnknownLabel {
                    variable: var.name.clone(),
                    label: label.to_string(),
                })
            };
            resolved.push((
                resolve(&base.severity, &rule.s)?,
                resolve(&base.occurrence, &rule.o)?,
                resolve(&base.detection, &rule.d)?,
                resolve(&base.rpn, &rule.rpn)?,
                rule.weight,
            ));
        }
        let (out_lo, out_hi) = (base.rpn.lo, base.rpn.hi);
        let consequent_tables = base
            .rpn
            .sets
            .iter()
            .map(|set| {
                (0..samples)
                    .map(|i| set.mf.evaluate(sample_point(out_lo, out_hi, samples, i)))
                    .collect()
            })
            .collect();
        Ok(Engine {
            severity: base.severity.clone(),
            occurrence: base.occurrence.clone(),
            detection: base.detection.clone(),
            out_lo,
            out_hi,
            samples,
            resolved,
            consequent_tables,
        })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Max activation per output set for crisp inputs (clamped into the
    /// input universes). Returns one entry per output set; all zero means
    /// no rule fired.
    fn consequent_heights(&self, s: f64, o: f64, d: f64) -> Result<Vec<f64>> {
        let fs = self.severity.fuzzify(s)?;
        let fo = self.occurrence.fuzzify(o)?;
        let fd = self.detection.fuzzify(d)?;
        let ds: Vec<f64> = fs.degrees.iter().map(|&(_, d)| d).collect();
        let do_: Vec<f64> = fo.degrees.iter().map(|&(_, d)| d).collect();
        let dd: Vec<f64> = fd.degrees.iter().map(|&(_, d)| d).collect();

        let mut heights = vec![0.0f64; self.consequent_tables.len()];
        for &(si, oi, di, ri, weight) in &self.resolved {
            let act = activation(weight, ds[si], do_[oi], dd[di]);
            if act > heights[ri] {
                heights[ri] = act;
            }
        }
        Ok(heights)
    }

    /// Mamdani aggregate for crisp inputs: the pointwise max over rules of
    /// each rule's consequent set clipped at its activation.
    pub fn aggregate(&self, s: f64, o: f64, d: f64) -> Result<SampledFuzzySet> {
        let heights = self.consequent_heights(s, o, d)?;
        if heights.iter().all(|&h| h == 0.0) {
            return Err(Error::NoRuleFired { s, o, d });
        }
        let mut degrees = vec![0.0f64; self.samples];
        for (height, table) in heights.iter().zip(&self.consequent_tables) {
            let h = *height;
            if h == 0.0 {
                continue;
            }
            for (out, &membership) in degrees.iter_mut().zip(table) {
                let clipped = h.min(membership);
                if clipped > *out {
                    *out = clipped;
                }
            }
        }
        Ok(SampledFuzzySet { lo: self.out_lo, hi: self.out_hi, degrees })
    }
}

/// Run the full Mamdani aggregation for one input triple.
///
/// Fails with [`Error::NoRuleFired`] when the base leaves the inputs
/// uncovered (possible only for incomplete bases).
pub fn infer(base: &RuleBase, s: f64, o: f64, d: f64, samples: usize) -> Result<SampledFuzzySet> {
    Engine::new(base, samples)?.aggregate(s, o, d)
}
