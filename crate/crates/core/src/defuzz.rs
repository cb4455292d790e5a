//! Centroid defuzzification of sampled fuzzy sets.

use crate::error::{Error, Result};
use crate::inference::SampledFuzzySet;

/// What to do when the aggregated set has zero area. Possible only with
/// incomplete rule bases; the default turns it into a hard error so a
/// gap in the base cannot silently become a mid-scale risk value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ZeroAreaPolicy {
    #[default]
    Error,
    Midpoint,
}

/// Defuzzification method. Centroid is the only one supported.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum DefuzzMethod {
    #[default]
    Centroid,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DefuzzConfig {
    pub method: DefuzzMethod,
    pub zero_area: ZeroAreaPolicy,
}

/// Crisp value plus a flag set when the midpoint fallback was taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrispOutput {
    pub value: f64,
    pub degenerate: bool,
}

/// Centroid of a sampled fuzzy set via the trapezoidal rule:
/// `(sum of x * mu) / (sum of mu)` with half-weighted endpoints.
pub fn centroid_defuzzify(set: &SampledFuzzySet, cfg: &DefuzzConfig) -> Result<CrispOutput> {
    let DefuzzMethod::Centroid = cfg.method;
    let n = set.degrees.len();
    if n < 2 {
        return Err(Error::InvalidSampleCount { n });
    }
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for (i, &mu) in set.degrees.iter().enumerate() {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        num += w * set.abscissa(i) * mu;
        den += w * mu;
    }
    if den == 0.0 {
        return match cfg.zero_area {
            ZeroAreaPolicy::Error => Err(Error::DegenerateOutput { context: None }),
            ZeroAreaPolicy::Midpoint => {
                Ok(CrispOutput { value: (set.lo + set.hi) / 2.0, degenerate: true })
            }
        };
    }
    Ok(CrispOutput { value: num / den, degenerate: false })
}
