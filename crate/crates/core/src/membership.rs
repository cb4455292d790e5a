//! Membership functions.
//!
//! Two shapes are supported: triangular (used for the rating inputs) and
//! gaussian (used for the fuzzy-RPN output). A triangular function with
//! `a == b` or `b == c` degenerates into a shoulder that holds degree 1
//! from the peak out to the corresponding side.

use crate::error::{Error, Result};

/// A membership function mapping a crisp value to a degree in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipFunction {
    /// Triangle with feet `a` and `c` and peak `b` (`a <= b <= c`).
    Triangular { a: f64, b: f64, c: f64 },
    /// Gaussian bump `exp(-0.5 ((x - center) / sigma)^2)`.
    Gaussian { center: f64, sigma: f64 },
}

impl MembershipFunction {
    /// Triangular membership; equality at either end forms a shoulder.
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) || a > b || b > c {
            return Err(Error::InvalidTriangle { a, b, c });
        }
        Ok(MembershipFunction::Triangular { a, b, c })
    }

    /// Gaussian membership with center `center` and width `sigma > 0`.
    pub fn gaussian(center: f64, sigma: f64) -> Result<Self> {
        if !center.is_finite() || !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidSigma { sigma });
        }
        Ok(MembershipFunction::Gaussian { center, sigma })
    }

    /// Degree of membership of `x`, always in [0, 1].
    pub fn evaluate(&self, x: f64) -> f64 {
        match *self {
            MembershipFunction::Triangular { a, b, c } => {
                if x == b {
                    1.0
                } else if x < b {
                    // Left side: shoulder when a == b, otherwise a ramp.
                    if a == b {
                        1.0
                    } else if x <= a {
                        0.0
                    } else {
                        (x - a) / (b - a)
                    }
                } else {
                    // Right side, mirrored.
                    if b == c {
                        1.0
                    } else if x >= c {
                        0.0
                    } else {
                        (c - x) / (c - b)
                    }
                }
            }
            MembershipFunction::Gaussian { center, sigma } => {
                let t = (x - center) / sigma;
                (-0.5 * t * t).exp()
            }
        }
    }
}

/// Triangular membership of `x` for corners `(a, b, c)`.
pub fn triangular_membership(x: f64, a: f64, b: f64, c: f64) -> Result<f64> {
    Ok(MembershipFunction::triangular(a, b, c)?.evaluate(x))
}

/// Gaussian membership of `x` for a bump centered at `center` with width `sigma`.
pub fn gaussian_membership(x: f64, center: f64, sigma: f64) -> Result<f64> {
    Ok(MembershipFunction::gaussian(center, sigma)?.evaluate(x))
}
