//! Response-surface grid export: fuzzy RPN over two rating axes with the
//! third held fixed, as plot-ready CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fmea::Fis;

/// One of the three rating inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Severity,
    Occurrence,
    Detection,
}

impl Axis {
    pub fn short(self) -> &'static str {
        match self {
            Axis::Severity => "S",
            Axis::Occurrence => "O",
            Axis::Detection => "D",
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S" | "SEVERITY" => Ok(Axis::Severity),
            "O" | "OCCURRENCE" => Ok(Axis::Occurrence),
            "D" | "DETECTION" => Ok(Axis::Detection),
            other => Err(Error::Surface { message: format!("unknown axis '{other}'") }),
        }
    }
}

/// Fuzzy-RPN values over a rectangular grid of two rating axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceGrid {
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub fixed_axis: Axis,
    pub fixed_value: f64,
    pub resolution: usize,
    pub samples: usize,
    /// Row-major over y (outer) then x (inner): (x, y, f_rpn).
    pub points: Vec<(f64, f64, f64)>,
}

fn remaining_axis(a: Axis, b: Axis) -> Result<Axis> {
    use Axis::*;
    match (a, b) {
        (Severity, Occurrence) | (Occurrence, Severity) => Ok(Detection),
        (Severity, Detection) | (Detection, Severity) => Ok(Occurrence),
        (Occurrence, Detection) | (Detection, Occurrence) => Ok(Severity),
        _ => Err(Error::Surface {
            message: format!("axes must differ, got {} and {}", a.short(), b.short()),
        }),
    }
}

/// Evaluate the fuzzy RPN over `resolution`x`resolution` points spanning
/// the two axes' universes, the third input fixed.
pub fn export_surface(
    fis: &Fis,
    x_axis: Axis,
    y_axis: Axis,
    fixed_value: f64,
    resolution: usize,
    samples: usize,
) -> Result<SurfaceGrid> {
    let fixed_axis = remaining_axis(x_axis, y_axis)?;
    if resolution < 2 {
        return Err(Error::Surface {
            message: format!("resolution must be >= 2, got {resolution}"),
        });
    }
    let var_for = |axis: Axis| match axis {
        Axis::Severity => &fis.base.severity,
        Axis::Occurrence => &fis.base.occurrence,
        Axis::Detection => &fis.base.detection,
    };
    let fixed_var = var_for(fixed_axis);
    if !fixed_value.is_finite() || fixed_value < fixed_var.lo || fixed_value > fixed_var.hi {
        return Err(Error::Surface {
            message: format!(
                "fixed {} value {} outside universe [{}, {}]",
                fixed_axis.short(),
                fixed_value,
                fixed_var.lo,
                fixed_var.hi
            ),
        });
    }

    let engine = fis.engine(samples)?;
    let (x_var, y_var) = (var_for(x_axis), var_for(y_axis));
    let grid = |var: &crate::variable::LinguisticVariable, i: usize| {
        var.lo + (var.hi - var.lo) * i as f64 / (resolution - 1) as f64
    };
    let mut points = Vec::with_capacity(resolution * resolution);
    for yi in 0..resolution {
        let y = grid(y_var, yi);
        for xi in 0..resolution {
            let x = grid(x_var, xi);
            let mut input = [0.0f64; 3];
            let slot = |axis: Axis| match axis {
                Axis::Severity => 0,
                Axis::Occurrence => 1,
                Axis::Detection => 2,
            };
            input[slot(x_axis)] = x;
            input[slot(y_axis)] = y;
            input[slot(fixed_axis)] = fixed_value;
            let f = engine.fuzzy_rpn(input[0], input[1], input[2])?;
            points.push((x, y, f));
        }
    }
    Ok(SurfaceGrid {
        x_axis,
        y_axis,
        fixed_axis,
        fixed_value,
        resolution,
        samples,
        points,
    })
}

impl SurfaceGrid {
    /// CSV with a header comment recording the fixed input; full f64
    /// precision so re-parsed values compare exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# surface {}x{}, {} fixed at {}, resolution {}, samples {}",
            self.x_axis.short(),
            self.y_axis.short(),
            self.fixed_axis.short(),
            self.fixed_value,
            self.resolution,
            self.samples
        )
        .unwrap();
        writeln!(out, "{},{},f_rpn", self.x_axis.short().to_lowercase(), self.y_axis.short().to_lowercase()).unwrap();
        for &(x, y, f) in &self.points {
            writeln!(out, "{x},{y},{f}").unwrap();
        }
        out
    }

    /// f_rpn at grid position (xi, yi).
    pub fn value_at(&self, xi: usize, yi: usize) -> f64 {
        self.points[yi * self.resolution + xi].2
    }
}
