//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the fuzzy engine, the FMEA layer, and the file formats.
#[derive(Debug, Error)]
pub enum Error {
    /// Triangular membership parameters out of order.
    #[error("invalid triangular parameters: require a <= b <= c, got a={a}, b={b}, c={c}")]
    InvalidTriangle { a: f64, b: f64, c: f64 },

    /// Gaussian membership width must be positive.
    #[error("invalid gaussian width: sigma must be > 0, got {sigma}")]
    InvalidSigma { sigma: f64 },

    /// Universe bounds must satisfy lo < hi.
    #[error("invalid universe for '{variable}': require lo < hi, got [{lo}, {hi}]")]
    InvalidUniverse { variable: String, lo: f64, hi: f64 },

    /// Duplicate fuzzy-set label within one linguistic variable.
    #[error("duplicate label '{label}' in variable '{variable}'")]
    DuplicateLabel { variable: String, label: String },

    /// A rule references a label the variable does not declare.
    #[error("unknown label '{label}' for variable '{variable}'")]
    UnknownLabel { variable: String, label: String },

    /// Rule weight outside (0, 1].
    #[error("rule weight must be in (0, 1], got {weight}")]
    InvalidWeight { weight: f64 },

    /// Rule-generation weights must be positive and sum to 1.
    #[error("invalid factor weights ({s}, {o}, {d}): {reason}")]
    InvalidFactorWeights { s: f64, o: f64, d: f64, reason: String },

    /// Sampled sets need at least two samples.
    #[error("sample count must be >= 2, got {n}")]
    InvalidSampleCount { n: usize },

    /// No rule produced a nonzero activation for the given inputs.
    #[error("no rule fired for inputs (S={s}, O={o}, D={d}); rule base is incomplete")]
    NoRuleFired { s: f64, o: f64, d: f64 },

    /// Aggregated output had zero area and the policy forbids a fallback.
    #[error("degenerate output: aggregated fuzzy set has zero area{}", context.as_ref().map(|c| format!(" ({c})")).unwrap_or_default())]
    DegenerateOutput { context: Option<String> },

    /// A rating outside the 1..=10 scale.
    #[error("{field} rating must be an integer in 1..=10, got {value}{}", row.map(|r| format!(" (row {r})")).unwrap_or_default())]
    InvalidRating { field: &'static str, value: i64, row: Option<usize> },

    /// Non-finite crisp input.
    #[error("input {name} must be finite, got {value}")]
    NonFiniteInput { name: &'static str, value: f64 },

    /// An operation that needs records received none.
    #[error("empty register: no failure-mode records")]
    EmptyRegister,

    /// An operation that needs at least two records received fewer.
    #[error("need at least 2 records, got {count}")]
    TooFewRecords { count: usize },

    /// Register file problem tied to a specific row.
    #[error("register row {row}, column {column}: {message}")]
    RegisterRow { row: u64, column: String, message: String },

    /// Register file problem not tied to a row.
    #[error("register file: {message}")]
    RegisterFormat { message: String },

    /// FIS config file problem tied to a line.
    #[error("fis config line {line}: {message}")]
    FisParse { line: usize, message: String },

    /// FIS config rejected by validation.
    #[error("fis config: {message}")]
    FisInvalid { message: String },

    /// Report file problem tied to a line.
    #[error("report line {line}: {message}")]
    ReportParse { line: usize, message: String },

    /// Bad surface-export request.
    #[error("surface export: {message}")]
    Surface { message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors raised by the inference/defuzzification stage itself
    /// (as opposed to input validation or parsing).
    pub fn is_inference(&self) -> bool {
        matches!(self, Error::NoRuleFired { .. } | Error::DegenerateOutput { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
