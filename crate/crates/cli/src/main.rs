//! Command-line driver: analyze registers, validate FIS configs, export
//! response surfaces, and diff reports.
//!
//! Exit codes: 0 success, 1 validation or parse error, 2 inference error
//! (no rule fired / degenerate output).

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fuzzy_fmea::io::{
    export_surface, load_fis, load_register, parse_csv_report, render_report, Axis, ReportFormat,
};
use fuzzy_fmea::io::fis_text::parse_fis_unchecked;
use fuzzy_fmea::stats::spearman;
use fuzzy_fmea::{
    assess_register, build_default_fis, compare_rankings, Error, FactorWeights, Fis,
    DEFAULT_SAMPLES,
};

#[derive(Parser)]
#[command(
    name = "fuzzy-fmea",
    version,
    about = "Fuzzy FMEA toolkit: traditional and fuzzy risk priority rankings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assess a failure-mode register under both RPN schemes
    Analyze(AnalyzeArgs),
    /// Check a FIS configuration file and print a validation report
    Validate(ValidateArgs),
    /// Export a fuzzy-RPN response surface over two rating axes
    Surface(SurfaceArgs),
    /// Diff the fuzzy rankings of two CSV reports
    Compare(CompareArgs),
}

#[derive(Args)]
struct FisSelection {
    /// FIS configuration file (defaults to the built-in FIS)
    #[arg(long)]
    fis: Option<PathBuf>,
    /// Generate the default rule base with these weights, e.g. 0.4,0.3,0.3
    #[arg(long, value_name = "wS,wO,wD", conflicts_with = "fis")]
    weights: Option<String>,
}

impl FisSelection {
    fn build(&self) -> Result<Fis, Error> {
        if let Some(path) = &self.fis {
            return load_fis(path);
        }
        let weights = match &self.weights {
            Some(raw) => parse_weights(raw)?,
            None => FactorWeights::default(),
        };
        Ok(build_default_fis(weights))
    }
}

fn parse_weights(raw: &str) -> Result<FactorWeights, Error> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::FisInvalid {
            message: format!("--weights expects three comma-separated numbers, got '{raw}'"),
        });
    }
    let mut values = [0.0f64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part.parse::<f64>().map_err(|_| Error::FisInvalid {
            message: format!("--weights: '{part}' is not a number"),
        })?;
    }
    FactorWeights::new(values[0], values[1], values[2])
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Register CSV (component, failure_mode, severity, occurrence, detection)
    register: PathBuf,
    #[command(flatten)]
    fis: FisSelection,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format: text or csv
    #[arg(long, default_value = "text")]
    format: String,
    /// Defuzzification sample count
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Args)]
struct ValidateArgs {
    /// FIS configuration file
    config: PathBuf,
}

#[derive(Args)]
struct SurfaceArgs {
    #[command(flatten)]
    fis: FisSelection,
    /// Axis pair, e.g. SxO, S,D or od
    #[arg(long, default_value = "SxO")]
    axes: String,
    /// Value held fixed on the remaining axis
    #[arg(long)]
    fixed: f64,
    /// Grid points per axis
    #[arg(long, default_value_t = 25)]
    resolution: usize,
    /// Defuzzification sample count
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Write the grid here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Baseline CSV report
    report_a: PathBuf,
    /// Comparison CSV report
    report_b: PathBuf,
    /// Output format: text or csv
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the diff here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn run_analyze(args: &AnalyzeArgs) -> Result<(), Error> {
    let format: ReportFormat = args.format.parse()?;
    let fis = args.fis.build()?;
    let records = load_register(&args.register)?;
    let assessments = assess_register(&records, &fis, args.samples)?;
    let comparison = compare_rankings(&assessments)?;
    let report = render_report(&assessments, &comparison, format)?;
    emit(&args.output, &report)
}

fn run_validate(args: &ValidateArgs) -> Result<(), Error> {
    let text = fs::read_to_string(&args.config)?;
    let (fis, meta, _) = parse_fis_unchecked(&text)?;
    let report = fis.base.validate();
    print!("{report}");
    let loadable = report.duplicates.is_empty()
        && report.unknown_labels.is_empty()
        && (meta.allow_incomplete || report.missing.is_empty());
    if loadable {
        if report.is_complete() {
            println!("result: OK (complete base)");
        } else {
            println!("result: OK (incomplete base, ALLOW INCOMPLETE set)");
        }
        Ok(())
    } else {
        Err(Error::FisInvalid {
            message: format!("{} blocking finding(s); see report above", report.finding_count()),
        })
    }
}

fn parse_axes(raw: &str) -> Result<(Axis, Axis), Error> {
    let cleaned = raw.replace(['x', 'X', ',', '*'], " ");
    let parts: Vec<&str> = cleaned.split_whitespace().collect();
    let (a, b) = match parts.as_slice() {
        [pair] if pair.len() == 2 => (pair[..1].parse()?, pair[1..].parse()?),
        [a, b] => (a.parse()?, b.parse()?),
        _ => {
            return Err(Error::Surface {
                message: format!("cannot read axis pair from '{raw}' (try SxO)"),
            })
        }
    };
    Ok((a, b))
}

fn run_surface(args: &SurfaceArgs) -> Result<(), Error> {
    let fis = args.fis.build()?;
    let (x_axis, y_axis) = parse_axes(&args.axes)?;
    let grid = export_surface(&fis, x_axis, y_axis, args.fixed, args.resolution, args.samples)?;
    emit(&args.output, &grid.to_csv())
}

fn run_compare(args: &CompareArgs) -> Result<(), Error> {
    let format: ReportFormat = args.format.parse()?;
    let a = parse_csv_report(&fs::read_to_string(&args.report_a)?)?;
    let b = parse_csv_report(&fs::read_to_string(&args.report_b)?)?;

    let key = |r: &fuzzy_fmea::io::ReportRow| (r.component.clone(), r.failure_mode.clone());
    let mut joined = Vec::new();
    for row_a in &a.rows {
        let Some(row_b) = b.rows.iter().find(|r| key(r) == key(row_a)) else {
            return Err(Error::ReportParse {
                line: 0,
                message: format!(
                    "record '{}/{}' missing from {}",
                    row_a.component,
                    row_a.failure_mode,
                    args.report_b.display()
                ),
            });
        };
        joined.push((row_a.clone(), row_b.clone()));
    }
    if let Some(extra) = b.rows.iter().find(|r| !a.rows.iter().any(|x| key(x) == key(r))) {
        return Err(Error::ReportParse {
            line: 0,
            message: format!(
                "record '{}/{}' missing from {}",
                extra.component,
                extra.failure_mode,
                args.report_a.display()
            ),
        });
    }

    // Largest rank movements first.
    joined.sort_by(|(xa, xb), (ya, yb)| {
        let dx = (xa.f_rank as i64 - xb.f_rank as i64).abs();
        let dy = (ya.f_rank as i64 - yb.f_rank as i64).abs();
        dy.cmp(&dx)
            .then(xa.f_rank.cmp(&ya.f_rank))
            .then(xa.component.cmp(&ya.component))
            .then(xa.failure_mode.cmp(&ya.failure_mode))
    });
    let fa: Vec<f64> = joined.iter().map(|(x, _)| x.f_rpn).collect();
    let fb: Vec<f64> = joined.iter().map(|(_, y)| y.f_rpn).collect();
    let rho = spearman(&fa, &fb);
    let moved = joined.iter().filter(|(x, y)| x.f_rank != y.f_rank).count();

    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("component,failure_mode,f_rank_a,f_rank_b,delta,f_rpn_a,f_rpn_b\n");
            for (x, y) in &joined {
                let needs_quotes = |s: &str| s.contains(',') || s.contains('"');
                let quote = |s: &str| {
                    if needs_quotes(s) {
                        format!("\"{}\"", s.replace('"', "\"\""))
                    } else {
                        s.to_string()
                    }
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{:.1},{:.1}\n",
                    quote(&x.component),
                    quote(&x.failure_mode),
                    x.f_rank,
                    y.f_rank,
                    x.f_rank as i64 - y.f_rank as i64,
                    x.f_rpn,
                    y.f_rpn
                ));
            }
            out.push_str(&format!("# spearman {rho:.4}\n# moved {moved}\n"));
        }
        ReportFormat::Text => {
            for (x, y) in &joined {
                out.push_str(&format!(
                    "{}/{}: f_rank {} -> {} (delta {:+}), f_rpn {:.1} -> {:.1}\n",
                    x.component,
                    x.failure_mode,
                    x.f_rank,
                    y.f_rank,
                    x.f_rank as i64 - y.f_rank as i64,
                    x.f_rpn,
                    y.f_rpn
                ));
            }
            out.push_str(&format!(
                "\n{} of {} records moved; Spearman between fuzzy rankings: {:.4}\n",
                moved,
                joined.len(),
                rho
            ));
        }
    }
    emit(&args.output, &out)
}

fn run(cli: Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Validate(args) => run_validate(args),
        Command::Surface(args) => run_surface(args),
        Command::Compare(args) => run_compare(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_inference() { 2 } else { 1 })
        }
    }
}
