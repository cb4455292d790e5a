//! Acceptance suite. One test per criterion; each prints a single
//! `acceptance criterion N: PASS|FAIL` line (visible with `--nocapture`)
//! and fails loudly with the collected evidence otherwise.
//!
//! Run with:
//!   cargo test -p fuzzy-fmea-cli --test acceptance -- --nocapture

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use fuzzy_fmea::fmea::{
    assess_register, build_default_fis, compare_rankings, traditional_rpn, FailureModeRecord,
};
use fuzzy_fmea::inference::infer;
use fuzzy_fmea::io::{parse_csv_report, parse_fis, render_report, write_fis, ReportFormat};
use fuzzy_fmea::rules::{FactorWeights, Rule, RuleBase};
use fuzzy_fmea::{centroid_defuzzify, DefuzzConfig, MembershipFunction, SampledFuzzySet};

/// Brute-force reimplementation of the default pipeline, kept independent
/// of the library internals. Used as the numeric oracle.
mod oracle {
    pub const IN_CENTERS: [f64; 5] = [1.0, 3.25, 5.5, 7.75, 10.0];
    pub const OUT_CENTERS: [f64; 5] = [100.0, 300.0, 500.0, 700.0, 900.0];
    pub const OUT_SIGMA: f64 = 30.0;
    pub const OUT_LO: f64 = 0.0;
    pub const OUT_HI: f64 = 1000.0;

    /// Degrees of the five shouldered triangles at `x`.
    pub fn input_degrees(x: f64) -> [f64; 5] {
        let x = x.clamp(1.0, 10.0);
        let mut out = [0.0f64; 5];
        for i in 0..5 {
            let c = IN_CENTERS[i];
            out[i] = if x == c {
                1.0
            } else if x < c {
                if i == 0 {
                    1.0
                } else {
                    let a = IN_CENTERS[i - 1];
                    if x <= a {
                        0.0
                    } else {
                        (x - a) / (c - a)
                    }
                }
            } else if i == 4 {
                1.0
            } else {
                let b = IN_CENTERS[i + 1];
                if x >= b {
                    0.0
                } else {
                    (b - x) / (b - c)
                }
            };
        }
        out
    }

    /// 0-based consequent index: rounded weighted mean of 1-based risk
    /// indices, decimal-snapped, half-up.
    pub fn consequent(si: usize, oi: usize, di: usize) -> usize {
        let raw = 0.4 * (si + 1) as f64 + 0.3 * (oi + 1) as f64 + 0.3 * (di + 1) as f64;
        let snapped = (raw * 1e9).round() / 1e9;
        (snapped.round() as i64).clamp(1, 5) as usize - 1
    }

    /// Max activation per output set over the full generated base.
    pub fn heights(s: f64, o: f64, d: f64) -> [f64; 5] {
        let (ds, do_, dd) = (input_degrees(s), input_degrees(o), input_degrees(d));
        let mut h = [0.0f64; 5];
        for si in 0..5 {
            for oi in 0..5 {
                for di in 0..5 {
                    let act = ds[si].min(do_[oi]).min(dd[di]);
                    let c = consequent(si, oi, di);
                    if act > h[c] {
                        h[c] = act;
                    }
                }
            }
        }
        h
    }

    pub fn gauss(x: f64, center: f64) -> f64 {
        let t = (x - center) / OUT_SIGMA;
        (-0.5 * t * t).exp()
    }

    /// One row per output set: membership at each of `n` sample points.
    pub fn gauss_tables(n: usize) -> Vec<Vec<f64>> {
        OUT_CENTERS
            .iter()
            .map(|&c| {
                (0..n)
                    .map(|i| gauss(OUT_LO + (OUT_HI - OUT_LO) * i as f64 / (n - 1) as f64, c))
                    .collect()
            })
            .collect()
    }

    /// Trapezoidal centroid of the aggregate at `n` samples, streaming
    /// against precomputed membership tables.
    pub fn centroid_from_tables(h: &[f64; 5], tables: &[Vec<f64>], n: usize) -> f64 {
        let active: Vec<usize> = (0..5).filter(|&c| h[c] > 0.0).collect();
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for i in 0..n {
            let x = OUT_LO + (OUT_HI - OUT_LO) * i as f64 / (n - 1) as f64;
            let mut mu = 0.0f64;
            for &c in &active {
                let clipped = h[c].min(tables[c][i]);
                if clipped > mu {
                    mu = clipped;
                }
            }
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            num += w * x * mu;
            den += w * mu;
        }
        num / den
    }

    /// Full pipeline at `n` samples without tables (slow path).
    pub fn fuzzy_rpn(s: f64, o: f64, d: f64, n: usize) -> f64 {
        let h = heights(s, o, d);
        let tables = gauss_tables(n);
        centroid_from_tables(&h, &tables, n)
    }

    /// Independent descending average ranks: 1 + #greater + #equal/2.
    pub fn ranks(values: &[f64]) -> Vec<f64> {
        values
            .iter()
            .map(|&v| {
                let greater = values.iter().filter(|&&w| w > v).count() as f64;
                let equal_others = values.iter().filter(|&&w| w == v).count() as f64 - 1.0;
                1.0 + greater + equal_others / 2.0
            })
            .collect()
    }

    pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let (mut cov, mut vx, mut vy) = (0.0, 0.0, 0.0);
        for (a, b) in x.iter().zip(y) {
            cov += (a - mx) * (b - my);
            vx += (a - mx) * (a - mx);
            vy += (b - my) * (b - my);
        }
        cov / (vx * vy).sqrt()
    }
}

fn finish(id: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("acceptance {id}: PASS");
    } else {
        println!("acceptance {id}: FAIL");
        for f in &failures {
            println!("  - {f}");
        }
        panic!("acceptance {id} failed:\n{}", failures.join("\n"));
    }
}

fn data_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

/// Real-valued 25-point grid over the rating universe.
fn rating_grid() -> Vec<f64> {
    (0..25).map(|i| 1.0 + 9.0 * i as f64 / 24.0).collect()
}

#[test]
fn criterion_1_traditional_rpn_fixtures() {
    let mut failures = Vec::new();
    let fixtures: [(i64, i64, i64, u32); 6] = [
        (8, 6, 10, 480),
        (9, 5, 10, 450),
        (6, 5, 8, 240),
        (6, 4, 10, 240),
        (7, 3, 10, 210),
        (6, 5, 7, 210),
    ];
    let start = Instant::now();
    for &(s, o, d, expected) in &fixtures {
        match traditional_rpn(s, o, d) {
            Ok(got) if got == expected => {}
            Ok(got) => failures.push(format!("({s},{o},{d}) gave {got}, expected {expected}")),
            Err(e) => failures.push(format!("({s},{o},{d}) errored: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_micros() >= 1000 {
        failures.push(format!("runtime {elapsed:?} exceeds 1 ms"));
    }
    finish("criterion 1 (traditional RPN fixtures)", failures);
}

#[test]
fn criterion_2_fuzzy_rpn_substitute_properties() {
    let mut failures = Vec::new();
    let fis = build_default_fis(FactorWeights::default());
    let engine = fis.engine(fuzzy_fmea::DEFAULT_SAMPLES).unwrap();

    // (a) range over every integer triple.
    for s in 1..=10 {
        for o in 1..=10 {
            for d in 1..=10 {
                let f = engine.fuzzy_rpn(s as f64, o as f64, d as f64).unwrap();
                if !(0.0..=1000.0).contains(&f) {
                    failures.push(format!("fuzzy_rpn({s},{o},{d}) = {f} outside [0, 1000]"));
                }
            }
        }
    }

    // (b) the two T-RPN = 210 triples are distinct; direction frozen from
    // the pre-build brute-force run: (7,3,10) ranks above (6,5,7).
    let server = engine.fuzzy_rpn(7.0, 3.0, 10.0).unwrap();
    let breaker = engine.fuzzy_rpn(6.0, 5.0, 7.0).unwrap();
    if (server - breaker).abs() < 1.0 {
        failures.push(format!("210-pair not distinct: {server} vs {breaker}"));
    }
    if server <= breaker {
        failures.push(format!(
            "direction fixture violated: f(7,3,10)={server} should exceed f(6,5,7)={breaker}"
        ));
    }
    let oracle_direction = oracle::fuzzy_rpn(7.0, 3.0, 10.0, 100_001)
        > oracle::fuzzy_rpn(6.0, 5.0, 7.0, 100_001);
    if !oracle_direction {
        failures.push("independent oracle disagrees with the frozen direction".into());
    }

    // (c) corners sit on the extreme output-set centroids.
    let top = engine.fuzzy_rpn(10.0, 10.0, 10.0).unwrap();
    let bottom = engine.fuzzy_rpn(1.0, 1.0, 1.0).unwrap();
    if (top - 900.0).abs() >= 0.5 {
        failures.push(format!("fuzzy_rpn(10,10,10) = {top}, expected 900 +- 0.5"));
    }
    if (bottom - 100.0).abs() >= 0.5 {
        failures.push(format!("fuzzy_rpn(1,1,1) = {bottom}, expected 100 +- 0.5"));
    }
    finish("criterion 2 (fuzzy RPN substitute properties)", failures);
}

#[test]
fn criterion_3_monotonicity_suite() {
    let mut failures = Vec::new();
    let fis = build_default_fis(FactorWeights::default());
    let start = Instant::now();
    let engine = fis.engine(1001).unwrap();

    // Integer grid.
    let mut int_grid = vec![0.0f64; 1000];
    for s in 0..10usize {
        for o in 0..10usize {
            for d in 0..10usize {
                int_grid[s * 100 + o * 10 + d] = engine
                    .fuzzy_rpn((s + 1) as f64, (o + 1) as f64, (d + 1) as f64)
                    .unwrap();
            }
        }
    }
    let mut int_violations = 0usize;
    let mut int_worst: Option<(f64, String)> = None;
    let note = |drop: f64, label: String, count: &mut usize, worst: &mut Option<(f64, String)>| {
        *count += 1;
        if worst.as_ref().map_or(true, |(w, _)| drop > *w) {
            *worst = Some((drop, label));
        }
    };
    for s in 0..10usize {
        for o in 0..10usize {
            for d in 0..10usize {
                let v = int_grid[s * 100 + o * 10 + d];
                if s < 9 && int_grid[(s + 1) * 100 + o * 10 + d] < v {
                    let next = int_grid[(s + 1) * 100 + o * 10 + d];
                    note(v - next, format!("S {}->{} at (O={},D={}): {v:.3} -> {next:.3}", s + 1, s + 2, o + 1, d + 1), &mut int_violations, &mut int_worst);
                }
                if o < 9 && int_grid[s * 100 + (o + 1) * 10 + d] < v {
                    let next = int_grid[s * 100 + (o + 1) * 10 + d];
                    note(v - next, format!("O {}->{} at (S={},D={}): {v:.3} -> {next:.3}", o + 1, o + 2, s + 1, d + 1), &mut int_violations, &mut int_worst);
                }
                if d < 9 && int_grid[s * 100 + o * 10 + d + 1] < v {
                    let next = int_grid[s * 100 + o * 10 + d + 1];
                    note(v - next, format!("D {}->{} at (S={},O={}): {v:.3} -> {next:.3}", d + 1, d + 2, s + 1, o + 1), &mut int_violations, &mut int_worst);
                }
            }
        }
    }

    // 25^3 real grid.
    let grid = rating_grid();
    let n = grid.len();
    let mut real_grid = vec![0.0f64; n * n * n];
    for (si, &s) in grid.iter().enumerate() {
        for (oi, &o) in grid.iter().enumerate() {
            for (di, &d) in grid.iter().enumerate() {
                real_grid[si * n * n + oi * n + di] = engine.fuzzy_rpn(s, o, d).unwrap();
            }
        }
    }
    let mut real_violations = 0usize;
    let mut real_worst: Option<(f64, String)> = None;
    for a in 0..n {
        for b in 0..n {
            for i in 0..n - 1 {
                let checks = [
                    (i * n * n + a * n + b, (i + 1) * n * n + a * n + b, "S"),
                    (a * n * n + i * n + b, a * n * n + (i + 1) * n + b, "O"),
                    (a * n * n + b * n + i, a * n * n + b * n + i + 1, "D"),
                ];
                for (from, to, axis) in checks {
                    let (v, w) = (real_grid[from], real_grid[to]);
                    if w < v {
                        note(
                            v - w,
                            format!("{axis} {:.3}->{:.3}: {v:.3} -> {w:.3}", grid[i], grid[i + 1]),
                            &mut real_violations,
                            &mut real_worst,
                        );
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();

    if elapsed.as_secs_f64() >= 10.0 {
        failures.push(format!("runtime {elapsed:?} exceeds 10 s"));
    }
    if int_violations > 0 {
        let (drop, witness) = int_worst.unwrap();
        failures.push(format!(
            "{int_violations} violations over the 10^3 integer grid; worst drop {drop:.3} at {witness}"
        ));
    }
    if real_violations > 0 {
        let (drop, witness) = real_worst.unwrap();
        failures.push(format!(
            "{real_violations} violations over the 25^3 real grid; worst drop {drop:.3} at {witness}"
        ));
    }
    finish("criterion 3 (monotonicity suite)", failures);
}

#[test]
fn criterion_4_partition_of_unity() {
    let mut failures = Vec::new();
    let fis = build_default_fis(FactorWeights::default());
    for var in [&fis.base.severity, &fis.base.occurrence, &fis.base.detection] {
        let mut worst = 0.0f64;
        for k in 0..1000 {
            let x = 1.0 + 9.0 * k as f64 / 999.0;
            let total: f64 = var.fuzzify(x).unwrap().degrees.iter().map(|(_, d)| d).sum();
            worst = worst.max((total - 1.0).abs());
        }
        if worst > 1e-9 {
            failures.push(format!("variable {}: degree sum off by {worst:e}", var.name));
        }
    }
    finish("criterion 4 (partition of unity)", failures);
}

#[test]
fn criterion_5_centroid_oracle_and_convergence() {
    let mut failures = Vec::new();

    // Analytic triangle: centroid of (200, 300, 600) is the vertex mean.
    let tri = MembershipFunction::triangular(200.0, 300.0, 600.0).unwrap();
    let degrees: Vec<f64> = (0..1001).map(|i| tri.evaluate(i as f64)).collect();
    let set = SampledFuzzySet::new(0.0, 1000.0, degrees).unwrap();
    let got = centroid_defuzzify(&set, &DefuzzConfig::default()).unwrap().value;
    let analytic = (200.0 + 300.0 + 600.0) / 3.0;
    if (got - analytic).abs() >= 0.5 {
        failures.push(format!("triangle centroid {got} vs analytic {analytic}"));
    }
    // Cross-check against fine brute-force integration at n = 10^6.
    let fine_tables = {
        let n = 1_000_000usize;
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for i in 0..n {
            let x = 1000.0 * i as f64 / (n - 1) as f64;
            let mu = tri.evaluate(x);
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            num += w * x * mu;
            den += w * mu;
        }
        num / den
    };
    if (got - fine_tables).abs() >= 0.5 {
        failures.push(format!("triangle centroid {got} vs n=10^6 value {fine_tables}"));
    }

    // Convergence of the full pipeline: the library value at the default
    // n = 1001 must sit within 0.5 units of the independent n = 10^6
    // brute force, across the whole 25^3 input grid.
    let fis = build_default_fis(FactorWeights::default());
    let engine = fis.engine(1001).unwrap();
    let grid = rating_grid();
    let mut triples = Vec::with_capacity(grid.len().pow(3));
    for &s in &grid {
        for &o in &grid {
            for &d in &grid {
                triples.push((s, o, d));
            }
        }
    }
    let coarse: Vec<f64> = triples
        .iter()
        .map(|&(s, o, d)| engine.fuzzy_rpn(s, o, d).unwrap())
        .collect();

    const FINE_N: usize = 1_000_000;
    let tables = oracle::gauss_tables(FINE_N);
    let worst = triples
        .par_iter()
        .zip(&coarse)
        .map(|(&(s, o, d), &lib_value)| {
            let h = oracle::heights(s, o, d);
            let fine = oracle::centroid_from_tables(&h, &tables, FINE_N);
            ((lib_value - fine).abs(), (s, o, d, lib_value, fine))
        })
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .unwrap();
    if worst.0 >= 0.5 {
        let (s, o, d, lib_value, fine) = worst.1;
        failures.push(format!(
            "divergence {:.4} at ({s},{o},{d}): n=1001 gives {lib_value:.4}, n=10^6 oracle gives {fine:.4}",
            worst.0
        ));
    }
    finish("criterion 5 (centroid oracle and convergence)", failures);
}

#[test]
fn criterion_6_inference_algebra() {
    let mut failures = Vec::new();
    let fis = build_default_fis(FactorWeights::default());
    let labels = |var: &fuzzy_fmea::LinguisticVariable| {
        var.sets.iter().map(|s| s.label.clone()).collect::<Vec<_>>()
    };
    let (ls, lo, ld, lr) = (
        labels(&fis.base.severity),
        labels(&fis.base.occurrence),
        labels(&fis.base.detection),
        labels(&fis.base.rpn),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_CAFE);
    for case in 0..100 {
        // A random complete base with random weights.
        let mut rules = Vec::with_capacity(125);
        for s in &ls {
            for o in &lo {
                for d in &ld {
                    let rpn = &lr[rng.gen_range(0..lr.len())];
                    let weight = rng.gen_range(0.01..=1.0f64);
                    rules.push(Rule::weighted(s, o, d, rpn, weight).unwrap());
                }
            }
        }
        let base = RuleBase::new(
            fis.base.severity.clone(),
            fis.base.occurrence.clone(),
            fis.base.detection.clone(),
            fis.base.rpn.clone(),
            rules,
        );
        let (s, o, d) = (
            rng.gen_range(1.0..=10.0f64),
            rng.gen_range(1.0..=10.0f64),
            rng.gen_range(1.0..=10.0f64),
        );
        let samples = 257;
        let reference = infer(&base, s, o, d, samples).unwrap();

        let mut dup = base.clone();
        let copy = dup.rules[rng.gen_range(0..dup.rules.len())].clone();
        dup.rules.push(copy);
        let duplicated = infer(&dup, s, o, d, samples).unwrap();
        if duplicated.degrees != reference.degrees {
            failures.push(format!("case {case}: rule duplication changed the aggregate"));
        }

        let mut shuffled = base.clone();
        for i in (1..shuffled.rules.len()).rev() {
            shuffled.rules.swap(i, rng.gen_range(0..=i));
        }
        let permuted = infer(&shuffled, s, o, d, samples).unwrap();
        if permuted.degrees != reference.degrees {
            failures.push(format!("case {case}: rule order changed the aggregate"));
        }
    }
    finish("criterion 6 (inference algebra, 100 randomized bases)", failures);
}

#[test]
fn criterion_7_spearman_oracle() {
    let mut failures = Vec::new();
    let fis = build_default_fis(FactorWeights::default());
    let mut rng = ChaCha8Rng::seed_from_u64(0xFACE_FEED);
    let mut produced = 0usize;
    while produced < 50 {
        let size = rng.gen_range(2..=25usize);
        let records: Vec<FailureModeRecord> = (0..size)
            .map(|i| {
                FailureModeRecord::new(
                    format!("component-{i}"),
                    format!("mode-{i}"),
                    rng.gen_range(1..=10i64),
                    rng.gen_range(1..=10i64),
                    rng.gen_range(1..=10i64),
                )
                .unwrap()
            })
            .collect();
        let assessments = assess_register(&records, &fis, 1001).unwrap();
        let t: Vec<f64> = assessments.iter().map(|a| a.t_rpn as f64).collect();
        let f: Vec<f64> = assessments.iter().map(|a| a.f_rpn).collect();
        // Fully tied registers have no defined correlation; draw again.
        if t.iter().all(|&v| v == t[0]) || f.iter().all(|&v| v == f[0]) {
            continue;
        }
        produced += 1;
        let expected = oracle::pearson(&oracle::ranks(&t), &oracle::ranks(&f));
        let got = compare_rankings(&assessments).unwrap().spearman;
        if (got - expected).abs() > 1e-9 {
            failures.push(format!(
                "register #{produced} (n={size}): spearman {got:.12} vs oracle {expected:.12}"
            ));
        }
    }
    finish("criterion 7 (Spearman vs rank-vector Pearson oracle)", failures);
}

#[test]
fn criterion_8_round_trips() {
    let mut failures = Vec::new();

    // FIS config write -> load preserves fuzzy_rpn on the 10^3 grid.
    for weights in [FactorWeights::default(), FactorWeights::new(0.5, 0.2, 0.3).unwrap()] {
        let fis = build_default_fis(weights);
        let reloaded = match parse_fis(&write_fis(&fis)) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("write/load failed: {e}"));
                continue;
            }
        };
        let a = fis.engine(1001).unwrap();
        let b = reloaded.engine(1001).unwrap();
        let mut worst = 0.0f64;
        for s in 1..=10 {
            for o in 1..=10 {
                for d in 1..=10 {
                    let (s, o, d) = (s as f64, o as f64, d as f64);
                    worst = worst.max((a.fuzzy_rpn(s, o, d).unwrap() - b.fuzzy_rpn(s, o, d).unwrap()).abs());
                }
            }
        }
        if worst > 1e-9 {
            failures.push(format!("fuzzy_rpn drifted {worst:e} across write/load"));
        }
    }

    // Report CSV re-parses losslessly (numeric fields as printed).
    let fis = build_default_fis(FactorWeights::default());
    let register: Vec<FailureModeRecord> = [
        ("Server", "Hardware crash", 8, 6, 10),
        ("Transformer", "Explosion", 9, 5, 10),
        ("Intelligent electronic device", "Communication failure", 6, 5, 8),
        ("Transformer", "Winding degradation", 6, 4, 10),
        ("Server", "Power outage", 7, 3, 10),
        ("Circuit breaker", "Failure in insulation", 6, 5, 7),
    ]
    .iter()
    .map(|&(c, m, s, o, d)| FailureModeRecord::new(c, m, s, o, d).unwrap())
    .collect();
    let assessments = assess_register(&register, &fis, 1001).unwrap();
    let comparison = compare_rankings(&assessments).unwrap();
    let rendered = render_report(&assessments, &comparison, ReportFormat::Csv).unwrap();
    match parse_csv_report(&rendered) {
        Err(e) => failures.push(format!("re-parse failed: {e}")),
        Ok(parsed) => {
            let mut sorted = assessments.clone();
            sorted.sort_by_key(|a| a.t_rank);
            for (row, a) in parsed.rows.iter().zip(&sorted) {
                let printed_f: f64 = format!("{:.1}", a.f_rpn).parse().unwrap();
                if row.t_rpn != a.t_rpn
                    || row.f_rpn != printed_f
                    || row.t_rank != a.t_rank
                    || row.f_rank != a.f_rank
                    || row.rank_delta != a.t_rank as i64 - a.f_rank as i64
                    || row.component != a.record.component
                    || row.failure_mode != a.record.failure_mode
                {
                    failures.push(format!(
                        "row for {}/{} did not round-trip",
                        a.record.component, a.record.failure_mode
                    ));
                }
            }
            let printed_rho: f64 = format!("{:.4}", comparison.spearman).parse().unwrap();
            if parsed.spearman != Some(printed_rho) {
                failures.push("spearman summary did not round-trip".into());
            }
        }
    }
    finish("criterion 8 (round-trips)", failures);
}

#[test]
fn criterion_9_end_to_end_golden() {
    let mut failures = Vec::new();
    let register = data_file("smart_grid_register.csv");
    let dir = tempfile::tempdir().unwrap();

    let run_analyze = |format: &str, out: &Path| {
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_fuzzy-fmea"))
            .args([
                "analyze",
                register.to_str().unwrap(),
                "--format",
                format,
                "--output",
                out.to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
        std::fs::read(out).unwrap()
    };

    for format in ["csv", "text"] {
        let a = run_analyze(format, &dir.path().join(format!("a.{format}")));
        let b = run_analyze(format, &dir.path().join(format!("b.{format}")));
        if a != b {
            failures.push(format!("{format} report is not byte-stable across runs"));
        }
    }

    let csv_bytes = run_analyze("csv", &dir.path().join("golden.csv"));
    let parsed = parse_csv_report(std::str::from_utf8(&csv_bytes).unwrap()).unwrap();
    if parsed.rows.len() != 25 {
        failures.push(format!("expected 25 report rows, found {}", parsed.rows.len()));
    }
    let expectations = [
        ("Server", "Hardware crash", 480u32),
        ("Transformer", "Explosion", 450),
        ("Intelligent electronic device", "Communication failure", 240),
        ("Transformer", "Winding degradation", 240),
        ("Server", "Power outage", 210),
        ("Circuit breaker", "Failure in insulation", 210),
    ];
    for (component, mode, t_rpn) in expectations {
        match parsed
            .rows
            .iter()
            .find(|r| r.component == component && r.failure_mode == mode)
        {
            Some(row) if row.t_rpn == t_rpn => {}
            Some(row) => failures.push(format!(
                "{component}/{mode}: T-RPN {} in report, expected {t_rpn}",
                row.t_rpn
            )),
            None => failures.push(format!("{component}/{mode} missing from report")),
        }
    }
    // The table is ordered by traditional rank.
    for pair in parsed.rows.windows(2) {
        if pair[0].t_rank + 1 != pair[1].t_rank {
            failures.push("report rows are not sorted by T-Rank".into());
            break;
        }
    }
    finish("criterion 9 (end-to-end golden report)", failures);
}
