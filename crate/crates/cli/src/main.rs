//! Command-line front end: every computation in the library plus the
//! one-shot reproduction of the built-in example.
//!
//! Exit codes: 0 = computed and all asserted properties hold; 1 = a
//! verification failed; 2 = usage or parse error. All reports are
//! deterministic given the same inputs, flags, and seeds; `--json`
//! switches from `key=value` lines to a stable-keyed JSON document.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tropkap::comb::SubmatrixSelector;
use tropkap::lifts::{
    certify_rank5, check_lift, degree_matrix, example_lift_m0, example_matrix_a, random_lift,
    verify_example, CertificateReport, DeltaCase,
};
use tropkap::parse::{
    format_puiseux_matrix, format_rational, format_series, format_tropical_matrix,
    parse_puiseux_matrix, parse_rational, parse_series, parse_tropical_matrix,
};
use tropkap::puiseux::{determinant_with_threshold, rank_with_threshold, Valuation};
use tropkap::rng::SplitMix64;
use tropkap::trop::{permanent_with_threshold, tropical_rank_with_threshold, DEFAULT_THRESHOLD};
use tropkap::{Rat, SeriesMat, TropMat, Val};

#[derive(Parser)]
#[command(
    name = "tropkap",
    version,
    about = "Exact min-plus matrix calculator: tropical rank, series-field rank, and Kapranov-rank bounds"
)]
struct Cli {
    /// Emit a JSON report instead of key=value lines
    #[arg(long, global = true)]
    json: bool,

    /// Enumeration threshold for permanents and determinant expansion
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD)]
    threshold: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical permanent: value, multiplicity, and every minimizing permutation
    Perm {
        /// Tropical matrix file (.tmat)
        file: PathBuf,
        /// Restrict to these rows (1-based, comma-separated, increasing)
        #[arg(long)]
        rows: Option<String>,
        /// Restrict to these columns (1-based, comma-separated, increasing)
        #[arg(long)]
        cols: Option<String>,
    },
    /// Report whether the (sub)matrix is tropically singular
    Singular {
        file: PathBuf,
        #[arg(long)]
        rows: Option<String>,
        #[arg(long)]
        cols: Option<String>,
    },
    /// Tropical rank and the first witness submatrix
    Troprank { file: PathBuf },
    /// Valuation of a series literal, or the degree matrix of a series matrix file
    Deg {
        /// Series literal, e.g. "1 - t^2"
        #[arg(allow_hyphen_values = true)]
        series: Option<String>,
        /// Series matrix file (.pmat): print the entry-wise degree matrix
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Exact determinant over the series ring
    Pdet { file: PathBuf },
    /// Exact rank over the series ring
    Prank { file: PathBuf },
    /// Check that a series matrix lifts a tropical matrix
    Liftcheck { tmat: PathBuf, pmat: PathBuf },
    /// Sandwich the Kapranov rank of a matrix between its tropical rank and the rank of a lift
    Kapbound { tmat: PathBuf, pmat: PathBuf },
    /// Rank-5 certificate for a lift of the built-in matrix A
    Certify { pmat: PathBuf },
    /// Reproduce the built-in example end to end (tropical rank 4, Kapranov rank 5)
    VerifyExample,
    /// Generate random lifts of the built-in A; certify each and check rank >= 5
    FuzzLifts {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Maximum number of higher-order terms per entry
        #[arg(long, default_value_t = 2)]
        max_extra_terms: usize,
        /// Exponent spacing between consecutive terms (a positive rational)
        #[arg(long, default_value = "1")]
        exponent_step: String,
    },
}

/// Outcome of one command: a human report, a machine report, and whether
/// every asserted property held.
struct Report {
    ok: bool,
    human: String,
    machine: Value,
}

impl Report {
    fn pass(human: String, machine: Value) -> Self {
        Report {
            ok: true,
            human,
            machine,
        }
    }

    fn fail(human: String, machine: Value) -> Self {
        Report {
            ok: false,
            human,
            machine,
        }
    }
}

/// A bad invocation or unparseable input; exits with code 2.
struct UsageError(String);

impl<T: std::fmt::Display> From<T> for UsageError {
    fn from(e: T) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.machine).unwrap());
            } else {
                println!("{}", report.human);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, UsageError> {
    let threshold = cli.threshold;
    match &cli.command {
        Command::Perm { file, rows, cols } => cmd_perm(file, rows, cols, threshold),
        Command::Singular { file, rows, cols } => cmd_singular(file, rows, cols, threshold),
        Command::Troprank { file } => cmd_troprank(file, threshold),
        Command::Deg { series, matrix } => cmd_deg(series.as_deref(), matrix.as_deref()),
        Command::Pdet { file } => cmd_pdet(file, threshold),
        Command::Prank { file } => cmd_prank(file, threshold),
        Command::Liftcheck { tmat, pmat } => cmd_liftcheck(tmat, pmat),
        Command::Kapbound { tmat, pmat } => cmd_kapbound(tmat, pmat, threshold),
        Command::Certify { pmat } => cmd_certify(pmat),
        Command::VerifyExample => Ok(cmd_verify_example()),
        Command::FuzzLifts {
            trials,
            seed,
            max_extra_terms,
            exponent_step,
        } => cmd_fuzz_lifts(*trials, *seed, *max_extra_terms, exponent_step),
    }
}

fn read_tmat(path: &Path) -> Result<TropMat, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_tropical_matrix(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn read_pmat(path: &Path) -> Result<SeriesMat, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_puiseux_matrix(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// "1,2,4,6" -> strictly increasing 1-based indices.
fn parse_index_list(text: &str) -> Result<Vec<usize>, UsageError> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let n: usize = piece
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("bad index {piece:?} in {text:?}")))?;
        if n == 0 {
            return Err(UsageError("indices are 1-based; 0 is not valid".into()));
        }
        out.push(n);
    }
    if !out.windows(2).all(|w| w[0] < w[1]) {
        return Err(UsageError(format!(
            "indices must be strictly increasing: {text:?}"
        )));
    }
    Ok(out)
}

/// Applies optional --rows/--cols restrictions to a parsed matrix.
fn restrict(
    m: &TropMat,
    rows: &Option<String>,
    cols: &Option<String>,
) -> Result<TropMat, UsageError> {
    let (rows, cols) = match (rows, cols) {
        (None, None) => return Ok(m.clone()),
        (Some(r), Some(c)) => (parse_index_list(r)?, parse_index_list(c)?),
        _ => {
            return Err(UsageError(
                "--rows and --cols must be given together".into(),
            ))
        }
    };
    let sel = SubmatrixSelector::from_one_based(&rows, &cols);
    if !sel.in_bounds(m.rows(), m.cols()) {
        return Err(UsageError(format!(
            "selector out of bounds for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.submatrix(&sel).expect("bounds checked"))
}

fn val_string(v: &Val) -> String {
    match v {
        Valuation::Finite(x) => format_rational(x),
        Valuation::Infinity => "inf".to_string(),
    }
}

fn index_list_json(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&i| json!(i)).collect())
}

fn join_indices(xs: &[usize]) -> String {
    xs.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_perm(
    file: &Path,
    rows: &Option<String>,
    cols: &Option<String>,
    threshold: usize,
) -> Result<Report, UsageError> {
    let m = restrict(&read_tmat(file)?, rows, cols)?;
    let cert = permanent_with_threshold(&m, threshold)?;
    let witnesses_human = cert
        .witnesses
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let human = format!(
        "value={} count={} witnesses={}",
        format_rational(&cert.value),
        cert.optimal_count(),
        witnesses_human
    );
    let machine = json!({
        "value": format_rational(&cert.value),
        "optimal_count": cert.optimal_count(),
        "witnesses": cert.witnesses.iter().map(|p| index_list_json(&p.one_based())).collect::<Vec<_>>(),
    });
    Ok(Report::pass(human, machine))
}

fn cmd_singular(
    file: &Path,
    rows: &Option<String>,
    cols: &Option<String>,
    threshold: usize,
) -> Result<Report, UsageError> {
    let m = restrict(&read_tmat(file)?, rows, cols)?;
    let cert = permanent_with_threshold(&m, threshold)?;
    let singular = cert.optimal_count() >= 2;
    let human = format!(
        "singular={} value={} count={}",
        singular,
        format_rational(&cert.value),
        cert.optimal_count()
    );
    let machine = json!({
        "singular": singular,
        "value": format_rational(&cert.value),
        "optimal_count": cert.optimal_count(),
    });
    Ok(Report::pass(human, machine))
}

fn cmd_troprank(file: &Path, threshold: usize) -> Result<Report, UsageError> {
    let m = read_tmat(file)?;
    let (rank, sel) = tropical_rank_with_threshold(&m, threshold)?;
    let human = format!("rank={rank} {sel}");
    let machine = json!({
        "rank": rank,
        "witness_rows": index_list_json(&sel.rows_one_based()),
        "witness_cols": index_list_json(&sel.cols_one_based()),
    });
    Ok(Report::pass(human, machine))
}

fn cmd_deg(series: Option<&str>, matrix: Option<&Path>) -> Result<Report, UsageError> {
    match (series, matrix) {
        (Some(text), None) => {
            let s = parse_series(text)?;
            let deg = s.deg();
            Ok(Report::pass(
                format!("deg={}", val_string(&deg)),
                json!({ "deg": val_string(&deg) }),
            ))
        }
        (None, Some(path)) => {
            let m = read_pmat(path)?;
            match degree_matrix(&m) {
                Ok(degrees) => Ok(Report::pass(
                    format_tropical_matrix(&degrees),
                    json!({ "degree_matrix": matrix_json(&degrees) }),
                )),
                Err(e) => Ok(Report::fail(
                    format!("degree matrix undefined: {e}"),
                    json!({ "error": e.to_string() }),
                )),
            }
        }
        _ => Err(UsageError(
            "give either a series literal or --matrix FILE".into(),
        )),
    }
}

fn matrix_json(m: &TropMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| json!(format_rational(m.get(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn cmd_pdet(file: &Path, threshold: usize) -> Result<Report, UsageError> {
    let m = read_pmat(file)?;
    let det = determinant_with_threshold(&m, threshold)?;
    Ok(Report::pass(
        format!("det={}", format_series(&det)),
        json!({ "det": format_series(&det), "deg": val_string(&det.deg()) }),
    ))
}

fn cmd_prank(file: &Path, threshold: usize) -> Result<Report, UsageError> {
    let m = read_pmat(file)?;
    let rank = rank_with_threshold(&m, threshold)?;
    Ok(Report::pass(
        format!("rank={rank}"),
        json!({ "rank": rank }),
    ))
}

fn cmd_liftcheck(tmat: &Path, pmat: &Path) -> Result<Report, UsageError> {
    let base = read_tmat(tmat)?;
    let lift = read_pmat(pmat)?;
    match check_lift(&lift, &base) {
        Ok(()) => Ok(Report::pass("lift=true".into(), json!({ "lift": true }))),
        Err(e) => Ok(Report::fail(
            format!("lift=false {e}"),
            json!({ "lift": false, "error": e.to_string() }),
        )),
    }
}

fn cmd_kapbound(tmat: &Path, pmat: &Path, threshold: usize) -> Result<Report, UsageError> {
    let base = read_tmat(tmat)?;
    let lift = read_pmat(pmat)?;
    if let Err(e) = check_lift(&lift, &base) {
        return Ok(Report::fail(
            format!("not a lift: {e}"),
            json!({ "lift": false, "error": e.to_string() }),
        ));
    }
    let (lower, _) = tropical_rank_with_threshold(&base, threshold)?;
    let upper = rank_with_threshold(&lift, threshold)?;
    let human = format!("lower={lower} upper={upper}");
    let machine = json!({
        "tropical_rank_lower": lower,
        "lift_rank_upper": upper,
    });
    Ok(Report::pass(human, machine))
}

fn certificate_json(report: &CertificateReport) -> Value {
    json!({
        "delta": val_string(&report.delta),
        "case": report.case.to_string(),
        "deg_h25": val_string(&report.deg_h25),
        "deg_h61": val_string(&report.deg_h61),
        "minor_rows": index_list_json(&report.nonzero_minor.rows_one_based()),
        "minor_cols": index_list_json(&report.nonzero_minor.cols_one_based()),
        "rank_lower_bound": report.rank_lower_bound,
    })
}

fn certificate_human(report: &CertificateReport) -> String {
    format!(
        "delta={} case={} deg_H25={} deg_H61={} minor_rows={} minor_cols={} rank_lower_bound={}",
        val_string(&report.delta),
        report.case,
        val_string(&report.deg_h25),
        val_string(&report.deg_h61),
        join_indices(&report.nonzero_minor.rows_one_based()),
        join_indices(&report.nonzero_minor.cols_one_based()),
        report.rank_lower_bound
    )
}

fn cmd_certify(pmat: &Path) -> Result<Report, UsageError> {
    let lift = read_pmat(pmat)?;
    match certify_rank5(&lift) {
        Ok(report) => Ok(Report::pass(
            certificate_human(&report),
            certificate_json(&report),
        )),
        Err(e) => Ok(Report::fail(
            format!("certificate failed: {e}"),
            json!({ "error": e.to_string() }),
        )),
    }
}

fn cmd_verify_example() -> Report {
    let report = verify_example();
    let mut lines = Vec::new();
    for check in &report.checks {
        let tag = if check.pass { "PASS" } else { "FAIL" };
        lines.push(format!("{tag} {}: {}", check.name, check.detail));
    }
    let all = report.all_pass();
    lines.push(format!(
        "verify-example: {}",
        if all { "ok" } else { "FAILED" }
    ));
    let machine = json!({
        "checks": report.checks.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "all_pass": all,
    });
    let human = lines.join("\n");
    if all {
        Report::pass(human, machine)
    } else {
        Report::fail(human, machine)
    }
}

fn cmd_fuzz_lifts(
    trials: u64,
    seed: u64,
    max_extra_terms: usize,
    exponent_step: &str,
) -> Result<Report, UsageError> {
    if trials == 0 {
        return Err(UsageError("--trials must be at least 1".into()));
    }
    let step: Rat = parse_rational(exponent_step)?;
    if step <= tropkap::rat(0) {
        return Err(UsageError("--exponent-step must be positive".into()));
    }

    let a = example_matrix_a();
    let m0_rank = tropkap::puiseux::rank(&example_lift_m0()).expect("built-in is 6x6");
    let mut master = SplitMix64::new(seed);
    let (mut lt, mut eq, mut gt) = (0u64, 0u64, 0u64);
    let mut min_rank = usize::MAX;

    for trial in 0..trials {
        let trial_seed = master.next_u64();
        let lift = random_lift(&a, trial_seed, max_extra_terms, &step);
        let cert = match certify_rank5(&lift) {
            Ok(cert) => cert,
            Err(e) => return Ok(fuzz_failure(trial, trial_seed, &lift, &e.to_string())),
        };
        match cert.case {
            DeltaCase::BelowOne => lt += 1,
            DeltaCase::EqualOne => eq += 1,
            DeltaCase::AboveOne => gt += 1,
        }
        let rank = tropkap::puiseux::rank(&lift).expect("lift is 6x6");
        if rank < cert.rank_lower_bound {
            return Ok(fuzz_failure(
                trial,
                trial_seed,
                &lift,
                &format!(
                    "rank {rank} below certified lower bound {}",
                    cert.rank_lower_bound
                ),
            ));
        }
        if cert.rank_lower_bound > m0_rank {
            return Ok(fuzz_failure(
                trial,
                trial_seed,
                &lift,
                &format!(
                    "lower bound {} exceeds the built-in upper bound {m0_rank}",
                    cert.rank_lower_bound
                ),
            ));
        }
        min_rank = min_rank.min(rank);
    }

    let human = format!(
        "trials={trials} seed={seed} delta_lt={lt} delta_eq={eq} delta_gt={gt} min_rank={min_rank} all_pass=true"
    );
    let machine = json!({
        "trials": trials,
        "seed": seed,
        "cases": { "lt": lt, "eq": eq, "gt": gt },
        "min_rank": min_rank,
        "all_pass": true,
    });
    Ok(Report::pass(human, machine))
}

fn fuzz_failure(trial: u64, trial_seed: u64, lift: &SeriesMat, reason: &str) -> Report {
    let human = format!(
        "trial={trial} trial_seed={trial_seed} all_pass=false reason={reason}\nlift:\n{}",
        format_puiseux_matrix(lift)
    );
    let machine = json!({
        "all_pass": false,
        "trial": trial,
        "trial_seed": trial_seed,
        "reason": reason,
        "lift": format_puiseux_matrix(lift),
    });
    Report::fail(human, machine)
}
