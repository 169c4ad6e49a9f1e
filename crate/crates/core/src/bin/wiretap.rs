//! Command-line front end: classify channels, solve for the optimal input
//! covariance, sweep SNR ranges to CSV, and emit the embedded fixtures.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use mimo_wiretap::channel::{ChannelPair, Snr};
use mimo_wiretap::closed_form::{
    solve_2x2, solve_miso, solve_rank_one_general, SecrecySolution, SolverError,
};
use mimo_wiretap::fixed_point::{solve_fixed_point, FixedPointConfig};
use mimo_wiretap::fixtures;
use mimo_wiretap::hermitian::DefinitenessTag;
use mimo_wiretap::io::ChannelFile;
use mimo_wiretap::kkt::KktReport;
use mimo_wiretap::oracle::{oracle_best, OracleConfig};
use mimo_wiretap::CVector;

const RANK_THRESHOLD: f64 = 1e-6;

#[derive(Parser)]
#[command(name = "wiretap", about = "Gaussian MIMO wiretap channel secrecy-capacity solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the difference Gram and report the dispatcher's choice.
    Classify {
        /// Channel JSON file.
        file: PathBuf,
    },
    /// Compute the secrecy capacity and optimal input covariance.
    Solve {
        /// Channel JSON file.
        file: PathBuf,
        /// SNR in dB (falls back to the file's snr_db field).
        #[arg(long)]
        snr_db: Option<f64>,
        #[arg(long, value_enum, default_value_t = SolverChoice::Auto)]
        solver: SolverChoice,
        #[arg(long, value_enum, default_value_t = Units::Nats)]
        units: Units,
        /// Emit a machine-readable JSON record instead of text.
        #[arg(long)]
        json: bool,
        /// Seed for the fixed-point restarts and the oracle.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep an SNR range and write one CSV row per point.
    Sweep {
        /// Channel JSON file.
        file: PathBuf,
        /// Range as start:stop:step in dB, inclusive of stop.
        #[arg(long)]
        snr_db_range: String,
        /// Output CSV path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Units::Nats)]
        units: Units,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List or emit the embedded example channels.
    Fixtures {
        /// Print the available fixture names.
        #[arg(long, conflicts_with = "emit")]
        list: bool,
        /// Write fixture NAME to PATH as channel JSON.
        #[arg(long, num_args = 2, value_names = ["NAME", "PATH"])]
        emit: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverChoice {
    Auto,
    Miso,
    Rank1,
    #[value(name = "2x2")]
    TwoByTwo,
    FixedPoint,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Units {
    Nats,
    Bits,
}

impl Units {
    fn from_nats(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }
}

/// Failure with the process exit code it maps to: 2 for input problems,
/// 3 when a forced solver is inapplicable or fails.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 2 }
    }

    fn solver(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 3 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { file } => cmd_classify(&file),
        Command::Solve { file, snr_db, solver, units, json, seed } => {
            cmd_solve(&file, snr_db, solver, units, json, seed)
        }
        Command::Sweep { file, snr_db_range, out, units, seed } => {
            cmd_sweep(&file, &snr_db_range, out.as_deref(), units, seed)
        }
        Command::Fixtures { list, emit } => cmd_fixtures(list, emit.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn load_channel(path: &std::path::Path) -> Result<(ChannelFile, ChannelPair), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let file = ChannelFile::from_json(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let pair = file
        .to_channel_pair()
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok((file, pair))
}

fn auto_choice(pair: &ChannelPair) -> SolverChoice {
    if pair.n_r() == 1 && pair.n_e() == 1 {
        SolverChoice::Miso
    } else if pair.difference_class().tag == DefinitenessTag::IndefiniteOnePositive {
        SolverChoice::Rank1
    } else if pair.n_t() == 2 {
        SolverChoice::TwoByTwo
    } else {
        SolverChoice::FixedPoint
    }
}

fn choice_name(choice: SolverChoice) -> &'static str {
    match choice {
        SolverChoice::Auto => "auto",
        SolverChoice::Miso => "miso",
        SolverChoice::Rank1 => "rank1",
        SolverChoice::TwoByTwo => "2x2",
        SolverChoice::FixedPoint => "fixed-point",
        SolverChoice::Oracle => "oracle",
    }
}

fn cmd_classify(path: &std::path::Path) -> Result<(), CliError> {
    let (_, pair) = load_channel(path)?;
    let class = pair.difference_class();
    println!(
        "channel: n_t = {}, n_r = {}, n_e = {}",
        pair.n_t(),
        pair.n_r(),
        pair.n_e()
    );
    let eigs: Vec<String> = class.eigenvalues.iter().map(|v| format!("{v:.4}")).collect();
    println!("difference-Gram eigenvalues (descending): {}", eigs.join(", "));
    println!("definiteness: {:?}", class.tag);
    if pair.positivity_test() {
        println!("positive secrecy capacity is achievable");
    } else {
        println!("secrecy capacity is zero");
    }
    println!("dispatcher would select: {}", choice_name(auto_choice(&pair)));
    Ok(())
}

/// Extracts the transmit-side vector `h` with `H†H = hh†` from a
/// single-row channel matrix.
fn row_to_vector(h: &mimo_wiretap::CMatrix) -> CVector {
    CVector::from_fn(h.ncols(), |i, _| h[(0, i)].conj())
}

struct SolveOutcome {
    solution: SecrecySolution,
    /// Fixed-point exhaustion: no restart both converged and passed KKT.
    no_verified_solution: bool,
}

fn run_solver(
    pair: &ChannelPair,
    snr: Snr,
    choice: SolverChoice,
    seed: u64,
) -> Result<SolveOutcome, CliError> {
    let map_err = |e: SolverError| CliError::solver(e.to_string());
    let effective = if choice == SolverChoice::Auto { auto_choice(pair) } else { choice };
    match effective {
        SolverChoice::Miso => {
            if pair.n_r() != 1 || pair.n_e() != 1 {
                return Err(CliError::solver("miso solver requires n_r = n_e = 1"));
            }
            let h_r = row_to_vector(pair.h_r());
            let h_e = row_to_vector(pair.h_e());
            let solution = solve_miso(&h_r, &h_e, snr).map_err(map_err)?;
            Ok(SolveOutcome { solution, no_verified_solution: false })
        }
        SolverChoice::Rank1 => {
            let solution = solve_rank_one_general(pair, snr).map_err(map_err)?;
            Ok(SolveOutcome { solution, no_verified_solution: false })
        }
        SolverChoice::TwoByTwo => {
            let solution = solve_2x2(pair, snr).map_err(map_err)?;
            Ok(SolveOutcome { solution, no_verified_solution: false })
        }
        SolverChoice::FixedPoint => {
            let config = FixedPointConfig { seed, ..Default::default() };
            let report = solve_fixed_point(pair, snr, &config);
            let verified = report.kkt_passed || report.solution.degenerate;
            Ok(SolveOutcome { solution: report.solution, no_verified_solution: !verified })
        }
        SolverChoice::Oracle => {
            let config = OracleConfig { seed, ..Default::default() };
            let solution = oracle_best(pair, snr, &config);
            Ok(SolveOutcome { solution, no_verified_solution: false })
        }
        SolverChoice::Auto => unreachable!("auto resolved above"),
    }
}

#[derive(Serialize)]
struct KktRecord {
    r_commute: f64,
    r_lambda: f64,
    r_single: f64,
    trace_gap: f64,
    min_eig_q: f64,
    passed: bool,
    gamma_used: f64,
    theta_scale: f64,
}

impl From<&KktReport> for KktRecord {
    fn from(k: &KktReport) -> Self {
        Self {
            r_commute: k.r_commute,
            r_lambda: k.r_lambda,
            r_single: k.r_single,
            trace_gap: k.trace_gap,
            min_eig_q: k.min_eig_q,
            passed: k.passed,
            gamma_used: k.gamma_used,
            theta_scale: k.theta_scale,
        }
    }
}

#[derive(Serialize)]
struct SolveRecord {
    snr_db: f64,
    units: &'static str,
    capacity: f64,
    capacity_nats: f64,
    solver: String,
    certified: bool,
    degenerate: bool,
    no_verified_solution: bool,
    /// Row-major `[re, im]` pairs, same layout as the channel file.
    q: Vec<[f64; 2]>,
    q_eigenvalues: Vec<f64>,
    rank: usize,
    kkt: Option<KktRecord>,
}

fn cmd_solve(
    path: &std::path::Path,
    snr_db: Option<f64>,
    choice: SolverChoice,
    units: Units,
    json: bool,
    seed: u64,
) -> Result<(), CliError> {
    let (file, pair) = load_channel(path)?;
    let snr_db = snr_db
        .or(file.snr_db)
        .ok_or_else(|| CliError::input("no SNR given: pass --snr-db or set snr_db in the file"))?;
    let snr = Snr::from_db(snr_db);
    let outcome = run_solver(&pair, snr, choice, seed)?;
    let sol = &outcome.solution;
    let qm = sol.q.matrix().as_matrix();
    let record = SolveRecord {
        snr_db,
        units: units.label(),
        capacity: units.from_nats(sol.capacity_nats),
        capacity_nats: sol.capacity_nats,
        solver: sol.solver.to_string(),
        certified: sol.certified,
        degenerate: sol.degenerate,
        no_verified_solution: outcome.no_verified_solution,
        q: (0..pair.n_t())
            .flat_map(|i| (0..pair.n_t()).map(move |j| (i, j)))
            .map(|(i, j)| [qm[(i, j)].re, qm[(i, j)].im])
            .collect(),
        q_eigenvalues: sol.q.eigenvalues(),
        rank: sol.q.rank(RANK_THRESHOLD),
        kkt: sol.kkt.as_ref().map(KktRecord::from),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&record).expect("record serializes"));
    } else {
        print_solve_report(&record, pair.n_t());
    }
    Ok(())
}

fn print_solve_report(r: &SolveRecord, n_t: usize) {
    println!("solver: {}  (snr = {} dB)", r.solver, r.snr_db);
    println!("secrecy capacity: {:.12} {}", r.capacity, r.units);
    if r.degenerate {
        println!("secrecy capacity is zero (legitimate channel degraded)");
    }
    println!("Q (row-major, re+im·i):");
    for i in 0..n_t {
        let mut line = String::from(" ");
        for j in 0..n_t {
            let [re, im] = r.q[i * n_t + j];
            let _ = write!(line, " {re:+.6}{im:+.6}i");
        }
        println!("{line}");
    }
    let eigs: Vec<String> = r.q_eigenvalues.iter().map(|v| format!("{v:.6}")).collect();
    println!("Q eigenvalues: {}", eigs.join(", "));
    println!("rank (threshold {RANK_THRESHOLD:.0e}): {}", r.rank);
    match &r.kkt {
        Some(k) => println!(
            "KKT residuals: commute {:.3e}, lambda {:.3e}, single {:.3e}, trace {:.3e} → {}",
            k.r_commute,
            k.r_lambda,
            k.r_single,
            k.trace_gap,
            if k.passed { "passed" } else { "failed" }
        ),
        None => println!("KKT residuals: not evaluated"),
    }
    if r.certified {
        println!("optimality: certified by closed form");
    }
    if r.no_verified_solution {
        println!("warning: no restart converged with verified optimality (best candidate shown)");
    }
}

fn parse_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(CliError::input(format!("bad range '{spec}': expected start:stop:step")));
    };
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::input(format!("bad range '{spec}': '{s}' is not a number")))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if step <= 0.0 || stop < start {
        return Err(CliError::input(format!(
            "bad range '{spec}': need stop ≥ start and step > 0"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

fn cmd_sweep(
    path: &std::path::Path,
    range: &str,
    out: Option<&std::path::Path>,
    units: Units,
    seed: u64,
) -> Result<(), CliError> {
    let (_, pair) = load_channel(path)?;
    let points = parse_range(range)?;
    let n_t = pair.n_t();

    let rows: Vec<(f64, Result<SolveOutcome, CliError>)> = points
        .par_iter()
        .map(|&db| (db, run_solver(&pair, Snr::from_db(db), SolverChoice::Auto, seed)))
        .collect();

    let mut csv = String::new();
    let _ = write!(csv, "snr_db,capacity");
    for i in 1..=n_t {
        let _ = write!(csv, ",eig{i}");
    }
    csv.push_str(",rank,solver,kkt_passed\n");

    let mut log_points = Vec::new();
    for (db, result) in &rows {
        match result {
            Ok(outcome) => {
                let sol = &outcome.solution;
                let kkt_passed = sol.kkt.as_ref().map_or(false, |k| k.passed);
                let _ = write!(csv, "{:.16e},{:.16e}", db, units.from_nats(sol.capacity_nats));
                for v in sol.q.eigenvalues() {
                    let _ = write!(csv, ",{v:.16e}");
                }
                let _ = writeln!(
                    csv,
                    ",{},{},{}",
                    sol.q.rank(RANK_THRESHOLD),
                    sol.solver,
                    kkt_passed
                );
                log_points.push((Snr::from_db(*db).linear().ln(), sol.capacity_nats));
            }
            Err(e) => {
                let _ = write!(csv, "{db:.16e},NaN");
                for _ in 0..n_t {
                    csv.push_str(",NaN");
                }
                let _ = writeln!(csv, ",0,failed({}),false", e.message);
            }
        }
    }

    // s.d.o.f.: least-squares slope of capacity(nats) vs ln ρ over the top
    // decade (last 10 dB) of the range.
    let top_cut = points.last().copied().unwrap_or(0.0) - 10.0;
    let top: Vec<(f64, f64)> = points
        .iter()
        .zip(&log_points)
        .filter(|(db, _)| **db >= top_cut - 1e-9)
        .map(|(_, p)| *p)
        .collect();
    if top.len() >= 2 {
        let n = top.len() as f64;
        let (sx, sy): (f64, f64) = top.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let sxx: f64 = top.iter().map(|(x, _)| x * x).sum();
        let sxy: f64 = top.iter().map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let _ = writeln!(csv, "# sdof_estimate,{slope:.16e}");
    }

    match out {
        Some(p) => std::fs::write(p, &csv)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_fixtures(list: bool, emit: Option<&[String]>) -> Result<(), CliError> {
    match (list, emit) {
        (true, _) => {
            for name in fixtures::FIXTURE_NAMES {
                println!("{name}");
            }
            Ok(())
        }
        (false, Some(args)) => {
            let [name, path] = args else {
                return Err(CliError::input("--emit takes NAME PATH"));
            };
            let file = fixtures::channel_file(name)
                .ok_or_else(|| CliError::input(format!("unknown fixture '{name}'")))?;
            std::fs::write(path, file.to_json_pretty() + "\n")
                .map_err(|e| CliError::input(format!("cannot write {path}: {e}")))?;
            Ok(())
        }
        (false, None) => Err(CliError::input("pass --list or --emit NAME PATH")),
    }
}
