use std::fs;
use std::io::{self, BufRead, BufWriter, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dioph_core::arith::RealOracle;
use dioph_core::bounds::{self, BoundRow};
use dioph_core::lattice::{parse_matrix, vector_json, IntegerVector, Subspace};
use dioph_core::minimal::{
    brute_force_minimal_points, build_structure, check_p, enumerate_minimal_points,
    estimate_exponents, refresh_l, EnumerateOptions, MinimalPointRecord,
};
use dioph_core::projections::{analyze_degeneracy, find_avoiding_map, tau, DimensionProfile};
use dioph_core::suites::{run_suite, Suite, DEFAULT_CASES};
use dioph_core::{Error, Result};

mod config;

use config::{Emit, RunConfig};

#[derive(Parser)]
#[command(name = "dioph", version, about = "Exact tools for simultaneous rational approximation to powers of a real number")]
struct Cli {
    /// File of default settings, written as `--name value` pairs.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Precision cap in bits (default from DIOPH_MAX_BITS, else 4096).
    #[arg(long, global = true)]
    max_bits: Option<u32>,
    #[arg(long, global = true, value_enum)]
    emit: Option<Emit>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    shards: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified values of the upper bounds and their checks.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Minimal points of a real number and what is derived from them.
    #[command(subcommand)]
    Minimal(MinimalCmd),
    /// Window projections of a subspace.
    #[command(subcommand)]
    Uop(UopCmd),
    /// Rational subspaces given by spanning vectors.
    #[command(subcommand)]
    Subspace(SubspaceCmd),
    /// Seeded randomized checks of the structural laws.
    Proptest {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
    },
    /// Print the effective settings in config-file form.
    Config,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Comparison table for n = 4..13.
    Table {
        #[arg(long, default_value_t = 4)]
        digits: u32,
    },
    /// Numeric conditions of the large-n argument for each n in a range.
    #[command(name = "verify-thm11")]
    VerifyLargeN {
        #[arg(long, default_value_t = 12)]
        from: usize,
        #[arg(long, default_value_t = 899)]
        to: usize,
    },
    /// Enclosure of the positive root of a bound polynomial.
    Root {
        /// `p` (odd n), `q` (even n), `r`, or `cubic`.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        digits: u32,
    },
    /// Check 1/(m+2) < alpha_m, beta_m < 1/(m+2) + c/(m+2)^3 exactly.
    Bracket {
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 100)]
        to: usize,
    },
}

#[derive(Args)]
struct RecordInput {
    /// JSON-lines file of records (default: standard input).
    #[arg(long)]
    input: Option<String>,
    /// Recompute L from this oracle instead of trusting the stored enclosures.
    #[arg(long)]
    xi: Option<String>,
}

#[derive(Subcommand)]
enum MinimalCmd {
    /// Enumerate minimal points with norm at most --xmax.
    Run {
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = |s: &str| config::parse_count(s).map_err(|e| e.to_string()))]
        xmax: Option<u64>,
        /// Accept xi algebraic of degree at most n.
        #[arg(long)]
        allow_degenerate: bool,
        /// Use the exhaustive scan instead (small --xmax only).
        #[arg(long)]
        brute_force: bool,
    },
    /// Running exponent values of a record stream.
    Exponents {
        #[command(flatten)]
        input: RecordInput,
        #[arg(long, default_value_t = 8)]
        window: usize,
    },
    /// Index set, sigma table and diagnostic ratios of a record stream.
    Structure {
        #[command(flatten)]
        input: RecordInput,
    },
    /// Check property P(j, ell) on the computed range.
    #[command(name = "checkP")]
    CheckP {
        #[command(flatten)]
        input: RecordInput,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        i0: usize,
    },
}

#[derive(Subcommand)]
enum UopCmd {
    /// Dimension profile of the span of the rows of --matrix.
    Profile {
        #[arg(long)]
        matrix: String,
        /// Expected n (the rows live in R^{n+1}).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Smallest window combination injective on A whose image escapes V.
    Avoid {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        ell: usize,
        /// Spanning rows of V (default: the zero subspace).
        #[arg(long)]
        avoid_matrix: Option<String>,
    },
    /// Consequences of a small window span for a (j+1)-dimensional A.
    Degeneracy {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        probes: Option<String>,
    },
}

#[derive(Subcommand)]
enum SubspaceCmd {
    Info {
        #[arg(long)]
        matrix: String,
    },
    Complement {
        #[arg(long)]
        matrix: String,
    },
    Sum {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        other: String,
    },
    Intersect {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        other: String,
    },
}

/// Nonzero exit for a check that ran to completion and failed.
struct CheckFailed(String);

enum Failure {
    Core(Error),
    Check(CheckFailed),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Out<'a> = &'a mut dyn Write;

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn read_subspace(path: &str) -> Result<Subspace, Failure> {
    let rows = parse_matrix(&read_source(path)?)?;
    let ambient = rows
        .first()
        .map(|r| r.ambient_dim())
        .ok_or_else(|| Error::Parse(format!("{path}: no rows")))?;
    Ok(Subspace::from_spanning_set(ambient, &rows)?)
}

fn read_records(input: &RecordInput, max_bits: u32) -> Result<Vec<MinimalPointRecord>, Failure> {
    let lines: Vec<String> = match &input.input {
        Some(p) if p != "-" => fs::read_to_string(p)?.lines().map(String::from).collect(),
        _ => io::stdin().lock().lines().collect::<io::Result<_>>()?,
    };
    let mut records = Vec::new();
    for (k, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(line)
            .map_err(|e| Error::Parse(format!("line {}: {e}", k + 1)))?;
        records.push(MinimalPointRecord::from_json(&v)?);
    }
    if let Some(xi) = &input.xi {
        let xi: RealOracle = xi.parse()?;
        refresh_l(&mut records, &xi, 256.min(max_bits))?;
    }
    Ok(records)
}

fn emit_value(out: Out, emit: Emit, v: &Value) -> io::Result<()> {
    match emit {
        Emit::Pretty => writeln!(out, "{}", serde_json::to_string_pretty(v).unwrap()),
        _ => writeln!(out, "{v}"),
    }
}

fn bounds(cmd: BoundsCmd, cfg: &RunConfig, out: Out) -> Result<(), Failure> {
    match cmd {
        BoundsCmd::Table { digits } => {
            let rows = bounds::emit_table1(4 * digits + 16)?;
            match cfg.emit {
                Emit::Jsonl => {
                    for r in &rows {
                        writeln!(out, "{}", r.to_json(digits)?)?;
                    }
                }
                Emit::Csv => {
                    writeln!(out, "{}", BoundRow::CSV_HEADER)?;
                    for r in &rows {
                        writeln!(out, "{}", r.to_csv(digits)?)?;
                    }
                }
                Emit::Pretty => {
                    writeln!(out, "{:>3}  {:>8}  {:>8}  {:>8}  {:>9}  {:>8}", "n", "laurent", "schl.", "badz.", "bound", "new")?;
                    for r in &rows {
                        writeln!(
                            out,
                            "{:>3}  {:>8}  {:>8}  {:>8}  {:>9}  {:>8}",
                            r.n,
                            r.laurent_truncated(digits).unwrap_or_else(|| "-".into()),
                            r.schleischitz.unwrap_or("-"),
                            r.badziahin.unwrap_or("-"),
                            r.new_label,
                            r.new_truncated(digits)?
                        )?;
                    }
                }
            }
        }
        BoundsCmd::VerifyLargeN { from, to } => {
            let checks = bounds::verify_large_n_conditions(from, to, cfg.max_bits)?;
            let mut failed = Vec::new();
            for c in &checks {
                match cfg.emit {
                    Emit::Pretty => writeln!(
                        out,
                        "{} n={} ell={} k={} theta^k={} eta-1/lambda>0:{}",
                        if c.pass() { "PASS" } else { "FAIL" },
                        c.n,
                        c.ell,
                        c.k,
                        c.theta_pow_k.to_f64(),
                        c.eta_gt_inv_lambda.as_str()
                    )?,
                    _ => writeln!(out, "{}", c.to_json())?,
                }
                if !c.pass() {
                    failed.push(c.n);
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Check(CheckFailed(format!(
                    "large-n conditions fail for n in {failed:?}"
                ))));
            }
        }
        BoundsCmd::Root { family, m, digits } => {
            let k = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 4;
            let (poly, root) = match family.as_str() {
                "p" => (bounds::p_poly(m), bounds::alpha(m, k)?),
                "q" => (bounds::q_poly(m), bounds::beta(m, k)?),
                "r" => {
                    let p = bounds::r_poly(m);
                    let r = bounds::unique_positive_root(&p, k)?;
                    (p, r)
                }
                "cubic" => (bounds::cubic_case_poly(), bounds::cubic_case_root(k)?),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown family {family:?} (expected p, q, r or cubic)"
                    ))
                    .into())
                }
            };
            let (lo, hi) = root.to_decimal_pair(digits);
            emit_value(
                out,
                cfg.emit,
                &json!({
                    "family": family,
                    "m": m,
                    "poly": poly.to_string(),
                    "root": [lo, hi],
                    "certified": bounds::root_certificate_holds(&poly, &root),
                }),
            )?;
        }
        BoundsCmd::Bracket { from, to } => {
            let rows = bounds::bracket_check(from, to)?;
            for r in &rows {
                emit_value(out, cfg.emit, &r.to_json())?;
            }
            let failed: Vec<usize> = rows.iter().filter(|r| !r.pass()).map(|r| r.m).collect();
            if !failed.is_empty() {
                return Err(Failure::Check(CheckFailed(format!("bracketing fails for m in {failed:?}"))));
            }
        }
    }
    Ok(())
}

fn minimal(cmd: MinimalCmd, cfg: &RunConfig, out: Out) -> Result<(), Failure> {
    match cmd {
        MinimalCmd::Run {
            xi,
            n,
            xmax,
            allow_degenerate,
            brute_force,
        } => {
            let missing = |what: &str| Error::InvalidArgument(format!("minimal run needs --{what}"));
            let xi: RealOracle = xi.or(cfg.xi.clone()).ok_or_else(|| missing("xi"))?.parse()?;
            let n = n.or(cfg.n).ok_or_else(|| missing("n"))?;
            let xmax = xmax.or(cfg.xmax).ok_or_else(|| missing("xmax"))?;
            let records = if brute_force {
                brute_force_minimal_points(&xi, n, xmax, cfg.max_bits)?
            } else {
                let opts = EnumerateOptions {
                    max_bits: cfg.max_bits,
                    shards: cfg.shards,
                    allow_degenerate,
                };
                enumerate_minimal_points(&xi, n, xmax, &opts)?
            };
            match cfg.emit {
                Emit::Jsonl => {
                    for r in &records {
                        writeln!(out, "{}", r.to_json())?;
                    }
                }
                Emit::Csv => {
                    writeln!(out, "{}", MinimalPointRecord::CSV_HEADER)?;
                    for r in &records {
                        writeln!(out, "{}", r.to_csv())?;
                    }
                }
                Emit::Pretty => {
                    for r in &records {
                        writeln!(
                            out,
                            "{:>4}  {:<40}  L={:.6e}{}",
                            r.i,
                            r.x.to_string(),
                            r.l.to_f64(),
                            if r.in_i { "  in I" } else { "" }
                        )?;
                    }
                }
            }
        }
        MinimalCmd::Exponents { input, window } => {
            let records = read_records(&input, cfg.max_bits)?;
            emit_value(out, cfg.emit, &estimate_exponents(&records, window)?.to_json())?;
        }
        MinimalCmd::Structure { input } => {
            let records = read_records(&input, cfg.max_bits)?;
            emit_value(out, cfg.emit, &build_structure(&records)?.to_json())?;
        }
        MinimalCmd::CheckP { input, j, ell, i0 } => {
            let records = read_records(&input, cfg.max_bits)?;
            let s = build_structure(&records)?;
            emit_value(out, cfg.emit, &check_p(&s, j, ell, i0)?.to_json())?;
        }
    }
    Ok(())
}

fn uop(cmd: UopCmd, cfg: &RunConfig, out: Out) -> Result<(), Failure> {
    match cmd {
        UopCmd::Profile { matrix, n } => {
            let a = read_subspace(&matrix)?;
            if let Some(n) = n {
                if a.ambient_dim() != n + 1 {
                    return Err(Error::DimensionMismatch(format!(
                        "rows have {} entries but --n {n} needs {}",
                        a.ambient_dim(),
                        n + 1
                    ))
                    .into());
                }
            }
            let p = DimensionProfile::of(&a)?;
            emit_value(out, cfg.emit, &p.to_json())?;
            p.verify()?;
        }
        UopCmd::Avoid {
            matrix,
            ell,
            avoid_matrix,
        } => {
            let a = read_subspace(&matrix)?;
            let width = a.ambient_dim().saturating_sub(ell);
            let v = match avoid_matrix {
                Some(p) => read_subspace(&p)?,
                None => Subspace::zero(width),
            };
            let coeffs = find_avoiding_map(&a, ell, &v)?;
            let images = a
                .basis()
                .iter()
                .map(|b| tau(coeffs.coords(), b))
                .collect::<Result<Vec<IntegerVector>>>()?;
            emit_value(
                out,
                cfg.emit,
                &json!({
                    "ell": ell,
                    "a": vector_json(&coeffs),
                    "l1": coeffs.l1_norm().to_string(),
                    "images": images.iter().map(vector_json).collect::<Vec<_>>(),
                }),
            )?;
        }
        UopCmd::Degeneracy {
            matrix,
            j,
            ell,
            probes,
        } => {
            let a = read_subspace(&matrix)?;
            let probes = match probes {
                Some(p) => parse_matrix(&read_source(&p)?)?,
                None => a.basis().to_vec(),
            };
            let v = match analyze_degeneracy(&a, j, ell, &probes)? {
                Some(r) => {
                    let mut v = r.to_json();
                    v["degenerate"] = json!(true);
                    v
                }
                None => json!({"degenerate": false}),
            };
            emit_value(out, cfg.emit, &v)?;
        }
    }
    Ok(())
}

fn subspace(cmd: SubspaceCmd, cfg: &RunConfig, out: Out) -> Result<(), Failure> {
    let s = match cmd {
        SubspaceCmd::Info { matrix } => read_subspace(&matrix)?,
        SubspaceCmd::Complement { matrix } => read_subspace(&matrix)?.orthogonal_complement(),
        SubspaceCmd::Sum { matrix, other } => read_subspace(&matrix)?.sum(&read_subspace(&other)?)?,
        SubspaceCmd::Intersect { matrix, other } => {
            read_subspace(&matrix)?.intersect(&read_subspace(&other)?)?
        }
    };
    emit_value(out, cfg.emit, &s.to_json())?;
    Ok(())
}

fn proptest(suite: &str, cases: usize, cfg: &RunConfig, out: Out) -> Result<(), Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let mut failed = Vec::new();
    for s in suites {
        let report = run_suite(s, cfg.seed, cases)?;
        match cfg.emit {
            Emit::Jsonl => writeln!(out, "{}", report.to_json())?,
            _ => {
                writeln!(out, "{}", report.summary())?;
                for e in &report.examples {
                    writeln!(out, "  {e}")?;
                }
            }
        }
        if !report.passed() {
            failed.push(s.name());
        }
    }
    if !failed.is_empty() {
        return Err(Failure::Check(CheckFailed(format!("suites failed: {failed:?}"))));
    }
    Ok(())
}

fn settings(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(path) = &cli.config {
        cfg = cfg.merge_text(&fs::read_to_string(path)?)?;
    }
    if let Some(b) = cli.max_bits {
        cfg.max_bits = b;
    }
    if let Some(e) = cli.emit {
        cfg.emit = e;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(s) = cli.shards {
        if s == 0 {
            return Err(Error::InvalidArgument("--shards must be at least 1".into()).into());
        }
        cfg.shards = s;
    }
    Ok(cfg)
}

fn run(cli: Cli, out: Out) -> Result<(), Failure> {
    let cfg = settings(&cli)?;
    match cli.command {
        Command::Bounds(c) => bounds(c, &cfg, out),
        Command::Minimal(c) => minimal(c, &cfg, out),
        Command::Uop(c) => uop(c, &cfg, out),
        Command::Subspace(c) => subspace(c, &cfg, out),
        Command::Proptest { suite, cases } => proptest(&suite, cases, &cfg, out),
        Command::Config => {
            write!(out, "{cfg}")?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors exit 1; help and version requests succeed
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) => match flushed {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
            _ => ExitCode::SUCCESS,
        },
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Check(CheckFailed(msg))) => {
            eprintln!("CONTRACT VIOLATION: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            if e.is_precision() {
                eprintln!("precision error: {e}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(if e.is_contract_violation() { 2 } else { 1 })
        }
    }
}
