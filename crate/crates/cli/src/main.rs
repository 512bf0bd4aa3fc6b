//! `tjurina`: invariants of isolated hypersurface singularities from the
//! command line.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 ok, 1 input
//! error, 2 germ not isolated or not singular, 3 internal consistency alarm,
//! 4 failed check, 5 resource cap.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tjurina::catalog::{self, CatalogEntry, Status, VerifyOptions};
use tjurina::family;
use tjurina::groebner::DEFAULT_DEGREE_CAP;
use tjurina::invariants::{analyze_with_cap, check_mu_tau_vs_bs, InvariantReport};
use tjurina::join::{make_join, verify_theorem, JoinOptions, JoinReport, ModePolicy, EXACT_LIMIT};
use tjurina::{rational_string, Error, Germ};

#[derive(Parser)]
#[command(name = "tjurina", version, about = "Milnor and Tjurina numbers of isolated hypersurface singularities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Comma-separated variables of an inline germ.
    #[arg(long, global = true)]
    vars: Option<String>,
    /// Variables of the second inline germ of `join` (defaults to --vars).
    #[arg(long, global = true)]
    vars2: Option<String>,
    /// Rank computation for joins.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Number of random primes in modular mode.
    #[arg(long, global = true, default_value_t = 3)]
    primes: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest truncation degree tried before a germ is declared non-isolated.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    max_degree_cap: u32,
    /// Germ file whose names may be used in place of inline germs.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// Also compute joins directly on the combined ring when small enough.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Exact,
    Modular,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of one germ, given inline or by catalog name.
    Invariants { germ: String },
    /// Verify the Tjurina formula for the join of two germs.
    Join { first: String, second: String },
    /// Check every germ and pair of a germ file (the bundled catalog by default).
    VerifyCatalog {
        path: Option<PathBuf>,
        /// Skip join checks for pairs with a larger tensor dimension.
        #[arg(long, default_value_t = EXACT_LIMIT)]
        max_pair_mu: usize,
    },
    /// Scan deformations of y^n - x^(n+1) and report the Tjurina numbers.
    FamilyScan {
        n: u32,
        #[arg(long, default_value_t = 1)]
        max_terms: usize,
    },
    /// mu/tau against the Briancon-Skoda exponent for every germ in a file.
    QuotientReport { path: PathBuf },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Checks(_) => 4,
            Failure::Lib(e) => match e {
                Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::ZeroDenominator { .. }
                | Error::InvalidVariables(_)
                | Error::Catalog { .. }
                | Error::InvalidParameter(_)
                | Error::InvalidPrimes(_)
                | Error::EmptyInput => 1,
                Error::NotSingular(_) | Error::NonIsolated { .. } | Error::NotQuasiHomogeneous => 2,
                Error::Assertion(_) | Error::ProfileMismatch(_) => 4,
                Error::TooLarge(_) => 5,
                Error::IndexOutOfRange { .. }
                | Error::LengthMismatch { .. }
                | Error::AmbientMismatch { .. }
                | Error::NotContained
                | Error::BadPrime { .. }
                | Error::InternalMismatch(_)
                | Error::BsViolation { .. }
                | Error::DimensionMismatch { .. } => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) | Failure::Checks(m) => m.clone(),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

impl Global {
    fn format(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            default
        }
    }

    fn catalog(&self) -> Result<Vec<CatalogEntry>, Failure> {
        Ok(match &self.catalog {
            Some(path) => catalog::load(path)?,
            None => catalog::bundled(),
        })
    }

    /// A catalog name, or inline text over `vars`.
    fn germ(&self, text: &str, vars: Option<&str>) -> Result<Germ, Failure> {
        if let Some(e) = self.catalog()?.into_iter().find(|e| e.name == text) {
            return Ok(e.germ);
        }
        let vars = vars.ok_or_else(|| {
            Failure::Usage(format!("`{text}` is not a catalog name; pass --vars for an inline germ"))
        })?;
        Ok(Germ::parse(text, vars)?)
    }

    fn join_options(&self) -> JoinOptions {
        JoinOptions {
            policy: match self.mode {
                Mode::Auto => ModePolicy::Auto,
                Mode::Exact => ModePolicy::Exact,
                Mode::Modular => ModePolicy::Modular,
            },
            primes: self.primes,
            seed: self.seed,
            oracle: self.oracle,
            degree_cap: self.max_degree_cap,
            ..JoinOptions::default()
        }
    }
}

fn write_json<T: Serialize>(value: &T) -> Outcome {
    let value = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = serde_json::to_string_pretty(&value).map_err(|e| Failure::Usage(e.to_string()))?;
    io_result(writeln!(std::io::stdout().lock(), "{text}"))
}

/// A closed stdout (as in `| head`) ends output quietly.
fn io_result(r: std::io::Result<()>) -> Outcome {
    match r {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Usage(e.to_string())),
        _ => Ok(()),
    }
}

fn write_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Outcome {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    for row in rows {
        if let Err(e) = w.serialize(row) {
            return match e.into_kind() {
                csv::ErrorKind::Io(io) => io_result(Err(io)),
                other => Err(Failure::Usage(format!("{other:?}"))),
            };
        }
    }
    io_result(w.flush())
}

#[derive(Serialize)]
struct InvariantRow<'a> {
    germ: String,
    arity: usize,
    mu: usize,
    tau: usize,
    nu1: usize,
    ebs: usize,
    mu_over_tau: String,
    quasihomogeneous: bool,
    alpha_min: Option<String>,
    verdict: &'a str,
}

fn invariants(g: &Global, text: &str) -> Outcome {
    let germ = g.germ(text, g.vars.as_deref())?;
    let r: InvariantReport = analyze_with_cap(&germ, g.max_degree_cap)?.report;
    let verdict = check_mu_tau_vs_bs(&r)?.to_string();
    match g.format(Format::Json) {
        Format::Json => write_json(&r),
        Format::Csv => write_csv([InvariantRow {
            germ: germ.to_string(),
            arity: r.arity,
            mu: r.mu,
            tau: r.tau,
            nu1: r.nu1,
            ebs: r.ebs,
            mu_over_tau: rational_string(&r.quotient_mu_tau),
            quasihomogeneous: r.qh_weights.is_some(),
            alpha_min: r.alpha_min.as_ref().map(rational_string),
            verdict: &verdict,
        }]),
    }
}

#[derive(Serialize)]
struct JoinRow {
    mu_join: usize,
    tau_join: usize,
    tau_join_fullring: Option<usize>,
    rank_mode: String,
    dim_u: usize,
    b: usize,
    u: usize,
    theorem_residual: i64,
    bounds_ok: bool,
}

fn join(g: &Global, first: &str, second: &str) -> Outcome {
    let g1 = g.germ(first, g.vars.as_deref())?;
    let g2 = g.germ(second, g.vars2.as_deref().or(g.vars.as_deref()))?;
    let report: JoinReport = verify_theorem(&make_join(&g1, &g2)?, &g.join_options())?;
    match g.format(Format::Json) {
        Format::Json => write_json(&report),
        Format::Csv => write_csv([JoinRow {
            mu_join: report.mu_join,
            tau_join: report.tau_join_tensor,
            tau_join_fullring: report.tau_join_fullring,
            rank_mode: report.rank_mode.to_string(),
            dim_u: report.dim_u,
            b: report.b,
            u: report.u,
            theorem_residual: report.theorem_residual,
            bounds_ok: report.bounds_ok,
        }]),
    }
}

fn verify_catalog(g: &Global, path: Option<&PathBuf>, max_pair_mu: usize) -> Outcome {
    let entries = match path {
        Some(p) => catalog::load(p)?,
        None => g.catalog()?,
    };
    let opts = VerifyOptions {
        join: JoinOptions {
            oracle: true,
            ..g.join_options()
        },
        max_pair_mu,
        ..VerifyOptions::default()
    };
    let rows = catalog::verify_catalog(&entries, &opts).rows();
    let failed = rows.iter().filter(|r| r.status == Status::Fail).count();
    match g.format(Format::Csv) {
        Format::Json => write_json(&rows)?,
        Format::Csv => write_csv(&rows)?,
    }
    if failed > 0 {
        return Err(Failure::Checks(format!("{failed} of {} checks failed", rows.len())));
    }
    Ok(())
}

#[derive(Serialize)]
struct FamilyCsvRow<'a> {
    deformation: &'a str,
    mu: usize,
    tau: usize,
    mu_over_tau: String,
    minimal: bool,
}

fn family_scan(g: &Global, n: u32, max_terms: usize) -> Outcome {
    let scan = family::scan(n, max_terms)?;
    match g.format(Format::Csv) {
        Format::Json => write_json(&scan)?,
        Format::Csv => write_csv(scan.rows.iter().map(|r| FamilyCsvRow {
            deformation: &r.deformation,
            mu: r.mu,
            tau: r.tau,
            mu_over_tau: rational_string(&r.quotient),
            minimal: r.tau == scan.min_tau,
        }))?,
    }
    eprintln!(
        "n={n}: min tau {} over {} members (reference {}, {})",
        scan.min_tau,
        scan.rows.len(),
        scan.formula_tau_min,
        if scan.formula_attained { "attained" } else { "not attained" }
    );
    Ok(())
}

fn quotient_report(g: &Global, path: &PathBuf) -> Outcome {
    let rows = catalog::quotient_rows(&catalog::load(path)?, g.max_degree_cap);
    let failed = rows.iter().filter(|r| r.verdict.starts_with("fail")).count();
    match g.format(Format::Csv) {
        Format::Json => write_json(&rows)?,
        Format::Csv => write_csv(&rows)?,
    }
    if failed > 0 {
        return Err(Failure::Checks(format!("{failed} of {} germs failed", rows.len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let g = &cli.global;
    let outcome = match &cli.command {
        Command::Invariants { germ } => invariants(g, germ),
        Command::Join { first, second } => join(g, first, second),
        Command::VerifyCatalog { path, max_pair_mu } => verify_catalog(g, path.as_ref(), *max_pair_mu),
        Command::FamilyScan { n, max_terms } => family_scan(g, *n, *max_terms),
        Command::QuotientReport { path } => quotient_report(g, path),
    };
    let _ = std::io::stdout().flush();
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
