//! `bvtrace` command-line front-end: argument parsing, report assembly and
//! atomic output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bvtrace_core::io::{format_f64, to_json_string, BaseFile, PolygonFile, SetFile};
use bvtrace_core::search::DEFAULT_BUDGET;
use bvtrace_core::{
    analyze_polygon, book_cone_prism, chebyshev_ball, classify, constant_for, evaluate_beta,
    search, Cone, Error, PolyhedralBase, SearchFamily, DEFAULT_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bvtrace", version, about = "Optimal BV trace constants at conical points")]
pub struct Cli {
    /// Geometric tolerance used for classification and containment.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Replace the wall-clock timestamp in the provenance block.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "0")]
    pub fixed_timestamp: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace constant of the cone over a base.
    Constant { base: PathBuf },
    /// Inscribed ball and tangency classification of a base.
    Classify { base: PathBuf },
    /// Trace-to-perimeter ratio of a polyhedral set inside the cone.
    Beta { base: PathBuf, set: PathBuf },
    /// Maximize the ratio over a family of candidate sets.
    Search {
        base: PathBuf,
        #[arg(long, value_enum, default_value_t = FamilyArg::Tilted)]
        family: FamilyArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the evaluation history as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Prism sequence in the book cone against its closed form.
    BookCone {
        #[arg(long, default_value_t = 100)]
        n: u32,
    },
    /// Corner constants of a planar polygon.
    #[command(name = "analyze-2d")]
    Analyze2d { polygon: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Tilted,
    Perturbed,
    Prism,
}

impl FamilyArg {
    fn family(self) -> SearchFamily {
        match self {
            FamilyArg::Tilted => SearchFamily::tilted(),
            FamilyArg::Perturbed => SearchFamily::perturbed(),
            FamilyArg::Prism => SearchFamily::prism(),
        }
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Constant { .. } => "constant",
            Command::Classify { .. } => "classify",
            Command::Beta { .. } => "beta",
            Command::Search { .. } => "search",
            Command::BookCone { .. } => "book-cone",
            Command::Analyze2d { .. } => "analyze-2d",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Provenance {
    pub subcommand: &'static str,
    pub version: &'static str,
    pub generated_at: u64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Facet distance minus radius for each base constraint.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slacks: Option<Vec<f64>>,
    /// Base point the cone axis passes through, in input coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<Vec<f64>>,
}

#[derive(Debug, Serialize)]
struct Envelope<'a, T: Serialize> {
    report: &'a T,
    provenance: &'a Provenance,
}

#[derive(Debug, Serialize)]
pub struct BookRow {
    pub n: u32,
    pub beta: f64,
    pub formula: f64,
    pub abs_error: f64,
}

#[derive(Debug, Serialize)]
pub struct BookReport {
    pub rows: Vec<BookRow>,
    pub strictly_increasing: bool,
    pub max_abs_error: f64,
    /// `√2 − β` at the largest `n`.
    pub limit_gap: f64,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::Validation(_) => "validation",
            Error::Classification { .. } => "classification",
            Error::Configuration(_) => "configuration",
            Error::Infeasible(_) => "infeasible",
            Error::Unbounded(_) => "unbounded",
            Error::UnboundedCut(_) => "unbounded_cut",
            Error::Degenerate(_) => "degenerate",
            Error::Solver(_) => "solver",
        };
        let code = if e.is_input_error() { EXIT_INPUT } else { EXIT_NUMERIC };
        Self {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_INPUT,
            kind: "io",
            message: format!("{}: {e}", path.display()),
        }
    }

    /// `{"error": {"kind", "code", "message"}}`.
    pub fn to_json(&self) -> String {
        let value = serde_json::json!({
            "error": { "kind": self.kind, "code": self.code, "message": self.message }
        });
        to_json_string(&value).unwrap_or_else(|_| format!("{value}\n"))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_base(path: &Path) -> Result<PolyhedralBase, CliError> {
    Ok(BaseFile::parse(&read(path)?)?.into_base()?)
}

/// Offsets minus their minimum: slack of the largest ball centred on the axis.
fn axis_slacks(cone: &Cone) -> Vec<f64> {
    let r = cone.axis_radius();
    cone.base().constraints().iter().map(|c| c.offset() - r).collect()
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// One row per evaluation; an unbounded or failed cut leaves `beta` empty.
fn history_csv(report: &bvtrace_core::SearchReport) -> Result<Vec<u8>, CliError> {
    let csv_err = |e: csv::Error| CliError {
        code: EXIT_INPUT,
        kind: "io",
        message: e.to_string(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (0..report.best_params.len()).map(|j| format!("p{j}")).collect();
    header.push("beta".into());
    w.write_record(&header).map_err(csv_err)?;
    for s in &report.history {
        let mut row: Vec<String> = s.params.iter().map(|p| format_f64(*p)).collect();
        row.push(s.beta.map(format_f64).unwrap_or_default());
        w.write_record(&row).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| csv_err(e.into_error().into()))
}

fn envelope<T: Serialize>(report: &T, provenance: &Provenance) -> Result<String, CliError> {
    Ok(to_json_string(&Envelope { report, provenance })?)
}

/// Runs a parsed command and returns the JSON report text.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Error::Validation(format!("tolerance must be positive, got {}", cli.tol)).into());
    }
    let generated_at = cli.fixed_timestamp.unwrap_or_else(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    let mut prov = Provenance {
        subcommand: cli.command.name(),
        version: env!("CARGO_PKG_VERSION"),
        generated_at,
        tolerance: cli.tol,
        budget: None,
        seed: None,
        slacks: None,
        axis: None,
    };

    match &cli.command {
        Command::Constant { base } => {
            let base = load_base(base)?;
            let r = constant_for(&base, cli.tol)?;
            prov.slacks = Some(r.class.slack.clone());
            envelope(&r, &prov)
        }
        Command::Classify { base } => {
            let base = load_base(base)?;
            let ball = chebyshev_ball(&base)?;
            let class = classify(&base, &ball, cli.tol);
            prov.slacks = Some(class.slack.clone());
            envelope(&class, &prov)
        }
        Command::Beta { base, set } => {
            let cone = Cone::new(load_base(base)?)?;
            let set = SetFile::parse(&read(set)?)?.into_set()?;
            let r = evaluate_beta(&cone, &set, cli.tol)?;
            prov.slacks = Some(axis_slacks(&cone));
            envelope(&r, &prov)
        }
        Command::Search {
            base,
            family,
            budget,
            seed,
            csv,
        } => {
            let base = load_base(base)?;
            let ball = chebyshev_ball(&base)?;
            let cone = Cone::recentered(&base)?;
            let r = search(&cone, family.family(), *budget, *seed)?;
            prov.budget = Some(*budget);
            prov.seed = Some(*seed);
            prov.slacks = Some(axis_slacks(&cone));
            prov.axis = Some(ball.center.to_vec());
            if let Some(path) = csv {
                write_atomic(path, &history_csv(&r)?)?;
            }
            envelope(&r, &prov)
        }
        Command::BookCone { n } => {
            if *n == 0 {
                return Err(Error::Validation("n must be at least 1".into()).into());
            }
            let mut rows = Vec::with_capacity(*n as usize);
            for k in 1..=*n {
                let (cone, set) = book_cone_prism(k)?;
                let beta = evaluate_beta(&cone, &set, cli.tol)?.beta;
                let formula = 2.0 * std::f64::consts::SQRT_2 / (2.0 / f64::from(k) + 2.0);
                rows.push(BookRow {
                    n: k,
                    beta,
                    formula,
                    abs_error: (beta - formula).abs(),
                });
            }
            let report = BookReport {
                strictly_increasing: rows.windows(2).all(|w| w[1].beta > w[0].beta),
                max_abs_error: rows.iter().map(|r| r.abs_error).fold(0.0, f64::max),
                limit_gap: std::f64::consts::SQRT_2 - rows[rows.len() - 1].beta,
                rows,
            };
            envelope(&report, &prov)
        }
        Command::Analyze2d { polygon } => {
            let poly = PolygonFile::parse(&read(polygon)?)?.into_polygon()?;
            let r = analyze_polygon(&poly);
            envelope(&r, &prov)
        }
    }
}

/// Parses `args`, runs the command and writes the result. Returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            print!("{}", e.to_json());
            eprintln!("bvtrace: {}", e.message);
            e.code
        }
    }
}
