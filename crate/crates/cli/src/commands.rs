use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use hermsurf::codes::{build_code, min_distance_geometric, CodeParams, DEFAULT_CODEWORD_BUDGET};
use hermsurf::field::Elem;
use hermsurf::forms::{FormContext, FormRecord, HomogeneousForm, IntersectionSummary};
use hermsurf::hermitian::HermitianSurface;
use hermsurf::theorems::extremal::grid_coefficients;
use hermsurf::theorems::{
    build_extremal_pencil, build_grid_example, check_theorems, exhaustive_search, random_search, BoundReport,
    SearchConfig, SearchMode,
};

use crate::census::verify_counts;
use crate::{Cli, Command, Mode};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hermsurf::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed form file {path}: {source}")]
    FormFile { path: String, source: serde_json::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Whether every checked statement held.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Falsified,
}

impl Outcome {
    fn from_clean(clean: bool) -> Outcome {
        if clean {
            Outcome::Clean
        } else {
            Outcome::Falsified
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn need(v: Option<u32>, flag: &str) -> CliResult<u32> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this subcommand")))
}

fn surface(q: u32) -> CliResult<Arc<HermitianSurface>> {
    Ok(HermitianSurface::canonical_for_q(q)?)
}

#[derive(Serialize)]
struct Metadata<'a> {
    command: &'a str,
    version: &'a str,
    workers: usize,
    wall_time_seconds: f64,
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::VerifyCounts => cmd_verify_counts(cli)?,
        Command::Search => cmd_search(cli)?,
        Command::Extremal => cmd_extremal(cli)?,
        Command::Grid { alpha } => cmd_grid(cli, *alpha)?,
        Command::Code { weights } => cmd_code(cli, weights.as_deref())?,
        Command::Check { form_file } => cmd_check(cli, form_file)?,
    };
    if let Some(out) = &cli.out {
        let meta = Metadata {
            command: command_name(&cli.command),
            version: env!("CARGO_PKG_VERSION"),
            workers: rayon::current_num_threads(),
            wall_time_seconds: start.elapsed().as_secs_f64(),
        };
        let mut path = out.clone().into_os_string();
        path.push(".meta.json");
        write_json(Some(Path::new(&path)), &meta)?;
    }
    Ok(outcome)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyCounts => "verify-counts",
        Command::Search => "search",
        Command::Extremal => "extremal",
        Command::Grid { .. } => "grid",
        Command::Code { .. } => "code",
        Command::Check { .. } => "check",
    }
}

fn cmd_verify_counts(cli: &Cli) -> CliResult<Outcome> {
    let s = surface(need(cli.q, "q")?)?;
    let report = verify_counts(&s)?;
    write_json(cli.out.as_deref(), &report)?;
    Ok(Outcome::from_clean(report.all_pass()))
}

fn cmd_search(cli: &Cli) -> CliResult<Outcome> {
    let s = surface(need(cli.q, "q")?)?;
    let d = need(cli.d, "d")?;
    let ctx = FormContext::new(s, d)?;
    let config = SearchConfig::default();
    let result = match cli.mode {
        Mode::Exhaustive => exhaustive_search(&ctx, &config).map_err(|e| match e {
            hermsurf::Error::BudgetExceeded { .. } => {
                CliError::Usage(format!("{e}; use --mode random or --mode structured"))
            }
            e => e.into(),
        })?,
        Mode::Random => random_search(&ctx, SearchMode::Random, cli.samples, cli.seed, &config)?,
        Mode::Structured => random_search(&ctx, SearchMode::Structured, cli.samples, cli.seed, &config)?,
    };
    write_json(cli.out.as_deref(), &result)?;
    Ok(Outcome::from_clean(result.violations.is_empty()))
}

#[derive(Serialize)]
struct ConstructionReport {
    predicted_points: u64,
    intersection: IntersectionSummary,
    bounds: BoundReport,
}

fn construction(cli: &Cli, ctx: &FormContext, form: &HomogeneousForm, predicted: u64) -> CliResult<Outcome> {
    let s = ctx.surface();
    let (report, bounds) = check_theorems(ctx, form)?;
    let clean = bounds.is_clean() && report.num_points() as u64 == predicted;
    let out = ConstructionReport {
        predicted_points: predicted,
        intersection: report.summary(s.pg(), s, cli.verbose),
        bounds,
    };
    write_json(cli.out.as_deref(), &out)?;
    Ok(Outcome::from_clean(clean))
}

fn pencil_count(q: u64, d: u64) -> u64 {
    d * (q * q * q + q * q - q) + q + 1
}

fn cmd_extremal(cli: &Cli) -> CliResult<Outcome> {
    let q = need(cli.q, "q")?;
    let d = need(cli.d, "d")?;
    let s = surface(q)?;
    let form = build_extremal_pencil(&s, d)?;
    let ctx = FormContext::new(s, d)?;
    construction(cli, &ctx, &form, pencil_count(q as u64, d as u64))
}

fn cmd_grid(cli: &Cli, alpha: Option<u16>) -> CliResult<Outcome> {
    let q = need(cli.q, "q")?;
    let s = surface(q)?;
    let alpha = match alpha {
        Some(a) => Elem(a),
        None => *grid_coefficients(&s)
            .first()
            .ok_or_else(|| CliError::Usage(format!("no grid coefficient exists for q = {q}")))?,
    };
    let form = build_grid_example(&s, alpha)?;
    let ctx = FormContext::new(s, q + 1)?;
    construction(cli, &ctx, &form, pencil_count(q as u64, q as u64 + 1))
}

fn cmd_code(cli: &Cli, weights: Option<&Path>) -> CliResult<Outcome> {
    let q = need(cli.q, "q")?;
    let d = need(cli.d, "d")?;
    let s = surface(q)?;
    let code = build_code(&s, d)?;
    let enumerated = match code.min_distance_enumerate(&s, DEFAULT_CODEWORD_BUDGET) {
        Ok(v) => Some(v),
        Err(hermsurf::Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let geometric = min_distance_geometric(q, d).ok();
    let params = CodeParams {
        q: s.q(),
        d,
        n: code.n,
        k: code.k,
        d_min_enumerated: enumerated,
        d_min_geometric: geometric.map(|g| g.value),
        geometric_conditional: geometric.is_some_and(|g| g.conditional),
    };
    if let Some(path) = weights {
        let dist = code.weight_distribution(&s, DEFAULT_CODEWORD_BUDGET)?;
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["weight", "count"])?;
        for (weight, count) in dist.counts.iter().enumerate().filter(|(_, &c)| c > 0) {
            w.write_record([weight.to_string(), count.to_string()])?;
        }
        w.flush().map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    write_json(cli.out.as_deref(), &params)?;
    let agree = match (enumerated, geometric) {
        (Some(e), Some(g)) if !g.conditional => e as u64 == g.value,
        _ => true,
    };
    Ok(Outcome::from_clean(agree))
}

#[derive(Serialize)]
struct CheckReport {
    intersection: IntersectionSummary,
    bounds: Option<BoundReport>,
}

fn cmd_check(cli: &Cli, path: &Path) -> CliResult<Outcome> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let record: FormRecord =
        serde_json::from_str(&text).map_err(|source| CliError::FormFile { path: path.display().to_string(), source })?;
    let s = surface(record.q as u32)?;
    let form = HomogeneousForm::from_record(s.field(), &record)?;
    let ctx = FormContext::new(s.clone(), form.degree())?;
    if ctx.hermitian_divides(&form) {
        let report = ctx.intersection_stats(&form)?;
        let intersection = report.summary(s.pg(), &s, cli.verbose);
        write_json(cli.out.as_deref(), &CheckReport { intersection, bounds: None })?;
        return Ok(Outcome::Clean);
    }
    let (report, bounds) = check_theorems(&ctx, &form)?;
    let clean = bounds.is_clean();
    let intersection = report.summary(s.pg(), &s, cli.verbose);
    write_json(cli.out.as_deref(), &CheckReport { intersection, bounds: Some(bounds) })?;
    Ok(Outcome::from_clean(clean))
}
