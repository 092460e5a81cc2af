//! Command-line front end. Every result is one JSON object per line carrying
//! the resolved configuration, the library version and the generator id.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curveballs::io::{load_dataset, to_jsonl};
use curveballs::range::{approx_count, exact_count, kde, kde_sample_bound, sample_size, separator_sample_size, RNG_ALGORITHM};
use curveballs::synth::{generate_synthetic, Synthetic};
use curveballs::vc_lab::{circle_report, critical_queries, shatter_report};
use curveballs::{Curve, Dataset, Measure, RangeQuery};
use log::{debug, info};
use serde::Serialize;
use serde_json::{json, Map, Value};

use config::RunConfig;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl From<curveballs::Error> for CliError {
    fn from(e: curveballs::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "curveballs", version, about = "Distances, range queries and shattering experiments on polygonal curves")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// discrete_hausdorff, discrete_frechet, hausdorff_directed_from,
    /// hausdorff_directed_to, hausdorff, weak_frechet or frechet
    #[arg(long, global = true, value_parser = parse_measure)]
    measure: Option<Measure>,
    /// Ball radius
    #[arg(long = "r", global = true)]
    r: Option<f64>,
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// VC dimension estimate
    #[arg(long, global = true)]
    nu: Option<f64>,
    /// Constant in the sample-size formulas
    #[arg(long = "C", global = true)]
    c: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Bisection tolerance for continuous distances
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write results here instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// JSON file with defaults for the flags above
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    s.parse().map_err(|e: curveballs::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance or decision for every pair of curves from two files
    Dist(DistArgs),
    /// Exact range count around each curve of the center file
    Query(QueryArgs),
    /// Sampled range count around each curve of the center file
    ApproxQuery(QueryArgs),
    /// Sample sizes for the given accuracy
    SampleSize,
    /// Kernel density at each probe curve
    Kde(KdeArgs),
    /// Shattering experiment
    Shatter(ShatterArgs),
    /// Synthetic curve file
    Gen(GenArgs),
}

#[derive(Args, Debug, Serialize)]
struct DistArgs {
    /// Decide `d <= r` instead of computing the distance
    #[arg(long)]
    decide: bool,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct QueryArgs {
    /// Curve file with the query centers
    #[arg(long)]
    center: PathBuf,
    data: PathBuf,
}

#[derive(Args, Debug, Serialize)]
struct KdeArgs {
    /// Curve file with the probe curves
    #[arg(long)]
    probe: PathBuf,
    /// Evaluate on a seeded sample of the size the KDE bound asks for
    #[arg(long)]
    sample: bool,
    data: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
enum Construction {
    /// k points on the unit circle and one query per subset
    Circle,
    /// t random points in the plane and single-vertex queries at critical radii
    Disks,
}

#[derive(Args, Debug, Serialize)]
struct ShatterArgs {
    #[arg(long, value_enum, default_value = "circle")]
    construction: Construction,
    #[arg(long, default_value_t = 6)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    t: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
enum Kind {
    RandomWalk,
    PerturbedTemplate,
    CirclePoints,
}

#[derive(Args, Debug, Serialize)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 6)]
    k: usize,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Curve file whose first curve is the template
    #[arg(long)]
    template: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CURVEBALLS_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve(common: &Common, inputs: Vec<String>) -> Result<RunConfig, CliError> {
    let flags = RunConfig {
        measure: common.measure,
        radius: common.r,
        epsilon: common.eps,
        delta: common.delta,
        nu: common.nu,
        c: common.c,
        seed: common.seed,
        tolerance: common.tol,
        inputs,
        output: common.output.as_ref().map(|p| p.display().to_string()),
    };
    let file = match &common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    Ok(flags.over(file).over(RunConfig::defaults()))
}

fn inputs_of(command: &Command) -> Vec<String> {
    let paths: Vec<&Path> = match command {
        Command::Dist(a) => vec![&a.a, &a.b],
        Command::Query(a) | Command::ApproxQuery(a) => vec![&a.center, &a.data],
        Command::Kde(a) => vec![&a.probe, &a.data],
        Command::Gen(a) => a.template.iter().map(PathBuf::as_path).collect(),
        Command::SampleSize | Command::Shatter(_) => vec![],
    };
    paths.iter().map(|p| p.display().to_string()).collect()
}

fn load(path: &Path) -> Result<Dataset, CliError> {
    info!("loading {}", path.display());
    Ok(load_dataset(path)?)
}

/// Collects result records and stamps each with the run metadata.
struct Records<'a> {
    command: &'static str,
    params: Value,
    config: &'a RunConfig,
    lines: Vec<String>,
}

impl Records<'_> {
    fn push(&mut self, result: Value) {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        if let Value::Object(fields) = result {
            obj.extend(fields);
        }
        obj.insert("params".into(), self.params.clone());
        obj.insert("config".into(), serde_json::to_value(self.config).expect("config serializes"));
        obj.insert("version".into(), json!(VERSION));
        obj.insert("rng".into(), json!(RNG_ALGORITHM));
        self.lines.push(Value::Object(obj).to_string());
    }

    fn text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = resolve(&cli.common, inputs_of(&cli.command))?;
    debug!("config {cfg:?}");
    let (name, params) = match &cli.command {
        Command::Dist(a) => ("dist", json!(a)),
        Command::Query(a) => ("query", json!(a)),
        Command::ApproxQuery(a) => ("approx-query", json!(a)),
        Command::SampleSize => ("sample-size", json!({})),
        Command::Kde(a) => ("kde", json!(a)),
        Command::Shatter(a) => ("shatter", json!(a)),
        Command::Gen(a) => ("gen", json!(a)),
    };
    let mut out = Records { command: name, params, config: &cfg, lines: Vec::new() };
    let measure = cfg.measure();

    let text = match &cli.command {
        Command::Dist(a) => {
            let (xs, ys) = (load(&a.a)?, load(&a.b)?);
            let r = if a.decide { Some(cfg.radius()?) } else { None };
            let tol = cfg.tolerance()?;
            for x in xs.curves() {
                for y in ys.curves() {
                    let mut rec = json!({"a": x.id(), "b": y.id(), "measure": measure});
                    match r {
                        Some(r) => rec["decision"] = json!(measure.decide(x, y, r)?),
                        None => rec["distance"] = json!(measure.value(x, y, tol)?),
                    }
                    out.push(rec);
                }
            }
            out.text()
        }
        Command::Query(a) => {
            let (centers, ds) = (load(&a.center)?, load(&a.data)?);
            let r = cfg.radius()?;
            for c in centers.curves() {
                let (count, ids) = exact_count(&ds, &query(measure, c, r)?)?;
                out.push(json!({"center": c.id(), "count": count, "ids": ids}));
            }
            out.text()
        }
        Command::ApproxQuery(a) => {
            let (centers, ds) = (load(&a.center)?, load(&a.data)?);
            let r = cfg.radius()?;
            let spec = cfg.sample_spec()?;
            for c in centers.curves() {
                let (estimate, ids) = approx_count(&ds, &query(measure, c, r)?, &spec, cfg.seed())?;
                out.push(json!({"center": c.id(), "estimate": estimate, "sample_size": ids.len(), "sample_ids": ids}));
            }
            out.text()
        }
        Command::SampleSize => {
            let spec = cfg.sample_spec()?;
            out.push(json!({
                "n": sample_size(&spec)?,
                "separator_n": separator_sample_size(&spec)?,
                "kde_n": kde_sample_bound(&spec)?,
            }));
            out.text()
        }
        Command::Kde(a) => {
            let (probes, ds) = (load(&a.probe)?, load(&a.data)?);
            let tol = cfg.tolerance()?;
            let ds = if a.sample { ds.sample(kde_sample_bound(&cfg.sample_spec()?)?, cfg.seed())? } else { ds };
            for p in probes.curves() {
                out.push(json!({"probe": p.id(), "kde": kde(&ds, p, measure, tol)?, "n": ds.len()}));
            }
            out.text()
        }
        Command::Shatter(a) => {
            let report = match a.construction {
                Construction::Circle => circle_report(a.k, measure)?,
                Construction::Disks => {
                    let ground = curveballs::synth::random_walk(a.t, 1, 2, cfg.seed())?;
                    let mut centers = ground.curves().to_vec();
                    let extra = curveballs::synth::random_walk(a.t, 1, 2, cfg.seed().wrapping_add(1))?;
                    centers.extend(extra.curves().iter().map(|c| c.clone().with_id(format!("center-{}", c.id()))));
                    let queries = critical_queries(ground.curves(), &centers, measure)?;
                    shatter_report(&format!("disks(t={})", a.t), measure, ground.curves(), &queries)?
                }
            };
            out.push(serde_json::to_value(report).expect("report serializes"));
            out.text()
        }
        Command::Gen(a) => {
            let kind = match a.kind {
                Kind::RandomWalk => Synthetic::RandomWalk { n: a.n, m: a.m, d: a.d },
                Kind::CirclePoints => Synthetic::CirclePoints { k: a.k },
                Kind::PerturbedTemplate => {
                    let path = a.template.as_ref().ok_or_else(|| CliError::Usage("--template is required".into()))?;
                    let template = load(path)?.curves()[0]
                        .vertices()
                        .iter()
                        .map(|p| p.coords().to_vec())
                        .collect();
                    Synthetic::PerturbedTemplate { n: a.n, template, noise: a.noise }
                }
            };
            let ds = generate_synthetic(&kind, cfg.seed())?;
            // the curve file keeps its plain format; the run record goes to
            // standard output when the curves go to a file
            if cli.common.output.is_some() {
                out.push(json!({"curves": ds.len()}));
                print!("{}", out.text());
            }
            to_jsonl(&ds)
        }
    };
    emit(cli.common.output.as_deref(), &text)
}

fn query(measure: Measure, center: &Curve, r: f64) -> Result<RangeQuery, CliError> {
    Ok(RangeQuery::new(measure, center.clone(), r)?)
}

/// Writes to a temporary file next to `path` and renames it into place, so
/// a failed run never leaves a partial file.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Data(e.to_string()))?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Data(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    info!("wrote {}", path.display());
    Ok(())
}
