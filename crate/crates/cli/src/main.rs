use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use mmp_bench::{run_bench_traced, write_csv_to, write_json_to, BenchError, BenchSpec, Experiment, RunRecord};
use mmp_core::problems::Representation;
use mmp_core::{write_trace_csv, SelectionRule};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExperimentArg {
    WsrCompare,
    GeeCompare,
    Aloha,
    SingleSolve,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SelectionArg {
    Best,
    Oldest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReprArg {
    Mmp,
    Dm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Runs branch-reduce-and-bound on generated or file instances and prints a
/// result table. List-valued options take comma-separated values and every
/// combination is run.
#[derive(Debug, Parser)]
#[command(name = "mmp-bench", version)]
struct Cli {
    #[arg(long, value_enum)]
    experiment: ExperimentArg,
    /// Number of users.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    realizations: usize,
    #[arg(long, default_value_t = 0.01)]
    eta: f64,
    /// Use the relative tolerance `(1 + eta)·gamma`.
    #[arg(long)]
    relative: bool,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "best")]
    selection: Vec<SelectionArg>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "off")]
    reduction: Vec<Switch>,
    #[arg(long = "repr", value_enum, value_delimiter = ',', default_value = "mmp")]
    repr: Vec<ReprArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_iter: Option<u64>,
    #[arg(long)]
    timeout_s: Option<f64>,
    /// Instance file for `single-solve`.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write one iteration trace per run into `<out>.traces/`.
    #[arg(long)]
    trace: bool,
}

impl Cli {
    fn spec(&self) -> Result<BenchSpec, BenchError> {
        let experiment = match self.experiment {
            ExperimentArg::WsrCompare => Experiment::WsrCompare,
            ExperimentArg::GeeCompare => Experiment::GeeCompare,
            ExperimentArg::Aloha => Experiment::Aloha,
            ExperimentArg::SingleSolve => Experiment::SingleSolve,
        };
        let timeout = match self.timeout_s {
            Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
            Some(t) => return Err(BenchError::Spec(format!("timeout must be positive, got {t}"))),
            None => None,
        };
        if self.trace && self.out.is_none() {
            return Err(BenchError::Spec("--trace needs --out".into()));
        }
        let mut spec = BenchSpec::new(experiment, self.k, self.realizations);
        spec.eta = self.eta;
        spec.relative = self.relative;
        spec.selections = self
            .selection
            .iter()
            .map(|s| match s {
                SelectionArg::Best => SelectionRule::BestFirst,
                SelectionArg::Oldest => SelectionRule::OldestFirst,
            })
            .collect();
        spec.reductions = self.reduction.iter().map(|s| matches!(s, Switch::On)).collect();
        spec.representations = self
            .repr
            .iter()
            .map(|r| match r {
                ReprArg::Mmp => Representation::Mmp,
                ReprArg::Dm => Representation::Dm,
            })
            .collect();
        spec.seed = self.seed;
        spec.max_iterations = self.max_iter;
        spec.timeout = timeout;
        spec.instance = self.instance.clone();
        spec.trace = self.trace;
        Ok(spec)
    }
}

fn write_traces(out: &Path, records: &[RunRecord]) -> Result<(), BenchError> {
    let mut dir = out.as_os_str().to_owned();
    dir.push(".traces");
    let dir = PathBuf::from(dir);
    fs::create_dir_all(&dir).map_err(|e| BenchError::Io { path: dir.clone(), source: e })?;
    for (i, rec) in records.iter().enumerate() {
        let r = &rec.row;
        let name = format!(
            "{i:04}_{}_{}_{}_{}_{}.csv",
            r.instance_id, r.algorithm, r.representation, r.selection, r.reduction
        );
        let path = dir.join(name);
        let file = fs::File::create(&path).map_err(|e| BenchError::Io { path: path.clone(), source: e })?;
        write_trace_csv(&rec.trace, io::BufWriter::new(file)).map_err(|e| BenchError::Io { path, source: e })?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, BenchError> {
    let spec = cli.spec()?;
    let records = run_bench_traced(&spec)?;
    let rows: Vec<_> = records.iter().map(|r| r.row.clone()).collect();
    match &cli.out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| BenchError::Io { path: path.clone(), source: e })?;
            let w = io::BufWriter::new(file);
            match cli.format {
                Format::Csv => write_csv_to(&rows, w)?,
                Format::Json => write_json_to(&rows, w)?,
            }
            if cli.trace {
                write_traces(path, &records)?;
            }
        }
        None => {
            let w = io::stdout().lock();
            match cli.format {
                Format::Csv => write_csv_to(&rows, w)?,
                Format::Json => write_json_to(&rows, w)?,
            }
        }
    }
    let mut clean = true;
    for row in rows.iter().filter(|r| r.is_error()) {
        clean = false;
        let detail = row.error.as_deref().unwrap_or("unknown failure");
        eprintln!("{} ({}/{}): {detail}", row.instance_id, row.algorithm, row.representation);
    }
    Ok(clean)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
