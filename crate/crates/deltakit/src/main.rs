//! Batch front end: parse one input, run one task, write one report.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use deltakit::error::Error;
use deltakit::job::{render, run_job, JobSpec, OutputFormat, Task};

#[derive(Parser)]
#[command(
    name = "deltakit",
    about = "Exact stability thresholds for polarized toric pairs and quantization checks for radial metrics",
    after_help = "Examples:\n  deltakit --catalog P2:O(1) --task invariants\n  deltakit --catalog P1:O(2):bump --task quantize --m-range 2,4,8 --epsilon 0.2\n  deltakit --catalog P1:O(2):theta[0]=1/2 --task probe --format csv\n  deltakit --input geometry.json --task convergence --m-range 1..12"
)]
struct Cli {
    /// Path to a JSON input document.
    #[arg(long, conflicts_with = "catalog")]
    input: Option<PathBuf>,

    /// Catalog key, e.g. P2:O(1) or P1:O(2):bump.
    #[arg(long)]
    catalog: Option<String>,

    /// What to compute.
    #[arg(long, value_enum)]
    task: TaskArg,

    /// Levels as an inclusive range "1..8" or a comma list "2,4,8".
    #[arg(long, default_value = "1..8")]
    m_range: String,

    /// Scaling parameter of the two-sided energy comparison.
    #[arg(long)]
    epsilon: Option<f64>,

    /// Probe exponent grid: "lo:hi:count" or a comma list.
    #[arg(long)]
    lambda_grid: Option<String>,

    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Output path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TaskArg {
    Invariants,
    Quantize,
    Probe,
    Convergence,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn parse_m_range(text: &str) -> Result<Vec<u32>, Error> {
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad m range {text:?}")))?;
        let hi: u32 = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad m range {text:?}")))?;
        if lo == 0 || hi < lo {
            return Err(Error::InvalidInput(format!("bad m range {text:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad m value {t:?}")))
        })
        .collect()
}

fn parse_lambda_grid(text: &str) -> Result<Vec<f64>, Error> {
    let text = text.trim();
    if let Some(parts) = text.split_once(':') {
        let (lo, rest) = parts;
        let (hi, count) = rest
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("bad exponent grid {text:?}")))?;
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad exponent grid {text:?}")))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad exponent grid {text:?}")))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad exponent grid {text:?}")))?;
        if count < 2 || hi <= lo || !hi.is_finite() || !lo.is_finite() {
            return Err(Error::InvalidInput(format!("bad exponent grid {text:?}")));
        }
        return Ok((0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad exponent {t:?}")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<i32, Error> {
    let input = match (&cli.input, &cli.catalog) {
        (Some(path), None) => path.display().to_string(),
        (None, Some(key)) => key.clone(),
        _ => {
            return Err(Error::InvalidInput(
                "exactly one of --input or --catalog is required".into(),
            ))
        }
    };
    let task = match cli.task {
        TaskArg::Invariants => Task::Invariants,
        TaskArg::Quantize => Task::Quantize,
        TaskArg::Probe => Task::Probe,
        TaskArg::Convergence => Task::Convergence,
    };
    let spec = JobSpec {
        input,
        task,
        m_range: parse_m_range(&cli.m_range)?,
        epsilon: cli.epsilon,
        lambda_grid: cli
            .lambda_grid
            .as_deref()
            .map(parse_lambda_grid)
            .transpose()?,
        s_max: 40.0,
        tolerance: cli.tolerance,
        format: match cli.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        },
    };
    let outcome = run_job(&spec)?;
    let text = render(&spec, &outcome)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Inconclusive(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
