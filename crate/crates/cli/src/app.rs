use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use bolano_core::io::{parse_poly, render, Format};
use bolano_core::{
    commutator_no, lme_expval_evo, normal_order, Dissipator, Error, LadderPoly, LindbladSpec,
    ParallelConfig, Scalar,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, Algo, BenchConfig, CSV_HEADER};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Usage = 2,
    Io = 3,
    Internal = 4,
}

#[derive(Parser, Debug)]
#[command(
    name = "bolano",
    version,
    about = "Normal ordering of bosonic ladder-operator polynomials"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Latex, global = true)]
    pub format: OutputFormat,
    /// Worker threads for normal ordering.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Minimum number of summands before work is split across threads.
    #[arg(long, global = true)]
    pub min_summands: Option<i64>,
    /// Normal-order on the calling thread only.
    #[arg(long, global = true)]
    pub no_parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Latex,
    Record,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Plain => Format::Plain,
            OutputFormat::Latex => Format::Latex,
            OutputFormat::Record => Format::Record,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Blasiak,
    Baseline,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal-order an expression.
    No { expr: String },
    /// Normal-ordered commutator [A, B].
    Comm { a: String, b: String },
    /// Evolution equation of an expectation value under a Lindblad master equation.
    Lme {
        #[arg(long)]
        ham: String,
        /// `rate;O` or `rate;O;P`. Repeatable.
        #[arg(long = "dissipator")]
        dissipators: Vec<String>,
        #[arg(long)]
        observable: String,
        /// Keep hbar symbolic instead of setting it to one.
        #[arg(long)]
        keep_hbar: bool,
    },
    /// Time both algorithms on seeded random monomials.
    Bench {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        ops: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        modes: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = AlgoArg::Both)]
        algo: AlgoArg,
        /// Write records here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Time each word this many times and keep the fastest.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        repeats: u64,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn parallel_config(g: &GlobalArgs, default: ParallelConfig) -> Result<ParallelConfig, Failure> {
    let mut cfg = default;
    if let Some(w) = g.workers {
        if w == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        cfg.workers = w;
        cfg.enable = true;
    }
    if let Some(m) = g.min_summands {
        cfg.min_summands = m;
    }
    if g.no_parallel {
        cfg.enable = false;
    }
    Ok(cfg)
}

fn poly(text: &str, what: &str) -> Result<LadderPoly, Failure> {
    parse_poly(text).map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn dissipator(spec: &str) -> Result<Dissipator, Failure> {
    let parts: Vec<&str> = spec.split(';').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(Failure::Usage(format!(
            "dissipator {spec:?}: expected `rate;O` or `rate;O;P`"
        )));
    }
    let rate = poly(parts[0], "dissipator rate")?;
    let rate = match rate.len() {
        0 => Scalar::zero(),
        1 => {
            let (w, c) = rate.iter().next().unwrap();
            if !w.is_empty() {
                return Err(Failure::Usage(format!(
                    "dissipator rate {:?} contains operators",
                    parts[0]
                )));
            }
            c.clone()
        }
        _ => {
            return Err(Failure::Usage(format!(
                "dissipator rate {:?} contains operators",
                parts[0]
            )))
        }
    };
    let o = poly(parts[1], "dissipator operator")?;
    Ok(match parts.get(2) {
        Some(p) => Dissipator::with_partner(rate, o, poly(p, "dissipator partner")?),
        None => Dissipator::new(rate, o),
    })
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let format = Format::from(cli.global.format);
    match &cli.command {
        Command::No { expr } => {
            let cfg = parallel_config(&cli.global, ParallelConfig::from_env()?)?;
            let n = normal_order(&poly(expr, "expression")?, &cfg);
            writeln!(out, "{}", render(&n, format))?;
        }
        Command::Comm { a, b } => {
            let cfg = parallel_config(&cli.global, ParallelConfig::from_env()?)?;
            let n = commutator_no(&poly(a, "A")?, &poly(b, "B")?, &cfg);
            writeln!(out, "{}", render(&n, format))?;
        }
        Command::Lme {
            ham,
            dissipators,
            observable,
            keep_hbar,
        } => {
            let cfg = parallel_config(&cli.global, ParallelConfig::from_env()?)?;
            let spec = LindbladSpec {
                hamiltonian: poly(ham, "Hamiltonian")?,
                dissipators: dissipators
                    .iter()
                    .map(|d| dissipator(d))
                    .collect::<Result<_, _>>()?,
                hbar_is_one: !keep_hbar,
            };
            let eq = lme_expval_evo(&spec, &poly(observable, "observable")?, &cfg)?;
            writeln!(out, "{}", render(&eq, format))?;
        }
        Command::Bench {
            ops,
            modes,
            trials,
            seed,
            algo,
            out: path,
            repeats,
        } => {
            let mut cfg = BenchConfig::new(*ops as usize, *modes as usize, *trials as usize, *seed);
            cfg.algos = match algo {
                AlgoArg::Blasiak => vec![Algo::Blasiak],
                AlgoArg::Baseline => vec![Algo::Baseline],
                AlgoArg::Both => vec![Algo::Blasiak, Algo::Baseline],
            };
            cfg.repeats = *repeats as usize;
            cfg.parallel = parallel_config(&cli.global, ParallelConfig::serial())?;

            let mut file = match path {
                Some(p) => Some(BufWriter::new(
                    File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
                )),
                None => None,
            };
            let report = run_bench(&cfg).map_err(|m| Failure::Internal(m.to_string()))?;
            let sink: &mut dyn Write = match file.as_mut() {
                Some(f) => f,
                None => &mut *out,
            };
            let record = format == Format::Record;
            if !record {
                writeln!(sink, "{CSV_HEADER}")?;
            }
            for r in &report.records {
                if record {
                    writeln!(
                        sink,
                        "{{\"schema_version\":1,\"kind\":\"bench_record\",\"seed\":{},\"trial\":{},\"n_ops\":{},\
                         \"n_modes\":{},\"algo\":\"{}\",\"nanos\":{},\"terms\":{}}}",
                        r.seed,
                        r.trial,
                        r.n_ops,
                        r.n_modes,
                        r.algo.name(),
                        r.nanos,
                        r.terms
                    )?;
                } else {
                    writeln!(sink, "{}", r.csv_line())?;
                }
            }
            sink.flush()?;
            if let Some(s) = &report.summary {
                match file {
                    Some(_) => writeln!(out, "{s}")?,
                    None => writeln!(err, "{s}")?,
                }
            }
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status. Panics inside a command are reported as internal errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                ExitCode::Usage
            } else {
                let _ = write!(out, "{text}");
                ExitCode::Success
            };
        }
    };
    let result =
        panic::catch_unwind(AssertUnwindSafe(|| execute(&cli, out, err))).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            Err(Failure::Internal(msg))
        });
    match result {
        Ok(()) => ExitCode::Success,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            ExitCode::Usage
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "I/O error: {m}");
            ExitCode::Io
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            ExitCode::Internal
        }
    }
}
