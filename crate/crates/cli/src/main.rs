//! Command-line harness around the estimator library: load or generate
//! operator pairs, run the estimators with explicit seeds, and emit JSON
//! reports plus CSV traces.
//!
//! Exit codes: 0 success (or verdict ADJOINT), 1 verdict MISMATCH,
//! 2 configuration error, 3 dimension error.

mod matrix_io;
mod runs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use adjmm::operator::DenseMatrix;
use adjmm::oracle::{adjointness_test, jacobi_svd};
use adjmm::sampling::rng_from_seed;
use adjmm::tomo::ProjectorGeometry;
use adjmm::RunConfig;

use runs::{run_repeats, write_trace_csv, Failure, JsonReport, PairSpec};

#[derive(Parser)]
#[command(name = "adjmm", version, about = "Estimate the operator norm of the mismatch between a forward operator A and the operator V implied by an adjoint implementation V*, using only matrix-vector products.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a norm estimation and print a JSON report per repeat.
    Estimate(EstimateArgs),
    /// Decide whether an operator pair is adjoint and print a verdict.
    AdjointCheck(AdjointCheckArgs),
    /// Sweep Gaussian problem sizes with both algorithms; emit long CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    /// One joint step size for both iterates.
    OneStep,
    /// Independent optimal step sizes.
    TwoStep,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagMode {
    /// Only oracle-legal quantities; no residual column.
    BlackBox,
    /// Materialize the dense difference and record eigen-residuals.
    DenseTest,
}

/// Where the operator pair comes from. Exactly one source must be given.
#[derive(Args)]
struct SourceArgs {
    /// CSV file for the dense forward operator A (first line `m,d`).
    #[arg(long, value_name = "FILE", requires = "v")]
    a: Option<PathBuf>,
    /// CSV file for the dense operator V whose transpose plays V*.
    #[arg(long, value_name = "FILE", requires = "a")]
    v: Option<PathBuf>,
    /// Generate seeded Gaussian A and V of the given shape.
    #[arg(long, value_names = ["M", "D"], num_args = 2, conflicts_with_all = ["a", "v"])]
    gaussian: Option<Vec<usize>>,
    /// With --gaussian: set V = 0 instead of drawing it.
    #[arg(long, requires = "gaussian")]
    v_zero: bool,
    /// Tomography pair: image size, number of angles, detector bins.
    #[arg(long, value_names = ["N", "ANGLES", "BINS"], num_args = 3,
          conflicts_with_all = ["a", "v", "gaussian"])]
    tomo: Option<Vec<usize>>,
    /// With --tomo: use the pixel-driven (non-adjoint) backprojector.
    #[arg(long, requires = "tomo")]
    mismatched: bool,
}

impl SourceArgs {
    fn resolve(&self, seed: u64) -> Result<PairSpec, Failure> {
        if let (Some(a_path), Some(v_path)) = (&self.a, &self.v) {
            let a = matrix_io::read_matrix(a_path)?;
            let v = matrix_io::read_matrix(v_path)?;
            return Ok(PairSpec::Dense { a, v });
        }
        if let Some(shape) = &self.gaussian {
            let (m, d) = (shape[0], shape[1]);
            if m < 2 || d < 2 {
                return Err(Failure::config("gaussian shape must be at least 2x2"));
            }
            let mut rng = rng_from_seed(seed);
            let a = DenseMatrix::gaussian(m, d, &mut rng);
            let v = if self.v_zero {
                DenseMatrix::zeros(m, d)
            } else {
                DenseMatrix::gaussian(m, d, &mut rng)
            };
            return Ok(PairSpec::Dense { a, v });
        }
        if let Some(dims) = &self.tomo {
            let geom = ProjectorGeometry::parallel(dims[0], dims[1], dims[2])
                .map_err(Failure::from)?;
            return Ok(PairSpec::Tomo {
                geom,
                mismatched: self.mismatched,
            });
        }
        Err(Failure::config(
            "no operator source: give --a/--v, --gaussian M D, or --tomo N ANGLES BINS",
        ))
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "two-step")]
    algorithm: AlgorithmArg,
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    /// Stopping threshold on the per-iteration ascent statistics.
    #[arg(long, default_value_t = 1e-8)]
    eps: f64,
    /// Consecutive sub-eps draws required before stopping.
    #[arg(long, default_value_t = 5)]
    patience: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative threshold for concluding A = V at initialization.
    #[arg(long, default_value_t = 1e-12)]
    null_tol: f64,
}

impl RunArgs {
    fn config(&self, seed: u64) -> RunConfig {
        RunConfig {
            max_iters: self.max_iters,
            eps: self.eps,
            patience: self.patience,
            seed,
            null_tol: self.null_tol,
            ..RunConfig::default()
        }
    }
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    run: RunArgs,
    /// Independent repeats; repeat i runs with seed XOR i.
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// Write the per-iteration trace CSV here (all repeats, in order).
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "black-box")]
    diag_mode: DiagMode,
}

#[derive(Args)]
struct AdjointCheckArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Verdict threshold on estimate / scale, where scale is sigma_1 of
    /// the forward operator.
    #[arg(long, default_value_t = 1e-7)]
    threshold: f64,
    /// Random unit pairs for the independent dot-product test.
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated problem shapes, e.g. 10x50,50x50,100x50.
    #[arg(long, value_name = "LIST")]
    sizes: String,
    #[arg(long, default_value_t = 50)]
    repeats: usize,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::AdjointCheck(args) => cmd_adjoint_check(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn cmd_estimate(args: EstimateArgs) -> Result<u8, Failure> {
    if args.repeats < 1 {
        return Err(Failure::config("repeats must be at least 1"));
    }
    let spec = args.source.resolve(args.run.seed)?;
    if args.diag_mode == DiagMode::DenseTest && spec.dense_difference().is_none() {
        return Err(Failure::config(
            "dense-test diagnostics need dense operators (--a/--v or --gaussian)",
        ));
    }
    let algorithm = match args.run.algorithm {
        AlgorithmArg::OneStep => adjmm::Algorithm::OneStep,
        AlgorithmArg::TwoStep => adjmm::Algorithm::TwoStep,
    };
    let base = args.run.config(args.run.seed);
    let with_residuals = args.diag_mode == DiagMode::DenseTest;

    let reports = run_repeats(&spec, algorithm, &base, args.repeats, with_residuals)?;

    let mut stdout = String::new();
    for (repeat, report) in reports.iter().enumerate() {
        let seed = base.seed ^ repeat as u64;
        let line = JsonReport::from_report(report, seed);
        stdout.push_str(&serde_json::to_string(&line).expect("report serializes"));
        stdout.push('\n');
    }
    print!("{stdout}");

    if let Some(path) = &args.trace {
        let mut body = String::new();
        write_trace_csv(&mut body, reports.iter().flat_map(|r| r.report.trace.iter()));
        std::fs::write(path, body)
            .map_err(|e| Failure::config(format!("cannot write trace {}: {e}", path.display())))?;
    }
    Ok(0)
}

fn cmd_adjoint_check(args: AdjointCheckArgs) -> Result<u8, Failure> {
    let spec = args.source.resolve(args.seed)?;

    let (forward, adjoint) = spec.build_oracles()?;
    let mut rng = rng_from_seed(args.seed);
    let trials = args.trials.max(1);
    let dot_defect = adjointness_test(forward.as_ref(), adjoint.as_ref(), trials, &mut rng);

    let config = RunConfig {
        max_iters: args.max_iters,
        seed: args.seed,
        ..RunConfig::default()
    };
    let pair = spec.build_pair()?;
    let report = adjmm::run_two(&pair, &config).map_err(Failure::from)?;

    let scale = jacobi_svd(&spec.forward_dense()?)
        .map_err(Failure::from)?
        .sigma1();
    let relative = if scale > 0.0 {
        report.estimate / scale
    } else {
        report.estimate
    };
    let adjoint_verdict = relative <= args.threshold;

    let out = serde_json::json!({
        "estimate": report.estimate,
        "scale": scale,
        "relative_estimate": relative,
        "adjointness_defect": dot_defect,
        "verdict": if adjoint_verdict { "ADJOINT" } else { "MISMATCH" },
    });
    println!("{out}");
    Ok(if adjoint_verdict { 0 } else { 1 })
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Failure> {
    if args.repeats < 1 {
        return Err(Failure::config("repeats must be at least 1"));
    }
    let sizes = parse_sizes(&args.sizes)?;
    let mut csv = String::from("size,algo,repeat,iter,rel_error\n");

    for &(m, d) in &sizes {
        for repeat in 0..args.repeats {
            let seed = args.seed ^ repeat as u64;
            let mut rng = rng_from_seed(seed);
            let a = DenseMatrix::gaussian(m, d, &mut rng);
            let v = DenseMatrix::gaussian(m, d, &mut rng);
            let sigma1 = jacobi_svd(&a.sub(&v).map_err(Failure::from)?)
                .map_err(Failure::from)?
                .sigma1();
            let config = RunConfig {
                max_iters: args.max_iters,
                seed,
                ..RunConfig::default()
            };
            for (algo_name, algorithm) in [
                ("one-step", adjmm::Algorithm::OneStep),
                ("two-step", adjmm::Algorithm::TwoStep),
            ] {
                let spec = PairSpec::Dense {
                    a: a.clone(),
                    v: v.clone(),
                };
                let pair = spec.build_pair()?;
                let report = match algorithm {
                    adjmm::Algorithm::OneStep => adjmm::run_one(&pair, &config),
                    adjmm::Algorithm::TwoStep => adjmm::run_two(&pair, &config),
                }
                .map_err(Failure::from)?;
                for row in &report.trace {
                    let rel = (sigma1 - row.objective) / sigma1;
                    csv.push_str(&format!("{m}x{d},{algo_name},{repeat},{},{rel}\n", row.iter));
                }
            }
        }
    }

    match &args.out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn parse_sizes(list: &str) -> Result<Vec<(usize, usize)>, Failure> {
    let mut sizes = Vec::new();
    for token in list.split(',') {
        let (m, d) = token
            .split_once('x')
            .ok_or_else(|| Failure::config(format!("bad size `{token}`, expected MxD")))?;
        let m: usize = m
            .trim()
            .parse()
            .map_err(|_| Failure::config(format!("bad size `{token}`")))?;
        let d: usize = d
            .trim()
            .parse()
            .map_err(|_| Failure::config(format!("bad size `{token}`")))?;
        if m < 2 || d < 2 {
            return Err(Failure::config(format!("size `{token}` below 2x2")));
        }
        sizes.push((m, d));
    }
    if sizes.is_empty() {
        return Err(Failure::config("size list is empty"));
    }
    Ok(sizes)
}
