//! Command-line front end: compute hulls, cross-check against the brute-force
//! oracle, time large runs, and render results.

mod io;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use highway_hull::oracle::oracle_clusters;
use highway_hull::{compute_hull, HighwayConfig, Point, Rational, Scalar};
use io::{config, InputError, InstanceFile, MetricName, ResultFile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CONSTRAINT: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "tch",
    version,
    about = "Time-convex hulls with two axis highways"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the hull of an instance file and write the result as JSON.
    Hull {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the construction against the brute-force oracle on random instances.
    Check {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "l1")]
        metric: MetricArg,
        /// Highway speed for L1; ignored for L2INF.
        #[arg(long, default_value = "2")]
        speed: String,
        #[arg(long, default_value_t = 1000)]
        coord_max: i64,
        /// Where to write the first mismatching instance.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the construction at this speed while the oracle keeps `--speed`.
        #[arg(long)]
        fault_speed: Option<String>,
    },
    /// Time the construction on uniform random points in floating point.
    Bench {
        #[arg(long, default_value_t = 10)]
        min_exp: u32,
        #[arg(long, default_value_t = 16)]
        max_exp: u32,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 2.0)]
        speed: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Render a result file as SVG.
    Svg {
        result: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum MetricArg {
    L1,
    L2inf,
}

impl From<MetricArg> for MetricName {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::L1 => MetricName::L1,
            MetricArg::L2inf => MetricName::L2INF,
        }
    }
}

enum Failure {
    Input(InputError),
    Io(String),
    Mismatch(usize),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(InputError::Parse(format!("{}: {e}", path.display()))))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run_hull(input: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let inst = InstanceFile::from_json(&read(input)?)?;
    let (cfg, pts) = inst.decode()?;
    let t = Instant::now();
    let run = compute_hull(&pts, &cfg).map_err(InputError::from)?;
    let elapsed = t.elapsed().as_secs_f64() * 1e3;
    emit(out, &to_json(&ResultFile::from_run(&inst, &run, elapsed)))
}

fn random_instance(rng: &mut ChaCha8Rng, n: usize, hi: i64) -> Vec<Point<Rational>> {
    let mut c = || {
        let d = [1i64, 2, 3, 4][rng.gen_range(0..4)];
        Rational::from_ratio(rng.gen_range(0..=hi * d), d)
    };
    (0..n).map(|_| Point::new(c(), c())).collect()
}

struct CheckArgs {
    trials: usize,
    seed: u64,
    n_max: usize,
    metric: MetricName,
    speed: String,
    coord_max: i64,
    out: Option<PathBuf>,
    fault_speed: Option<String>,
}

fn run_check(a: &CheckArgs) -> Result<(), Failure> {
    let speed = if a.metric == MetricName::L2INF {
        "inf"
    } else {
        a.speed.as_str()
    };
    let cfg = config(a.metric, speed)?;
    let algo_cfg = match (&a.fault_speed, &cfg) {
        (None, _) => cfg.clone(),
        (Some(v), HighwayConfig::L1 { .. }) => config(MetricName::L1, v)?,
        (Some(_), HighwayConfig::L2Inf) => {
            return Err(InputError::Constraint("--fault-speed needs the L1 metric".into()).into())
        }
    };
    if a.coord_max < 1 || a.n_max < 1 {
        return Err(
            InputError::Constraint("--coord-max and --n-max must be positive".into()).into(),
        );
    }
    let results: Vec<Option<Vec<Point<Rational>>>> = (0..a.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed.wrapping_mul(1_000_003) ^ t as u64);
            let n = rng.gen_range(1..=a.n_max);
            let pts = random_instance(&mut rng, n, a.coord_max);
            let got = compute_hull(&pts, &algo_cfg)
                .expect("generated points are valid")
                .partition();
            (got != oracle_clusters(&pts, &cfg).blocks).then_some(pts)
        })
        .collect();
    let bad: Vec<usize> = (0..a.trials).filter(|&t| results[t].is_some()).collect();
    println!(
        "checked {} instances ({}, speed {speed}, seed {}): {} mismatches",
        a.trials,
        match a.metric {
            MetricName::L1 => "L1",
            MetricName::L2INF => "L2INF",
        },
        a.seed,
        bad.len()
    );
    let Some(&first) = bad.first() else {
        return Ok(());
    };
    println!("first mismatch at trial {first}");
    if let Some(path) = &a.out {
        let pts = results[first].as_ref().expect("mismatch recorded");
        emit(
            Some(path),
            &to_json(&InstanceFile::encode(a.metric, speed, pts)),
        )?;
        println!("repro written to {}", path.display());
    }
    Err(Failure::Mismatch(bad.len()))
}

fn run_bench(
    min_exp: u32,
    max_exp: u32,
    reps: usize,
    speed: f64,
    seed: u64,
) -> Result<(), Failure> {
    let cfg = HighwayConfig::l1(speed).map_err(InputError::from)?;
    if min_exp > max_exp || max_exp > 24 || reps == 0 {
        return Err(
            InputError::Constraint("need min-exp <= max-exp <= 24 and reps >= 1".into()).into(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base = None;
    println!(
        "{:>10} {:>12} {:>14} {:>8}",
        "n", "median_s", "s/(n log n)", "rel"
    );
    for e in min_exp..=max_exp {
        let n = 1usize << e;
        let pts: Vec<Point<f64>> = (0..n)
            .map(|_| Point::new(rng.gen_range(0.0..1000.0), rng.gen_range(0.0..1000.0)))
            .collect();
        let mut times: Vec<f64> = (0..reps)
            .map(|_| {
                let t = Instant::now();
                let run = compute_hull(&pts, &cfg).expect("valid points");
                std::hint::black_box(run.hull.clusters.len());
                t.elapsed().as_secs_f64()
            })
            .collect();
        times.sort_by(f64::total_cmp);
        let med = times[times.len() / 2];
        let nf = n as f64;
        let ratio = med / (nf * nf.log2());
        let rel = ratio / *base.get_or_insert(ratio);
        println!("{n:>10} {med:>12.4} {ratio:>14.3e} {rel:>8.2}");
    }
    Ok(())
}

fn run_svg(result: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let r = ResultFile::from_json(&read(result)?)?;
    emit(out, &svg::render(&r)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Hull { input, out } => run_hull(&input, out.as_deref()),
        Command::Check {
            trials,
            seed,
            n_max,
            metric,
            speed,
            coord_max,
            out,
            fault_speed,
        } => run_check(&CheckArgs {
            trials,
            seed,
            n_max,
            metric: metric.into(),
            speed,
            coord_max,
            out,
            fault_speed,
        }),
        Command::Bench {
            min_exp,
            max_exp,
            reps,
            speed,
            seed,
        } => run_bench(min_exp, max_exp, reps, speed, seed),
        Command::Svg { result, out } => run_svg(&result, out.as_deref()),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("tch: {e}");
            ExitCode::from(match e {
                InputError::Parse(_) => EXIT_PARSE,
                InputError::Constraint(_) => EXIT_CONSTRAINT,
            })
        }
        Err(Failure::Io(m)) => {
            eprintln!("tch: {m}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Mismatch(k)) => {
            eprintln!("tch: {k} instances disagree with the oracle");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
