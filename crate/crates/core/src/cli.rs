//! `potts-sp` command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::evaluator::{evaluate, partition_polynomial_with, EvalRequest, PolyOptions};
use crate::generator::{random_sp_graph, GeneratorSpec};
use crate::graph::WeightedMultigraph;
use crate::io::{parse_graph, serialize_graph};
use crate::oracle::{brute_force_z, brute_force_z_f64, MAX_SUBSET_EDGES};
use crate::rational::Rational;
use crate::sptree::build_sp_tree;

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const NOT_SERIES_PARALLEL: i32 = 4;
    pub const SINGULAR: i32 = 5;
    pub const MISMATCH: i32 = 6;
    pub const TOO_LARGE: i32 = 7;
    pub const INTERPOLATION: i32 = 8;
    pub const PRECONDITION: i32 = 9;
}

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  I/O error
  2  invalid usage
  3  malformed graph document, weight or q literal
  4  graph is not series-parallel
  5  singular evaluation point (series denominator vanished)
  6  check found a mismatch against brute force
  7  input exceeds a resource cap
  8  polynomial interpolation failed
  9  tree precondition violated (self-loop or disconnected graph)";

/// Largest bench size accepted in exact mode.
pub const MAX_EXACT_BENCH_EDGES: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "potts-sp", version, about = "Exact Potts partition functions on series-parallel graphs", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate Z at one q and print the exact value.
    Eval {
        /// Graph document, or `-` for stdin.
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Use this weight for every edge.
        #[arg(long, allow_hyphen_values = true)]
        v_all: Option<String>,
        #[arg(long)]
        reduce_pendants: bool,
    },
    /// Recover Z as a polynomial in q.
    Poly {
        file: PathBuf,
        /// Chromatic polynomial (every weight set to -1).
        #[arg(long)]
        chromatic: bool,
        #[arg(long)]
        reduce_pendants: bool,
    },
    /// Same as `poly --chromatic`.
    Chromatic {
        file: PathBuf,
        #[arg(long)]
        reduce_pendants: bool,
    },
    /// Print the decomposition tree.
    Tree { file: PathBuf },
    /// Compare against brute-force subset enumeration.
    Check {
        file: PathBuf,
        /// Evaluation points. Options must come before them, since values
        /// such as `-1/2` start with a hyphen.
        #[arg(allow_hyphen_values = true, default_values_t = ["1", "2", "3", "5", "7"].map(String::from))]
        q: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        v_all: Option<String>,
    },
    /// Print a random series-parallel graph document.
    Gen {
        #[arg(long, default_value_t = 10)]
        ops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/100000", allow_hyphen_values = true)]
        wmin: String,
        #[arg(long, default_value = "1/20", allow_hyphen_values = true)]
        wmax: String,
        #[arg(long, default_value_t = 0.5)]
        series_bias: f64,
    },
    /// Time evaluation on generated graphs of the given edge counts.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = BenchMode::Float)]
        mode: BenchMode,
        #[arg(long, default_value = "3")]
        q: String,
        /// Run every q in 1..=40 instead of a single value.
        #[arg(long)]
        q_sweep: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also time brute-force enumeration for sizes up to 20 edges.
        #[arg(long)]
        direct: bool,
        /// Report the median of this many timed runs.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMode {
    Exact,
    Float,
}

impl BenchMode {
    fn label(self) -> &'static str {
        match self {
            BenchMode::Exact => "exact",
            BenchMode::Float => "float",
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BenchRecord {
    pub edges: usize,
    pub vertices: usize,
    /// `exact`, `float`, or `direct-exact` / `direct-float` for brute force.
    pub mode: String,
    pub q: String,
    pub seed: u64,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub mode: BenchMode,
    pub qs: Vec<Rational>,
    pub seed: u64,
    pub direct: bool,
    pub repeat: usize,
}

/// Largest edge count for which `direct` also times brute force.
pub const DIRECT_MAX_EDGES: usize = 20;

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

fn time_median<T>(repeat: usize, mut f: impl FnMut() -> crate::Result<T>) -> crate::Result<f64> {
    let mut times = Vec::with_capacity(repeat.max(1));
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        let out = f()?;
        times.push(start.elapsed().as_secs_f64());
        std::hint::black_box(out);
    }
    Ok(median(times))
}

/// One record per (size, q), plus a brute-force record per pair when
/// `direct` is set and the size is small enough. Only the evaluation call is
/// timed.
pub fn run_bench(config: &BenchConfig) -> crate::Result<Vec<BenchRecord>> {
    if config.sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidSpec("bench sizes must be ascending".into()));
    }
    let mut records = Vec::new();
    for &size in &config.sizes {
        if size == 0 {
            return Err(Error::InvalidSpec("bench sizes must be positive".into()));
        }
        if config.mode == BenchMode::Exact && size > MAX_EXACT_BENCH_EDGES {
            return Err(Error::TooLarge {
                what: "exact-mode bench size",
                actual: size as u128,
                limit: MAX_EXACT_BENCH_EDGES as u128,
            });
        }
        let g = random_sp_graph(&GeneratorSpec::new(size - 1, config.seed))?;
        for q in &config.qs {
            let seconds = match config.mode {
                BenchMode::Exact => time_median(config.repeat, || evaluate(&EvalRequest::new(&g, q.clone())))?,
                BenchMode::Float => {
                    let qf = q.to_f64();
                    time_median(config.repeat, || evaluate(&EvalRequest::new(&g, qf)))?
                }
            };
            let record = |mode: String, wall_time_seconds: f64| BenchRecord {
                edges: g.edge_count(),
                vertices: g.vertex_count(),
                mode,
                q: match config.mode {
                    BenchMode::Exact => q.to_string(),
                    BenchMode::Float => q.to_f64().to_string(),
                },
                seed: config.seed,
                wall_time_seconds,
            };
            records.push(record(config.mode.label().to_string(), seconds));

            if config.direct && size <= DIRECT_MAX_EDGES {
                let seconds = match config.mode {
                    BenchMode::Exact => time_median(config.repeat, || brute_force_z(&g, q))?,
                    BenchMode::Float => {
                        let qf = q.to_f64();
                        time_median(config.repeat, || brute_force_z_f64(&g, qf))?
                    }
                };
                records.push(record(format!("direct-{}", config.mode.label()), seconds));
            }
        }
    }
    Ok(records)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r)?;
    }
    if records.is_empty() {
        writer.write_record(["edges", "vertices", "mode", "q", "seed", "wall_time_seconds"])?;
    }
    writer.flush()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MalformedDocument(_)
        | Error::InvalidWeight(_)
        | Error::NoVertices
        | Error::EndpointOutOfRange { .. } => exit::PARSE,
        Error::NotSeriesParallel { .. } => exit::NOT_SERIES_PARALLEL,
        Error::SingularPoint { .. } => exit::SINGULAR,
        Error::TooLarge { .. } => exit::TOO_LARGE,
        Error::InterpolationFailure(_) => exit::INTERPOLATION,
        Error::Disconnected | Error::SelfLoop(_) => exit::PRECONDITION,
        Error::InvalidSpec(_) | Error::InvalidQ | Error::DivisionByZero | Error::Empty(_) => exit::USAGE,
    }
}

enum Failure {
    Io(String),
    Lib(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Context<'_> {
    fn load(&mut self, path: &PathBuf) -> Result<WeightedMultigraph, Failure> {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
        };
        Ok(parse_graph(&text)?)
    }
}

fn rational_arg(text: &str) -> Result<Rational, Failure> {
    Ok(text.parse::<Rational>()?)
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    let mut ctx = Context { stdin, out };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => exit::OK,
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            exit::IO
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Mismatch) => {
            let _ = writeln!(err, "error: mismatch against brute force");
            exit::MISMATCH
        }
    }
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Result<(), Failure> {
    match command {
        Command::Eval {
            file,
            q,
            v_all,
            reduce_pendants,
        } => {
            let g = ctx.load(&file)?;
            let q = rational_arg(&q)?;
            let v_all = v_all.as_deref().map(rational_arg).transpose()?;
            let req = EvalRequest::new(&g, q)
                .with_weight_override(v_all)
                .with_reduce_pendants(reduce_pendants);
            writeln!(ctx.out, "{}", evaluate(&req)?)?;
        }
        Command::Poly {
            file,
            chromatic,
            reduce_pendants,
        } => print_poly(ctx, &file, chromatic, reduce_pendants)?,
        Command::Chromatic { file, reduce_pendants } => print_poly(ctx, &file, true, reduce_pendants)?,
        Command::Tree { file } => {
            let g = ctx.load(&file)?;
            write!(ctx.out, "{}", build_sp_tree(&g)?.pretty())?;
        }
        Command::Check { file, q, v_all } => {
            let mut g = ctx.load(&file)?;
            if g.edge_count() > MAX_SUBSET_EDGES {
                return Err(Error::TooLarge {
                    what: "edge count",
                    actual: g.edge_count() as u128,
                    limit: MAX_SUBSET_EDGES as u128,
                }
                .into());
            }
            if let Some(w) = v_all.as_deref().map(rational_arg).transpose()? {
                g = g.with_uniform_weight(&w);
            }
            let (mut matched, mut mismatched, mut skipped) = (0usize, 0usize, 0usize);
            for text in &q {
                let q = rational_arg(text)?;
                let oracle = brute_force_z(&g, &q)?;
                match evaluate(&EvalRequest::new(&g, q.clone())) {
                    Ok(sp) if sp == oracle => {
                        matched += 1;
                        writeln!(ctx.out, "q={q} sp={sp} oracle={oracle} MATCH")?;
                    }
                    Ok(sp) => {
                        mismatched += 1;
                        writeln!(ctx.out, "q={q} sp={sp} oracle={oracle} MISMATCH")?;
                    }
                    Err(e) if e.is_singular() => {
                        skipped += 1;
                        writeln!(ctx.out, "q={q} sp=- oracle={oracle} SKIP(singular)")?;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            writeln!(
                ctx.out,
                "#data {}",
                serde_json::json!({"match": matched, "mismatch": mismatched, "skip": skipped})
            )?;
            if mismatched > 0 {
                return Err(Failure::Mismatch);
            }
        }
        Command::Gen {
            ops,
            seed,
            wmin,
            wmax,
            series_bias,
        } => {
            let spec = GeneratorSpec::new(ops, seed)
                .with_weights(rational_arg(&wmin)?, rational_arg(&wmax)?)
                .with_series_bias(series_bias);
            writeln!(ctx.out, "{}", serialize_graph(&random_sp_graph(&spec)?))?;
        }
        Command::Bench {
            sizes,
            mode,
            q,
            q_sweep,
            seed,
            csv,
            direct,
            repeat,
        } => {
            let qs = if q_sweep {
                (1..=40).map(Rational::from_integer).collect()
            } else {
                vec![rational_arg(&q)?]
            };
            let config = BenchConfig {
                sizes,
                mode,
                qs,
                seed,
                direct,
                repeat,
            };
            let records = run_bench(&config)?;
            match csv {
                Some(path) => {
                    write_csv(&records, fs::File::create(&path)?)?;
                    for r in &records {
                        writeln!(
                            ctx.out,
                            "edges={} vertices={} mode={} q={} time={:.6e}s",
                            r.edges, r.vertices, r.mode, r.q, r.wall_time_seconds
                        )?;
                    }
                }
                None => write_csv(&records, &mut *ctx.out)?,
            }
        }
    }
    Ok(())
}

fn print_poly(ctx: &mut Context<'_>, file: &PathBuf, chromatic: bool, reduce_pendants: bool) -> Result<(), Failure> {
    let g = ctx.load(file)?;
    let options = PolyOptions {
        weight_override: chromatic.then(|| Rational::from_integer(-1)),
        reduce_pendants,
    };
    let poly = partition_polynomial_with(&g, &options)?;
    writeln!(ctx.out, "{poly}")?;
    writeln!(
        ctx.out,
        "#data {}",
        serde_json::json!({ "coefficients": poly.coefficient_strings() })
    )?;
    Ok(())
}
