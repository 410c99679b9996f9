//! Batch front end for `heatcorr`.
//!
//! Graph sources are `NAME[:P1[:P2...]]` for a registered family (see
//! `heatcorr analyze --help`), `file:PATH` for an edge list, or
//! `random:N:M:SEED`. Pair indices are 1-based.
//!
//! Exit codes: 0 on success, 1 when a computation fails (the error variant
//! is printed), 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heatcorr::correlation::{check_corollaries, global_correlation, identity_suite, pair_scan};
use heatcorr::report::{
    emit_pair_scan, format_value, product_spectrum_csv, product_spectrum_json, to_json,
    ReportFormat,
};
use heatcorr::spectral::{
    eigendecompose_with, SolverRegistry, SpectralDecomposition, DEFAULT_SOLVER,
};
use heatcorr::timescale::{solve_time_scale, timescale_bounds};
use heatcorr::torus::{random_wave, random_wave_ensemble, torus_product_spectrum, TrigPolynomial};
use heatcorr::{parse_edge_list, Error, Graph, GraphRegistry};
use serde_json::json;

mod selftest;

/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "HEATCORR_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "heatcorr",
    version,
    about = "Heat-flow correlations of Laplacian eigenvectors"
)]
struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum of a graph, or the full correlation report of one pair.
    Analyze(AnalyzeArgs),
    /// Global correlation of every pair 2 <= i <= j <= n.
    Scan(GraphArgs),
    /// Check the heat/local-correlation identity on random (i, j, t) triples.
    Verify(VerifyArgs),
    /// Solve exp(-lambda t) + exp(-mu t) = 1 for t.
    Timescale(TimescaleArgs),
    /// Product of two trigonometric modes and its spectrum.
    TorusProduct(TorusProductArgs),
    /// Random-wave ensemble on the 2-torus.
    TorusWaves(TorusWavesArgs),
    /// Run the built-in verification suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// NAME[:PARAMS], file:PATH or random:N:M:SEED.
    #[arg(long)]
    graph: String,

    /// Eigensolver (jacobi, tridiagonal-ql).
    #[arg(long, default_value = DEFAULT_SOLVER)]
    solver: String,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Eigenvector pair I,J (1-based, both >= 2).
    #[arg(long, value_parser = parse_pair)]
    pair: Option<(usize, usize)>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,

    #[arg(long, default_value_t = 100)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct TimescaleArgs {
    #[arg(long)]
    lambda: f64,

    #[arg(long)]
    mu: f64,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TorusProductArgs {
    /// First factor: sin:M1[:M2], cos:M1[:M2] or wave:MU:SEED.
    #[arg(long, value_parser = parse_term)]
    f: Term,

    /// Second factor, same grammar.
    #[arg(long, value_parser = parse_term)]
    g: Term,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TorusWavesArgs {
    #[arg(long)]
    mu: u64,

    #[arg(long)]
    lambda: u64,

    /// Number of seed pairs.
    #[arg(long, default_value_t = 20)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    /// Identity-suite triples per corpus graph.
    #[arg(long, default_value_t = 100)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s
        .split_once(',')
        .ok_or_else(|| format!("expected I,J, got {s:?}"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad index {x:?}"))
    };
    Ok((parse(i)?, parse(j)?))
}

/// A factor on the command line.
#[derive(Debug, Clone, PartialEq)]
enum Term {
    Sin(Vec<i64>),
    Cos(Vec<i64>),
    Wave { mu: u64, seed: u64 },
}

fn parse_term(s: &str) -> Result<Term, String> {
    let mut parts = s.split(':');
    let kind = parts.next().unwrap_or_default();
    let nums: Vec<&str> = parts.collect();
    let ints = || {
        nums.iter()
            .map(|x| {
                x.parse::<i64>()
                    .map_err(|_| format!("bad frequency {x:?} in {s:?}"))
            })
            .collect::<Result<Vec<_>, _>>()
    };
    match kind {
        "sin" | "cos" => {
            let m = ints()?;
            if !(1..=2).contains(&m.len()) {
                return Err(format!("{kind} takes one or two frequencies, got {s:?}"));
            }
            Ok(if kind == "sin" {
                Term::Sin(m)
            } else {
                Term::Cos(m)
            })
        }
        "wave" => match nums.as_slice() {
            [mu, seed] => Ok(Term::Wave {
                mu: mu.parse().map_err(|_| format!("bad mu in {s:?}"))?,
                seed: seed.parse().map_err(|_| format!("bad seed in {s:?}"))?,
            }),
            _ => Err(format!("expected wave:MU:SEED, got {s:?}")),
        },
        _ => Err(format!(
            "unknown term kind {kind:?} (expected sin, cos or wave)"
        )),
    }
}

impl Term {
    fn dim(&self) -> usize {
        match self {
            Term::Sin(m) | Term::Cos(m) => m.len(),
            Term::Wave { .. } => 2,
        }
    }

    /// Builds the polynomial on the torus of dimension `dim`, padding 1-d
    /// frequencies with a zero second component.
    fn build(&self, dim: usize) -> heatcorr::Result<TrigPolynomial> {
        let freq = |m: &[i64]| [m[0], m.get(1).copied().unwrap_or(0)];
        match self {
            Term::Sin(m) => TrigPolynomial::sin_mode(dim, freq(m)),
            Term::Cos(m) => TrigPolynomial::cos_mode(dim, freq(m)),
            Term::Wave { mu, seed } => random_wave(*mu, *seed),
        }
    }
}

/// Failure of a subcommand: a library error, or a check that ran but did
/// not hold.
#[derive(Debug)]
enum Failure {
    Compute(Error),
    CheckFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(Error::Io(e))
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };

    let result = match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be positive");
            return 2;
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(Failure::CheckFailed(format!("thread pool: {e}"))),
        },
        None => dispatch(cli.command),
    };

    match result {
        Ok(()) => 0,
        Err(Failure::Compute(e)) => {
            eprintln!("error: {}: {e}", e.kind());
            1
        }
        Err(Failure::CheckFailed(msg)) => {
            eprintln!("error: CheckFailed: {msg}");
            1
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Analyze(args) => analyze(args),
        Command::Scan(args) => scan(args),
        Command::Verify(args) => verify(args),
        Command::Timescale(args) => timescale(args),
        Command::TorusProduct(args) => torus_product(args),
        Command::TorusWaves(args) => torus_waves(args),
        Command::Selftest(args) => selftest::run(args.samples, args.seed),
    }
}

fn emit(output: &OutputArgs, text: &str) -> CmdResult {
    match &output.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

pub(crate) fn load_graph(source: &str) -> heatcorr::Result<Graph> {
    match source.strip_prefix("file:") {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Ok(parse_edge_list(&text)?.with_name(source))
        }
        None => GraphRegistry::default().resolve(source),
    }
}

fn decompose(args: &GraphArgs) -> heatcorr::Result<(Graph, SpectralDecomposition)> {
    let graph = load_graph(&args.graph)?;
    let registry = SolverRegistry::default();
    let solver = registry.get(&args.solver)?;
    let dec = eigendecompose_with(&graph.laplacian(), solver)?;
    Ok((graph, dec))
}

fn graph_json(graph: &Graph, dec: &SpectralDecomposition) -> serde_json::Value {
    json!({ "name": graph.name(), "n": graph.n(), "edges": graph.edge_count(), "solver": dec.solver() })
}

const COROLLARY_CS: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

fn analyze(args: AnalyzeArgs) -> CmdResult {
    let (graph, dec) = decompose(&args.graph)?;
    let format = args.graph.output.format;
    let text = match (args.pair, format) {
        (None, Format::Json) => to_json(&json!({
            "graph": graph_json(&graph, &dec),
            "eigenvalues": dec.eigenvalues(),
            "clusters": dec.clusters(),
        }))?,
        (None, Format::Csv) => {
            let mut out = String::from("k,eigenvalue,cluster\n");
            for k in 1..=dec.n() {
                let cluster = dec
                    .clusters()
                    .iter()
                    .position(|c| c.contains(k))
                    .unwrap_or(0)
                    + 1;
                let _ = writeln!(out, "{k},{},{cluster}", format_value(dec.eigenvalue(k)));
            }
            out
        }
        (Some((i, j)), Format::Json) => {
            let report = global_correlation(&dec, i, j)?;
            let corollaries = check_corollaries(&dec, &report, &COROLLARY_CS)?;
            let spectrum: serde_json::Value =
                serde_json::from_str(&product_spectrum_json(&dec.product_spectrum(i, j)?)?)
                    .map_err(Error::from)?;
            to_json(&json!({
                "graph": graph_json(&graph, &dec),
                "correlation": report,
                "corollaries": corollaries,
                "product_spectrum": spectrum,
            }))?
        }
        (Some((i, j)), Format::Csv) => {
            global_correlation(&dec, i, j)?;
            product_spectrum_csv(&dec.product_spectrum(i, j)?)
        }
    };
    emit(&args.graph.output, &text)
}

fn scan(args: GraphArgs) -> CmdResult {
    let (_, dec) = decompose(&args)?;
    let report = pair_scan(&dec)?;
    let text = emit_pair_scan(&report, args.output.format.into())?;
    emit(&args.output, &text)
}

fn verify(args: VerifyArgs) -> CmdResult {
    let (graph, dec) = decompose(&args.graph)?;
    let suite = identity_suite(&dec, args.samples, args.seed)?;
    let text = match args.graph.output.format {
        Format::Json => to_json(
            &json!({ "graph": graph_json(&graph, &dec), "suite": suite, "holds": suite.holds() }),
        )?,
        Format::Csv => format!(
            "samples,max_residual,max_scaled_residual\n{},{},{}\n",
            suite.samples,
            format_value(suite.max_residual),
            format_value(suite.max_scaled_residual)
        ),
    };
    if args.graph.output.output.is_some() {
        emit(&args.graph.output, &text)?;
    }
    println!(
        "graph: {} ({} vertices, {} edges)",
        args.graph.graph,
        graph.n(),
        graph.edge_count()
    );
    println!("samples: {}", suite.samples);
    println!(
        "max identity residual: {}",
        format_value(suite.max_residual)
    );
    if suite.holds() {
        Ok(())
    } else {
        Err(Failure::CheckFailed(format!(
            "identity residual {} exceeds tolerance",
            format_value(suite.max_scaled_residual)
        )))
    }
}

fn timescale(args: TimescaleArgs) -> CmdResult {
    let ts = solve_time_scale(args.lambda, args.mu)?;
    let (lower, upper) = timescale_bounds(args.lambda, args.mu)?;
    let text = match args.output.format {
        Format::Json => to_json(&json!({
            "lambda": ts.lambda,
            "mu": ts.mu,
            "t_star": ts.t_star,
            "residual": ts.residual,
            "bracket": [lower, upper],
            "bracket_ratio": ts.bracket_ratio(),
            "within_bracket": ts.within_bracket(),
        }))?,
        Format::Csv => format!(
            "lambda,mu,t_star,residual,bracket_ratio\n{},{},{},{},{}\n",
            format_value(ts.lambda),
            format_value(ts.mu),
            format_value(ts.t_star),
            format_value(ts.residual),
            format_value(ts.bracket_ratio())
        ),
    };
    emit(&args.output, &text)
}

fn torus_product(args: TorusProductArgs) -> CmdResult {
    let dim = args.f.dim().max(args.g.dim());
    let f = args.f.build(dim)?;
    let g = args.g.build(dim)?;
    let spectrum = torus_product_spectrum(&f, &g)?;
    let text = match args.output.format {
        Format::Json => {
            let rows: Vec<_> = spectrum
                .iter()
                .map(|(e, m)| json!({ "eigenvalue": e, "mass": m }))
                .collect();
            to_json(&json!({ "product": f.product(&g)?, "spectrum": rows }))?
        }
        Format::Csv => {
            let mut out = String::from("eigenvalue,mass\n");
            for (e, m) in &spectrum {
                let _ = writeln!(out, "{e},{}", format_value(*m));
            }
            out
        }
    };
    emit(&args.output, &text)
}

fn torus_waves(args: TorusWavesArgs) -> CmdResult {
    let ensemble = random_wave_ensemble(args.mu, args.lambda, args.samples, args.seed)?;
    let text = match args.output.format {
        Format::Json => to_json(&ensemble)?,
        Format::Csv => {
            let mut out =
                String::from("seed_mu,seed_lambda,t_star,global_normalized,predicted,ratio\n");
            for s in &ensemble.samples {
                let c = &s.correlation;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    s.seed_mu,
                    s.seed_lambda,
                    format_value(c.t_star),
                    format_value(c.global_normalized),
                    format_value(c.predicted),
                    format_value(s.ratio)
                );
            }
            let _ = writeln!(out, "mean,,,,,{}", format_value(ensemble.mean_ratio));
            out
        }
    };
    emit(&args.output, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_grammar() {
        assert_eq!(parse_pair("2,5"), Ok((2, 5)));
        assert_eq!(parse_pair(" 3 , 4"), Ok((3, 4)));
        assert!(parse_pair("2").is_err());
        assert!(parse_pair("a,b").is_err());
    }

    #[test]
    fn term_grammar() {
        assert_eq!(parse_term("sin:3"), Ok(Term::Sin(vec![3])));
        assert_eq!(parse_term("cos:1:2"), Ok(Term::Cos(vec![1, 2])));
        assert_eq!(parse_term("wave:25:7"), Ok(Term::Wave { mu: 25, seed: 7 }));
        assert!(parse_term("tan:1").is_err());
        assert!(parse_term("sin").is_err());
        assert!(parse_term("sin:1:2:3").is_err());
        assert!(parse_term("wave:5").is_err());
    }

    #[test]
    fn terms_pad_to_common_dimension() {
        let f = parse_term("sin:3").unwrap().build(2).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.support().collect::<Vec<_>>(), vec![[-3, 0], [3, 0]]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
