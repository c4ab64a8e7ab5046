//! The `hyperspectra` command line.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 parse error, 3 validation
//! error or refused input, 4 an asserted bound or a verify check failed.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{equality_consistency_report, evaluate_catalog, write_csv, BoundEvaluation, Context, Tolerances};
use crate::eigen::{Spectra, DEFAULT_TOL};
use crate::generate::Family;
use crate::hypergraph::{binomial, Hypergraph};
use crate::io::{parse, serialize, Format};
use crate::report::atomic_write;
use crate::sweep::{run_sweep, SweepConfig, SweepFamily};
use crate::verify::{verify, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hyperspectra", version, about = "Spectra of uniform hypergraphs and an audit of their eigenvalue bounds")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the adjacency, Laplacian and signless Laplacian spectra as JSON.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Evaluate all 25 bounds.
    Bounds(BoundsArgs),
    /// Write a member of a named family.
    Generate(GenerateArgs),
    /// Evaluate the catalog over a seeded corpus.
    Sweep(SweepArgs),
    /// Write the k-uniform complement.
    Complement {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full invariant suite on one input.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Emit the checks as JSON instead of one line each.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Hypergraph file (`.hg` text or `.json`); `-` reads stdin.
    file: PathBuf,
    /// Refuse disconnected input with exit code 3.
    #[arg(long)]
    require_connected: bool,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output path; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Output format; by default taken from the output extension.
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FileFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// JSON report (the default).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// CSV report, one row per bound.
    #[arg(long)]
    csv: bool,
    /// Slack tolerance; also the equality tolerance unless --eq-tol is given.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    eq_tol: Option<f64>,
    /// Add the equality-consistency report and the audited findings.
    #[arg(long)]
    audit: bool,
    /// Evaluate disconnected or non-uniform input instead of refusing it.
    #[arg(long)]
    allow_any: bool,
    /// Audited findings also produce exit code 4.
    #[arg(long)]
    strict_audit: bool,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// completeUniform, singleEdge, completeBipartiteGraph,
    /// completeBipartiteUniform or randomConnectedUniform.
    family: String,
    params: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepFamilyArg {
    Random,
    SingleEdge,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Vertex counts, `a..b` (inclusive) or a single value.
    #[arg(long, default_value = "3..7", value_parser = parse_range)]
    n: (usize, usize),
    /// Ranks, comma separated values or `a..b`.
    #[arg(long, default_value = "3", value_parser = parse_set)]
    k: RankSet,
    /// Edge counts, `a..b` or a single value.
    #[arg(long, default_value = "1..12", value_parser = parse_range)]
    m: (usize, usize),
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    family: SweepFamilyArg,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    eq_tol: Option<f64>,
    /// CSV output path.
    #[arg(short, long)]
    output: PathBuf,
    /// Summary JSON path; defaults to the CSV path with `.summary.json`.
    #[arg(long)]
    summary: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = |_| format!("`{s}` is not a range like 3..7");
    match s.split_once("..") {
        Some((a, b)) => Ok((a.trim().parse().map_err(bad)?, b.trim_start_matches('=').trim().parse().map_err(bad)?)),
        None => {
            let v = s.trim().parse().map_err(bad)?;
            Ok((v, v))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct RankSet(Vec<usize>);

fn parse_set(s: &str) -> Result<RankSet, String> {
    if s.contains("..") {
        let (a, b) = parse_range(s)?;
        return Ok(RankSet((a..=b).collect()));
    }
    let values: Result<Vec<usize>, String> =
        s.split(',').map(|t| t.trim().parse().map_err(|_| format!("`{t}` is not an integer"))).collect();
    values.map(RankSet)
}

fn tolerances(tol: Option<f64>, eq_tol: Option<f64>) -> Result<Tolerances, Failure> {
    let d = Tolerances::default();
    let t = Tolerances { slack: tol.unwrap_or(d.slack), equality: eq_tol.or(tol).unwrap_or(d.equality) };
    if !(t.slack >= 0.0 && t.equality >= 0.0 && t.slack.is_finite() && t.equality.is_finite()) {
        return Err(Failure(EXIT_USAGE, "tolerances must be finite and nonnegative".into()));
    }
    Ok(t)
}

/// An exit code with a one-line diagnostic.
#[derive(Debug)]
struct Failure(i32, String);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_USAGE, format!("i/o error: {e}"))
    }
}

/// Parses `args` and runs the command, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Spectrum { input } => spectrum(&input, out),
        Command::Bounds(args) => bounds(&args, out),
        Command::Generate(args) => generate(&args, out),
        Command::Sweep(args) => sweep(&args, err),
        Command::Complement { input, output } => complement(&input, &output, out),
        Command::Verify { input, json } => verify_cmd(&input, json, out),
    }
}

fn load(input: &InputArgs) -> Result<Hypergraph, Failure> {
    let path = input.file.to_string_lossy().into_owned();
    let content = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&input.file).map_err(|e| Failure(EXIT_USAGE, format!("cannot read {path}: {e}")))?
    };
    let format = Format::detect(Some(&path), &content);
    let raw = parse(&content, format).map_err(|e| Failure(EXIT_PARSE, format!("{path}: {e}")))?;
    let h = raw.validate().map_err(|e| Failure(EXIT_INVALID, format!("{path}: {e}")))?;
    if input.require_connected && !h.is_connected() {
        return Err(Failure(EXIT_INVALID, format!("{path}: hypergraph is not connected")));
    }
    Ok(h)
}

fn print_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

fn spectrum(input: &InputArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let h = load(input)?;
    let spectra = Spectra::of(&h, DEFAULT_TOL).map_err(|e| Failure(EXIT_FAILED, e.to_string()))?;
    print_json(
        out,
        &json!({
            "n": h.vertex_count(),
            "m": h.edge_count(),
            "k": h.uniformity(),
            "adjacency": spectra.adjacency.reported(),
            "laplacian": spectra.laplacian.reported(),
            "signlessLaplacian": spectra.signless_laplacian.reported(),
            "summary": spectra.summary(),
        }),
    )?;
    Ok(EXIT_OK)
}

fn bounds(args: &BoundsArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let h = load(&args.input)?;
    let tol = tolerances(args.tol, args.eq_tol)?;
    if !args.allow_any {
        if h.uniformity().is_none() {
            return Err(Failure(EXIT_INVALID, "hypergraph is not uniform (use --allow-any to evaluate anyway)".into()));
        }
        if !h.is_connected() {
            return Err(Failure(EXIT_INVALID, "hypergraph is not connected (use --allow-any to evaluate anyway)".into()));
        }
    }
    let ctx = Context::build(&h, DEFAULT_TOL).map_err(|e| Failure(EXIT_FAILED, e.to_string()))?;
    let evals = evaluate_catalog(&h, &ctx, tol);
    let failures: Vec<&str> = evals.iter().filter(|e| e.is_asserted_failure()).map(|e| e.bound_id).collect();
    let findings: Vec<&BoundEvaluation> = evals.iter().filter(|e| e.is_finding()).collect();
    if args.csv {
        write_csv(&evals, &mut *out).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    } else {
        let mut report = json!({
            "n": h.vertex_count(),
            "m": h.edge_count(),
            "k": h.uniformity(),
            "tolerances": { "slack": tol.slack, "equality": tol.equality },
            "evaluations": evals,
            "assertedFailures": failures,
        });
        if args.audit {
            report["equalityConsistency"] = json!(equality_consistency_report(&evals));
            report["findings"] = json!(findings);
        }
        print_json(out, &report)?;
    }
    let failed = !failures.is_empty() || (args.strict_audit && !findings.is_empty());
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn output_format(output: &OutputArgs) -> Format {
    match output.format {
        Some(FileFormat::Json) => Format::Json,
        Some(FileFormat::Text) => Format::Text,
        None => Format::detect(output.output.as_deref().and_then(Path::to_str), ""),
    }
}

fn emit(output: &OutputArgs, h: &Hypergraph, out: &mut dyn Write) -> Result<(), Failure> {
    let text = serialize(h, output_format(output));
    match &output.output {
        Some(path) => atomic_write(path, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let h = Family::from_args(&args.family, &args.params, args.seed)
        .and_then(|f| f.generate())
        .map_err(|e| Failure(EXIT_INVALID, e.to_string()))?;
    emit(&args.output, &h, out)?;
    Ok(EXIT_OK)
}

fn complement(input: &InputArgs, output: &OutputArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let h = load(input)?;
    let k = h.uniformity().ok_or_else(|| Failure(EXIT_INVALID, "complement needs a uniform hypergraph".into()))?;
    let total = binomial(h.vertex_count() as i64, k as i64);
    if total > crate::bounds::COMPLEMENT_CAP {
        return Err(Failure(EXIT_INVALID, format!("resource cap: C(n,k) = {total} candidate edges")));
    }
    let c = h.complement().map_err(|e| Failure(EXIT_INVALID, e.to_string()))?;
    emit(output, &c, out)?;
    Ok(EXIT_OK)
}

fn sweep(args: &SweepArgs, err: &mut dyn Write) -> Result<i32, Failure> {
    let config = SweepConfig {
        family: match args.family {
            SweepFamilyArg::Random => SweepFamily::RandomConnectedUniform,
            SweepFamilyArg::SingleEdge => SweepFamily::SingleEdge,
        },
        n_range: args.n.0..=args.n.1,
        k_set: args.k.0.clone(),
        m_range: args.m.0..=args.m.1,
        samples: args.samples,
        seed: args.seed,
        tolerances: tolerances(args.tol, args.eq_tol)?,
    };
    let start = Instant::now();
    let result = run_sweep(&config, args.workers).map_err(|e| Failure(EXIT_INVALID, e.to_string()))?;
    let csv = result.to_csv().map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    let summary_path = args.summary.clone().unwrap_or_else(|| args.output.with_extension("summary.json"));
    atomic_write(&args.output, &csv)?;
    atomic_write(&summary_path, result.summary_json().as_bytes())?;
    let s = &result.summary;
    writeln!(
        err,
        "{} instances, {} skipped cells, {} asserted violations, {} audited findings in {:.2?}",
        s.instances,
        s.skipped_cells.len(),
        s.violations.len(),
        s.bounds.iter().map(|b| b.findings).sum::<usize>(),
        start.elapsed()
    )?;
    Ok(if s.violations.is_empty() { EXIT_OK } else { EXIT_FAILED })
}

fn verify_cmd(input: &InputArgs, as_json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let h = load(input)?;
    let report = verify(&h);
    if as_json {
        print_json(out, &json!(report))?;
    } else {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            writeln!(out, "{tag}  {}: {}", c.name, c.detail)?;
        }
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("hyperspectra").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..7"), Ok((3, 7)));
        assert_eq!(parse_range("3..=7"), Ok((3, 7)));
        assert_eq!(parse_range("5"), Ok((5, 5)));
        assert!(parse_range("a..b").is_err());
        assert_eq!(parse_set("2,3,4"), Ok(RankSet(vec![2, 3, 4])));
        assert_eq!(parse_set("3..5"), Ok(RankSet(vec![3, 4, 5])));
    }

    #[test]
    fn tolerance_defaults() {
        let t = tolerances(Some(1e-6), None).unwrap();
        assert_eq!((t.slack, t.equality), (1e-6, 1e-6));
        let t = tolerances(None, Some(1e-3)).unwrap();
        assert_eq!((t.slack, t.equality), (1e-9, 1e-3));
        assert!(tolerances(Some(f64::NAN), None).is_err());
    }

    #[test]
    fn generate_to_stdout() {
        let (code, out, _) = run_str(&["generate", "completeUniform", "4", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
        let (code, _, err) = run_str(&["generate", "completeUniform", "2", "3"]);
        assert_eq!(code, EXIT_INVALID, "{err}");
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
    }
}
