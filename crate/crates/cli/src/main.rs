use std::fs;
use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lrhorn::face::{direct_face_test, face_dimension, on_face, FaceSystems};
use lrhorn::fulton::{
    fulton_sweep, geometric_trace, saturation_sweep, verify_fulton, LrTriple, TraceError,
};
use lrhorn::horn::{
    classify_all, enumerate_inequalities, is_member, parse_point, HornSystem, Verdict, Violation,
};
use lrhorn::lr::lr_coefficient;
use lrhorn::partition::{Partition, SubsetTriple};
use lrhorn::scalar::{format_significant, Tolerance};
use lrhorn::spectra::{sample_points, verify_sample_batch};
use lrhorn::{ExactPoint, FloatPoint};

#[derive(Parser)]
#[command(
    name = "lrhorn",
    version,
    about = "Littlewood-Richardson coefficients and Horn inequalities"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Master seed for randomized commands
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Littlewood-Richardson coefficient c_{λμ}^ν
    Lr(LrArgs),
    /// Horn inequalities of the eigenvalue cone
    #[command(subcommand)]
    Horn(HornCommand),
    /// Membership of a point in the eigenvalue cone
    Member(MemberArgs),
    /// Faces cut out by Horn inequalities
    #[command(subcommand)]
    Face(FaceCommand),
    /// Spectra of random Hermitian triples A + B + C = 0
    Sample(SampleArgs),
    /// Checks of Fulton's conjecture
    #[command(subcommand)]
    Fulton(FultonCommand),
}

#[derive(Args)]
struct LrArgs {
    /// Partitions λ μ ν as comma-separated parts, e.g. 2,1
    #[arg(num_args = 0..=3)]
    partitions: Vec<String>,
    /// File with one "λ μ ν" triple per line ("-" for stdin)
    #[arg(long, conflicts_with = "partitions")]
    batch: Option<String>,
}

#[derive(Subcommand)]
enum HornCommand {
    /// List the inequalities for size n
    Enumerate {
        n: usize,
        /// Include inequalities with coefficient above one
        #[arg(long)]
        all: bool,
        /// Classify each inequality as facet or redundant by exact LP
        #[arg(long)]
        classify: bool,
    },
    /// Test a point file against the inequalities for size n
    Member(MemberArgs),
}

#[derive(Args)]
struct MemberArgs {
    n: usize,
    /// Three lines of comma-separated rationals
    #[arg(long)]
    point: String,
}

#[derive(Subcommand)]
enum FaceCommand {
    /// Test whether a point lies on the face of a triple
    Test {
        n: usize,
        /// Triple written as {I}{J}{K}
        #[arg(long)]
        triple: String,
        #[arg(long)]
        point: String,
    },
    /// Estimate the face dimension from random face points
    Dim {
        n: usize,
        #[arg(long)]
        triple: String,
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

#[derive(Args)]
struct SampleArgs {
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Check every sample against the inequalities
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand)]
enum FultonCommand {
    /// Scaled coefficients for every c = 1 triple in the bounds
    Sweep {
        #[arg(long)]
        max_weight: usize,
        #[arg(long)]
        max_parts: usize,
        #[arg(long)]
        nmax: usize,
        /// Also check saturation on all triples in the bounds
        #[arg(long)]
        saturation: bool,
    },
    /// Scaled coefficients of one triple
    Check {
        lambda: String,
        mu: String,
        nu: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Run the geometric argument step by step
    Trace {
        lambda: String,
        mu: String,
        nu: String,
        /// Number of copies N
        #[arg(long = "n")]
        copies: usize,
    },
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// Negative mathematical outcome: exit 1.
    Math,
    /// Bad input: exit 2.
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

struct Out {
    format: Format,
    stdout: io::StdoutLock<'static>,
}

impl Out {
    fn emit(&mut self, text: impl AsRef<str>, value: Value) {
        let line = match self.format {
            Format::Text => text.as_ref().to_string(),
            Format::JsonLines => value.to_string(),
        };
        // a closed pipe is not an error worth reporting
        let _ = writeln!(self.stdout, "{line}");
    }
}

fn big(v: &impl ToString) -> Value {
    let s = v.to_string();
    s.parse::<u64>()
        .map(Value::from)
        .unwrap_or(Value::String(s))
}

fn partition(text: &str) -> Result<Partition, Failure> {
    text.parse().map_err(usage)
}

fn lr_triple(l: &str, m: &str, n: &str) -> Result<LrTriple, Failure> {
    Ok(LrTriple::new(partition(l)?, partition(m)?, partition(n)?))
}

fn require_seed(global: &Global) -> Result<u64, Failure> {
    global
        .seed
        .ok_or_else(|| usage("this command is randomized and requires --seed"))
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        for line in io::stdin().lock().lines() {
            text.push_str(&line.map_err(usage)?);
            text.push('\n');
        }
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn read_point(path: &str, n: usize) -> Result<ExactPoint, Failure> {
    let p = parse_point(&read_input(path)?).map_err(usage)?;
    if p.n() != n {
        return Err(usage(format!("point has size {}, expected {n}", p.n())));
    }
    Ok(p)
}

fn check_size(n: usize) -> Result<(), Failure> {
    if n < 1 {
        return Err(usage("n must be at least 1"));
    }
    Ok(())
}

fn run_lr(args: &LrArgs, out: &mut Out) -> Outcome {
    let triples: Vec<LrTriple> = match &args.batch {
        Some(path) => read_input(path)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|line| {
                let fields: Vec<&str> = line.split_whitespace().collect();
                match fields.as_slice() {
                    [l, m, n] => lr_triple(l, m, n),
                    _ => Err(usage(format!("expected three partitions: {line}"))),
                }
            })
            .collect::<Result<_, _>>()?,
        None => match args.partitions.as_slice() {
            [l, m, n] => vec![lr_triple(l, m, n)?],
            _ => return Err(usage("lr needs three partitions or --batch")),
        },
    };
    let single = args.batch.is_none();
    for t in triples {
        let c = lr_coefficient(&t.lambda, &t.mu, &t.nu);
        let value = json!({
            "lambda": t.lambda.to_string(),
            "mu": t.mu.to_string(),
            "nu": t.nu.to_string(),
            "coefficient": big(&c),
        });
        if single {
            out.emit(c.to_string(), value);
        } else {
            out.emit(format!("{} {} {} {c}", t.lambda, t.mu, t.nu), value);
        }
    }
    Ok(())
}

fn run_enumerate(n: usize, all: bool, classify: bool, out: &mut Out) -> Outcome {
    if n < 2 {
        return Err(usage("enumeration needs n >= 2"));
    }
    let mut list = enumerate_inequalities(n, !all);
    if classify {
        let facets = HornSystem::facets(n);
        let system = HornSystem::from_inequalities(n, list);
        list = classify_all(&system)
            .map_err(usage)?
            .into_iter()
            .map(|mut ineq| {
                if !all {
                    return ineq;
                }
                // judge every candidate against the coefficient-one system
                let alone = HornSystem::from_inequalities(
                    n,
                    facets
                        .inequalities()
                        .iter()
                        .filter(|f| f.triple != ineq.triple)
                        .cloned()
                        .collect(),
                );
                if let Ok(report) = lrhorn::horn::classify_facet(&ineq, &alone) {
                    ineq.status = report.status;
                }
                ineq
            })
            .collect();
    }
    for ineq in &list {
        let mut text = ineq.to_string();
        if classify {
            text.push_str(&format!(" {}", ineq.status));
        }
        out.emit(
            text,
            json!({
                "triple": ineq.triple.to_string(),
                "r": ineq.r(),
                "coefficient": big(&ineq.coefficient),
                "status": ineq.status.to_string(),
            }),
        );
    }
    Ok(())
}

fn violation_json(v: &Violation<lrhorn::Rational>) -> Value {
    match v {
        Violation::Chamber { wall, gap } => {
            json!({"kind": "chamber", "wall": wall.to_string(), "gap": lrhorn::Scalar::render(gap)})
        }
        Violation::Trace { trace } => {
            json!({"kind": "trace", "trace": lrhorn::Scalar::render(trace)})
        }
        Violation::Inequality { triple, value } => {
            json!({"kind": "inequality", "triple": triple.to_string(), "value": lrhorn::Scalar::render(value)})
        }
    }
}

fn run_member(args: &MemberArgs, out: &mut Out) -> Outcome {
    check_size(args.n)?;
    let p = read_point(&args.point, args.n)?;
    let system = HornSystem::facets(args.n);
    match is_member(&p, &system, &Tolerance::exact()).map_err(usage)? {
        Verdict::Member => {
            out.emit("member", json!({"member": true}));
            Ok(())
        }
        Verdict::NonMember(v) => {
            let text = match &v {
                Violation::Inequality { triple, value } => format!(
                    "non-member: violates {triple} (value {})",
                    lrhorn::Scalar::render(value)
                ),
                other => format!("non-member: {other}"),
            };
            out.emit(
                text,
                json!({"member": false, "certificate": violation_json(&v)}),
            );
            Err(Failure::Math)
        }
    }
}

fn parse_triple(text: &str, n: usize) -> Result<SubsetTriple, Failure> {
    SubsetTriple::parse(text, n).map_err(usage)
}

fn run_face(cmd: &FaceCommand, global: &Global, out: &mut Out) -> Outcome {
    match cmd {
        FaceCommand::Test { n, triple, point } => {
            check_size(*n)?;
            let t = parse_triple(triple, *n)?;
            let p = read_point(point, *n)?;
            let systems = FaceSystems::for_triple(&t);
            let tol = Tolerance::exact();
            let split = on_face(&p, &t, &systems, &tol).map_err(usage)?;
            let direct = direct_face_test(&p, &t, &systems.whole, &tol).map_err(usage)?;
            out.emit(
                format!("on-face {split} (direct test {direct})"),
                json!({"triple": t.to_string(), "on_face": split, "direct": direct}),
            );
            if split && direct {
                Ok(())
            } else {
                Err(Failure::Math)
            }
        }
        FaceCommand::Dim { n, triple, samples } => {
            check_size(*n)?;
            let seed = require_seed(global)?;
            let t = parse_triple(triple, *n)?;
            let count = if *samples == 0 { 3 * n + 2 } else { *samples };
            match face_dimension(&t, count, seed) {
                Ok(dim) => {
                    let facet = 3 * n - 2;
                    out.emit(
                        format!("dimension {dim} (facet dimension {facet})"),
                        json!({"triple": t.to_string(), "dimension": dim, "facet_dimension": facet, "samples": count}),
                    );
                    Ok(())
                }
                Err(lrhorn::face::FaceError::InsufficientSamples {
                    requested,
                    achieved,
                }) => {
                    out.emit(
                        format!("only {achieved} of {requested} face samples"),
                        json!({"triple": t.to_string(), "requested": requested, "achieved": achieved}),
                    );
                    Err(Failure::Math)
                }
                Err(e) => Err(usage(e)),
            }
        }
    }
}

fn decimals(xs: &[f64]) -> Vec<String> {
    xs.iter().map(|&x| format_significant(x, 12)).collect()
}

fn decimals_json(xs: &[f64]) -> Value {
    Value::from(
        decimals(xs)
            .iter()
            .map(|s| s.parse::<f64>().expect("formatted float"))
            .collect::<Vec<_>>(),
    )
}

fn run_sample(args: &SampleArgs, global: &Global, out: &mut Out) -> Outcome {
    check_size(args.n)?;
    let seed = require_seed(global)?;
    let points: Vec<FloatPoint> = sample_points(args.n, args.count, seed);
    for (i, p) in points.iter().enumerate() {
        let text = [p.alpha(), p.beta(), p.gamma()]
            .iter()
            .map(|xs| decimals(xs).join(","))
            .collect::<Vec<_>>()
            .join("\n");
        let text = if i + 1 < points.len() {
            format!("{text}\n")
        } else {
            text
        };
        out.emit(
            text,
            json!({
                "index": i,
                "alpha": decimals_json(p.alpha()),
                "beta": decimals_json(p.beta()),
                "gamma": decimals_json(p.gamma()),
            }),
        );
    }
    if args.check {
        let system = HornSystem::facets(args.n);
        let report = verify_sample_batch(args.n, args.count, seed, &system);
        let verdict = if report.passed() { "pass" } else { "fail" };
        out.emit(
            format!(
                "# {verdict}: max violation {}, max trace {} over {} samples",
                format_significant(report.max_violation, 3),
                format_significant(report.max_trace, 3),
                report.count
            ),
            json!({
                "passed": report.passed(),
                "max_violation": report.max_violation,
                "max_trace": report.max_trace,
                "count": report.count,
            }),
        );
        if !report.passed() {
            return Err(Failure::Math);
        }
    }
    Ok(())
}

fn run_fulton(cmd: &FultonCommand, global: &Global, out: &mut Out) -> Outcome {
    match cmd {
        FultonCommand::Sweep {
            max_weight,
            max_parts,
            nmax,
            saturation,
        } => {
            if *max_parts == 0 {
                return Err(usage("--max-parts must be at least 1"));
            }
            let lines = fulton_sweep(*max_weight, *max_parts, *nmax);
            let mut failures = 0usize;
            for line in &lines {
                let ok = line.passed();
                failures += usize::from(!ok);
                out.emit(
                    format!(
                        "{} N={} c={} {}",
                        line.triple,
                        line.scale,
                        line.coefficient,
                        if ok { "ok" } else { "FAIL" }
                    ),
                    json!({
                        "lambda": line.triple.lambda.to_string(),
                        "mu": line.triple.mu.to_string(),
                        "nu": line.triple.nu.to_string(),
                        "n": line.scale,
                        "coefficient": big(&line.coefficient),
                        "passed": ok,
                    }),
                );
            }
            if *saturation {
                let (violations, checked) = saturation_sweep(*max_weight, *max_parts, *nmax);
                for (t, n) in &violations {
                    out.emit(
                        format!("saturation violated by {t} at N={n}"),
                        json!({"saturation_violation": t.to_string(), "n": n}),
                    );
                }
                failures += violations.len();
                out.emit(
                    format!("saturation: {checked} instances, {} violations", violations.len()),
                    json!({"saturation_instances": checked, "saturation_violations": violations.len()}),
                );
            }
            out.emit(
                format!("{failures} failures"),
                json!({"failures": failures}),
            );
            if failures == 0 {
                Ok(())
            } else {
                Err(Failure::Math)
            }
        }
        FultonCommand::Check {
            lambda,
            mu,
            nu,
            nmax,
        } => {
            let t = lr_triple(lambda, mu, nu)?;
            match verify_fulton(&t, *nmax) {
                Ok(report) => {
                    for (n, c) in &report.coefficients {
                        out.emit(
                            format!("{t} N={n} c={c}"),
                            json!({"triple": t.to_string(), "n": n, "coefficient": big(c)}),
                        );
                    }
                    if report.passed() {
                        Ok(())
                    } else {
                        Err(Failure::Math)
                    }
                }
                Err(e) => {
                    out.emit(format!("rejected: {e}"), json!({"rejected": e.to_string()}));
                    Err(Failure::Math)
                }
            }
        }
        FultonCommand::Trace {
            lambda,
            mu,
            nu,
            copies,
        } => {
            let seed = require_seed(global)?;
            let t = lr_triple(lambda, mu, nu)?;
            match geometric_trace(&t, *copies, seed) {
                Ok(report) => {
                    for step in &report.steps {
                        out.emit(
                            step.to_string(),
                            json!({"step": step.step, "passed": true, "detail": step.detail}),
                        );
                    }
                    out.emit(
                        format!(
                            "trace passed: {t} N={} c={}",
                            report.scale, report.direct_coefficient
                        ),
                        json!({"passed": true, "n": report.scale, "coefficient": big(&report.direct_coefficient)}),
                    );
                    Ok(())
                }
                Err(e) => {
                    let step = match &e {
                        TraceError::Precondition { .. } => 0,
                        TraceError::StepFailed { step, .. } => *step,
                    };
                    out.emit(
                        format!("trace failed: {e}"),
                        json!({"passed": false, "step": step, "reason": e.to_string()}),
                    );
                    Err(Failure::Math)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    if let Some(k) = cli.global.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Out {
        format: cli.global.format,
        stdout: io::stdout().lock(),
    };
    let result = match &cli.command {
        Command::Lr(args) => run_lr(args, &mut out),
        Command::Horn(HornCommand::Enumerate { n, all, classify }) => {
            run_enumerate(*n, *all, *classify, &mut out)
        }
        Command::Horn(HornCommand::Member(args)) | Command::Member(args) => {
            run_member(args, &mut out)
        }
        Command::Face(cmd) => run_face(cmd, &cli.global, &mut out),
        Command::Sample(args) => run_sample(args, &cli.global, &mut out),
        Command::Fulton(cmd) => run_fulton(cmd, &cli.global, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
