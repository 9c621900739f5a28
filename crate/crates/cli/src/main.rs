//! Command-line front end: every identity check and computation as a
//! reproducible, scriptable run.
//!
//! Exit codes: 0 when every checked identity holds exactly, 1 on a
//! violation (the report carries the first offending coefficient or
//! point), 2 on malformed input. Reports embed (k, n, seed, samples,
//! command, toolVersion); identical configuration produces byte-identical
//! JSON output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use grassmann_poisson::chart::GLElement;
use grassmann_poisson::io::{self, LoadedPoint};
use grassmann_poisson::sample::DEFAULT_SEED;
use grassmann_poisson::{
    ad_transform_pi, build_levi_pi, build_pi, build_v, c_action_on_fingerprints, classify,
    enumerate_labels, pushforward_check, rank_at, Bivector, ChartShape, Error, Perm, PointSampler,
};

#[derive(Parser)]
#[command(name = "grpois", version, about = "Exact checks for the standard Poisson structure on Grassmannian charts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Ad_c pi == pi: the cycle relabeling fixes the bivector.
    VerifyTheorem(CommonArgs),
    /// Check that the telescoping bivector V is identically zero.
    VerifyVzero(CommonArgs),
    /// Check Ad_w0 pi == -pi and Ad_w0^P pi == -pi.
    VerifyW0(CommonArgs),
    /// Check that the block-diagonal root pairs already build pi.
    VerifyLevi(CommonArgs),
    /// Check that the coordinate Jacobiator of pi vanishes.
    VerifyJacobi(CommonArgs),
    /// Pointwise invariance under seeded random diagonal matrices.
    VerifyTorus(CommonArgs),
    /// Group identities in S_n: w0^P w0 == c^k, w0 c w0^-1 == c^-1, c^n == e.
    VerifyGroupIds(CommonArgs),
    /// Sampled pushforwards: +1 for the cycle and diagonals, -1 for w0.
    PushCheck(CommonArgs),
    /// Bivector rank at the point in --point.
    Rank(CommonArgs),
    /// Enumerate stratum labels (v, w) with dimensions.
    StrataEnumerate(CommonArgs),
    /// Sample points, group by fingerprint, record ranks per class.
    Classify(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyTheorem(_) => "verify-theorem",
            Command::VerifyVzero(_) => "verify-vzero",
            Command::VerifyW0(_) => "verify-w0",
            Command::VerifyLevi(_) => "verify-levi",
            Command::VerifyJacobi(_) => "verify-jacobi",
            Command::VerifyTorus(_) => "verify-torus",
            Command::VerifyGroupIds(_) => "verify-group-ids",
            Command::PushCheck(_) => "push-check",
            Command::Rank(_) => "rank",
            Command::StrataEnumerate(_) => "strata-enumerate",
            Command::Classify(_) => "classify",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::VerifyTheorem(a)
            | Command::VerifyVzero(a)
            | Command::VerifyW0(a)
            | Command::VerifyLevi(a)
            | Command::VerifyJacobi(a)
            | Command::VerifyTorus(a)
            | Command::VerifyGroupIds(a)
            | Command::PushCheck(a)
            | Command::Rank(a)
            | Command::StrataEnumerate(a)
            | Command::Classify(a) => a,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Subspace dimension, 1 <= k < n.
    #[arg(long)]
    k: usize,

    /// Ambient dimension.
    #[arg(long)]
    n: usize,

    /// RNG seed; the fixed default keeps bare invocations reproducible.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Sample count for the sampled checks.
    #[arg(long, default_value_t = 100)]
    samples: usize,

    /// Point file: JSON {"k","n","rows"} with n rows (Grassmannian point)
    /// or n-k rows (chart point), entries as exact rationals "a/b".
    #[arg(long)]
    point: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Outcome of one run: the report plus the pass/fail verdict.
struct Outcome {
    pass: bool,
    details: Map<String, Value>,
}

impl Outcome {
    fn pass(details: Map<String, Value>) -> Self {
        Outcome {
            pass: true,
            details,
        }
    }

    fn verdict(pass: bool, details: Map<String, Value>) -> Self {
        Outcome { pass, details }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let args = cli.command.args();

    let outcome = match run(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let mut report = Map::new();
    report.insert("command".into(), json!(name));
    report.insert("k".into(), json!(args.k));
    report.insert("n".into(), json!(args.n));
    report.insert("seed".into(), json!(args.seed));
    report.insert("samples".into(), json!(args.samples));
    report.insert("toolVersion".into(), json!(env!("CARGO_PKG_VERSION")));
    report.insert("pass".into(), json!(outcome.pass));
    for (k, v) in outcome.details {
        report.insert(k, v);
    }

    let mut text = String::new();
    match args.format {
        Format::Json => {
            text.push_str(
                &serde_json::to_string_pretty(&Value::Object(report)).expect("report serializes"),
            );
            text.push('\n');
        }
        Format::Text => {
            text.push_str(&format!("{name} (k={}, n={})\n", args.k, args.n));
            for (key, value) in &report {
                if key == "command" || key == "k" || key == "n" {
                    continue;
                }
                text.push_str(&format!("  {key}: {value}\n"));
            }
            text.push_str(&format!(
                "  => {}\n",
                if outcome.pass { "PASS" } else { "FAIL" }
            ));
        }
    }
    // tolerate a closed pipe (e.g. piping into `head`)
    let _ = std::io::Write::write_all(&mut std::io::stdout(), text.as_bytes());

    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> Result<Outcome, Error> {
    let a = command.args();
    if a.samples == 0 {
        return Err(Error::InvalidInput("--samples must be at least 1".into()));
    }
    let shape = ChartShape::new(a.k, a.n)?;
    match command {
        Command::VerifyTheorem(_) => {
            let pi = build_pi(shape);
            let transformed = ad_transform_pi(&Perm::coxeter(a.n), shape);
            Ok(bivector_identity_outcome(shape, &(&transformed - &pi)))
        }
        Command::VerifyVzero(_) => {
            let v = build_v(shape);
            Ok(bivector_identity_outcome(shape, &v))
        }
        Command::VerifyW0(_) => {
            let pi = build_pi(shape);
            let minus_pi = -&pi;
            let d_w0 = &ad_transform_pi(&Perm::longest(a.n), shape) - &minus_pi;
            let d_w0p = &ad_transform_pi(&Perm::longest_levi(a.k, a.n), shape) - &minus_pi;
            let mut out = bivector_identity_outcome(shape, &d_w0);
            let out2 = bivector_identity_outcome(shape, &d_w0p);
            out.pass &= out2.pass;
            let mut details = Map::new();
            details.insert("fullReversal".into(), Value::Object(out.details));
            details.insert("blockReversal".into(), Value::Object(out2.details));
            Ok(Outcome::verdict(out.pass, details))
        }
        Command::VerifyLevi(_) => {
            let diff = &build_levi_pi(shape) - &build_pi(shape);
            Ok(bivector_identity_outcome(shape, &diff))
        }
        Command::VerifyJacobi(_) => {
            let t = grassmann_poisson::schouten_jacobi(&build_pi(shape));
            let mut details = Map::new();
            details.insert("slots".into(), json!(t.entries().len()));
            let pass = t.is_zero();
            if let Some(((x, y, z), poly)) = t.first_nonzero() {
                details.insert(
                    "firstOffender".into(),
                    json!({"triple": [x, y, z], "poly": poly.render(&shape)}),
                );
            }
            Ok(Outcome::verdict(pass, details))
        }
        Command::VerifyTorus(_) => {
            let pi = build_pi(shape);
            let mut sampler = PointSampler::new(shape, a.seed);
            let mut failures = 0usize;
            let mut first_failure: Option<Value> = None;
            for _ in 0..a.samples {
                let g = sampler.diagonal();
                let x = sampler.chart_point();
                if !pushforward_check(&g, &x, &pi, 1)? {
                    failures += 1;
                    first_failure.get_or_insert_with(|| point_value(&x));
                }
            }
            let mut details = Map::new();
            details.insert("checked".into(), json!(a.samples));
            details.insert("failures".into(), json!(failures));
            if let Some(p) = first_failure {
                details.insert("firstOffender".into(), p);
            }
            Ok(Outcome::verdict(failures == 0, details))
        }
        Command::VerifyGroupIds(_) => {
            let (c, w0, w0p) = grassmann_poisson::special_elements(a.k, a.n);
            let power = w0p.compose(&w0) == c.pow(a.k as i64);
            let dihedral = w0.compose(&c).compose(&w0.inverse()) == c.inverse();
            let order = c.pow(a.n as i64).is_identity();
            let mut details = Map::new();
            details.insert("blockReversalTimesReversalIsCycleToK".into(), json!(power));
            details.insert("reversalConjugatesCycleToInverse".into(), json!(dihedral));
            details.insert("cycleHasOrderN".into(), json!(order));
            Ok(Outcome::verdict(power && dihedral && order, details))
        }
        Command::PushCheck(_) => {
            let pi = build_pi(shape);
            let mut sampler = PointSampler::new(shape, a.seed);
            let mut details = Map::new();
            let mut pass = true;
            let mut raw_total = 0usize;
            let checks: [(&str, GLElement, i8); 2] = [
                ("cycle", GLElement::from_perm(&Perm::coxeter(a.n)), 1),
                ("reversal", GLElement::from_perm(&Perm::longest(a.n)), -1),
            ];
            for (label, g, sign) in &checks {
                let mut failures = 0usize;
                for _ in 0..a.samples {
                    let (x, tries) = sampler.in_chart_point_for(g, 1024);
                    raw_total += tries;
                    if !pushforward_check(g, &x, &pi, *sign)? {
                        failures += 1;
                    }
                }
                pass &= failures == 0;
                details.insert(
                    format!("{label}Failures"),
                    json!(failures),
                );
            }
            let mut failures = 0usize;
            for _ in 0..a.samples {
                let g = sampler.diagonal();
                let x = sampler.chart_point();
                raw_total += 1;
                if !pushforward_check(&g, &x, &pi, 1)? {
                    failures += 1;
                }
            }
            pass &= failures == 0;
            details.insert("diagonalFailures".into(), json!(failures));
            details.insert("rawDraws".into(), json!(raw_total));
            details.insert("accepted".into(), json!(3 * a.samples));
            Ok(Outcome::verdict(pass, details))
        }
        Command::Rank(_) => {
            let path = a.point.as_ref().ok_or_else(|| {
                Error::InvalidInput("rank requires --point <file>".into())
            })?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            let loaded = io::parse_point(&text)?;
            let x = match loaded {
                LoadedPoint::Chart(x) => x,
                LoadedPoint::Grass(p) => p.to_chart().map_err(|_| {
                    Error::InvalidInput(
                        "point lies outside the big chart; rank is chart-based".into(),
                    )
                })?,
            };
            if x.shape() != shape {
                return Err(Error::ShapeMismatch(format!(
                    "point file is for k={}, n={}",
                    x.shape().k,
                    x.shape().n
                )));
            }
            let pi = build_pi(shape);
            let mut details = Map::new();
            details.insert("rank".into(), json!(rank_at(&pi, &x)));
            details.insert("point".into(), point_value(&x));
            Ok(Outcome::pass(details))
        }
        Command::StrataEnumerate(_) => {
            let census = enumerate_labels(a.k, a.n)?;
            let Value::Object(details) = io::census_json(&census) else {
                unreachable!("census serializes to an object");
            };
            Ok(Outcome::pass(details))
        }
        Command::Classify(_) => {
            let pi = build_pi(shape);
            let mut sampler = PointSampler::new(shape, a.seed);
            let points: Vec<_> = (0..a.samples).map(|_| sampler.grass_mixed()).collect();
            let rotation_ok = c_action_on_fingerprints(&points, a.n);
            match classify(&points, &pi) {
                Ok(cls) => {
                    let label_count = if a.n <= 7 {
                        Some(enumerate_labels(a.k, a.n)?.label_count())
                    } else {
                        None
                    };
                    let Value::Object(mut details) = io::classification_json(&cls, label_count)
                    else {
                        unreachable!("classification serializes to an object");
                    };
                    details.insert("rotationPermutesFingerprints".into(), json!(rotation_ok));
                    Ok(Outcome::verdict(rotation_ok, details))
                }
                Err(Error::RankMismatch { left, right }) => {
                    let mut details = Map::new();
                    details.insert(
                        "violation".into(),
                        json!(format!(
                            "rank mismatch inside a fingerprint class: {left} vs {right}"
                        )),
                    );
                    Ok(Outcome::verdict(false, details))
                }
                Err(e) => Err(e),
            }
        }
    }
}

/// Shared shape of the "this bivector must vanish" reports.
fn bivector_identity_outcome(shape: ChartShape, diff: &Bivector) -> Outcome {
    let mut details = Map::new();
    details.insert(
        "nonzeroCoefficients".into(),
        json!(diff.nonzero_coefficients()),
    );
    if let Some((x, y, poly)) = diff.first_nonzero() {
        details.insert(
            "firstOffender".into(),
            json!({"pair": [x, y], "poly": poly.render(&shape)}),
        );
    }
    Outcome::verdict(diff.is_zero(), details)
}

fn point_value(x: &grassmann_poisson::chart::ChartPoint) -> Value {
    serde_json::to_value(io::chart_point_file(x)).expect("point file serializes")
}
