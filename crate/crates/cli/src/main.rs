//! `socle`: spans, socles and socle-dimension reduction for finite schemes
//! given as JSON files.
//!
//! Exit codes: 0 success or pass, 1 domain failure (invalid scheme, plane
//! outside the span, failed verification), 2 usage, I/O, budget or
//! precondition errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use socle::exactlin::{Field, Subspace};
use socle::json::{
    field_to_json, parse_field_str, parse_inline_rows, parse_scheme, reduction_to_json, rows_from_json,
    scheme_digest, scheme_to_json, step_to_json, subspace_to_json, SchemeFile,
};
use socle::oracle::{self, Claim, OracleError, OracleOptions};
use socle::reduce::{prune_minimal, reduce_to_socdim, shrink_once};
use socle::sample::sample_scheme;
use socle::scheme::EmbeddedFiniteScheme;

#[derive(Parser, Debug)]
#[command(name = "socle", version, about = "Finite schemes in projective space: spans, socles, reductions")]
struct Cli {
    /// Read all scalars in this field (QQ, GF(p), F_p or p) instead of the declared one.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClaimArg {
    Subschemes,
    Decomposition,
    Union,
    Cactus,
    Theorem,
    Minimal,
}

impl From<ClaimArg> for Claim {
    fn from(c: ClaimArg) -> Claim {
        match c {
            ClaimArg::Subschemes => Claim::Subschemes,
            ClaimArg::Decomposition => Claim::Decomposition,
            ClaimArg::Union => Claim::Union,
            ClaimArg::Cactus => Claim::Cactus,
            ClaimArg::Theorem => Claim::Theorem,
            ClaimArg::Minimal => Claim::Minimal,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the algebra axioms and the embedding.
    Validate { file: PathBuf },
    /// Canonical basis of the linear span.
    Span { file: PathBuf },
    /// Maximum socle dimension over the components.
    Socdim { file: PathBuf },
    /// Total dimension of the coordinate ring.
    Degree { file: PathBuf },
    /// Support points as canonical representatives.
    Supports { file: PathBuf },
    /// One codegree-one shrink keeping the plane in the span.
    Shrink {
        file: PathBuf,
        /// Plane as a JSON file or inline rows "a,b,c;d,e,f". Defaults to the file's "plane".
        #[arg(long)]
        plane: Option<String>,
    },
    /// Shrink until the socle dimension is at most the plane dimension.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        plane: Option<String>,
    },
    /// Shrink greedily until no codegree-one subscheme keeps the plane.
    Prune {
        file: PathBuf,
        #[arg(long)]
        plane: Option<String>,
    },
    /// Brute-force verification over a finite field.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Maximum number of enumerated objects.
        #[arg(long, env = "SOCLE_BUDGET", default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = oracle::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Planes sampled over the rationals.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Re-embed by all degree-d monomials.
    Veronese {
        file: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// A random valid scheme (field from --field, default QQ).
    Sample {
        #[arg(long)]
        degree: usize,
        /// Number of homogeneous coordinates.
        #[arg(long)]
        ambient: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1, with a report.
    Domain(Value, String),
}

type Outcome = Result<(Value, String), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(kind: &str, message: impl ToString) -> Failure {
    let message = message.to_string();
    Failure::Domain(json!({ "status": "error", "kind": kind, "message": message }), message)
}

fn field_override(cli: &Cli) -> Result<Option<Field>, Failure> {
    cli.field.as_deref().map(parse_field_str).transpose().map_err(usage)
}

fn load(path: &Path, field: Option<Field>) -> Result<SchemeFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_scheme(&text, field).map_err(|e| match e.violation() {
        Some(v) => domain("invalid-scheme", v),
        None => usage(format!("{}: {e}", path.display())),
    })
}

fn plane(file: &SchemeFile, arg: Option<&str>) -> Result<Subspace, Failure> {
    let r = &file.scheme;
    let field = r.field();
    let rows = match arg {
        None => return file.plane.clone().ok_or_else(|| usage("no --plane given and the file has no \"plane\"")),
        Some(s) if Path::new(s).is_file() => {
            let text = std::fs::read_to_string(s).map_err(|e| usage(format!("{s}: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{s}: {e}")))?;
            let rows = v.get("plane").unwrap_or(&v);
            rows_from_json(field, rows).map_err(usage)?
        }
        Some(s) => parse_inline_rows(field, s).map_err(usage)?,
    };
    if let Some(bad) = rows.iter().find(|row| row.len() != r.ambient_dim()) {
        return Err(usage(format!(
            "plane row has {} entries, ambient dimension is {}",
            bad.len(),
            r.ambient_dim()
        )));
    }
    Subspace::span(field, r.ambient_dim(), rows).map_err(usage)
}

fn rows_text(u: &Subspace) -> String {
    u.basis()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn scheme_out(r: &EmbeddedFiniteScheme) -> (Value, String) {
    let v = scheme_to_json(r);
    let text = pretty(&v);
    (v, text)
}

fn reduce_error(e: socle::reduce::ReduceError) -> Failure {
    use socle::reduce::ReduceError as E;
    let kind = match e {
        E::PlaneNotInSpan => "plane-not-in-span",
        E::NotOverSocled { .. } => "not-over-socled",
        E::ZeroPlane => "zero-plane",
        E::WouldEmpty => "would-empty",
        E::Unsolvable => "unsolvable",
        E::Scheme(_) => return usage(e),
    };
    domain(kind, e)
}

fn oracle_error(e: OracleError) -> Failure {
    usage(e)
}

fn run(cli: &Cli) -> Outcome {
    let fo = field_override(cli)?;
    match &cli.command {
        Command::Validate { file } => {
            let r = load(file, fo)?.scheme;
            let v = json!({
                "status": "valid",
                "degree": r.degree(),
                "components": r.num_components(),
                "field": field_to_json(r.field()),
                "digest": scheme_digest(&r),
            });
            let text = format!("valid: degree {} with {} component(s) over {}", r.degree(), r.num_components(), r.field());
            Ok((v, text))
        }
        Command::Span { file } => {
            let span = load(file, fo)?.scheme.span();
            Ok((json!({ "dim": span.dim(), "basis": subspace_to_json(&span) }), rows_text(&span)))
        }
        Command::Socdim { file } => {
            let s = load(file, fo)?.scheme.socdim();
            Ok((json!(s), s.to_string()))
        }
        Command::Degree { file } => {
            let d = load(file, fo)?.scheme.degree();
            Ok((json!(d), d.to_string()))
        }
        Command::Supports { file } => {
            let pts = load(file, fo)?.scheme.support_points();
            let v = Value::Array(pts.iter().map(|p| json!(subspace_to_json(p)[0])).collect());
            let text = pts.iter().map(rows_text).collect::<Vec<_>>().join("\n");
            Ok((v, text))
        }
        Command::Shrink { file, plane: p } => {
            let sf = load(file, fo)?;
            let e = plane(&sf, p.as_deref())?;
            let (next, step) = shrink_once(&sf.scheme, &e).map_err(reduce_error)?;
            let v = json!({
                "scheme": scheme_to_json(&next),
                "digest": scheme_digest(&next),
                "step": step_to_json(&step),
            });
            let text = format!(
                "component {} socle element [{}] ({}), degree {} -> {}\n{}",
                step.component,
                step.socle_element.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                step.case.tag(),
                step.degree_before,
                step.degree_after,
                pretty(&scheme_to_json(&next))
            );
            Ok((v, text))
        }
        Command::Reduce { file, plane: p } | Command::Prune { file, plane: p } => {
            let sf = load(file, fo)?;
            let e = plane(&sf, p.as_deref())?;
            let red = match &cli.command {
                Command::Reduce { .. } => reduce_to_socdim(&sf.scheme, &e),
                _ => prune_minimal(&sf.scheme, &e),
            }
            .map_err(reduce_error)?;
            let v = reduction_to_json(&red);
            let mut text = format!(
                "{} step(s); final degree {}, socle dimension {}\n",
                red.trace.steps.len(),
                red.scheme.degree(),
                red.scheme.socdim()
            );
            for s in &red.trace.steps {
                text.push_str(&format!(
                    "  component {}: [{}] {} ({} -> {})\n",
                    s.component,
                    s.socle_element.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                    s.case.tag(),
                    s.degree_before,
                    s.degree_after
                ));
            }
            text.push_str(&pretty(&scheme_to_json(&red.scheme)));
            Ok((v, text))
        }
        Command::Verify { file, claim, k, budget, seed, jobs, samples } => {
            let r = load(file, fo)?.scheme;
            let opts = OracleOptions {
                budget: *budget,
                seed: *seed,
                jobs: *jobs,
                samples: *samples,
                ..OracleOptions::default()
            };
            let report = oracle::run_claim((*claim).into(), &r, *k, &opts).map_err(oracle_error)?;
            let v = report.to_json();
            let counts = report
                .counts
                .iter()
                .map(|(k, n)| format!("{k}={n}"))
                .collect::<Vec<_>>()
                .join(" ");
            if report.passed() {
                Ok((v, format!("{}: pass ({counts})", report.claim.tag())))
            } else {
                let text = format!("{}: FAIL ({counts})\n{}", report.claim.tag(), pretty(&v["counterexample"]));
                Err(Failure::Domain(v, text))
            }
        }
        Command::Veronese { file, d } => {
            if *d == 0 {
                return Err(usage("--d must be positive"));
            }
            let r = load(file, fo)?.scheme;
            Ok(scheme_out(&r.veronese(*d).map_err(usage)?))
        }
        Command::Sample { degree, ambient, seed } => {
            let field = fo.unwrap_or(Field::Rational);
            let r = sample_scheme(field, *degree, *ambient, *seed).map_err(usage)?;
            Ok(scheme_out(&r))
        }
    }
}

fn emit(output: Output, v: &Value, text: &str) {
    match output {
        Output::Json => println!("{}", serde_json::to_string(v).expect("JSON values serialize")),
        Output::Human => println!("{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, text)) => {
            emit(cli.output, &v, &text);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(v, text)) => {
            emit(cli.output, &v, &text);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("socle: {msg}");
            ExitCode::from(2)
        }
    }
}
