use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bmoment::adjacency::{classify, validate_nonzero_structure, AdjacencyError, WeightedAdjacencyGraph};
use bmoment::bpolytope::{BPolytope, HalfSpace};
use bmoment::codomain::{CodomainError, ExtendedCodomain, ExtendedPoint};
use bmoment::models::{image_sample, ManifoldSpec, ModelError, Tolerances};
use bmoment::verify::{self, Suite};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

/// Modular weights, b-polytopes and moment images of b-symplectic toric models.
#[derive(Parser)]
#[command(name = "bmoment", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the modular weights of a weighted adjacency graph.
    ClassifyGraph { file: PathBuf },
    /// Validate a b-polytope, list its vertices, or test membership.
    Polytope {
        graph: PathBuf,
        halfspaces: PathBuf,
        #[command(subcommand)]
        action: PolytopeAction,
    },
    /// Sample the moment image of a model manifold.
    Moment {
        spec: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named verification suite.
    Verify {
        suite: Suite,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum PolytopeAction {
    Validate,
    Vertices,
    Contains { point: PathBuf },
}

/// A failed command: exit 1 for usage and parse errors, 2 for mathematical failures.
enum Failure {
    Usage(String),
    Math(Value),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(v) => {
            println!("{}", pretty(&v));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Math(v)) => {
            println!("{}", pretty(&v));
            if let Some(msg) = v.get("message").and_then(Value::as_str) {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

/// serde_json maps keep keys sorted, so this output is canonical.
fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn to_value(x: impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<WeightedAdjacencyGraph, Failure> {
    WeightedAdjacencyGraph::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn tolerances() -> Result<Tolerances, Failure> {
    Tolerances::from_env().map_err(usage)
}

fn run(command: Command) -> Result<Value, Failure> {
    match command {
        Command::ClassifyGraph { file } => classify_graph(&file),
        Command::Polytope {
            graph,
            halfspaces,
            action,
        } => polytope(&graph, &halfspaces, action),
        Command::Moment {
            spec,
            samples,
            seed,
            out,
        } => moment(&spec, samples, seed, &out),
        Command::Verify {
            suite,
            graph,
            samples,
            seed,
        } => {
            let opts = verify::Options {
                samples,
                graph: graph.as_deref().map(read_graph).transpose()?,
                seed,
                tol: tolerances()?,
            };
            let report = verify::run(suite, &opts);
            let v = to_value(&report);
            if report.passed() {
                Ok(v)
            } else {
                Err(Failure::Math(v))
            }
        }
    }
}

fn classify_graph(file: &Path) -> Result<Value, Failure> {
    let g = read_graph(file)?;
    match classify(&g) {
        Ok(class) => {
            let mut v = to_value(&class);
            if class.is_all_nonzero() {
                let report = validate_nonzero_structure(&g).map_err(usage)?;
                v["structure"] = to_value(report);
            }
            Ok(v)
        }
        Err(e @ AdjacencyError::MixedWeights { .. }) => {
            let AdjacencyError::MixedWeights { zero, nonzero } = &e else { unreachable!() };
            Err(Failure::Math(json!({
                "error": "mixed_weights",
                "message": e.to_string(),
                "zero": zero,
                "nonzero": nonzero,
            })))
        }
        Err(e) => Err(usage(e)),
    }
}

fn polytope(graph: &Path, halfspaces: &Path, action: PolytopeAction) -> Result<Value, Failure> {
    let g = read_graph(graph)?;
    let codomain = match ExtendedCodomain::new(g) {
        Ok(c) => c,
        Err(CodomainError::InvalidGraph { failed, report }) => {
            return Err(Failure::Math(json!({
                "error": "invalid_graph",
                "message": format!("graph fails conditions {failed:?} of a b-manifold with nonzero weights"),
                "report": to_value(report),
            })))
        }
        Err(e) => {
            return Err(Failure::Math(json!({"error": "codomain", "message": e.to_string()})));
        }
    };
    let hs: Vec<HalfSpace> =
        serde_json::from_str(&read(halfspaces)?).map_err(|e| usage(format!("{}: {e}", halfspaces.display())))?;
    let p = BPolytope::new(codomain, hs)
        .map_err(|e| Failure::Math(json!({"error": "bad_halfspace", "message": e.to_string()})))?;
    let report = p.validate();
    let invalid = |report: &bmoment::report::ValidationReport| {
        Failure::Math(json!({
            "valid": false,
            "message": format!("not a b-polytope: conditions {:?} fail", report.failed_conditions()),
            "report": to_value(report),
        }))
    };
    match action {
        PolytopeAction::Validate => {
            if report.passed() {
                Ok(json!({"valid": true, "report": to_value(&report)}))
            } else {
                Err(invalid(&report))
            }
        }
        PolytopeAction::Vertices => {
            if !report.passed() {
                return Err(invalid(&report));
            }
            let vertices = p.vertices().map_err(|e| Failure::Math(json!({"message": e.to_string()})))?;
            Ok(json!({"vertices": to_value(vertices)}))
        }
        PolytopeAction::Contains { point } => {
            let pt: ExtendedPoint =
                serde_json::from_str(&read(&point)?).map_err(|e| usage(format!("{}: {e}", point.display())))?;
            let inside = p.contains(&pt).map_err(usage)?;
            Ok(json!({"contains": inside, "point": to_value(pt)}))
        }
    }
}

fn moment(spec: &Path, samples: usize, seed: u64, out: &Path) -> Result<Value, Failure> {
    let spec = ManifoldSpec::from_json(&read(spec)?).map_err(|e| usage(format!("{}: {e}", spec.display())))?;
    let tol = tolerances()?;
    let set = image_sample(&spec, samples, seed, &tol).map_err(|e| match e {
        ModelError::Parameter(_) => usage(e),
        e => Failure::Math(json!({"error": "sampling", "message": e.to_string()})),
    })?;
    fs::write(out, set.to_csv()).map_err(|e| usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(set.summary())
}
