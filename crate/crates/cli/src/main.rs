use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chowtope::builders::{self, BuildError};
use chowtope::exactgeom::{json::rat_to_string, LinForm, Polytope};
use chowtope::monopath::{ch_faces, ch_facets, ch_is_simple, ch_verify, path_vertices};
use chowtope::oriented::{
    is_stratification, orient, vertex_poset, Analysis, BoolMatrix, OrientedPolytope, Side,
    VertexRelations,
};
use chowtope::posetalg::{poly_report, KernelChoice};
use chowtope::suite::{self, CriterionResult, Entry, SuiteKind};

const DEFAULT_MAX_VERTICES: usize = 32;

#[derive(Parser)]
#[command(name = "chowtope", version, about = "Monotone path polytopes, vertex posets and Chow polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a polytope from an expression and write its JSON.
    Gen {
        expr: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cells, closures, relations and the eight stratification conditions.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum)]
        dot: Option<Dot>,
    },
    /// Face lattice of the monotone path polytope.
    Chow {
        input: PathBuf,
        /// Compare with the Minkowski sum of slices.
        #[arg(long)]
        oracle: bool,
        /// Evaluate the four simplicity conditions.
        #[arg(long)]
        simple: bool,
        /// Emit the 1-skeleton as DOT instead of the report.
        #[arg(long)]
        dot: bool,
    },
    /// Kernel, KLS and Chow polynomials on the vertex poset.
    Poly {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "paper")]
        kernel: KernelArg,
        #[arg(long)]
        verify_main: bool,
    },
    /// Run the fixed corpus, or the given files, through every check.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        suite: SuiteArg,
        inputs: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dot {
    Skeleton,
    Hasse,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    #[value(name = "paper")]
    Polytope,
    Chi,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

/// Exit 1 carries a report; exit 2 only a message.
enum Failure {
    Check(Value),
    Input(String),
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn max_vertices() -> Result<usize, Failure> {
    match std::env::var("MONOPATH_MAX_VERTICES") {
        Ok(v) => v
            .parse()
            .map_err(|_| input_err(format!("MONOPATH_MAX_VERTICES is not a number: {v}"))),
        Err(_) => Ok(DEFAULT_MAX_VERTICES),
    }
}

fn guard(count: usize) -> Result<(), Failure> {
    let cap = max_vertices()?;
    if count > cap {
        return Err(input_err(format!(
            "{count} vertices exceeds MONOPATH_MAX_VERTICES = {cap}"
        )));
    }
    Ok(())
}

fn load(path: &Path) -> Result<(OrientedPolytope, Analysis), Failure> {
    let (p, ell) = builders::load_json(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    guard(p.num_vertices())?;
    let op = orient(p, ell).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let analysis = Analysis::new(&op);
    Ok((op, analysis))
}

fn not_stratified(op: &OrientedPolytope, analysis: &Analysis) -> Result<(), Failure> {
    analysis.require_s().map_err(|e| {
        Failure::Check(json!({
            "error": "NotStratified",
            "message": e.to_string(),
            "conditions": analysis.report.conditions,
            "vertices": op.num_vertices(),
        }))
    })
}

fn gen(expr: &str, output: Option<&Path>) -> Outcome {
    let e = builders::parse(expr).map_err(input_err)?;
    guard(e.vertex_count())?;
    let (p, ell) = builders::build(&e).map_err(input_err)?;
    match output {
        Some(path) => {
            builders::save_json(path, &p, &ell).map_err(input_err)?;
            eprintln!("wrote {} ({} vertices)", path.display(), p.num_vertices());
            Ok(Output::Json(json!({ "output": path.display().to_string(), "vertices": p.num_vertices() })))
        }
        None => Ok(Output::Text(builders::to_json(&p, &ell))),
    }
}

fn matrix(m: &BoolMatrix) -> Value {
    json!(VertexRelations::bitstrings(m))
}

fn analyze(input: &Path, dot: Option<Dot>) -> Outcome {
    let (op, a) = load(input)?;
    match dot {
        Some(Dot::Skeleton) => return Ok(Output::Text(op.skeleton_dot())),
        Some(Dot::Hasse) => {
            not_stratified(&op, &a)?;
            let vp = vertex_poset(&op, &a).map_err(input_err)?;
            return Ok(Output::Text(vp.hasse_dot()));
        }
        None => {}
    }
    let lat = op.base().lattice();
    let side = |s: Side| -> Vec<Value> {
        (0..op.num_vertices())
            .map(|v| {
                json!({
                    "cell": a.bb.cell_faces(s, v).iter().map(|&f| &lat.face(f).vertices).collect::<Vec<_>>(),
                    "closure_vertices": a.bb.closed_vertices(s, v),
                    "dim": a.bb.dim(s, v),
                    "irreducible": a.bb.irreducible_face(s, v, &op).map(|f| &lat.face(f).vertices),
                })
            })
            .collect()
    };
    let poset = vertex_poset(&op, &a).ok().map(|vp| {
        json!({ "rank": vp.rank, "covers": vp.covers() })
    });
    Ok(Output::Json(json!({
        "vertices": op.num_vertices(),
        "dim": op.dim(),
        "values": op.values().iter().map(rat_to_string).collect::<Vec<_>>(),
        "source": op.source(),
        "sink": op.sink(),
        "edges": op.directed_edges(),
        "minus": side(Side::Minus),
        "plus": side(Side::Plus),
        "stratification": {
            "minus": is_stratification(&a.bb, Side::Minus).is_ok(),
            "plus": is_stratification(&a.bb, Side::Plus).is_ok(),
        },
        "assumption_i": a.assumption_i.is_ok(),
        "conditions": a.report.conditions,
        "assumption_s": a.assumption_s(),
        "relations": {
            "witness": matrix(&a.relations.witness),
            "bruhat_minus": matrix(&a.relations.bruhat_minus),
            "bruhat_plus": matrix(&a.relations.bruhat_plus),
            "chain": matrix(&a.relations.chain),
        },
        "vertex_poset": poset,
    })))
}

fn chow(input: &Path, oracle: bool, simple: bool, dot: bool) -> Outcome {
    let (op, a) = load(input)?;
    not_stratified(&op, &a)?;
    let ch = ch_faces(&op, &a).map_err(input_err)?;
    if dot {
        return Ok(Output::Text(ch.skeleton_dot(&op)));
    }
    let lat = op.base().lattice();
    let faces_of = |c: &[usize]| c.iter().map(|&f| lat.face(f).vertices.clone()).collect::<Vec<_>>();
    let vertices: Vec<Vec<usize>> = ch.of_dim(0).map(|i| path_vertices(&op, ch.chain(i))).collect();
    let facets = ch_facets(&op, &a, &ch).map_err(input_err)?;
    let mut report = json!({
        "dim": ch.dim(),
        "f_vector": ch.f_vector(),
        "vertices": vertices,
        "facets": {
            "through_ends": facets.through_ends.iter().map(|c| faces_of(c)).collect::<Vec<_>>(),
            "split_at": facets.split_at.iter().map(|(v, c)| json!({"vertex": v, "chain": faces_of(c)})).collect::<Vec<_>>(),
            "exhaustive": facets.exhaustive,
        },
    });
    let mut ok = true;
    if simple {
        let r = ch_is_simple(&op, &a, &ch).map_err(input_err)?;
        ok &= r.agree;
        report["simple"] = json!(r.simple());
        report["simplicity"] = serde_json::to_value(&r).expect("serializable");
    }
    if oracle {
        let v = ch_verify(&op, &a, &ch).map_err(input_err)?;
        ok &= v.isomorphic;
        report["oracle"] = serde_json::to_value(&v).expect("serializable");
    }
    if ok {
        Ok(Output::Json(report))
    } else {
        Err(Failure::Check(report))
    }
}

fn poly(input: &Path, kernel: KernelArg, verify_main: bool) -> Outcome {
    let (op, a) = load(input)?;
    not_stratified(&op, &a)?;
    let choice = match kernel {
        KernelArg::Polytope => KernelChoice::Polytope,
        KernelArg::Chi => KernelChoice::Chi,
    };
    let r = poly_report(&op, &a, choice, verify_main).map_err(input_err)?;
    let ch = ch_faces(&op, &a).map_err(input_err)?;
    let simple = ch_is_simple(&op, &a, &ch).map_err(input_err)?.simple();
    let failed = r.main_theorem.as_ref().is_some_and(|m| !m.all_pass);
    let mut report = serde_json::to_value(&r).expect("serializable");
    report["ch_simple"] = json!(simple);
    if !simple {
        report["note"] = json!("monotone path polytope is not simple: H need not be palindromic");
    }
    if failed {
        Err(Failure::Check(report))
    } else {
        Ok(Output::Json(report))
    }
}

fn verify(kind: SuiteArg, inputs: &[PathBuf]) -> Outcome {
    let results: Vec<CriterionResult> = if inputs.is_empty() {
        suite::run(match kind {
            SuiteArg::Quick => SuiteKind::Quick,
            SuiteArg::Full => SuiteKind::Full,
        })
    } else {
        let mut entries = Vec::new();
        for path in inputs {
            let (p, ell): (Polytope, LinForm) = builders::load_json(path)
                .map_err(|e: BuildError| input_err(format!("{}: {e}", path.display())))?;
            guard(p.num_vertices())?;
            let name = path.display().to_string();
            entries.push(Entry::from_parts(&name, p, ell).map_err(|e| input_err(format!("{name}: {e}")))?);
        }
        suite::run_on(entries)
    };
    for r in &results {
        eprintln!("{:>2} {} {}: {}", r.id, if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    let first = results.iter().find(|r| !r.pass).map(|r| json!({"criterion": r.id, "input": r.counterexample}));
    let report = json!({
        "pass": first.is_none(),
        "criteria": results,
        "first_counterexample": first,
    });
    if report["pass"] == json!(true) {
        Ok(Output::Json(report))
    } else {
        Err(Failure::Check(report))
    }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen { expr, output } => gen(expr, output.as_deref()),
        Command::Analyze { input, dot } => analyze(input, *dot),
        Command::Chow { input, oracle, simple, dot } => chow(input, *oracle, *simple, *dot),
        Command::Poly { input, kernel, verify_main } => poly(input, *kernel, *verify_main),
        Command::Verify { suite, inputs } => verify(*suite, inputs),
    };
    match outcome {
        Ok(Output::Json(v)) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            if !t.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            print(&v);
            eprintln!("check failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
