//! The `orbitcat` command line.
//!
//! Exit codes: 0 when every check passes, 1 when checks ran and failed (this
//! includes non-Dynkin input and failed orbit-category hypotheses), 2 for
//! malformed input or usage.

pub mod cache;
pub mod coords;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbitcat_core::linalg::rat_to_string;
use orbitcat_core::{
    cartan_data, classify_dynkin, ConditionReport, DerivedCategory, DerivedIndec, DynkinClass, Error, FunctorWord,
    Oracle, OrbitCategory, Quiver, Result,
};

pub const SCHEMA: &str = "orbitcat/1";

#[derive(Parser, Debug)]
#[command(
    name = "orbitcat",
    version,
    about = "Exact Hom spaces in derived and orbit categories of Dynkin quivers"
)]
struct Cli {
    /// Emit a JSON report (schema orbitcat/1) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dynkin type, Coxeter number and root system of a quiver.
    Classify {
        /// Quiver JSON file, or A<n>/D<n>/E<n> for a built-in orientation.
        quiver: String,
    },
    /// dim Hom(X, Y) in D^b(kQ); with no objects, compare oracles on a window.
    Hom {
        quiver: String,
        /// Source object: (p,i) or d1,...,dn@shift.
        x: Option<String>,
        /// Target object.
        y: Option<String>,
        #[arg(long, value_enum, default_value_t = OracleArg::Mesh)]
        oracle: OracleArg,
        /// Window p in [-P, P] for the oracle comparison.
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// Also list a path basis.
        #[arg(long)]
        basis: bool,
    },
    /// Orbit category D^b(kQ)/F.
    Orbit {
        quiver: String,
        /// Functor word in t, S, v, e.g. "t^-1*S".
        #[arg(long)]
        functor: String,
        #[command(subcommand)]
        action: OrbitAction,
    },
}

#[derive(Subcommand, Debug)]
enum OrbitAction {
    /// Check the finiteness hypotheses on F.
    Check,
    /// Graded Hom between the orbits of X and Y.
    Hom {
        x: String,
        y: String,
        #[arg(long)]
        basis: bool,
    },
    /// Dimension-level Calabi-Yau probe.
    Cy {
        #[arg(long, default_value_t = 6)]
        max_d: usize,
    },
    /// Endomorphism algebra of a direct sum of objects.
    Endalg {
        /// `;`-separated objects, or P* for all projectives.
        #[arg(long)]
        object: String,
    },
    /// Auslander-Reiten quiver of the orbit category.
    Ar {
        /// Write DOT here instead of printing it.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List the canonical orbit representatives.
    Objects,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OracleArg {
    Mesh,
    Rep,
    Both,
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    passed: bool,
    result: Value,
    text: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidQuiver { .. }
        | Error::FunctorGrammar { .. }
        | Error::BadCoordinate { .. }
        | Error::NotARoot(_)
        | Error::Composition(_) => 2,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidQuiver { .. } => "invalid-quiver",
        Error::NotDynkin { .. } => "not-dynkin",
        Error::NotARoot(_) => "not-a-root",
        Error::RootCapExceeded { .. } => "root-cap-exceeded",
        Error::FunctorGrammar { .. } => "functor-grammar",
        Error::Composition(_) => "composition",
        Error::CertifiedBoundExceeded { .. } => "certified-bound-exceeded",
        Error::DegenerateFunctor => "degenerate-functor",
        Error::HypothesesFail(_) => "hypotheses-fail",
        Error::BadCoordinate { .. } => "bad-coordinate",
        Error::Internal(_) => "internal",
    }
}

/// Pretty JSON with sorted keys; parsing and re-rendering is the identity.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let command = command_name(&cli.command);
    let (quiver_arg, outcome) = match &cli.command {
        Command::Classify { quiver } => (quiver, classify(quiver)),
        Command::Hom {
            quiver,
            x,
            y,
            oracle,
            window,
            basis,
        } => (
            quiver,
            hom(quiver, x.as_deref(), y.as_deref(), *oracle, *window, *basis),
        ),
        Command::Orbit {
            quiver,
            functor,
            action,
        } => (quiver, orbit(quiver, functor, action)),
    };
    let quiver_hash = load_quiver(quiver_arg).map(|q| q.content_hash()).ok();
    match outcome {
        Ok(report) => {
            let code = if report.passed { 0 } else { 1 };
            let stdout = if cli.json {
                render_json(&json!({
                    "schema": SCHEMA,
                    "command": command,
                    "quiver": quiver_hash,
                    "passed": report.passed,
                    "result": report.result,
                }))
            } else {
                report.text
            };
            Output {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let stdout = if cli.json {
                render_json(&json!({
                    "schema": SCHEMA,
                    "command": command,
                    "quiver": quiver_hash,
                    "passed": false,
                    "error": { "kind": error_kind(&e), "message": e.to_string() },
                }))
            } else {
                String::new()
            };
            Output {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Classify { .. } => "classify".into(),
        Command::Hom { .. } => "hom".into(),
        Command::Orbit { action, .. } => format!(
            "orbit {}",
            match action {
                OrbitAction::Check => "check",
                OrbitAction::Hom { .. } => "hom",
                OrbitAction::Cy { .. } => "cy",
                OrbitAction::Endalg { .. } => "endalg",
                OrbitAction::Ar { .. } => "ar",
                OrbitAction::Objects => "objects",
            }
        ),
    }
}

fn builtin(name: &str) -> Option<Quiver> {
    let (family, rank) = name.split_at_checked(1)?;
    let n: usize = rank.parse().ok()?;
    match family {
        "A" if n >= 1 => Some(Quiver::linear_a(n)),
        "D" if n >= 4 => Some(Quiver::dynkin_d(n)),
        "E" if (6..=8).contains(&n) => Some(Quiver::dynkin_e(n)),
        _ => None,
    }
}

pub fn load_quiver(arg: &str) -> Result<Quiver> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidQuiver {
            location: arg.to_string(),
            message: e.to_string(),
        })?;
        return Quiver::from_json_str(&text);
    }
    builtin(arg).ok_or_else(|| Error::InvalidQuiver {
        location: arg.to_string(),
        message: "no such file, and not a built-in name like A3, D4 or E6".into(),
    })
}

fn derived(arg: &str) -> Result<Arc<DerivedCategory>> {
    let dc = DerivedCategory::new(load_quiver(arg)?)?;
    cache::load(dc.mesh());
    Ok(Arc::new(dc))
}

fn indec_json(x: &DerivedIndec) -> Value {
    json!({
        "coord": x.coord.to_string(),
        "dimv": x.dimv.0,
        "shift": x.shift,
    })
}

fn matrix_json(m: &[Vec<i64>]) -> Value {
    json!(m)
}

fn classify(arg: &str) -> Result<Report> {
    let q = load_quiver(arg)?;
    match classify_dynkin(&q) {
        DynkinClass::NotDynkin { witness } => Ok(Report {
            passed: false,
            text: format!("not Dynkin: {witness}\n"),
            result: json!({ "dynkin": false, "witness": witness }),
        }),
        DynkinClass::Dynkin {
            family,
            rank,
            coxeter_number,
        } => {
            let c = cartan_data(&q)?;
            let roots: Vec<String> = c.positive_roots.iter().map(|d| d.to_string()).collect();
            let mut text = String::new();
            writeln!(text, "type {family}{rank}, Coxeter number {coxeter_number}").unwrap();
            writeln!(text, "{} positive roots", roots.len()).unwrap();
            for r in &roots {
                writeln!(text, "  {r}").unwrap();
            }
            Ok(Report {
                passed: true,
                text,
                result: json!({
                    "dynkin": true,
                    "family": family.to_string(),
                    "rank": rank,
                    "coxeter_number": coxeter_number,
                    "positive_root_count": roots.len(),
                    "positive_roots": roots,
                    "euler_matrix": matrix_json(&c.euler_matrix),
                    "symmetrized_cartan": matrix_json(&c.symmetrized_cartan),
                    "coxeter_matrix": matrix_json(&c.coxeter_matrix),
                }),
            })
        }
    }
}

fn hom(arg: &str, x: Option<&str>, y: Option<&str>, oracle: OracleArg, window: i64, basis: bool) -> Result<Report> {
    let dc = derived(arg)?;
    let report = match (x, y) {
        (Some(x), Some(y)) => hom_pair(&dc, x, y, oracle, basis),
        (None, None) => hom_window(&dc, oracle, window),
        _ => Err(Error::BadCoordinate {
            input: x.or(y).unwrap_or_default().to_string(),
            message: "give both X and Y, or neither".into(),
        }),
    };
    cache::store(dc.mesh());
    report
}

fn hom_pair(dc: &DerivedCategory, x: &str, y: &str, oracle: OracleArg, basis: bool) -> Result<Report> {
    let x = coords::parse_object(dc, x)?;
    let y = coords::parse_object(dc, y)?;
    let mesh = matches!(oracle, OracleArg::Mesh | OracleArg::Both)
        .then(|| dc.hom_dim(Oracle::Mesh, &x, &y))
        .transpose()?;
    let rep = matches!(oracle, OracleArg::Rep | OracleArg::Both)
        .then(|| dc.hom_dim(Oracle::Rep, &x, &y))
        .transpose()?;
    let dim = mesh.or(rep).expect("at least one oracle runs");
    let agree = mesh.zip(rep).is_none_or(|(a, b)| a == b);
    let mut text = format!("dim Hom({x}, {y}) = {dim}\n");
    let mut result = json!({
        "source": indec_json(&x),
        "target": indec_json(&y),
        "dim": dim,
        "mesh": mesh,
        "rep": rep,
    });
    if let (Some(a), Some(b)) = (mesh, rep) {
        writeln!(
            text,
            "mesh {a}, rep {b}: {}",
            if agree { "oracles agree" } else { "MISMATCH" }
        )
        .unwrap();
    }
    if basis {
        let space = dc.mesh().hom_basis(x.coord, y.coord)?;
        let paths: Vec<String> = space.basis.iter().map(|p| p.to_string()).collect();
        for p in &paths {
            writeln!(text, "  {p}").unwrap();
        }
        result["basis"] = json!(paths);
    }
    Ok(Report {
        passed: agree,
        result,
        text,
    })
}

fn hom_window(dc: &DerivedCategory, oracle: OracleArg, window: i64) -> Result<Report> {
    let objects = dc.window(-window..=window);
    let mut pairs = 0usize;
    let mut nonzero = 0usize;
    let mut mismatches = Vec::new();
    for x in &objects {
        for y in &objects {
            pairs += 1;
            let mesh = matches!(oracle, OracleArg::Mesh | OracleArg::Both)
                .then(|| dc.hom_dim(Oracle::Mesh, x, y))
                .transpose()?;
            let rep = matches!(oracle, OracleArg::Rep | OracleArg::Both)
                .then(|| dc.hom_dim(Oracle::Rep, x, y))
                .transpose()?;
            if mesh.or(rep).unwrap_or(0) > 0 {
                nonzero += 1;
            }
            if let (Some(a), Some(b)) = (mesh, rep) {
                if a != b {
                    mismatches.push(json!({
                        "source": indec_json(x),
                        "target": indec_json(y),
                        "mesh": a,
                        "rep": b,
                    }));
                }
            }
        }
    }
    let mut text = format!("{pairs} pairs in p ∈ [-{window}, {window}], {nonzero} with nonzero Hom\n");
    if oracle == OracleArg::Both {
        writeln!(
            text,
            "oracles agree on all {pairs} pairs: {} mismatches",
            mismatches.len()
        )
        .unwrap();
    }
    Ok(Report {
        passed: mismatches.is_empty(),
        text,
        result: json!({
            "window": [-window, window],
            "pairs": pairs,
            "nonzero": nonzero,
            "mismatches": mismatches,
        }),
    })
}

fn orbit(arg: &str, functor: &str, action: &OrbitAction) -> Result<Report> {
    let word = FunctorWord::parse(functor)?;
    let dc = derived(arg)?;
    let oc = match OrbitCategory::with_derived(dc.clone(), word.clone()) {
        Ok(oc) => oc,
        Err(Error::DegenerateFunctor) if matches!(action, OrbitAction::Check) => {
            return Ok(condition_report(ConditionReport::degenerate(&word)));
        }
        Err(e) => return Err(e),
    };
    let report = match action {
        OrbitAction::Check => oc.check_conditions().map(condition_report),
        OrbitAction::Hom { x, y, basis } => orbit_hom(&oc, x, y, *basis),
        OrbitAction::Cy { max_d } => orbit_cy(&oc, *max_d),
        OrbitAction::Endalg { object } => orbit_endalg(&oc, object),
        OrbitAction::Ar { dot } => orbit_ar(&oc, dot.as_deref()),
        OrbitAction::Objects => orbit_objects(&oc),
    };
    cache::store(dc.mesh());
    report
}

fn condition_report(r: ConditionReport) -> Report {
    let mut text = String::new();
    let mark = |b: bool| if b { "pass" } else { "FAIL" };
    writeln!(text, "F = {}", r.functor).unwrap();
    writeln!(
        text,
        "condition 2 (finitely many FⁱU in the heart): {}",
        mark(r.condition2.passed)
    )
    .unwrap();
    writeln!(text, "  {}", r.condition2.message).unwrap();
    for v in &r.condition2.visits {
        writeln!(text, "  U = {}: i ∈ {:?}", v.module, v.indices).unwrap();
    }
    writeln!(
        text,
        "condition 3 (every orbit meets some SⁿU, 0 ≤ n ≤ N): {}",
        mark(r.condition3.passed)
    )
    .unwrap();
    writeln!(text, "  {}", r.condition3.message).unwrap();
    if let Some(n) = r.condition3.bound {
        writeln!(text, "  N = {n}").unwrap();
    }
    Report {
        passed: r.passed(),
        result: serde_json::to_value(&r).expect("report serializes"),
        text,
    }
}

fn orbit_hom(oc: &OrbitCategory, x: &str, y: &str, basis: bool) -> Result<Report> {
    let dc = oc.derived();
    let x = oc.canonical_rep(&coords::parse_object(dc, x)?)?;
    let y = oc.canonical_rep(&coords::parse_object(dc, y)?)?;
    let hom = oc.orbit_hom(&x, &y)?;
    let mut text = format!("Hom({x}, {y}) in D^b/{}: total {}\n", oc.functor(), hom.total_dim);
    let mut graded = serde_json::Map::new();
    for (n, space) in &hom.components {
        writeln!(text, "  n = {n}: {}", space.dim()).unwrap();
        let mut entry = json!({ "dim": space.dim() });
        if basis {
            let paths: Vec<String> = space.basis.iter().map(|p| p.to_string()).collect();
            for p in &paths {
                writeln!(text, "    {p}").unwrap();
            }
            entry["basis"] = json!(paths);
        }
        graded.insert(n.to_string(), entry);
    }
    Ok(Report {
        passed: true,
        text,
        result: json!({
            "functor": oc.functor().normalized(),
            "source": indec_json(&x),
            "target": indec_json(&y),
            "graded": graded,
            "total_dim": hom.total_dim,
            "window": [hom.window.0, hom.window.1],
        }),
    })
}

fn orbit_cy(oc: &OrbitCategory, max_d: usize) -> Result<Report> {
    let probe = oc.cy_probe(max_d)?;
    let text = match probe.dimension {
        Some(d) => format!(
            "CY-dimension compatible with d = {d} (dimension level; all compatible d ≤ {max_d}: {:?})\n",
            probe.compatible
        ),
        None => format!("no positive d ≤ {max_d} passes the dimension test\n"),
    };
    Ok(Report {
        passed: probe.dimension.is_some(),
        text,
        result: json!({
            "functor": oc.functor().normalized(),
            "max_d": max_d,
            "dimension": probe.dimension,
            "compatible": probe.compatible,
        }),
    })
}

fn orbit_endalg(oc: &OrbitCategory, object: &str) -> Result<Report> {
    let summands = coords::parse_object_list(oc.derived(), object)?;
    let end = oc.end_algebra(&summands.into())?;
    let associative = end.is_associative();
    let unital = end.unit_is_neutral();
    let mut text = format!(
        "End of {} summands in D^b/{}: dim {}\n",
        end.summands.len(),
        oc.functor(),
        end.dim()
    );
    for (n, d) in &end.graded_dims {
        writeln!(text, "  degree {n}: {d}").unwrap();
    }
    writeln!(text, "basis:").unwrap();
    for (i, e) in end.basis.iter().enumerate() {
        writeln!(
            text,
            "  e{i}: X{} -> F^{} X{}  {}",
            e.source, e.degree, e.target, e.path
        )
        .unwrap();
    }
    writeln!(text, "products (e_j ∘ e_i):").unwrap();
    let mut table = Vec::new();
    for (i, row) in end.table.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if entry.is_empty() {
                continue;
            }
            let terms: Vec<String> = entry
                .iter()
                .map(|(k, c)| format!("{} e{k}", rat_to_string(c)))
                .collect();
            writeln!(text, "  e{j} ∘ e{i} = {}", terms.join(" + ")).unwrap();
            for (k, c) in entry {
                table.push(json!([i, j, k, rat_to_string(c)]));
            }
        }
    }
    writeln!(text, "associative: {associative}, unit neutral: {unital}").unwrap();
    let graded: serde_json::Map<String, Value> =
        end.graded_dims.iter().map(|(n, d)| (n.to_string(), json!(d))).collect();
    Ok(Report {
        passed: associative && unital,
        text,
        result: json!({
            "functor": oc.functor().normalized(),
            "summands": end.summands.iter().map(indec_json).collect::<Vec<_>>(),
            "dim": end.dim(),
            "graded_dims": graded,
            "basis": serde_json::to_value(&end.basis).expect("basis serializes"),
            "table": table,
            "associative": associative,
            "unit_neutral": unital,
        }),
    })
}

fn orbit_ar(oc: &OrbitCategory, dot: Option<&Path>) -> Result<Report> {
    let ar = oc.ar_quiver()?;
    let tau = oc.tau_identity_check()?;
    let ln = ar.ln_rank();
    let dot_text = ar.to_dot(&oc.derived().quiver().content_hash());
    let mut text = format!("{} vertices, {} arrows\n", ar.vertices.len(), ar.arrows.len());
    if let Some(n) = ln {
        writeln!(text, "this is the quiver L{n} (loop at vertex 1, τ = 1)").unwrap();
    }
    match dot {
        Some(path) => {
            std::fs::write(path, &dot_text).map_err(|e| Error::InvalidQuiver {
                location: path.display().to_string(),
                message: format!("cannot write DOT: {e}"),
            })?;
            writeln!(text, "wrote {}", path.display()).unwrap();
        }
        None => text.push_str(&dot_text),
    }
    Ok(Report {
        passed: true,
        text,
        result: json!({
            "functor": oc.functor().normalized(),
            "vertices": ar.vertices.iter().map(indec_json).collect::<Vec<_>>(),
            "arrows": ar.arrows,
            "tau": ar.tau,
            "tau_trivial": tau.tau_trivial,
            "ln_rank": ln,
            "dot": dot_text,
        }),
    })
}

fn orbit_objects(oc: &OrbitCategory) -> Result<Report> {
    let objects = oc.objects()?;
    let mut text = format!("{} objects in D^b/{}\n", objects.len(), oc.functor());
    for x in objects {
        writeln!(text, "  {x}").unwrap();
    }
    Ok(Report {
        passed: true,
        text,
        result: json!({
            "functor": oc.functor().normalized(),
            "count": objects.len(),
            "objects": objects.iter().map(indec_json).collect::<Vec<_>>(),
        }),
    })
}
