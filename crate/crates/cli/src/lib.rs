//! Command-line front end for `qgadget`.
//!
//! Every subcommand builds one [`Report`]. With `--json` it is printed as
//! pretty JSON, otherwise as an indented key/value rendering of the same
//! object.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use qgadget::defect::{
    assignment_defect, cc_defect, commutator_defect, cv_defect, parse_pair_dist, Strategy,
};
use qgadget::endo::{
    enumerate_endomorphisms, enumerate_homomorphisms, find_schmidt_pair, is_core, nogo_verdict,
};
use qgadget::gadget::{
    check_property_i_classical, complement_cycle_gadget, default_walk_lmax,
    disprove_box_path_gadget, odd_cycle_distance_bound, product_transfer, splice_gadget,
    walk_obstruction, GadgetCandidate, Refutation,
};
use qgadget::qcore::{classical_only_report, default_lmax, search_certificate};
use qgadget::qrep::{
    commutator_norm, compose_reps, schmidt_rep, schmidt_witness, verify_rep, QuantumRep,
};
use qgadget::walks::{decide_bipartite_target, girths, is_bipartite, is_oracularisable};
use qgadget::{Error, Graph, DEFAULT_SIZE_BOUND};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub version: String,
    /// Wall-clock seconds; the only field allowed to differ between runs.
    pub elapsed: f64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        render(&v, 0, &mut out);
        out
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}- {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", leaf(x))),
    }
}

// short arrays of scalars stay on one line
fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(xs) => xs.len() <= 16 && xs.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qgadget",
    version,
    about = "Quantum endomorphisms and commutativity gadgets for graph CSPs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Vertex bound for exhaustive searches; raising it needs --i-know.
    #[arg(long)]
    bound: Option<usize>,
    /// Acknowledge a size-bound override; echoed into the report.
    #[arg(long)]
    i_know: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// No-go verdict, walk invariants and classical-only analysis of a graph.
    Analyze {
        graph: String,
        #[arg(long)]
        assume_no_quantum_symmetry: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a Schmidt pair and build its 2-dimensional representation.
    Schmidt {
        graph: String,
        /// Require disconnected supports.
        #[arg(long)]
        oracular: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate all endomorphisms.
    Endos {
        graph: String,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate homomorphisms from H to G in lexicographic order.
    Homs {
        h: String,
        g: String,
        /// Pinned images as `u=a`, repeatable.
        #[arg(long = "pin")]
        pins: Vec<String>,
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Classical property (i) table and walk obstruction for a candidate.
    GadgetCheck {
        gadget: String,
        x: usize,
        y: usize,
        target: String,
        #[arg(long)]
        walk_lmax: Option<usize>,
        /// Also check the distance bound for target C_{2n+1}.
        #[arg(long)]
        odd_cycle_n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a named gadget family and re-check it.
    GadgetBuild {
        /// Only `complement-cycle` is available.
        family: String,
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Glue a gadget onto pairs of an instance.
    Splice {
        instance: String,
        gadget: String,
        x: usize,
        y: usize,
        /// Pairs as `u,v;u,v;...`.
        #[arg(long)]
        pairs: String,
        #[command(flatten)]
        common: Common,
    },
    /// Refute every distinguished pair of box(C_{2n+1}, P_k).
    DisprovePrism {
        n: usize,
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Quantum-core certificate and the classical-only chain.
    Qcore {
        graph: String,
        #[arg(long)]
        lmax: Option<usize>,
        #[arg(long)]
        assume_no_quantum_symmetry: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check the relations of a representation read from a JSON file.
    RepVerify {
        file: String,
        #[arg(long)]
        oracular: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compose two representations read from JSON files.
    RepCompose {
        first: String,
        second: String,
        #[command(flatten)]
        common: Common,
    },
    /// Defects of a finite-dimensional strategy read from a JSON file.
    Defect {
        file: String,
        /// JSON object of pair weights `"x,y;x',y'": "p/q"` for the c-c defect.
        #[arg(long)]
        pairs: Option<String>,
        /// Vertex pairs `x,y` for commutator defects, repeatable.
        #[arg(long = "commutator")]
        commutators: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide H -> G for bipartite G.
    BipartiteDecide {
        h: String,
        g: String,
        #[command(flatten)]
        common: Common,
    },
    /// Transfer a gadget shared by two targets to their categorical product.
    ProductTransfer {
        gadget: String,
        x: usize,
        y: usize,
        first: String,
        second: String,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Analyze { common, .. }
            | Command::Schmidt { common, .. }
            | Command::Endos { common, .. }
            | Command::Homs { common, .. }
            | Command::GadgetCheck { common, .. }
            | Command::GadgetBuild { common, .. }
            | Command::Splice { common, .. }
            | Command::DisprovePrism { common, .. }
            | Command::Qcore { common, .. }
            | Command::RepVerify { common, .. }
            | Command::RepCompose { common, .. }
            | Command::Defect { common, .. }
            | Command::BipartiteDecide { common, .. }
            | Command::ProductTransfer { common, .. } => common,
        }
    }
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verification(_) => EXIT_VERIFICATION,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => m,
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// What one invocation produced.
#[derive(Debug)]
pub struct RunOutput {
    pub code: i32,
    /// Rendered report on success, empty otherwise.
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Applies `QGADGET_THREADS` to the global worker pool. Only the first call
/// in a process has any effect.
pub fn configure_threads() {
    if let Some(n) = std::env::var("QGADGET_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return RunOutput {
                code,
                stdout,
                stderr,
                report: None,
            };
        }
    };
    let common = cli.command.common().clone();
    let start = Instant::now();
    let mut inputs = BTreeMap::new();
    let outcome = bound(&common, &mut inputs).and_then(|b| dispatch(&cli.command, b, &mut inputs));
    match outcome {
        Ok(result) => {
            let report = Report {
                command: command_name(&cli.command).into(),
                inputs,
                result,
                version: VERSION.into(),
                elapsed: start.elapsed().as_secs_f64(),
            };
            let stdout = if common.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            RunOutput {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
                report: Some(report),
            }
        }
        Err(f) => RunOutput {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
            report: None,
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Schmidt { .. } => "schmidt",
        Command::Endos { .. } => "endos",
        Command::Homs { .. } => "homs",
        Command::GadgetCheck { .. } => "gadget-check",
        Command::GadgetBuild { .. } => "gadget-build",
        Command::Splice { .. } => "splice",
        Command::DisprovePrism { .. } => "disprove-prism",
        Command::Qcore { .. } => "qcore",
        Command::RepVerify { .. } => "rep-verify",
        Command::RepCompose { .. } => "rep-compose",
        Command::Defect { .. } => "defect",
        Command::BipartiteDecide { .. } => "bipartite-decide",
        Command::ProductTransfer { .. } => "product-transfer",
    }
}

fn bound(c: &Common, inputs: &mut BTreeMap<String, Value>) -> std::result::Result<usize, Failure> {
    match c.bound {
        Some(b) if b > DEFAULT_SIZE_BOUND && !c.i_know => Err(Failure::Usage(format!(
            "--bound {b} exceeds the default {DEFAULT_SIZE_BOUND}; pass --i-know to override"
        ))),
        Some(b) => {
            inputs.insert("bound".into(), json!(b));
            inputs.insert("i_know".into(), json!(c.i_know));
            Ok(b)
        }
        None => {
            inputs.insert("bound".into(), json!(DEFAULT_SIZE_BOUND));
            Ok(DEFAULT_SIZE_BOUND)
        }
    }
}

/// A graph argument: family DSL or `@path` to an edge-list file.
pub fn load_graph(arg: &str) -> std::result::Result<Graph, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = read(path)?;
            Ok(Graph::parse_edge_list(&text)?.with_label(arg))
        }
        None => Ok(Graph::from_family(arg)?),
    }
}

fn read(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

fn load_json<T: for<'de> Deserialize<'de>>(path: &str) -> std::result::Result<T, Failure> {
    let path = path.strip_prefix('@').unwrap_or(path);
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn describe(g: &Graph) -> Value {
    json!({
        "label": g.label(),
        "n": g.n(),
        "edges": g.edge_count(),
    })
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("expected `u,v`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_pin(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("expected `u=a`, got `{s}`"));
    let (a, b) = s.split_once('=').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn check(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(what()))
    }
}

fn dispatch(cmd: &Command, bound: usize, inputs: &mut BTreeMap<String, Value>) -> Outcome {
    let mut put = |k: &str, v: Value| {
        inputs.insert(k.into(), v);
    };
    match cmd {
        Command::Analyze {
            graph,
            assume_no_quantum_symmetry,
            ..
        } => {
            put("graph", json!(graph));
            put(
                "assume_no_quantum_symmetry",
                json!(assume_no_quantum_symmetry),
            );
            analyze(&load_graph(graph)?, *assume_no_quantum_symmetry, bound)
        }
        Command::Schmidt {
            graph, oracular, ..
        } => {
            put("graph", json!(graph));
            put("oracular", json!(oracular));
            schmidt(&load_graph(graph)?, *oracular, bound)
        }
        Command::Endos { graph, .. } => {
            put("graph", json!(graph));
            let g = load_graph(graph)?;
            let endos = enumerate_endomorphisms(&g, bound)?;
            let core = endos.iter().all(|e| e.is_bijective());
            Ok(json!({
                "graph": describe(&g),
                "count": endos.len(),
                "is_core": core,
                "endomorphisms": endos.iter().map(|e| e.map().to_vec()).collect::<Vec<_>>(),
            }))
        }
        Command::Homs {
            h, g, pins, limit, ..
        } => {
            put("h", json!(h));
            put("g", json!(g));
            put("pins", json!(pins));
            put("limit", json!(limit));
            let (hg, gg) = (load_graph(h)?, load_graph(g)?);
            let pins = pins
                .iter()
                .map(|p| parse_pin(p))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            if limit.is_none() && hg.n() > bound {
                return Err(Error::SizeBound { n: hg.n(), bound }.into());
            }
            let homs = enumerate_homomorphisms(&hg, &gg, &pins, *limit)?;
            for m in &homs {
                check(hg.is_homomorphism(&gg, m), || {
                    format!("search returned a non-homomorphism {m:?}")
                })?;
            }
            Ok(json!({
                "h": describe(&hg),
                "g": describe(&gg),
                "count": homs.len(),
                "homomorphisms": homs,
            }))
        }
        Command::GadgetCheck {
            gadget,
            x,
            y,
            target,
            walk_lmax,
            odd_cycle_n,
            ..
        } => {
            put("gadget", json!(gadget));
            put("x", json!(x));
            put("y", json!(y));
            put("target", json!(target));
            put("walk_lmax", json!(walk_lmax));
            put("odd_cycle_n", json!(odd_cycle_n));
            let c = GadgetCandidate::new(load_graph(gadget)?, *x, *y, load_graph(target)?)?;
            let table = check_property_i_classical(&c, bound)?;
            table.verify(&c)?;
            let lmax = walk_lmax.unwrap_or_else(|| default_walk_lmax(&c));
            let obstruction = walk_obstruction(&c, Some(lmax));
            check(!(table.complete && obstruction.is_some()), || {
                "walk obstruction contradicts a complete property (i) table".into()
            })?;
            let distance = odd_cycle_n
                .map(|n| odd_cycle_distance_bound(&c, n))
                .transpose()?;
            Ok(json!({
                "candidate": to_value(&c),
                "table": to_value(&table),
                "walk_lmax": lmax,
                "walk_obstruction": to_value(&obstruction),
                "distance_bound": to_value(&distance),
            }))
        }
        Command::GadgetBuild { family, k, .. } => {
            put("family", json!(family));
            put("k", json!(k));
            if family != "complement-cycle" {
                return Err(Failure::Usage(format!("unknown gadget family `{family}`")));
            }
            let built = complement_cycle_gadget(*k)?;
            Ok(to_value(&built))
        }
        Command::Splice {
            instance,
            gadget,
            x,
            y,
            pairs,
            ..
        } => {
            put("instance", json!(instance));
            put("gadget", json!(gadget));
            put("x", json!(x));
            put("y", json!(y));
            put("pairs", json!(pairs));
            let h = load_graph(instance)?;
            let gg = load_graph(gadget)?;
            // the target plays no role in splicing
            let c = GadgetCandidate::new(gg, *x, *y, Graph::complete(1)?)?;
            let pairs = pairs
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(parse_pair)
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let s = splice_gadget(&h, &pairs, &c)?;
            let orig: Vec<usize> = (0..h.n()).collect();
            check(s.induced(&orig)? == h, || {
                "instance is not induced in the spliced graph".into()
            })?;
            Ok(json!({
                "instance": describe(&h),
                "copies": pairs.len(),
                "graph": to_value(&s),
                "edge_list": s.to_edge_list(),
            }))
        }
        Command::DisprovePrism { n, k, .. } => {
            put("n", json!(n));
            put("k", json!(k));
            let r = disprove_box_path_gadget(*n, *k)?;
            check(r.all_refuted, || {
                "some candidate pair was not refuted".into()
            })?;
            for c in &r.refutations {
                if let Refutation::NoncommutingRep {
                    max_residual,
                    commutator_norm,
                    ..
                } = &c.refutation
                {
                    check(
                        *max_residual < qgadget::DEFAULT_TOL
                            && *commutator_norm > qgadget::DEFAULT_TOL,
                        || format!("representation for pair {:?} failed its check", c.pair),
                    )?;
                }
            }
            Ok(to_value(&r))
        }
        Command::Qcore {
            graph,
            lmax,
            assume_no_quantum_symmetry,
            ..
        } => {
            put("graph", json!(graph));
            put("lmax", json!(lmax));
            put(
                "assume_no_quantum_symmetry",
                json!(assume_no_quantum_symmetry),
            );
            let g = load_graph(graph)?;
            let lmax = lmax.unwrap_or_else(|| default_lmax(&g));
            let search = search_certificate(&g, lmax)?;
            if let Some(c) = &search.certificate {
                c.verify(&g)?;
            }
            let chain = classical_only_report(&g, *assume_no_quantum_symmetry, bound)?;
            Ok(json!({
                "graph": describe(&g),
                "lmax": lmax,
                "search": to_value(&search),
                "classical_only": to_value(&chain),
            }))
        }
        Command::RepVerify { file, oracular, .. } => {
            put("file", json!(file));
            put("oracular", json!(oracular));
            let r: QuantumRep = load_json(file)?;
            let report = verify_rep(&r, *oracular);
            Ok(json!({
                "domain": describe(&r.domain),
                "codomain": describe(&r.codomain),
                "dim": r.dim,
                "report": to_value(&report),
            }))
        }
        Command::RepCompose { first, second, .. } => {
            put("first", json!(first));
            put("second", json!(second));
            let (r1, r2): (QuantumRep, QuantumRep) = (load_json(first)?, load_json(second)?);
            let c = compose_reps(&r1, &r2)?;
            let (v1, v2, vc) = (
                verify_rep(&r1, false),
                verify_rep(&r2, false),
                verify_rep(&c, false),
            );
            // composing valid representations must give a valid one
            check(!(v1.passed && v2.passed) || vc.passed, || {
                "composite fails its relations".into()
            })?;
            Ok(json!({
                "inputs_passed": [v1.passed, v2.passed],
                "report": to_value(&vc),
                "rep": to_value(&c),
            }))
        }
        Command::Defect {
            file,
            pairs,
            commutators,
            ..
        } => {
            put("file", json!(file));
            put("pairs", json!(pairs));
            put("commutators", json!(commutators));
            let s: Strategy = load_json(file)?;
            let cv = if s.has_edge_pvms() {
                Some(cv_defect(&s)?)
            } else {
                None
            };
            let cc = match pairs {
                Some(p) => {
                    let doc: BTreeMap<String, String> = load_json(p)?;
                    Some(cc_defect(&s, &parse_pair_dist(&doc)?)?)
                }
                None => None,
            };
            let mut comm = Vec::new();
            for c in commutators {
                let (x, y) = parse_pair(c)?;
                comm.push(json!({"x": x, "y": y, "defect": commutator_defect(&s, x, y)?}));
            }
            Ok(json!({
                "instance": describe(s.instance()),
                "target": describe(s.target()),
                "dim": s.dim(),
                "assignment_defect": assignment_defect(&s),
                "cv_defect": cv,
                "cc_defect": cc,
                "commutator_defects": comm,
            }))
        }
        Command::BipartiteDecide { h, g, .. } => {
            put("h", json!(h));
            put("g", json!(g));
            let (hg, gg) = (load_graph(h)?, load_graph(g)?);
            let exists = decide_bipartite_target(&hg, &gg)?;
            Ok(json!({
                "h": describe(&hg),
                "g": describe(&gg),
                "homomorphism_exists": exists,
                "reason": if exists {
                    "h is bipartite and g has an edge"
                } else if gg.edge_count() == 0 {
                    "g has no edges while h does"
                } else {
                    "h has an odd cycle, which cannot map to a bipartite graph"
                },
            }))
        }
        Command::ProductTransfer {
            gadget,
            x,
            y,
            first,
            second,
            ..
        } => {
            put("gadget", json!(gadget));
            put("x", json!(x));
            put("y", json!(y));
            put("first", json!(first));
            put("second", json!(second));
            let gg = load_graph(gadget)?;
            let c1 = GadgetCandidate::new(gg.clone(), *x, *y, load_graph(first)?)?;
            let c2 = GadgetCandidate::new(gg, *x, *y, load_graph(second)?)?;
            let t = product_transfer(&c1, &c2, bound)?;
            Ok(to_value(&t))
        }
    }
}

fn analyze(g: &Graph, assume: bool, bound: usize) -> Outcome {
    let verdict = nogo_verdict(g, bound)?;
    verdict.verify(g)?;
    let gi = girths(g);
    let orac = is_oracularisable(g);
    if let Some(c) = orac.four_cycle {
        check(
            (0..4).all(|i| g.adjacent(c[i], c[(i + 1) % 4])) && {
                let mut s = c.to_vec();
                s.sort_unstable();
                s.windows(2).all(|w| w[0] != w[1])
            },
            || format!("reported 4-cycle {c:?} is not a cyclic path"),
        )?;
    }
    let chain = classical_only_report(g, assume, bound)?;
    Ok(json!({
        "graph": describe(g),
        "girths": to_value(&gi),
        "bipartite": is_bipartite(g),
        "oracularisability": to_value(&orac),
        "is_core": is_core(g, bound)?,
        "nogo_verdict": to_value(&verdict),
        "classical_only": to_value(&chain),
    }))
}

fn schmidt(g: &Graph, oracular: bool, bound: usize) -> Outcome {
    let Some(cert) = find_schmidt_pair(g, oracular, bound)? else {
        return Ok(json!({"graph": describe(g), "found": false}));
    };
    cert.verify(g)?;
    let rep = schmidt_rep(g, &cert.f, &cert.g)?;
    let report = verify_rep(&rep, oracular);
    check(report.passed, || {
        "Schmidt representation fails its relations".into()
    })?;
    let (a, b) = schmidt_witness(&cert.f, &cert.g)
        .ok_or_else(|| Failure::Verification("no witness".into()))?;
    let norm = commutator_norm(&rep, a, b);
    check(norm > rep.tol, || "witness generators commute".into())?;
    Ok(json!({
        "graph": describe(g),
        "found": true,
        "certificate": to_value(&cert),
        "witness": [a, b],
        "commutator_norm": norm,
        "report": to_value(&report),
        "rep": to_value(&rep),
    }))
}
