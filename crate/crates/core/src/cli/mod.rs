//! Command-line front end. Decision commands exit with 0 for yes, 1 for no
//! and 2 for usage, input or resource errors.

mod selftest;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::components::{
    enumerate_components, has_component_of_size, is_connected_set, is_maximal_component, Algo, Budget, Closedness,
    ComponentQuery, Kind,
};
use crate::gadgets::{self, GadgetInstance};
use crate::graph::{parse_temporal_graph, Model, TemporalGraph, Timestep, Vertex};
use crate::reachability::reach_profile;

pub use selftest::{run_selftest, SelftestConfig, SelftestReport};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tempconn", version, about = "Connectivity analysis for temporal graphs")]
pub struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Temporal reachability from one vertex.
    Reach(ReachArgs),
    /// Enumerate the components of one notion.
    Components(ComponentsArgs),
    /// Check whether a vertex set is connected, or a component.
    Check(CheckArgs),
    /// Find a connected set of at least k vertices.
    Find(FindArgs),
    /// Generate a reduction gadget.
    Gen(GenArgs),
    /// Cross-check the algorithms against the brute-force oracles.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Tcc,
    Tucc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Auto,
    Brute,
    Fpt,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph file, or `-` for standard input.
    #[arg(long, short)]
    pub input: String,
    #[arg(long, default_value = "nonstrict")]
    pub model: Model,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long, value_enum, default_value = "tcc")]
    pub kind: KindArg,
    /// Walks must stay inside the set.
    #[arg(long)]
    pub closed: bool,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Maximal cliques enumerated before giving up.
    #[arg(long, default_value_t = Budget::default().max_cliques)]
    pub max_cliques: usize,
    /// Candidate sets tested before giving up.
    #[arg(long, default_value_t = Budget::default().max_subsets)]
    pub max_subsets: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_cliques: self.max_cliques, max_subsets: self.max_subsets }
    }
}

#[derive(Debug, Args)]
pub struct ReachArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub from: String,
    /// Answer yes/no for one target instead of listing the reachable set.
    #[arg(long, conflicts_with = "profile")]
    pub to: Option<String>,
    /// List the reachable set after every timestep.
    #[arg(long)]
    pub profile: bool,
}

#[derive(Debug, Args)]
pub struct ComponentsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub query: QueryArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub query: QueryArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Comma-separated vertex names.
    #[arg(long)]
    pub set: String,
    /// Check that the set is a component, not just connected.
    #[arg(long)]
    pub maximal: bool,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub query: QueryArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: AlgoArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GadgetKind {
    LineBipartite,
    CliqueTcc,
    DirTau2,
    ClosedDirTau3,
    TwoClub,
    SatConn,
    SatUni,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GadgetKind,
    /// Source instance file; a random instance is drawn when absent.
    #[arg(long, short)]
    pub input: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vertices of a random source graph.
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Edge probability of a random source graph.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// X-side size (bipartite part or variable block).
    #[arg(long, default_value_t = 2)]
    pub nx: usize,
    /// Y-side size (bipartite part or variable block).
    #[arg(long, default_value_t = 2)]
    pub ny: usize,
    /// Clauses of a random formula.
    #[arg(long, default_value_t = 3)]
    pub clauses: usize,
    /// Vertex set X for two-club (names, comma-separated; default all).
    #[arg(long)]
    pub set: Option<String>,
    /// Two-club: emit the strict two-snapshot variant.
    #[arg(long)]
    pub strict: bool,
    /// Closed-dir-tau3: keep one cross arc per edge.
    #[arg(long)]
    pub unilateral: bool,
    /// Source parameter k, fixing the threshold in the sidecar.
    #[arg(long)]
    pub k: Option<usize>,
    /// Lifetime to record for line-bipartite.
    #[arg(long)]
    pub tau: Option<Timestep>,
    /// Write `<prefix>.tg` and `<prefix>.json` instead of printing.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Directory for counterexample files.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub inject_failure: bool,
}

/// A failed command: message for stderr, and the exit code.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CmdResult = Result<i32, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    if let Some(threads) = cli.threads {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let result = match &cli.command {
        Command::Reach(a) => cmd_reach(a, stdin, out),
        Command::Components(a) => cmd_components(a, stdin, out),
        Command::Check(a) => cmd_check(a, stdin, out),
        Command::Find(a) => cmd_find(a, stdin, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Selftest(a) => cmd_selftest(a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError(format!("{path}: {e}")))
    }
}

fn load_graph(args: &GraphArgs, stdin: &mut dyn Read) -> Result<TemporalGraph, CliError> {
    let text = read_input(&args.input, stdin)?;
    parse_temporal_graph(&text).map_err(|e| CliError(format!("{}: {e}", args.input)))
}

fn resolve(g: &TemporalGraph, name: &str) -> Result<Vertex, CliError> {
    let name = name.trim();
    g.vertex_by_name(name)
        .or_else(|| if g.names().is_none() { name.parse().ok().filter(|&v| v < g.vertex_count()) } else { None })
        .ok_or_else(|| CliError(format!("unknown vertex `{name}`")))
}

fn resolve_set(g: &TemporalGraph, list: &str) -> Result<Vec<Vertex>, CliError> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut set = list.split(',').map(|s| resolve(g, s)).collect::<Result<Vec<_>, _>>()?;
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

fn names(g: &TemporalGraph, set: &[Vertex]) -> Vec<String> {
    set.iter().map(|&v| g.name(v)).collect()
}

fn query_of(q: &QueryArgs, model: Model) -> ComponentQuery {
    let kind = match q.kind {
        KindArg::Tcc => Kind::Mutual,
        KindArg::Tucc => Kind::Unilateral,
    };
    let closedness = if q.closed { Closedness::Closed } else { Closedness::Open };
    ComponentQuery::new(kind, closedness, model)
}

pub(crate) fn query_json(q: &ComponentQuery) -> Value {
    json!({
        "kind": match q.kind { Kind::Mutual => "tcc", Kind::Unilateral => "tucc" },
        "closed": q.is_closed(),
        "model": q.model.as_str(),
    })
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn yes_no(b: bool) -> i32 {
    if b {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn cmd_reach(a: &ReachArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.graph, stdin)?;
    let model = a.graph.model;
    let from = resolve(&g, &a.from)?;
    let profile = reach_profile(&g, from, model)?;
    let json = a.graph.format == Format::Json;
    if let Some(to) = &a.to {
        let to = resolve(&g, to)?;
        let reached = profile.reachable().binary_search(&to).is_ok();
        if json {
            emit_json(
                out,
                &json!({ "from": g.name(from), "to": g.name(to), "model": model.as_str(), "reaches": reached }),
            )?;
        } else {
            writeln!(out, "{}", if reached { "yes" } else { "no" })?;
        }
        return Ok(yes_no(reached));
    }
    if a.profile {
        let rows: Vec<(Timestep, Vec<String>)> = (0..=g.lifetime()).map(|i| (i, names(&g, &profile.at(i)))).collect();
        if json {
            let steps: Vec<Value> = rows.iter().map(|(i, r)| json!({ "time": i, "reachable": r })).collect();
            emit_json(out, &json!({ "from": g.name(from), "model": model.as_str(), "profile": steps }))?;
        } else {
            for (i, r) in rows {
                writeln!(out, "{i}: {}", r.join(" "))?;
            }
        }
        return Ok(EXIT_YES);
    }
    let reached = names(&g, &profile.reachable());
    if json {
        emit_json(out, &json!({ "from": g.name(from), "model": model.as_str(), "reachable": reached }))?;
    } else {
        writeln!(out, "{}", reached.join(" "))?;
    }
    Ok(EXIT_YES)
}

fn cmd_components(a: &ComponentsArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.graph, stdin)?;
    let q = query_of(&a.query, a.graph.model);
    let report = enumerate_components(&g, q, &a.budget.budget())?;
    let sets: Vec<Vec<String>> = report.components.iter().map(|c| names(&g, c)).collect();
    if a.graph.format == Format::Json {
        emit_json(
            out,
            &json!({ "query": query_json(&q), "components": sets, "count": report.count(), "max_size": report.max_size() }),
        )?;
    } else {
        writeln!(out, "# {q}: {} components, max size {}", report.count(), report.max_size())?;
        for s in sets {
            writeln!(out, "{}", s.join(" "))?;
        }
    }
    Ok(EXIT_YES)
}

fn cmd_check(a: &CheckArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.graph, stdin)?;
    let q = query_of(&a.query, a.graph.model);
    let set = resolve_set(&g, &a.set)?;
    let answer =
        if a.maximal { is_maximal_component(&g, &set, q, &a.budget.budget())? } else { is_connected_set(&g, &set, q)? };
    if a.graph.format == Format::Json {
        let property = if a.maximal { "component" } else { "connected" };
        emit_json(
            out,
            &json!({ "query": query_json(&q), "set": names(&g, &set), "property": property, "answer": answer }),
        )?;
    } else {
        writeln!(out, "{}", if answer { "yes" } else { "no" })?;
    }
    Ok(yes_no(answer))
}

fn cmd_find(a: &FindArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.graph, stdin)?;
    let q = query_of(&a.query, a.graph.model);
    let algo = match a.algo {
        AlgoArg::Auto => Algo::Auto,
        AlgoArg::Brute => Algo::Brute,
        AlgoArg::Fpt => Algo::Fpt,
    };
    let witness = has_component_of_size(&g, q, a.k, algo, &a.budget.budget())?;
    if a.graph.format == Format::Json {
        let w = witness.as_ref().map(|w| names(&g, w));
        emit_json(out, &json!({ "query": query_json(&q), "k": a.k, "witness": w }))?;
    } else {
        match &witness {
            Some(w) => writeln!(out, "{}", names(&g, w).join(" "))?,
            None => writeln!(out, "none")?,
        }
    }
    Ok(yes_no(witness.is_some()))
}

fn source_text(a: &GenArgs) -> Result<Option<String>, CliError> {
    match &a.input {
        Some(path) => read_input(path, &mut io::stdin()).map(Some),
        None => Ok(None),
    }
}

fn build_gadget(a: &GenArgs) -> Result<GadgetInstance, CliError> {
    let text = source_text(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let graph_source = |rng: &mut ChaCha8Rng| -> Result<gadgets::SourceGraph, CliError> {
        match &text {
            Some(t) => Ok(gadgets::parse_source_graph(t)?),
            None => Ok(gadgets::random_graph(a.n, a.p, rng).into()),
        }
    };
    let sat_source = |rng: &mut ChaCha8Rng| -> Result<gadgets::SatInstance, CliError> {
        match &text {
            Some(t) => Ok(gadgets::parse_sat(t)?),
            None => Ok(gadgets::random_sat(a.nx, a.ny, a.clauses, rng)?),
        }
    };
    let gadget = match a.kind {
        GadgetKind::LineBipartite => {
            let h = match &text {
                Some(t) => gadgets::parse_bipartite(t)?,
                None => gadgets::random_bipartite(a.nx, a.ny, a.p, &mut rng),
            };
            gadgets::gadget_linegraph_bipartite_with_tau(&h, a.tau.unwrap_or(2))?
        }
        GadgetKind::CliqueTcc => gadgets::gadget_clique_tcc(&graph_source(&mut rng)?)?,
        GadgetKind::DirTau2 => gadgets::gadget_clique_dir_tau2(&graph_source(&mut rng)?)?,
        GadgetKind::ClosedDirTau3 => gadgets::gadget_clique_closed_dir_tau3(&graph_source(&mut rng)?, a.unilateral)?,
        GadgetKind::TwoClub => {
            let g = graph_source(&mut rng)?;
            let x = match &a.set {
                Some(list) => list
                    .split(',')
                    .map(|s| {
                        g.names
                            .iter()
                            .position(|n| n == s.trim())
                            .ok_or_else(|| CliError(format!("unknown vertex `{}`", s.trim())))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                None => (0..g.vertex_count()).collect(),
            };
            if a.strict {
                gadgets::gadget_2club_strict(&g, &x)?
            } else {
                gadgets::gadget_2club(&g, &x)?
            }
        }
        GadgetKind::SatConn => gadgets::gadget_sat_connected(&sat_source(&mut rng)?)?,
        GadgetKind::SatUni => gadgets::gadget_sat_unilateral(&sat_source(&mut rng)?)?,
    };
    Ok(match a.k {
        Some(k) => GadgetInstance { equivalence: gadget.equivalence.with_k(k), ..gadget },
        None => gadget,
    })
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> CmdResult {
    let gadget = build_gadget(a)?;
    let text = gadget.graph.to_text();
    let sidecar = gadget.equivalence.to_json();
    match &a.out {
        Some(prefix) => {
            let tg = prefix.with_extension("tg");
            let js = prefix.with_extension("json");
            fs::write(&tg, &text).map_err(|e| CliError(format!("{}: {e}", tg.display())))?;
            fs::write(&js, serde_json::to_string_pretty(&sidecar)? + "\n")
                .map_err(|e| CliError(format!("{}: {e}", js.display())))?;
            let g = &gadget.graph;
            writeln!(
                out,
                "wrote {} ({} vertices, lifetime {}, {} temporal edges) and {}",
                tg.display(),
                g.vertex_count(),
                g.lifetime(),
                g.temporal_edge_count(),
                js.display()
            )?;
        }
        None if a.format == Format::Json => {
            emit_json(out, &json!({ "graph": text, "equivalence": sidecar }))?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_YES)
}

fn cmd_selftest(a: &SelftestArgs, out: &mut dyn Write) -> CmdResult {
    let config = SelftestConfig { trials: a.trials, max_n: a.max_n, seed: a.seed, inject_failure: a.inject_failure };
    let report = run_selftest(&config);
    let mut text = String::new();
    for line in &report.lines {
        let _ = writeln!(text, "{line}");
    }
    out.write_all(text.as_bytes())?;
    match &report.failure {
        None => {
            writeln!(out, "all suites passed")?;
            Ok(EXIT_YES)
        }
        Some(failure) => {
            writeln!(out, "counterexample ({}):", failure.query)?;
            out.write_all(failure.graph.to_text().as_bytes())?;
            if let Some(dir) = &a.dump {
                fs::create_dir_all(dir)?;
                let path = dir.join("counterexample.tg");
                fs::write(&path, failure.graph.to_text())?;
                fs::write(dir.join("counterexample.txt"), format!("{}\n{}\n", failure.suite, failure.query))?;
                writeln!(out, "wrote {}", path.display())?;
            }
            Ok(EXIT_NO)
        }
    }
}
