//! Batch experiment runner behind the `itruth` binary.
//!
//! Each subcommand produces one JSON report (schema 1) carrying the run
//! configuration, its SHA-256 hash and the module revisions, plus an optional
//! CSV of the tabular part. Exit codes: 0 ok, 2 invariant violation, 3 budget
//! overflow, 4 configuration error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coding::symbol_code;
use crate::eval::{
    eval_sentence, tarski_fixpoint_check, truth_predicate_approx, universal_predicate, Certificate, Fuel, Verdict,
};
use crate::hierarchy::{check_trbar_membership, iterated_truth, stage_dump, StageBound};
use crate::ordinals::{
    canonical_representation, check_linear_order, shift_coding, wo_probe, LinearOrder, NaturalOrder, OrdinalNotation,
    PlantedDescent,
};
use crate::satsys::{
    characteristic_tree, enumerate_satsys, is_satisfaction_system, satsys_extends, system_dump, SatsysError,
    SchemeContext, DEFAULT_BUDGET,
};
use crate::structures::{base_arithmetic, structure_from_json, Coding, Structure, SymbolDef};
use crate::syntax::{formula_to_json, godel_number, parse, polish_symbols, Formula, Term};
use crate::trees::{
    branch_search, infima_chain, kb_compare, BranchSearch, Comb, FiniteTree, FullBinary, KbOrder, PlantedBranch, Tree,
};

pub const SCHEMA: u32 = 1;

/// Revision of each module's observable behaviour, embedded in reports.
pub const MODULE_REVISIONS: [(&str, u32); 9] = [
    ("coding", 1),
    ("syntax", 1),
    ("structures", 1),
    ("eval", 1),
    ("ordinals", 1),
    ("hierarchy", 1),
    ("trees", 1),
    ("satsys", 1),
    ("cli", 1),
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("budget overflow: {0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => 3,
            CliError::Config(_) | CliError::Io(_) => 4,
        }
    }
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "itruth",
    version,
    about = "Bounded experiments on coded truth, orderings and satisfaction systems"
)]
pub struct Cli {
    /// Structure description (JSON); base arithmetic when absent.
    #[arg(long, global = true)]
    pub structure: Option<PathBuf>,
    /// Report path; standard output when absent.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// CSV export of the tabular rows.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct FuelArgs {
    /// Quantifier search bound.
    #[arg(long, default_value_t = 16)]
    pub fuel: u64,
    /// Sentence size bound.
    #[arg(long, default_value_t = 64)]
    pub size: usize,
}

impl FuelArgs {
    fn fuel(&self) -> Result<Fuel, CliError> {
        if self.fuel == 0 || self.size == 0 {
            return Err(CliError::Config("fuel and size must be positive".into()));
        }
        Ok(Fuel::new(self.fuel, self.size))
    }
}

#[derive(Debug, Args, Serialize)]
pub struct TreeArgs {
    /// Tree literal file: {"root": r, "edges": [[parent, child], ...]}.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Generator: random, full-binary, comb or planted.
    #[arg(long, default_value = "random")]
    pub generator: String,
    /// Node count for random trees and the finite part of planted trees.
    #[arg(long, default_value_t = 12)]
    pub nodes: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Goedel number and symbol trace of a formula.
    Encode {
        #[arg(long)]
        formula: String,
    },
    /// Fuel-bounded truth value of a sentence.
    Eval {
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        fuel: FuelArgs,
    },
    /// Truth-predicate window with a Tarski clause audit.
    TruthTable {
        #[command(flatten)]
        fuel: FuelArgs,
        /// Number of deterministic corpus sentences.
        #[arg(long, default_value_t = 32)]
        window: usize,
        /// Number of additional seeded random sentences.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Row of the universal predicate at a one-variable formula.
    Universal {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 64)]
        points: u64,
        #[command(flatten)]
        fuel: FuelArgs,
    },
    /// Iterated truth along the canonical representation of an ordinal.
    Iterate {
        #[arg(long)]
        ordinal: String,
        /// Quantifier search bound.
        #[arg(long, default_value_t = 8)]
        fuel: u64,
        #[arg(long, default_value_t = 40)]
        size: usize,
        #[arg(long, default_value_t = 64)]
        window: usize,
        /// Materialize stages below this ordinal; the full ordinal when absent.
        #[arg(long)]
        below: Option<String>,
        #[arg(long, default_value_t = crate::hierarchy::DEFAULT_DIGIT_CAP)]
        digit_cap: u64,
        #[arg(long, default_value_t = crate::hierarchy::DEFAULT_MAX_STAGES)]
        max_stages: usize,
    },
    /// Kleene-Brouwer order of a finite tree, or of a prefix of a generated one.
    Kb {
        #[command(flatten)]
        tree: TreeArgs,
        /// Number of breadth-first nodes to order.
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Branch search and running infima on a tree.
    Tree {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Comma-separated KB-descending node sequence.
        #[arg(long)]
        infima: Option<String>,
    },
    /// Satisfaction systems of a scheme and its characteristic tree.
    Satsys {
        /// File holding the scheme text.
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: u64,
        /// Bound on Skolem function values.
        #[arg(long, default_value_t = 3)]
        bound: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Include every system in the report.
        #[arg(long)]
        systems: bool,
    },
    /// Well-foundedness probe of a linear order.
    ProbeWo {
        /// natural, omega-plus-omega-star, planted:P, ordinal:A, kb-comb,
        /// kb-full-binary, kb-planted or kb-random.
        #[arg(long)]
        order: String,
        #[arg(long, default_value_t = 200)]
        prefix: usize,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = 12)]
        nodes: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Encode { .. } => "encode",
            Command::Eval { .. } => "eval",
            Command::TruthTable { .. } => "truth-table",
            Command::Universal { .. } => "universal",
            Command::Iterate { .. } => "iterate",
            Command::Kb { .. } => "kb",
            Command::Tree { .. } => "tree",
            Command::Satsys { .. } => "satsys",
            Command::ProbeWo { .. } => "probe-wo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Violation,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 2,
            Status::BudgetExceeded => 3,
        }
    }
}

/// A finished run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub report: String,
    pub csv: Option<String>,
}

struct Body {
    status: Status,
    result: Value,
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Body {
    fn ok(result: Value) -> Self {
        Self {
            status: Status::Ok,
            result,
            csv: None,
        }
    }

    fn check(mut self, ok: bool) -> Self {
        if !ok && self.status == Status::Ok {
            self.status = Status::Violation;
        }
        self
    }

    fn with_csv(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.csv = Some((header, rows));
        self
    }
}

fn load_structure(cli: &Cli) -> Result<(Structure, Coding, Option<String>), CliError> {
    match &cli.structure {
        None => {
            let m = base_arithmetic();
            let c = Coding::enumeration(&m);
            Ok((m, c, None))
        }
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            let (m, c) = structure_from_json(&text).map_err(config)?;
            Ok((m, c, Some(hex::encode(Sha256::digest(text.as_bytes())))))
        }
    }
}

fn parse_formula(m: &Structure, text: &str) -> Result<Formula, CliError> {
    let f = parse(text).map_err(config)?;
    m.check_formula(&f).map_err(config)?;
    Ok(f)
}

/// Parses the arguments, runs, writes the outputs and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli).and_then(|o| write_outputs(&cli, &o).map(|_| o)) {
        Ok(o) => o.status.exit_code(),
        Err(e) => {
            eprintln!("itruth: {e}");
            e.exit_code()
        }
    }
}

fn write_outputs(cli: &Cli, o: &Outcome) -> Result<(), CliError> {
    match &cli.out {
        Some(p) => fs::write(p, &o.report)?,
        None => print!("{}", o.report),
    }
    if let (Some(p), Some(csv)) = (&cli.csv, &o.csv) {
        fs::write(p, csv)?;
    }
    Ok(())
}

/// Runs one configured experiment.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (m, c, structure_hash) = load_structure(cli)?;
    let body = match &cli.command {
        Command::Encode { formula } => encode(&m, &c, formula)?,
        Command::Eval { formula, fuel } => eval(&m, formula, fuel.fuel()?)?,
        Command::TruthTable { fuel, window, random } => truth_table(&m, &c, fuel.fuel()?, *window, *random, cli.seed)?,
        Command::Universal { formula, points, fuel } => universal(&m, &c, formula, *points, fuel.fuel()?)?,
        Command::Iterate {
            ordinal,
            fuel,
            size,
            window,
            below,
            digit_cap,
            max_stages,
        } => {
            let fuel = FuelArgs {
                fuel: *fuel,
                size: *size,
            }
            .fuel()?;
            iterate(
                &m,
                &c,
                ordinal,
                below.as_deref(),
                fuel,
                *window,
                *digit_cap,
                *max_stages,
            )?
        }
        Command::Kb { tree, limit } => kb(tree, *limit, cli.seed)?,
        Command::Tree {
            tree,
            depth,
            budget,
            infima,
        } => tree_cmd(tree, *depth, *budget, infima.as_deref(), cli.seed)?,
        Command::Satsys {
            scheme,
            degree,
            bound,
            budget,
            systems,
        } => satsys(&m, scheme, *degree, *bound, *budget, *systems)?,
        Command::ProbeWo {
            order,
            prefix,
            depth,
            nodes,
        } => probe(order, *prefix, *depth, *nodes, cli.seed)?,
    };
    let config = json!({
        "command": cli.command.name(),
        "arguments": &cli.command,
        "seed": cli.seed,
        "structure_sha256": structure_hash,
    });
    let config_hash = hex::encode(Sha256::digest(serde_json::to_vec(&config).expect("serializable")));
    let modules: BTreeMap<&str, u32> = MODULE_REVISIONS.into_iter().collect();
    let report = json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "modules": modules,
        "config": config,
        "config_hash": config_hash,
        "status": body.status,
        "result": body.result,
    });
    let mut text = serde_json::to_string_pretty(&report).expect("serializable");
    text.push('\n');
    let csv = body.csv.map(|(header, rows)| {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for r in rows {
            w.write_record(&r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    });
    Ok(Outcome {
        status: body.status,
        report: text,
        csv,
    })
}

fn encode(m: &Structure, c: &Coding, text: &str) -> Result<Body, CliError> {
    let f = parse_formula(m, text)?;
    let n = godel_number(&f, c).map_err(config)?;
    let trace: Vec<Value> = polish_symbols(&f, c)
        .map_err(config)?
        .iter()
        .map(|s| {
            let code = symbol_code(s).map(|sc| sc.value.to_string()).unwrap_or_default();
            json!({"symbol": s.to_string(), "code": code})
        })
        .collect();
    let rows = trace
        .iter()
        .enumerate()
        .map(|(i, t)| {
            vec![
                i.to_string(),
                t["symbol"].as_str().unwrap_or_default().to_string(),
                t["code"].as_str().unwrap_or_default().to_string(),
            ]
        })
        .collect();
    Ok(Body::ok(json!({
        "formula": f.to_string(),
        "ast": formula_to_json(&f),
        "godel_number": n.to_string(),
        "symbols": trace,
    }))
    .with_csv(vec!["position", "symbol", "code"], rows))
}

fn eval(m: &Structure, text: &str, fuel: Fuel) -> Result<Body, CliError> {
    let f = parse_formula(m, text)?;
    if !f.is_sentence() {
        return Err(CliError::Config(format!("`{f}` has free variables")));
    }
    let v = eval_sentence(m, &f, fuel).map_err(config)?;
    Ok(Body::ok(json!({"formula": f.to_string(), "fuel": fuel, "result": v})))
}

/// A seeded random sentence over the predicates of `m` with bounded
/// quantifiers.
fn random_sentence(rng: &mut ChaCha8Rng, m: &Structure, depth: u32, scope: &[u32]) -> Formula {
    let preds: Vec<(&str, u32)> = m
        .symbols()
        .iter()
        .filter(|s| matches!(s, SymbolDef::Predicate(_)))
        .map(|s| (s.name(), s.arity()))
        .collect();
    let term = |rng: &mut ChaCha8Rng| -> Term {
        if !scope.is_empty() && rng.gen_bool(0.6) {
            Term::var(scope[rng.gen_range(0..scope.len())])
        } else {
            Term::num(rng.gen_range(0u32..6))
        }
    };
    let pick = if depth == 0 { 0 } else { rng.gen_range(0..5) };
    match pick {
        0 => {
            let (p, arity) = preds[rng.gen_range(0..preds.len())];
            Formula::atom(p, (0..arity).map(|_| term(rng)).collect())
        }
        1 => Formula::not(random_sentence(rng, m, depth - 1, scope)),
        2 => Formula::and(
            random_sentence(rng, m, depth - 1, scope),
            random_sentence(rng, m, depth - 1, scope),
        ),
        3 => Formula::or(
            random_sentence(rng, m, depth - 1, scope),
            random_sentence(rng, m, depth - 1, scope),
        ),
        _ => {
            let v = scope.len() as u32;
            let inner: Vec<u32> = scope.iter().copied().chain([v]).collect();
            let bound = Term::num(rng.gen_range(1u32..5));
            let body = random_sentence(rng, m, depth - 1, &inner);
            if rng.gen_bool(0.5) {
                Formula::exists(v, Formula::and(Formula::lt(Term::var(v), bound), body))
            } else {
                Formula::forall(v, Formula::implies(Formula::lt(Term::var(v), bound), body))
            }
        }
    }
}

fn truth_table(
    m: &Structure,
    c: &Coding,
    fuel: Fuel,
    window: usize,
    random: usize,
    seed: u64,
) -> Result<Body, CliError> {
    let mut corpus = crate::hierarchy::base_corpus(m, window);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        corpus.push(random_sentence(&mut rng, m, 3, &[]));
    }
    let t = truth_predicate_approx(m, c, fuel);
    t.populate(&corpus);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for f in &corpus {
        let Some(code) = t.code_of(f) else { continue };
        let v = t.query(&code).unwrap_or(Verdict::Unknown);
        rows.push(vec![code.to_string(), f.to_string(), v.label().to_string()]);
        entries.push(json!({"code": code.to_string(), "formula": f.to_string(), "verdict": v.label()}));
    }
    let violations = tarski_fixpoint_check(m, c, &t, fuel);
    Ok(Body::ok(json!({
        "fuel": fuel,
        "entries": entries,
        "memoized": t.len(),
        "violations": violations,
    }))
    .check(violations.is_empty())
    .with_csv(vec!["code", "formula", "verdict"], rows))
}

fn universal(m: &Structure, c: &Coding, text: &str, points: u64, fuel: Fuel) -> Result<Body, CliError> {
    let f = parse_formula(m, text)?;
    let free = f.free_vars();
    if free.len() != 1 || !f.is_prenex() {
        return Err(CliError::Config(format!(
            "`{f}` must be prenex with exactly one free variable"
        )));
    }
    let v = *free.first().expect("one free variable");
    let n = godel_number(&f, c).map_err(config)?;
    let p = universal_predicate(m, c, fuel);
    let mut ok = true;
    let mut rows = Vec::new();
    let mut row = Vec::new();
    for x in 0..points {
        let got = p.query(&n, &x.into());
        let direct = eval_sentence(m, &f.instantiate(v, &x.into()), fuel).map_err(config)?;
        if matches!(got.certificate(), Some(Certificate::NotACode)) || got.truth() != direct.truth() {
            ok = false;
        }
        rows.push(vec![x.to_string(), got.label().to_string()]);
        row.push(json!({"point": x, "verdict": got.label()}));
    }
    Ok(
        Body::ok(json!({"formula": f.to_string(), "row": n.to_string(), "fuel": fuel, "points": row}))
            .check(ok)
            .with_csv(vec!["point", "verdict"], rows),
    )
}

#[allow(clippy::too_many_arguments)]
fn iterate(
    m: &Structure,
    c: &Coding,
    ordinal: &str,
    below: Option<&str>,
    fuel: Fuel,
    window: usize,
    digit_cap: u64,
    max_stages: usize,
) -> Result<Body, CliError> {
    let alpha: OrdinalNotation = ordinal.parse().map_err(config)?;
    let below: OrdinalNotation = match below {
        Some(b) => b.parse().map_err(config)?,
        None => alpha.clone(),
    };
    if digit_cap == 0 || max_stages == 0 || window == 0 {
        return Err(CliError::Config(
            "digit cap, stage count and window must be positive".into(),
        ));
    }
    let rep = canonical_representation(&alpha).map_err(config)?;
    let bound = StageBound::new(below)
        .with_digit_cap(digit_cap)
        .with_max_stages(max_stages);
    let c = shift_coding(c, &rep);
    let u = iterated_truth(m, &c, &rep, fuel, &bound, window).map_err(config)?;
    let check = check_trbar_membership(&u, m, &c, &rep, fuel);
    let dump = stage_dump(&u, fuel, window);
    let rows = dump
        .iter()
        .map(|s| {
            vec![
                s.key.to_string(),
                s.ordinal.clone(),
                s.decided_true.len().to_string(),
                s.decided_false.len().to_string(),
                s.unknown.to_string(),
            ]
        })
        .collect();
    Ok(Body::ok(json!({
        "ordinal": alpha,
        "width": rep.width(),
        "stage_bound": bound,
        "stages": dump,
        "membership_check": check,
    }))
    .check(check.truth() != Some(false))
    .with_csv(vec!["key", "ordinal", "true", "false", "unknown"], rows))
}

/// A tree chosen on the command line.
enum AnyTree {
    Finite(FiniteTree),
    FullBinary,
    Comb,
    Planted(PlantedBranch),
}

impl AnyTree {
    fn inner(&self) -> &dyn Tree {
        match self {
            AnyTree::Finite(t) => t,
            AnyTree::FullBinary => &FullBinary,
            AnyTree::Comb => &Comb,
            AnyTree::Planted(t) => t,
        }
    }

    fn is_finite(&self) -> bool {
        matches!(self, AnyTree::Finite(_))
    }
}

impl Tree for AnyTree {
    fn root(&self) -> u64 {
        self.inner().root()
    }
    fn contains(&self, x: u64) -> bool {
        self.inner().contains(x)
    }
    fn parent(&self, x: u64) -> Option<u64> {
        self.inner().parent(x)
    }
    fn children(&self, x: u64) -> Vec<u64> {
        self.inner().children(x)
    }
}

fn planted(seed: u64, nodes: usize) -> PlantedBranch {
    let base = FiniteTree::random(seed, nodes.max(1));
    let leaf = base.nodes().last().expect("nonempty");
    PlantedBranch::new(base, leaf).expect("leaf is a node")
}

fn load_tree(args: &TreeArgs, seed: u64) -> Result<AnyTree, CliError> {
    if let Some(p) = &args.tree {
        let text = fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
        return Ok(AnyTree::Finite(FiniteTree::from_json(&text).map_err(config)?));
    }
    if args.nodes == 0 {
        return Err(CliError::Config("node count must be positive".into()));
    }
    match args.generator.as_str() {
        "random" => Ok(AnyTree::Finite(FiniteTree::random(seed, args.nodes))),
        "full-binary" => Ok(AnyTree::FullBinary),
        "comb" => Ok(AnyTree::Comb),
        "planted" => Ok(AnyTree::Planted(planted(seed, args.nodes))),
        other => Err(CliError::Config(format!("unknown generator `{other}`"))),
    }
}

fn kb(args: &TreeArgs, limit: usize, seed: u64) -> Result<Body, CliError> {
    if limit == 0 {
        return Err(CliError::Config("limit must be positive".into()));
    }
    let t = load_tree(args, seed)?;
    let nodes: Vec<u64> = t.nodes().take(limit).collect();
    let mut order = nodes.clone();
    order.sort_by(|&x, &y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if kb_compare(&t, x, y).unwrap_or(false) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    // the law audit needs the whole carrier, so it runs on finite trees only
    let laws = if t.is_finite() {
        check_linear_order(&KbOrder(&t), nodes.len())
    } else {
        Ok(())
    };
    let rows = order
        .iter()
        .enumerate()
        .map(|(i, x)| vec![i.to_string(), x.to_string()])
        .collect();
    Ok(Body::ok(json!({
        "nodes": nodes.len(),
        "complete": t.nodes().nth(limit).is_none(),
        "kb_order": order,
        "laws": laws.as_ref().err().cloned().unwrap_or_else(|| "ok".into()),
    }))
    .check(laws.is_ok())
    .with_csv(vec!["rank", "node"], rows))
}

fn tree_cmd(args: &TreeArgs, depth: usize, budget: usize, infima: Option<&str>, seed: u64) -> Result<Body, CliError> {
    if depth == 0 || budget == 0 {
        return Err(CliError::Config("depth and budget must be positive".into()));
    }
    let t = load_tree(args, seed)?;
    let search = branch_search(&t, depth, budget);
    let infima = match infima {
        None => None,
        Some(s) => {
            let seq = s
                .split(',')
                .map(|x| x.trim().parse::<u64>().map_err(config))
                .collect::<Result<Vec<u64>, CliError>>()?;
            Some(infima_chain(&t, &seq).map_err(config)?)
        }
    };
    let mut body = Body::ok(json!({"search": search, "infima": infima}));
    if matches!(search, BranchSearch::BudgetExceeded) {
        body.status = Status::BudgetExceeded;
    }
    let rows = match &search {
        BranchSearch::Found(chain) => chain
            .iter()
            .enumerate()
            .map(|(i, x)| vec![i.to_string(), x.to_string()])
            .collect(),
        _ => Vec::new(),
    };
    Ok(body.with_csv(vec!["depth", "node"], rows))
}

fn satsys(
    m: &Structure,
    scheme: &PathBuf,
    degree: u64,
    bound: u64,
    budget: u64,
    systems: bool,
) -> Result<Body, CliError> {
    if bound == 0 || budget == 0 {
        return Err(CliError::Config("bound and budget must be positive".into()));
    }
    let text = fs::read_to_string(scheme).map_err(|e| CliError::Config(format!("{}: {e}", scheme.display())))?;
    let psi = parse_formula(m, text.trim())?;
    if !psi.is_sentence() {
        return Err(CliError::Config(format!("`{psi}` is not closed")));
    }
    let ctx = SchemeContext::new(m, &psi).map_err(config)?;
    let budget_error = |e: SatsysError| match e {
        SatsysError::Budget { .. } => CliError::Budget(e.to_string()),
        other => config(other),
    };
    let mut ok = true;
    let mut counts = Vec::new();
    for n in 0..=degree {
        let found = enumerate_satsys(&ctx, n, bound, budget).map_err(budget_error)?;
        for s in &found {
            ok &= is_satisfaction_system(&ctx, s).map_err(config)?;
        }
        counts.push((n, found.len()));
    }
    let tree = characteristic_tree(&ctx, degree, bound, budget).map_err(budget_error)?;
    let mut edges = Vec::new();
    for x in tree.tree.nodes().skip(1) {
        let p = tree.tree.parent(x).expect("non-root");
        if let (Some((lo, _)), Some((hi, _))) = (&tree.systems[p as usize], &tree.systems[x as usize]) {
            ok &= satsys_extends(&ctx, lo, hi).map_err(config)?;
        }
        edges.push((p, x));
    }
    let dumps = if systems {
        let mut v = Vec::new();
        for (label, entry) in tree.systems.iter().enumerate() {
            if let Some((s, _)) = entry {
                v.push(system_dump(&ctx, label as u64, s).map_err(config)?);
            }
        }
        Some(v)
    } else {
        None
    };
    let rows = counts.iter().map(|(n, k)| vec![n.to_string(), k.to_string()]).collect();
    Ok(Body::ok(json!({
        "scheme": psi.to_string(),
        "skolem_formula": ctx.skolem().formula.to_string(),
        "value_bound": bound,
        "counts": counts.iter().map(|(n, k)| json!({"degree": n, "count": k})).collect::<Vec<_>>(),
        "tree": {"nodes": tree.tree.len(), "edges": edges},
        "systems": dumps,
    }))
    .check(ok)
    .with_csv(vec!["degree", "count"], rows))
}

fn probe_report<O: LinearOrder>(r: &O, prefix: usize, depth: usize) -> Body
where
    O::Elem: Serialize + ToString,
{
    let report = wo_probe(r, prefix, depth);
    let rows = r
        .elements()
        .take(report.inspected)
        .map(|x| {
            let s = report.suspects.contains(&x);
            vec![x.to_string(), s.to_string()]
        })
        .collect();
    Body::ok(serde_json::to_value(&report).expect("serializable")).with_csv(vec!["element", "suspect"], rows)
}

fn probe(order: &str, prefix: usize, depth: usize, nodes: usize, seed: u64) -> Result<Body, CliError> {
    if prefix == 0 || depth == 0 || nodes == 0 {
        return Err(CliError::Config("prefix, depth and nodes must be positive".into()));
    }
    let (kind, arg) = order.split_once(':').unwrap_or((order, ""));
    Ok(match kind {
        "natural" => probe_report(&NaturalOrder, prefix, depth),
        "omega-plus-omega-star" => probe_report(&PlantedDescent::omega_plus_omega_star(), prefix, depth),
        "planted" => {
            let p: u64 = arg.parse().map_err(config)?;
            if p < 2 {
                return Err(CliError::Config("period must be at least 2".into()));
            }
            probe_report(&PlantedDescent::new(p), prefix, depth)
        }
        "ordinal" => {
            let a: OrdinalNotation = arg.parse().map_err(config)?;
            probe_report(&canonical_representation(&a).map_err(config)?, prefix, depth)
        }
        "kb-comb" => probe_report(&KbOrder(Comb), prefix, depth),
        "kb-full-binary" => probe_report(&KbOrder(FullBinary), prefix, depth),
        "kb-planted" => probe_report(&KbOrder(planted(seed, nodes)), prefix, depth),
        "kb-random" => probe_report(&KbOrder(FiniteTree::random(seed, nodes)), prefix, depth),
        other => return Err(CliError::Config(format!("unknown order `{other}`"))),
    })
}
