//! `ykh`: traces and invariants of braid closures from the command line.

mod cache;
mod record;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use ykh_core::catalog::{self, CatalogEntry, Source, Topology};
use ykh_core::esystem::all_subsets;
use ykh_core::{AnyWord, Evaluator, Kind, Strategy, Vars};

use cache::{Cache, Lookup};
use record::{subset_label, Job, Quantity, Record};

const INPUT_ERROR: u8 = 1;
const PROPERTY_FAILURE: u8 = 2;

#[derive(Parser)]
#[command(name = "ykh", version, about = "Markov traces on Yokonuma-Hecke algebras and derived link invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace of a braid word, generic unless --D is given.
    Trace(EvalArgs),
    /// Invariant of braid closures.
    Invariant(EvalArgs),
    /// Compare consecutive pairs of a list file under one invariant.
    Compare(CompareArgs),
    /// Run a property suite; exits 2 if any property fails.
    Verify(VerifyArgs),
    /// List or check the solutions of the E-system.
    Esystem(EsystemArgs),
    /// Print built-in catalog entries in list format.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Phi,
    Theta,
    Homflypt,
    Psi,
    M,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Phi => Kind::Phi,
            KindArg::Theta => Kind::Theta,
            KindArg::Homflypt => Kind::Homflypt,
            KindArg::Psi => Kind::Psi,
            KindArg::M => Kind::Transverse,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VarsArg {
    Qz,
    Qlambda,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Naive,
    Power,
    Memo,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutArg {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Modulus d of the framing group Z/d.
    #[arg(long, default_value_t = 2)]
    d: u32,
    /// Subset D of Z/d as comma-separated residues; all subsets when omitted.
    #[arg(long = "D", value_name = "CSV")]
    subset: Option<String>,
    #[arg(long, value_enum, default_value = "qz")]
    vars: VarsArg,
    #[arg(long, value_enum, default_value = "memo")]
    strategy: StrategyArg,
    /// Directory for cached records.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    out: OutArg,
}

#[derive(Args)]
struct EvalArgs {
    /// Braid words or built-in catalog names.
    inputs: Vec<String>,
    /// Also read entries from a name<TAB>word list file.
    #[arg(long)]
    list: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "theta")]
    kind: KindArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CompareArgs {
    /// List file; entries 1 and 2 form the first pair, 3 and 4 the next.
    pairfile: PathBuf,
    #[arg(long, value_enum, default_value = "theta")]
    kind: KindArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// skein, markov, mirror, esystem, homflypt, transverse, catalog or all.
    #[arg(long, default_value = "all")]
    suite: verify::Suite,
    /// Random words per subset.
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EsystemArgs {
    /// `list` or `verify`, optionally followed by `d=<d>`.
    words: Vec<String>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    out: OutArg,
}

#[derive(Args)]
struct CatalogArgs {
    /// Only entries whose group is `transverse` or `families`.
    #[arg(long)]
    group: Option<String>,
    /// Only the transverse pairs, in pairfile order.
    #[arg(long)]
    pairs: bool,
    /// Check component counts and topology; exits 2 on a mismatch.
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value = "text")]
    out: OutArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Trace(a) => evaluate(a, true),
        Command::Invariant(a) => evaluate(a, false),
        Command::Compare(a) => compare(a),
        Command::Verify(a) => run_verify(a),
        Command::Esystem(a) => esystem(a),
        Command::Catalog(a) => catalog_cmd(a),
    }
}

fn parse_subset(d: u32, csv: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in csv.split(',') {
        let r: u32 = part.trim().parse().map_err(|_| anyhow!("invalid residue {part:?} in --D"))?;
        if r >= d {
            bail!("residue {r} in --D is not below d={d}");
        }
        out.push(r);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn check_d(d: u32) -> Result<()> {
    if !(1..=12).contains(&d) {
        bail!("d must be between 1 and 12, got {d}");
    }
    Ok(())
}

fn subsets(c: &Common) -> Result<Vec<Vec<u32>>> {
    check_d(c.d)?;
    match &c.subset {
        Some(csv) => Ok(vec![parse_subset(c.d, csv)?]),
        None => Ok(all_subsets(c.d)),
    }
}

fn strategy(c: &Common) -> Strategy {
    match c.strategy {
        StrategyArg::Naive => Strategy::Naive,
        StrategyArg::Power => Strategy::Power,
        StrategyArg::Memo => Strategy::Memo,
    }
}

fn vars(c: &Common) -> Vars {
    match c.vars {
        VarsArg::Qz => Vars::QZ,
        VarsArg::Qlambda => Vars::QLambda,
    }
}

/// Parameter sets `(d, D)` evaluated for one word.
fn parameter_sets(q: Quantity, c: &Common) -> Result<Vec<(u32, Option<Vec<u32>>)>> {
    Ok(match q {
        Quantity::Invariant(Kind::Homflypt) => vec![(1, Some(vec![0]))],
        Quantity::Invariant(Kind::Transverse) => {
            check_d(c.d)?;
            vec![(c.d, None)]
        }
        Quantity::Trace if c.subset.is_none() => {
            check_d(c.d)?;
            vec![(c.d, None)]
        }
        _ => subsets(c)?.into_iter().map(|s| (c.d, Some(s))).collect(),
    })
}

fn resolve_inputs(inputs: &[String], list: Option<&PathBuf>) -> Result<Vec<(String, AnyWord)>> {
    let builtin = catalog::builtin_catalog();
    let mut out = Vec::new();
    for text in inputs {
        let word = match catalog::find(&builtin, text) {
            Some(e) => e.word.clone(),
            None => catalog::parse_any(text).with_context(|| format!("cannot parse {text:?}"))?,
        };
        out.push((text.clone(), word));
    }
    if let Some(path) = list {
        out.extend(catalog::ingest(path)?.into_iter().map(|e| (e.name, e.word)));
    }
    if out.is_empty() {
        bail!("no input words");
    }
    Ok(out)
}

fn compute(ev: &mut Evaluator, job: &Job, cache: Option<&Cache>) -> Result<Record> {
    let name = job.name.clone();
    let Some(cache) = cache else {
        return Ok(Record { name, body: record::evaluate(ev, job)? });
    };
    let key = job.cache_key();
    match cache.get(&key) {
        Lookup::Hit(body) => return Ok(Record { name, body }),
        Lookup::Miss => {}
        Lookup::Corrupt(why) => {
            eprintln!("warning: corrupt cache record {} ({why}); recomputing", cache.path_for(&key).display());
        }
    }
    let body = record::evaluate(ev, job)?;
    cache.put(&key, &body)?;
    Ok(Record { name, body })
}

/// Evaluates jobs in parallel; results keep the input order.
fn run_jobs(jobs: &[Job], c: &Common) -> Result<Vec<Record>> {
    let cache = c.cache.as_deref().map(Cache::open).transpose()?;
    let strategy = strategy(c);
    jobs.par_iter()
        .map_init(
            || Evaluator::new(strategy),
            |ev, job| compute(ev, job, cache.as_ref()).with_context(|| job.name.clone()),
        )
        .collect()
}

fn build_jobs(words: &[(String, AnyWord)], q: Quantity, c: &Common) -> Result<Vec<Job>> {
    let sets = parameter_sets(q, c)?;
    let mut jobs = Vec::new();
    for (name, word) in words {
        for (d, subset) in &sets {
            jobs.push(Job {
                name: name.clone(),
                word: word.clone(),
                quantity: q,
                d: *d,
                subset: subset.clone(),
                vars: vars(c),
            });
        }
    }
    Ok(jobs)
}

fn evaluate(a: EvalArgs, trace: bool) -> Result<ExitCode> {
    let q = if trace { Quantity::Trace } else { Quantity::Invariant(a.kind.into()) };
    let words = resolve_inputs(&a.inputs, a.list.as_ref())?;
    let records = run_jobs(&build_jobs(&words, q, &a.common)?, &a.common)?;
    for r in records {
        match a.common.out {
            OutArg::Json => println!("{}", serde_json::to_string(&r)?),
            OutArg::Text => println!("{}", r.text()),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn compare(a: CompareArgs) -> Result<ExitCode> {
    let entries = catalog::ingest(&a.pairfile)?;
    if entries.len() % 2 != 0 {
        bail!("{}: {} entries do not form pairs", a.pairfile.display(), entries.len());
    }
    let q = Quantity::Invariant(a.kind.into());
    let words: Vec<_> = entries.into_iter().map(|e| (e.name, e.word)).collect();
    let jobs = build_jobs(&words, q, &a.common)?;
    let records = run_jobs(&jobs, &a.common)?;
    let per_word = parameter_sets(q, &a.common)?.len();
    for pair in records.chunks(2 * per_word) {
        let (left, right) = pair.split_at(per_word);
        for (x, y) in left.iter().zip(right) {
            let equal = x.body.value == y.body.value;
            let b = &x.body;
            match a.common.out {
                OutArg::Json => println!(
                    "{}",
                    json!({"a": x.name, "b": y.name, "kind": b.kind, "d": b.d, "D": b.subset, "equal": equal})
                ),
                OutArg::Text => println!(
                    "{}\t{}\t{} d={} D={}\t{}",
                    x.name,
                    y.name,
                    b.kind,
                    b.d,
                    subset_label(b.subset.as_deref()),
                    if equal { "EQUAL" } else { "DIFFER" }
                ),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: VerifyArgs) -> Result<ExitCode> {
    let settings = verify::Settings { d: a.common.d, subsets: subsets(&a.common)?, count: a.count, seed: a.seed };
    let mut ev = Evaluator::new(strategy(&a.common));
    let checks = verify::run(a.suite, &settings, &mut ev)?;
    let failed = checks.iter().filter(|c| !c.failures.is_empty()).count();
    for c in &checks {
        match a.common.out {
            OutArg::Json => println!(
                "{}",
                json!({"check": c.name, "cases": c.cases, "failures": c.failures, "passed": c.failures.is_empty()})
            ),
            OutArg::Text => println!("{c}"),
        }
    }
    if a.common.out == OutArg::Text {
        println!("{} checks, {failed} failed", checks.len());
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(PROPERTY_FAILURE) })
}

fn esystem(a: EsystemArgs) -> Result<ExitCode> {
    let mut action = "list";
    let mut d = a.d;
    for w in &a.words {
        if let Some(v) = w.strip_prefix("d=") {
            d = Some(v.parse().map_err(|_| anyhow!("invalid {w:?}"))?);
        } else if w == "list" || w == "verify" {
            action = w;
        } else {
            bail!("unexpected argument {w:?}");
        }
    }
    let d = d.ok_or_else(|| anyhow!("missing d (use d=<d> or --d)"))?;
    check_d(d)?;
    let mut failed = 0;
    for subset in all_subsets(d) {
        let sol = ykh_core::solve(d, &subset)?;
        let ok = ykh_core::verify(d, sol.values()).passed();
        failed += usize::from(!ok);
        match (a.out, action) {
            (OutArg::Json, _) => println!(
                "{}",
                json!({
                    "d": d,
                    "D": sol.subset(),
                    "E": sol.e().to_string(),
                    "x": sol.values().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "verified": ok,
                })
            ),
            (OutArg::Text, "verify") => println!("{} {sol}", if ok { "ok  " } else { "FAIL" }),
            (OutArg::Text, _) => println!("{sol}"),
        }
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(PROPERTY_FAILURE) })
}

fn group(e: &CatalogEntry) -> &str {
    match &e.source {
        Source::Builtin(g) => g,
        Source::External(path) => path,
    }
}

fn catalog_cmd(a: CatalogArgs) -> Result<ExitCode> {
    let entries: Vec<_> = catalog::builtin_catalog()
        .into_iter()
        .filter(|e| a.group.as_deref().is_none_or(|g| group(e) == g))
        .filter(|e| !a.pairs || group(e) == "transverse")
        .collect();
    let mut failed = 0;
    for e in &entries {
        let components = e.word.component_count();
        let topology = e.topology.map(|t| match t {
            Topology::Knot => "knot",
            Topology::Link => "link",
        });
        let status = if a.check {
            match e.check() {
                Ok(()) => Some("ok".to_string()),
                Err(err) => {
                    failed += 1;
                    Some(err.to_string())
                }
            }
        } else {
            None
        };
        match a.out {
            OutArg::Json => println!(
                "{}",
                json!({
                    "name": e.name,
                    "word": e.word.to_string(),
                    "group": group(e),
                    "components": components,
                    "topology": topology,
                    "sl": e.reported_sl,
                    "check": status,
                })
            ),
            OutArg::Text => {
                let mut meta = format!("{} components={components}", group(e));
                if let Some(t) = topology {
                    meta.push_str(&format!(" topology={t}"));
                }
                if let Some(sl) = e.reported_sl {
                    meta.push_str(&format!(" sl={sl}"));
                }
                if let Some(s) = &status {
                    meta.push_str(&format!(" check={s}"));
                }
                println!("{}\t{}\t# {meta}", e.name, e.word);
            }
        }
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(PROPERTY_FAILURE) })
}
