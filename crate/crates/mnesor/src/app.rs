//! Command-line interface: argument definitions and command bodies.
//!
//! Exit codes: 0 success, 1 some law fails, 2 usage, IO or parse errors.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mnesor_core::checker::{CheckBounds, Value};
use mnesor_core::dsl::{self, DslModel, Environment};
use mnesor_core::structure::{self, Sublattice};
use mnesor_core::{catalog, MnesorSpace};
use serde::Serialize;

use crate::fixture;
use crate::model::{Model, ModelSpec};
use crate::report::{self, ReportJson};

/// Seq universes larger than this are cut down for `check` and `hasse`
/// unless `--universe-limit` says otherwise.
pub const DEFAULT_CHECK_LIMIT: usize = 3;

/// Sublattices up to this size are listed in full.
const LIST_LIMIT: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "mnesor", version, about = "Workbench for mnesor spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every catalog law exhaustively and report.
    Check(CheckArgs),
    /// Evaluate DSL expressions.
    Eval(EvalArgs),
    /// Granulars that leave a mnesor unchanged.
    Stab(StructArgs),
    /// Granulars that send a mnesor to zero.
    Annih(StructArgs),
    /// Granulars recovering x from x + y.
    Witness(WitnessArgs),
    /// Prefix-order Hasse diagram in DOT.
    Hasse(HasseArgs),
    /// List the law catalog.
    Catalog(CatalogArgs),
    /// Validate a lattice and test distributivity.
    Lattice(LatticeArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub model: ModelSpec,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub model: ModelSpec,
    /// Statement to evaluate; repeatable, run in order.
    #[arg(short = 'e', long = "expr")]
    pub exprs: Vec<String>,
    /// Script file, one statement per line, `#` comments.
    #[arg(long)]
    pub script: Option<PathBuf>,
    /// Interactive session on standard input.
    #[arg(long)]
    pub repl: bool,
}

#[derive(Debug, Args)]
pub struct StructArgs {
    #[command(flatten)]
    pub model: ModelSpec,
    /// Mnesor expression.
    #[arg(short = 'e', long = "expr")]
    pub expr: String,
    /// List every member even for large lattices.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub model: ModelSpec,
    #[arg(short = 'x')]
    pub x: String,
    #[arg(short = 'y')]
    pub y: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct HasseArgs {
    #[command(flatten)]
    pub model: ModelSpec,
    /// Write the DOT file here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// chain:N, powerset:N, two_point, m3, n5 or file:PATH
    #[arg(long)]
    pub lattice: String,
}

/// Standard streams, abstracted for tests.
pub struct Io<'a> {
    pub input: &'a mut dyn BufRead,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

macro_rules! with_model {
    ($m:expr, $s:ident => $body:expr) => {
        match $m {
            Model::Seq($s) => $body,
            Model::SelfAction($s) => $body,
        }
    };
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli, io: &mut Io<'_>) -> i32 {
    let result = match cli.command {
        Command::Check(a) => check(&a, io),
        Command::Eval(a) => eval(&a, io),
        Command::Stab(a) => sublattice(&a, true, io),
        Command::Annih(a) => sublattice(&a, false, io),
        Command::Witness(a) => witness(&a, io),
        Command::Hasse(a) => hasse(&a, io),
        Command::Catalog(a) => catalog_cmd(&a, io),
        Command::Lattice(a) => lattice_cmd(&a, io),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e:#}");
            2
        }
    }
}

fn bounds<S: MnesorSpace>(spec: &ModelSpec, s: &S) -> Result<CheckBounds> {
    let n = spec.bound(s);
    if let Some(atoms) = s.lattice().powerset_atoms() {
        if n > atoms.len() {
            bail!("--max-len {n} exceeds the universe size {}", atoms.len());
        }
    }
    CheckBounds::new(n).map_err(|e| anyhow!("{e}"))
}

/// Builds the report for `check`; shared with tests.
pub fn check_report(spec: &ModelSpec, jobs: usize) -> Result<ReportJson> {
    let model = spec.resolve(Some(DEFAULT_CHECK_LIMIT))?;
    with_model!(&model, s => {
        let b = bounds(spec, s)?;
        let r = report::check_all_parallel(s, b, jobs)?;
        Ok(ReportJson::from_report(s, &r))
    })
}

fn check(a: &CheckArgs, io: &mut Io<'_>) -> Result<i32> {
    let r = check_report(&a.model, a.jobs)?;
    let text = r.to_pretty();
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    if a.json {
        io.out.write_all(text.as_bytes())?;
    } else {
        io.out.write_all(report::table(&r).as_bytes())?;
    }
    Ok(if r.failures().next().is_some() { 1 } else { 0 })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// A parse error with the source line and a caret under the offset.
fn located(src: &str, e: &dsl::ParseError) -> String {
    let col = src[..e.offset.min(src.len())].chars().count();
    format!("{e}\n  {src}\n  {}^", " ".repeat(col))
}

fn statement<M: DslModel>(env: &mut Environment<'_, M>, src: &str) -> Result<String> {
    let st = dsl::parse_statement(src).map_err(|e| anyhow!("{}", located(src, &e)))?;
    let v = env.run(&st)?;
    let shown = env.render(&v);
    Ok(match &st.target {
        Some(t) => format!("{t} = {shown}"),
        None => shown,
    })
}

fn script_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn run_script<M: DslModel>(
    env: &mut Environment<'_, M>,
    name: &str,
    text: &str,
    out: &mut dyn Write,
) -> Result<()> {
    for (n, line) in script_lines(text) {
        let shown = statement(env, line).with_context(|| format!("{name}:{n}"))?;
        writeln!(out, "{shown}")?;
    }
    Ok(())
}

fn repl<M: DslModel>(env: &mut Environment<'_, M>, io: &mut Io<'_>) -> Result<()> {
    writeln!(
        io.out,
        "{} ({}); :q to quit",
        env.model().describe(),
        env.model().lattice().name()
    )?;
    loop {
        write!(io.out, "mnesor> ")?;
        io.out.flush()?;
        let mut line = String::new();
        if io.input.read_line(&mut line)? == 0 {
            writeln!(io.out)?;
            return Ok(());
        }
        let line = line.split('#').next().unwrap_or("").trim();
        match line {
            "" => {}
            ":q" | ":quit" => return Ok(()),
            _ => match statement(env, line) {
                Ok(shown) => writeln!(io.out, "{shown}")?,
                Err(e) => writeln!(io.err, "error: {e:#}")?,
            },
        }
    }
}

fn eval(a: &EvalArgs, io: &mut Io<'_>) -> Result<i32> {
    let model = a.model.resolve(None)?;
    with_model!(&model, s => {
        let mut env = Environment::new(s);
        for e in &a.exprs {
            let shown = statement(&mut env, e)?;
            writeln!(io.out, "{shown}")?;
        }
        if let Some(path) = &a.script {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read script {}", path.display()))?;
            run_script(&mut env, &path.display().to_string(), &text, io.out)?;
        }
        if a.repl {
            repl(&mut env, io)?;
        } else if a.exprs.is_empty() && a.script.is_none() {
            let mut text = String::new();
            io.input.read_to_string(&mut text)?;
            run_script(&mut env, "<stdin>", &text, io.out)?;
        }
    });
    Ok(0)
}

fn mnesor_operand<M: DslModel>(env: &Environment<'_, M>, src: &str) -> Result<M::Elem> {
    let e = dsl::parse(src).map_err(|e| anyhow!("{}", located(src, &e)))?;
    match env.eval(&e)? {
        Value::Mnesor(m) => Ok(m),
        Value::Granular(_) => bail!("`{src}` is a granular; expected a mnesor expression"),
    }
}

#[derive(Serialize)]
struct SublatticeJson {
    of: String,
    kind: &'static str,
    size: usize,
    lattice_size: usize,
    named: Vec<String>,
    members: Vec<String>,
    closed: bool,
}

fn named_members<M: DslModel>(s: &M, sub: &Sublattice<'_>) -> Vec<String> {
    s.predefined()
        .into_iter()
        .filter(|(_, g)| sub.contains(*g))
        .map(|(n, _)| n)
        .collect()
}

fn sublattice(a: &StructArgs, stab: bool, io: &mut Io<'_>) -> Result<i32> {
    let model = a.model.resolve(None)?;
    with_model!(&model, s => {
        let env = Environment::new(s);
        let x = mnesor_operand(&env, &a.expr)?;
        let sub = if stab { structure::stabilizers(s, &x) } else { structure::annihilators(s, &x) };
        let kind = if stab { "stabilizers" } else { "annihilators" };
        let named = named_members(s, &sub);
        let list = a.all || s.lattice().len() <= LIST_LIMIT;
        if a.json {
            let j = SublatticeJson {
                of: s.render(&x),
                kind,
                size: sub.len(),
                lattice_size: s.lattice().len(),
                named,
                members: if list { structure::member_labels(&sub) } else { Vec::new() },
                closed: sub.is_closed(),
            };
            writeln!(io.out, "{}", serde_json::to_string_pretty(&j)?)?;
        } else {
            writeln!(io.out, "{kind} of {}: {} of {} granulars", s.render(&x), sub.len(), s.lattice().len())?;
            if !named.is_empty() {
                writeln!(io.out, "named: {}", named.join(" "))?;
            }
            if list {
                for m in structure::member_labels(&sub) {
                    writeln!(io.out, "  {m}")?;
                }
            }
            writeln!(io.out, "{}", structure::closure_line(&sub))?;
        }
    });
    Ok(0)
}

fn witness(a: &WitnessArgs, io: &mut Io<'_>) -> Result<i32> {
    let model = a.model.resolve(None)?;
    with_model!(&model, s => {
        let env = Environment::new(s);
        let x = mnesor_operand(&env, &a.x)?;
        let y = mnesor_operand(&env, &a.y)?;
        let ws = structure::absorption_witnesses(s, &x, &y);
        // every witness must stabilize x
        if let Some(bad) = ws.iter().find(|g| s.act(&x, g.id()) != x) {
            bail!("witness {bad} does not stabilize {}", s.render(&x));
        }
        let labels: Vec<String> = ws.iter().map(|g| g.to_string()).collect();
        if a.json {
            writeln!(io.out, "{}", serde_json::to_string_pretty(&labels)?)?;
        } else {
            for l in labels {
                writeln!(io.out, "{l}")?;
            }
        }
    });
    Ok(0)
}

fn hasse(a: &HasseArgs, io: &mut Io<'_>) -> Result<i32> {
    let model = a.model.resolve(Some(DEFAULT_CHECK_LIMIT))?;
    let dot = with_model!(&model, s => {
        let b = bounds(&a.model, s)?;
        let h = structure::hasse(s, b.max_mnesor_enumeration)?;
        h.to_dot(|e| s.render(e))
    });
    match &a.out {
        Some(path) => write_file(path, &dot)?,
        None => io.out.write_all(dot.as_bytes())?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct LawEntry {
    name: &'static str,
    tier: &'static str,
    mnesor_vars: usize,
    granular_vars: usize,
    statement: String,
}

fn catalog_cmd(a: &CatalogArgs, io: &mut Io<'_>) -> Result<i32> {
    let entries: Vec<LawEntry> = catalog()
        .iter()
        .map(|l| LawEntry {
            name: l.name,
            tier: l.tier.as_str(),
            mnesor_vars: l.sorts().mnesor,
            granular_vars: l.sorts().granular,
            statement: l.statement(),
        })
        .collect();
    if a.json {
        writeln!(io.out, "{}", serde_json::to_string_pretty(&entries)?)?;
    } else {
        for e in entries {
            writeln!(io.out, "{:14} {:7} {}", e.name, e.tier, e.statement)?;
        }
    }
    Ok(0)
}

fn lattice_cmd(a: &LatticeArgs, io: &mut Io<'_>) -> Result<i32> {
    let l = fixture::lattice_from_spec(&a.lattice)?;
    writeln!(
        io.out,
        "{}: {} elements, bounded lattice",
        l.name(),
        l.len()
    )?;
    match l.is_distributive() {
        Ok(()) => writeln!(io.out, "distributive")?,
        Err([x, y, z]) => writeln!(
            io.out,
            "not distributive: {x} & ({y} | {z}) differs from ({x} & {y}) | ({x} & {z})",
            x = l.label(x),
            y = l.label(y),
            z = l.label(z)
        )?,
    }
    Ok(0)
}
