//! Command-line front end: argument parsing, dispatch and report emission.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails (the
//! report carries a witness), 2 on malformed input, refused constructions
//! or exhausted budgets.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::distlaw::{builtin_law, check_law, DistLaw, Universe};
use crate::error::{Error, Result};
use crate::extension::{builtin_extension, check_extension_conditions, phi, psi, check_phi_psi, check_psi_phi, ExtensionFamily};
use crate::functors::{
    counit_morphism, identity_morphism, ultrafilter_membership, algebraic_functor, AlgebraicMorphism, ChangeOfBase, Globalization, Side,
};
use crate::io::{load_quantaloid, parse_structure, parse_theory, parse_zeta, read_json, structure_to_json, theory_to_json};
use crate::laxalg::{category_to_algebra, check_algebra, check_category, enumerate_algebras};
use crate::monads::{Budget, Monad, MonadKind};
use crate::quantaloid::{check_divisible, diagonal, validate_quantaloid, Quantaloid};
use crate::report::{Check, Report};
use crate::theory::hofmann::{barr_hofmann_extension, check_hofmann, check_induced_by_barr_hofmann};
use crate::theory::{builtin_theory, check_galois_law, check_galois_theory, check_theory, induce_theory, maximal_law, TopTheory};
use crate::distlaw::is_maximal;
use crate::extension::check_lax_extension;

/// Environment variable holding the default enumeration budget.
pub const BUDGET_ENV: &str = "QLAWS_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "qlaws", version, about = "Check lax distributive laws, topological theories and lax extensions on finite instances")]
pub struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// re-run the command recorded in a report and compare the verdicts
    #[arg(long, value_name = "REPORT")]
    replay: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// seed for every sampled check
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// sizes of the test sets, e.g. 1,2
    #[arg(long, global = true, value_delimiter = ',', default_value = "1,2")]
    sizes: Vec<usize>,
    /// write the JSON report to a file, or `-` for standard output
    #[arg(long, global = true)]
    out: Option<String>,
    /// write the produced structure (if any) to a file, or with `-` to
    /// standard output, moving the human report to standard error
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// largest enumerated domain per check (default from QLAWS_BUDGET)
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// sampled points when a domain exceeds the budget
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// longest list in the universe of the list monad
    #[arg(long, global = true)]
    list_len: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Setting {
    /// `builtin:<name>` (two, d2, luk:N, add_chain:N, max_chain:N, free_z2,
    /// diagonal:<name>) or a JSON file
    #[arg(long, default_value = "builtin:two")]
    quantaloid: String,
    #[arg(long, default_value = "identity")]
    monad: String,
    /// point, trivial, tensor, meet, join or custom:<file>
    #[arg(long)]
    zeta: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    #[command(subcommand)]
    Check(CheckCmd),
    #[command(subcommand)]
    Derive(DeriveCmd),
    /// Ψ·Φ and Φ·Ψ for a law
    Roundtrip {
        #[command(flatten)]
        s: Setting,
        #[arg(long)]
        law: String,
    },
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    #[command(subcommand)]
    Apply(ApplyCmd),
}

#[derive(Subcommand, Debug, Clone)]
enum CheckCmd {
    /// quantaloid axioms
    Quantaloid {
        file: Option<String>,
        #[arg(long)]
        quantaloid: Option<String>,
    },
    /// lax distributive law conditions (a)-(e) and monotonicity
    Law {
        #[command(flatten)]
        s: Setting,
        /// a builtin law, maximal:<theory> or psi:<extension>
        #[arg(long)]
        law: String,
    },
    /// topological theory conditions
    Theory {
        #[command(flatten)]
        s: Setting,
        /// a builtin theory, induced:<law> or a JSON table
        #[arg(long)]
        theory: String,
    },
    /// lax algebra laws of a structure file
    Algebra {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        law: Option<String>,
    },
    /// lax extension axioms and their correspondence with the law side
    Extension {
        #[command(flatten)]
        s: Setting,
        /// a builtin extension, phi:<law> or barr-hofmann:<theory>
        #[arg(long)]
        extension: String,
    },
    /// Hofmann's conditions for a theory
    Hofmann {
        #[command(flatten)]
        s: Setting,
        #[arg(long)]
        theory: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum DeriveCmd {
    /// the theory induced by a law
    Theory {
        #[command(flatten)]
        s: Setting,
        #[arg(long)]
        law: String,
    },
    /// the maximal law of a theory
    MaximalLaw {
        #[command(flatten)]
        s: Setting,
        #[arg(long)]
        theory: String,
    },
    /// the Barr–Hofmann extension of a theory
    BarrHofmann {
        #[command(flatten)]
        s: Setting,
        #[arg(long)]
        theory: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum EnumerateCmd {
    /// every lax algebra on sets of the given size
    Algebras {
        #[command(flatten)]
        s: Setting,
        #[arg(long)]
        law: String,
        #[arg(long)]
        size: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum ApplyCmd {
    /// change of base along ι, δ or γ of a diagonal quantaloid
    ChangeOfBase {
        #[arg(long, value_parser = ["iota", "delta", "gamma"])]
        hom: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// the algebraic functor of an algebraic morphism
    Algebraic {
        #[arg(long, value_parser = ["counit", "identity", "membership"])]
        morphism: String,
        #[arg(long)]
        input: PathBuf,
    },
}

/// The result of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, &args) {
        Ok((report, emitted)) => finish(&cli.common, report, emitted),
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn finish(common: &Common, report: Report, emitted: Option<serde_json::Value>) -> Outcome {
    let code = if report.all_passed() { 0 } else { 1 };
    let full = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    let mut stdout = String::new();
    let mut stderr = String::new();
    match common.out.as_deref() {
        Some("-") => stdout.push_str(&full),
        Some(path) => {
            if let Err(e) = std::fs::write(path, &full) {
                return Outcome { code: 2, stdout, stderr: format!("error: {path}: {e}\n") };
            }
        }
        None => {}
    }
    let emit_stdout = common.emit.as_deref() == Some(Path::new("-"));
    if common.out.as_deref() != Some("-") {
        let text = match common.format {
            Format::Human => report.to_human(),
            Format::Json => report.to_canonical_json() + "\n",
        };
        if emit_stdout { stderr.push_str(&text) } else { stdout.push_str(&text) }
    }
    if let (Some(path), Some(v)) = (&common.emit, emitted) {
        let text = serde_json::to_string_pretty(&v).expect("json") + "\n";
        if emit_stdout {
            stdout.push_str(&text);
        } else if let Err(e) = std::fs::write(path, text) {
            stderr.push_str(&format!("error: {}: {e}\n", path.display()));
            return Outcome { code: 2, stdout, stderr };
        }
    }
    Outcome { code, stdout, stderr }
}

fn budget(common: &Common) -> Result<Budget> {
    let mut b = Budget { seed: common.seed, ..Budget::default() };
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        b.domain = v.parse().map_err(|_| Error::Refused(format!("{BUDGET_ENV} must be a number, got {v}")))?;
    }
    if let Some(d) = common.budget {
        b.domain = d;
    }
    if let Some(s) = common.samples {
        b.samples = s;
    }
    if let Some(l) = common.list_len {
        b.list_len = l;
    }
    Ok(b)
}

struct Ctx {
    q: Quantaloid,
    t: Monad,
    universe: Universe,
    budget: Budget,
}

fn context(s: &Setting, common: &Common) -> Result<Ctx> {
    let budget = budget(common)?;
    let q = load_quantaloid(&s.quantaloid)?;
    let kind = MonadKind::parse(&s.monad).ok_or_else(|| Error::Refused(format!("unknown monad {}", s.monad)))?;
    let t = match &s.zeta {
        Some(z) => Monad::lift(&q, kind, parse_zeta(&q, z)?, budget.list_len)?,
        None => Monad::standard(&q, kind, budget.list_len)?,
    };
    let universe = Universe::sizes(&q, &common.sizes);
    Ok(Ctx { q, t, universe, budget })
}

/// A law selector: a builtin name, `maximal:<theory>` or `psi:<extension>`.
pub fn load_law(q: &Quantaloid, t: &Monad, arg: &str, budget: &Budget) -> Result<Arc<dyn DistLaw>> {
    if let Some(th) = arg.strip_prefix("maximal:") {
        return Ok(Arc::new(maximal_law(&load_theory(q, t, th, budget)?)));
    }
    if let Some(ext) = arg.strip_prefix("psi:") {
        return Ok(Arc::new(psi(load_extension(q, t, ext, budget)?, budget)));
    }
    Ok(Arc::from(builtin_law(arg, q, t)?))
}

/// A theory selector: a builtin name, `induced:<law>` or a JSON table.
pub fn load_theory(q: &Quantaloid, t: &Monad, arg: &str, budget: &Budget) -> Result<TopTheory> {
    if let Some(law) = arg.strip_prefix("induced:") {
        return Ok(induce_theory(q, t, load_law(q, t, law, budget)?, budget)?.0);
    }
    if Path::new(arg).extension().is_some_and(|e| e == "json") {
        return parse_theory(q, t, &read_json(Path::new(arg))?, budget);
    }
    builtin_theory(arg, q, t)
}

/// An extension selector: a builtin name, `phi:<law>` or
/// `barr-hofmann:<theory>`.
pub fn load_extension(q: &Quantaloid, t: &Monad, arg: &str, budget: &Budget) -> Result<Arc<dyn ExtensionFamily>> {
    if let Some(law) = arg.strip_prefix("phi:") {
        return Ok(Arc::new(phi(load_law(q, t, law, budget)?)));
    }
    if let Some(th) = arg.strip_prefix("barr-hofmann:") {
        return Ok(Arc::new(barr_hofmann_extension(q, t, &load_theory(q, t, th, budget)?)?));
    }
    Ok(Arc::new(builtin_extension(arg, q, t)?))
}

type Produced = (Report, Option<serde_json::Value>);

fn execute(cli: &Cli, args: &[String]) -> Result<Produced> {
    if let Some(path) = &cli.replay {
        return replay(path);
    }
    let cmd = cli.command.as_ref().ok_or_else(|| Error::Refused("no command given; see --help".into()))?;
    let started = Instant::now();
    let (mut report, emitted) = dispatch(cmd, &cli.common)?;
    report.args = strip_output_flags(args);
    report.timings_ms = Some(vec![("total".into(), started.elapsed().as_millis() as u64)]);
    if let Some(v) = &emitted {
        report.output = Some(v.clone());
    }
    Ok((report, emitted))
}

/// Drops the flags that only choose where output goes.
fn strip_output_flags(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if ["--out", "--emit", "--format"].contains(&a.as_str()) {
            skip = true;
            continue;
        }
        if ["--out=", "--emit=", "--format="].iter().any(|p| a.starts_with(p)) {
            continue;
        }
        out.push(a.clone());
    }
    out
}

fn replay(path: &Path) -> Result<Produced> {
    let text = std::fs::read_to_string(path)?;
    let old: Report = serde_json::from_str(&text)?;
    if old.args.is_empty() {
        return Err(Error::schema("args", "the report does not record its arguments"));
    }
    let argv = std::iter::once("qlaws".to_string()).chain(old.args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::schema("args", e.to_string()))?;
    let cmd = cli.command.as_ref().ok_or_else(|| Error::schema("args", "no command recorded"))?;
    let (new, _) = dispatch(cmd, &cli.common)?;
    let mut report = Report::new(format!("replay {}", old.command), cli.common.seed);
    let same = new.checks == old.checks;
    let witness = new
        .checks
        .iter()
        .zip(&old.checks)
        .find(|(a, b)| a != b)
        .map(|(a, b)| format!("{}: recorded {} / now {}", a.name, b.status, a.status))
        .or_else(|| (!same).then(|| "the number of checks differs".to_string()));
    report.push(Check::fact("replay.same", "verdicts and witnesses reproduced", same, witness));
    for c in new.checks.iter().filter(|c| c.failed()) {
        report.note(format!("{} reproduces: {}", c.name, c.witness.clone().unwrap_or_default()));
    }
    report.args = old.args;
    Ok((report, None))
}

fn dispatch(cmd: &Command, common: &Common) -> Result<Produced> {
    match cmd {
        Command::Check(c) => check(c, common),
        Command::Derive(d) => derive(d, common),
        Command::Roundtrip { s, law } => {
            let cx = context(s, common)?;
            let lam = load_law(&cx.q, &cx.t, law, &cx.budget)?;
            let mut r = Report::new(format!("roundtrip --law {law}"), common.seed);
            r.push(check_psi_phi(&cx.q, &cx.t, lam.clone(), &cx.universe, &cx.budget)?);
            r.push(check_phi_psi(&cx.q, &cx.t, Arc::new(phi(lam)), &cx.universe, &cx.budget)?);
            Ok((r, None))
        }
        Command::Enumerate(EnumerateCmd::Algebras { s, law, size }) => {
            let cx = context(s, common)?;
            let lam = load_law(&cx.q, &cx.t, law, &cx.budget)?;
            let mut r = Report::new(format!("enumerate algebras --size {size}"), common.seed);
            let mut total = 0usize;
            for base in Universe::sizes(&cx.q, &[*size]).arrays {
                let n = enumerate_algebras(&cx.q, &cx.t, lam.as_ref(), &base, &cx.budget)?.len();
                let shown: Vec<&str> = base.iter().map(|&a| cx.q.objects()[a].as_str()).collect();
                r.note(format!("array [{}]: {n}", shown.join(", ")));
                total += n;
            }
            r.note(format!("count = {total}"));
            Ok((r, Some(serde_json::json!({ "count": total }))))
        }
        Command::Apply(a) => apply(a, common),
    }
}

/// "joins preserved (right argument)" → "joins-right"
fn axiom_slug(axiom: &str) -> String {
    let first = |s: &str| s.split_whitespace().next().unwrap_or_default().to_string();
    match axiom.split_once('(') {
        Some((head, qual)) => format!("{}-{}", first(head), first(qual)),
        None => first(axiom),
    }
}

fn quantaloid_checks(q: &Quantaloid) -> Vec<Check> {
    let rep = validate_quantaloid(q);
    let mut out: Vec<Check> = rep
        .checks
        .iter()
        .map(|a| Check::fact(&format!("quantaloid.{}", axiom_slug(a.axiom)), a.axiom, a.passed, a.witness.clone()))
        .collect();
    if q.is_quantale() && rep.passed() {
        let d = check_divisible(q);
        let mut c = Check::fact("quantale.divisible", "u ≤ v factors as a⊗v = u = v⊗b", d.divisible, None);
        c.domain = "informational".into();
        if !d.divisible {
            c = Check::untested("quantale.divisible", "u ≤ v factors as a⊗v = u = v⊗b", "not divisible");
        }
        out.push(c);
    }
    out
}

fn check(c: &CheckCmd, common: &Common) -> Result<Produced> {
    match c {
        CheckCmd::Quantaloid { file, quantaloid } => {
            let arg = file.as_ref().or(quantaloid.as_ref()).ok_or_else(|| Error::Refused("no quantaloid given".into()))?;
            let q = load_quantaloid(arg)?;
            let mut r = Report::new(format!("check quantaloid {}", q.name()), common.seed);
            r.extend(quantaloid_checks(&q));
            Ok((r, None))
        }
        CheckCmd::Law { s, law } => {
            let cx = context(s, common)?;
            let lam = load_law(&cx.q, &cx.t, law, &cx.budget)?;
            let mut r = Report::new(format!("check law {} over {} with {}", lam.name(), cx.q.name(), cx.t.name()), common.seed);
            r.extend(check_law(&cx.q, &cx.t, lam.as_ref(), &cx.universe, &cx.budget)?);
            Ok((r, None))
        }
        CheckCmd::Theory { s, theory } => {
            let cx = context(s, common)?;
            let xi = load_theory(&cx.q, &cx.t, theory, &cx.budget)?;
            let mut r = Report::new(format!("check theory {} over {} with {}", xi.name(), cx.q.name(), cx.t.name()), common.seed);
            r.extend(check_theory(&cx.q, &cx.t, &xi, &cx.budget)?);
            Ok((r, None))
        }
        CheckCmd::Algebra { input, law } => {
            let b = budget(common)?;
            let def = parse_structure(&read_json(input)?, &b)?;
            let name = law.clone().or(def.law.clone()).unwrap_or_else(|| "identity".into());
            let lam = load_law(&def.q, &def.t, &name, &b)?;
            let alg = category_to_algebra(&def.cat);
            let mut r = Report::new(format!("check algebra {} over {} with {}", input.display(), def.q.name(), lam.name()), common.seed);
            r.extend(check_algebra(&def.q, &def.t, lam.as_ref(), &alg, &b)?);
            if def.t.kind != MonadKind::List {
                r.extend(check_category(&def.q, &def.t, &phi(lam), &def.cat, &b)?);
            }
            Ok((r, None))
        }
        CheckCmd::Extension { s, extension } => {
            let cx = context(s, common)?;
            let fam = load_extension(&cx.q, &cx.t, extension, &cx.budget)?;
            let rep = check_extension_conditions(&cx.q, &cx.t, fam, &cx.universe, &cx.budget)?;
            let mut r = Report::new(format!("check extension {} over {} with {}", rep.family, cx.q.name(), cx.t.name()), common.seed);
            r.extend(rep.checks());
            if let Some(n) = &rep.note {
                r.note(n.clone());
            }
            Ok((r, None))
        }
        CheckCmd::Hofmann { s, theory } => {
            let cx = context(s, common)?;
            let xi = load_theory(&cx.q, &cx.t, theory, &cx.budget)?;
            let mut r = Report::new(format!("check hofmann {} over {} with {}", xi.name(), cx.q.name(), cx.t.name()), common.seed);
            r.extend(check_hofmann(&cx.q, &cx.t, &xi, &cx.budget)?);
            Ok((r, None))
        }
    }
}

fn derive(d: &DeriveCmd, common: &Common) -> Result<Produced> {
    match d {
        DeriveCmd::Theory { s, law } => {
            let cx = context(s, common)?;
            let lam = load_law(&cx.q, &cx.t, law, &cx.budget)?;
            let (xi, checks) = induce_theory(&cx.q, &cx.t, lam.clone(), &cx.budget)?;
            let mut r = Report::new(format!("derive theory from {}", lam.name()), common.seed);
            r.extend(checks);
            r.extend(check_galois_law(&cx.q, &cx.t, lam, &cx.universe, &cx.budget)?);
            let table = if cx.t.kind == MonadKind::List {
                r.note("list theories are evaluation functions; no table is written");
                None
            } else {
                Some(theory_to_json(&cx.q, &cx.t, &xi, &cx.budget)?)
            };
            Ok((r, table))
        }
        DeriveCmd::MaximalLaw { s, theory } => {
            let cx = context(s, common)?;
            let xi = load_theory(&cx.q, &cx.t, theory, &cx.budget)?;
            let lam = maximal_law(&xi);
            let mut r = Report::new(format!("derive maximal-law of {}", xi.name()), common.seed);
            r.extend(check_law(&cx.q, &cx.t, &lam, &cx.universe, &cx.budget)?);
            r.extend(check_galois_theory(&cx.q, &cx.t, &xi, &cx.universe, &cx.budget)?);
            if !r.checks.iter().any(|c| c.name == "galois.maximal") {
                r.push(is_maximal(&cx.q, &cx.t, &lam, &cx.universe, &cx.budget)?);
            }
            Ok((r, None))
        }
        DeriveCmd::BarrHofmann { s, theory } => {
            let cx = context(s, common)?;
            let xi = load_theory(&cx.q, &cx.t, theory, &cx.budget)?;
            let txi = barr_hofmann_extension(&cx.q, &cx.t, &xi)?;
            let mut r = Report::new(format!("derive barr-hofmann of {}", xi.name()), common.seed);
            r.extend(check_lax_extension(&cx.q, &cx.t, &txi, &cx.universe, &cx.budget)?);
            r.extend(check_induced_by_barr_hofmann(&cx.q, &cx.t, &xi, &cx.universe, &cx.budget)?);
            Ok((r, None))
        }
    }
}

fn apply(a: &ApplyCmd, common: &Common) -> Result<Produced> {
    let b = budget(common)?;
    match a {
        ApplyCmd::ChangeOfBase { hom, input } => {
            let def = parse_structure(&read_json(input)?, &b)?;
            let which = Globalization::parse(hom).expect("validated by clap");
            let dv = match which {
                Globalization::Iota => diagonal(&def.q)?,
                _ => def.q.clone(),
            };
            let cob = ChangeOfBase::globalization(&dv, which, def.t.kind, b.list_len)?;
            let universe = Universe::sizes(&cob.q, &common.sizes);
            let mut r = Report::new(format!("apply change-of-base --hom {hom}"), common.seed);
            r.push(cob.check_arrays(&universe, &b)?);
            r.push(cob.check_star(&universe, &b)?);
            if r.checks.iter().any(Check::failed) {
                return Ok((r, None));
            }
            let out = cob.apply(&def.cat, &universe, &b)?;
            let alg = category_to_algebra(&out);
            r.extend(check_algebra(&cob.r, &cob.dst.t, cob.dst.law.as_ref(), &alg, &b)?);
            let v = structure_to_json(&cob.r, None, &cob.dst.t, Some(&cob.dst.law.name()), &def.labels, &out);
            Ok((r, Some(v)))
        }
        ApplyCmd::Algebraic { morphism, input } => {
            let def = parse_structure(&read_json(input)?, &b)?;
            let law = def.law.clone().unwrap_or_else(|| default_law(def.t.kind).into());
            let src = Side { t: def.t.clone(), law: load_law(&def.q, &def.t, &law, &b)? };
            let (h, dst): (AlgebraicMorphism, Side) = match morphism.as_str() {
                "counit" => (counit_morphism(), Side::builtin(&def.q, MonadKind::Identity, "identity", b.list_len)?),
                "identity" => (identity_morphism(), src.clone()),
                _ => {
                    if def.t.kind != MonadKind::Ultrafilter {
                        return Err(Error::Refused("membership starts from the ultrafilter monad".into()));
                    }
                    (ultrafilter_membership(), Side::builtin(&def.q, MonadKind::Powerset, "delta", b.list_len)?)
                }
            };
            let mut r = Report::new(format!("apply algebraic --morphism {morphism}"), common.seed);
            let universe = Universe::sizes(&def.q, &common.sizes);
            r.extend(crate::functors::check_algebraic_morphism(&def.q, &src, &dst, &h, &universe, &b)?);
            if r.checks.iter().any(Check::failed) {
                return Ok((r, None));
            }
            let out = algebraic_functor(&def.q, &dst, &h, &def.cat, &b)?;
            r.extend(check_algebra(&def.q, &dst.t, dst.law.as_ref(), &category_to_algebra(&out), &b)?);
            let v = structure_to_json(&def.q, None, &dst.t, Some(&dst.law.name()), &def.labels, &out);
            Ok((r, Some(v)))
        }
    }
}

fn default_law(kind: MonadKind) -> &'static str {
    match kind {
        MonadKind::Identity => "identity",
        MonadKind::List => "tensor",
        MonadKind::Powerset => "delta",
        MonadKind::Ultrafilter => "beta",
    }
}
