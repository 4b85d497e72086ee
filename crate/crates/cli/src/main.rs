//! costrength-lab: poke at costrong functors over finite sets from the
//! command line.
//!
//! Single-shot verbs (`check`, `enumerate`, `phi`, `psi`, `mate`) resolve a
//! functor expression to its registered structure and report on it. The
//! `stream`, `optic` and `free` families drive the corresponding tooling on
//! small JSON-described inputs, and `suite` runs the named law suites.

mod io;
mod suites;
mod zoo;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use costrength_core::actions::{cartesian, check_graded_laws, maybe_graded_monad};
use costrength_core::costrength::{
    canonical_strength, check_costrength, check_strength, enumerate_costrengths,
    enumerate_strengths, phi, psi, Copoint,
};
use costrength_core::freemonad::{
    free_costrength_levels, free_law_universes, free_monad_law_report, FreeMonad,
};
use costrength_core::finset::exponential;
use costrength_core::mates::{mate_left, mate_right};
use costrength_core::nat::enumerate_nat;
use costrength_core::optics::{compose_optics, lens_nf, prism_nf, transform_optic};
use costrength_core::report::counterexample;
use costrength_core::streams::{behavior, behavior_lasso, lift, solve_up_to, UpToSystem};
use costrength_core::{FinFun, FinSet, FunctorExpr, LawReport, LawStatus, Universe};

use crate::io::{
    extend_unique, label_set, named_action, parse_functor, parse_set_arg, read_json, write_json,
    AutomatonFile, FunFile, Lab, OpticFile, UpToFile,
};

#[derive(Parser)]
#[command(
    name = "costrength-lab",
    version,
    about = "Check, enumerate and transport costrengths of finite-set functors"
)]
struct Cli {
    #[command(flatten)]
    knobs: Knobs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Knobs {
    /// Emit machine-readable JSON instead of the human summary
    #[arg(long, global = true)]
    json: bool,

    /// Cap on the size of any constructed finite set
    #[arg(long, global = true, value_name = "N")]
    max_size: Option<usize>,

    /// Candidate cap before an enumeration is skipped as over budget
    #[arg(long, global = true, value_name = "N", env = "COSTRENGTH_BUDGET")]
    budget: Option<u64>,

    /// Comma-separated sizes of the ambient universe's canonical objects
    #[arg(long, global = true, value_name = "SIZES", value_delimiter = ',')]
    universe: Option<Vec<usize>>,

    /// Worker threads for `suite all`
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

impl Knobs {
    fn lab(&self) -> Lab {
        let jobs = self.jobs.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
                .min(8)
        });
        Lab {
            json: self.json,
            max_size: self.max_size,
            budget: self.budget,
            universe_sizes: self.universe.clone(),
            jobs,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Law-check the registered costrength (or strength) of a functor
    Check {
        /// Functor expression, e.g. "Writer(2)" or "Prod(Id, Maybe)"
        #[arg(long)]
        functor: String,
        /// Acting structure: cart, cocart or op-exp
        #[arg(long, default_value = "cart")]
        action: String,
        /// Check the strength instead of the costrength
        #[arg(long)]
        strength: bool,
    },
    /// Exhaustively enumerate every lawful costrength (or strength)
    Enumerate {
        #[arg(long)]
        functor: String,
        #[arg(long, default_value = "cart")]
        action: String,
        #[arg(long)]
        strength: bool,
    },
    /// Evaluate the registered costrength at the unit to get its copoint
    Phi {
        #[arg(long)]
        functor: String,
    },
    /// Rebuild the costrength from its copoint and confirm the round trip
    Psi {
        #[arg(long)]
        functor: String,
    },
    /// Transport along product -| exponential: reader strengths to writer
    /// costrengths (left) and back (right)
    Mate {
        /// Weight set, e.g. "2" or "{a,b}"
        #[arg(long, default_value = "2")]
        set: String,
        #[arg(long, value_enum, default_value_t = Direction::Left)]
        direction: Direction,
    },
    /// Stream automaton tools
    #[command(subcommand)]
    Stream(StreamCmd),
    /// Optic tools
    #[command(subcommand)]
    Optic(OpticCmd),
    /// Truncated free monad tools
    #[command(subcommand)]
    Free(FreeCmd),
    /// Graded structures
    #[command(subcommand)]
    Graded(GradedCmd),
    /// Named law suites
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Direction {
    Left,
    Right,
}

#[derive(Subcommand)]
enum StreamCmd {
    /// Print the output stream of a state, as a prefix and an exact lasso
    Behave {
        /// Automaton description (JSON)
        #[arg(long)]
        automaton: PathBuf,
        /// Starting state index
        #[arg(long, default_value_t = 0)]
        state: usize,
        /// Prefix length to print
        #[arg(long, default_value_t = 8)]
        length: usize,
    },
    /// Lift an automaton along a functor with a registered costrength
    Lift {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        functor: String,
        /// Where to write the lifted automaton (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a guarded system of stream equations up to F
    Upto {
        /// System description (JSON)
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum OpticCmd {
    /// Compose two optics over the same action
    Compose {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce an optic to its lens or prism normal form
    Nf {
        #[arg(long)]
        optic: PathBuf,
    },
    /// Apply the (F, G) transformer to an optic
    Transform {
        #[arg(long)]
        optic: PathBuf,
        /// Functor carrying the costrength (applied to the forward part)
        #[arg(long)]
        functor: String,
        /// Functor carrying the strength (defaults to --functor)
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FreeCmd {
    /// Print the term levels of the truncated free monad
    Build {
        #[arg(long)]
        functor: String,
        /// Variable set, e.g. "2" or "{x,y}"
        #[arg(long, default_value = "2")]
        base: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Compute the level-indexed costrength on terms
    Cst {
        #[arg(long)]
        functor: String,
        /// Grade set M
        #[arg(long, default_value = "2")]
        grade: String,
        #[arg(long, default_value = "2")]
        base: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Check the monad and graded costrength laws on truncated terms
    Laws {
        #[arg(long)]
        functor: String,
        #[arg(long, default_value = "2")]
        grade: String,
        #[arg(long, default_value = "2")]
        base: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum GradedCmd {
    /// Check the graded Maybe tower and report which comparisons are isos
    Maybe {
        /// Comma-separated base object sizes
        #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1, 2])]
        sizes: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run one named suite
    Run { id: String },
    /// Run every suite, or those matching a '*' pattern
    All { filter: Option<String> },
    /// List the registered suites
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let lab = cli.knobs.lab();
    match dispatch(cli.cmd, &lab) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Cmd, lab: &Lab) -> anyhow::Result<ExitCode> {
    match cmd {
        Cmd::Check {
            functor,
            action,
            strength,
        } => cmd_check(lab, &functor, &action, strength),
        Cmd::Enumerate {
            functor,
            action,
            strength,
        } => cmd_enumerate(lab, &functor, &action, strength),
        Cmd::Phi { functor } => cmd_phi(lab, &functor),
        Cmd::Psi { functor } => cmd_psi(lab, &functor),
        Cmd::Mate { set, direction } => cmd_mate(lab, &set, direction),
        Cmd::Stream(c) => match c {
            StreamCmd::Behave {
                automaton,
                state,
                length,
            } => cmd_behave(lab, &automaton, state, length),
            StreamCmd::Lift {
                automaton,
                functor,
                out,
            } => cmd_lift(lab, &automaton, &functor, out.as_deref()),
            StreamCmd::Upto { file } => cmd_upto(lab, &file),
        },
        Cmd::Optic(c) => match c {
            OpticCmd::Compose { outer, inner, out } => {
                cmd_optic_compose(lab, &outer, &inner, out.as_deref())
            }
            OpticCmd::Nf { optic } => cmd_optic_nf(lab, &optic),
            OpticCmd::Transform {
                optic,
                functor,
                target,
                out,
            } => cmd_optic_transform(lab, &optic, &functor, target.as_deref(), out.as_deref()),
        },
        Cmd::Free(c) => match c {
            FreeCmd::Build {
                functor,
                base,
                depth,
            } => cmd_free_build(lab, &functor, &base, depth),
            FreeCmd::Cst {
                functor,
                grade,
                base,
                depth,
            } => cmd_free_cst(lab, &functor, &grade, &base, depth),
            FreeCmd::Laws {
                functor,
                grade,
                base,
                depth,
            } => cmd_free_laws(lab, &functor, &grade, &base, depth),
        },
        Cmd::Graded(GradedCmd::Maybe { sizes }) => cmd_graded_maybe(lab, &sizes),
        Cmd::Suite(c) => match c {
            SuiteCmd::Run { id } => cmd_suite_run(lab, &id),
            SuiteCmd::All { filter } => cmd_suite_all(lab, filter.as_deref()),
            SuiteCmd::List => cmd_suite_list(),
        },
    }
}

fn status_word(s: LawStatus) -> &'static str {
    match s {
        LawStatus::Pass => "pass",
        LawStatus::Fail => "FAIL",
        LawStatus::Skipped => "skipped",
    }
}

fn print_law_human(r: &LawReport) {
    println!("{}: {}", r.name, status_word(r.status));
    println!("  checked: {}", r.checked);
    for (k, v) in &r.counts {
        println!("  {k} = {v}");
    }
    if let Some(cx) = &r.counterexample {
        println!("  counterexample in {}:", cx.law);
        for (k, v) in &cx.bindings {
            println!("    {k} = {v}");
        }
        println!("    {}", cx.detail);
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
    let shown = r.skipped.len().min(8);
    for s in &r.skipped[..shown] {
        println!("  skipped: {s}");
    }
    if r.skipped.len() > shown {
        println!("  skipped: ... {} more", r.skipped.len() - shown);
    }
}

/// Prints a law report and turns its status into an exit code. Skips are
/// not failures for the single-shot verbs.
fn emit_law(lab: &Lab, r: &LawReport) -> anyhow::Result<ExitCode> {
    if lab.json {
        println!("{}", serde_json::to_string_pretty(r)?);
    } else {
        print_law_human(r);
    }
    Ok(if r.status == LawStatus::Fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn emit_value<T: Serialize>(lab: &Lab, value: &T, human: impl FnOnce()) -> anyhow::Result<()> {
    if lab.json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        human();
    }
    Ok(())
}

fn cmd_check(lab: &Lab, functor: &str, action: &str, strength: bool) -> anyhow::Result<ExitCode> {
    let f = parse_functor(functor)?;
    let act = named_action(action)?;
    let u = lab.universe(512);
    let report = if strength {
        check_strength(&zoo::canonical_strength_over(&f, &act, &u, &u)?)?
    } else {
        check_costrength(&zoo::canonical_costrength(&f, &act, &u, &u)?)?
    };
    emit_law(lab, &report)
}

#[derive(Serialize)]
struct CensusOut {
    functor: String,
    action: String,
    kind: &'static str,
    count: usize,
    witnesses: Vec<Vec<Vec<usize>>>,
}

fn cmd_enumerate(
    lab: &Lab,
    functor: &str,
    action: &str,
    strength: bool,
) -> anyhow::Result<ExitCode> {
    let f = parse_functor(functor)?;
    let act = named_action(action)?;
    let u = lab.universe(512);
    let (kind, witnesses): (&'static str, Vec<Vec<Vec<usize>>>) = if strength {
        let found = enumerate_strengths(&f, &act, &u, &u)?;
        (
            "strength",
            found
                .iter()
                .map(|s| s.components().iter().map(|c| c.table().to_vec()).collect())
                .collect(),
        )
    } else {
        let found = enumerate_costrengths(&f, &act, &u, &u)?;
        (
            "costrength",
            found
                .iter()
                .map(|c| c.components().iter().map(|c| c.table().to_vec()).collect())
                .collect(),
        )
    };
    let out = CensusOut {
        functor: f.to_string(),
        action: act.name().to_string(),
        kind,
        count: witnesses.len(),
        witnesses,
    };
    emit_value(lab, &out, || {
        println!(
            "{} lawful {}{} of {} over {}",
            out.count,
            kind,
            if out.count == 1 { "" } else { "s" },
            out.functor,
            out.action
        );
        for (i, w) in out.witnesses.iter().enumerate() {
            let tables: Vec<String> = w.iter().map(|t| format!("{t:?}")).collect();
            println!("  #{i}: {}", tables.join(" "));
        }
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CopointOut {
    functor: String,
    components: Vec<CopointComponent>,
    laws: LawReport,
}

#[derive(Serialize)]
struct CopointComponent {
    at: String,
    table: Vec<usize>,
}

fn cmd_phi(lab: &Lab, functor: &str) -> anyhow::Result<ExitCode> {
    let f = parse_functor(functor)?;
    let u = lab.universe(512);
    let c = zoo::canonical_costrength(&f, &cartesian(), &u, &u)?;
    let p = phi(&c)?;
    let laws = p.check()?;
    let components: Vec<CopointComponent> = p
        .universe()
        .objects()
        .iter()
        .zip(&p.epsilon.components)
        .map(|(x, comp)| CopointComponent {
            at: x.to_string(),
            table: comp.table().to_vec(),
        })
        .collect();
    let failed = laws.status == LawStatus::Fail;
    let out = CopointOut {
        functor: f.to_string(),
        components,
        laws,
    };
    emit_value(lab, &out, || {
        println!("copoint of {} (evaluation at the unit):", out.functor);
        for c in &out.components {
            println!("  eps at {}: {:?}", c.at, c.table);
        }
        print_law_human(&out.laws);
    })?;
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_psi(lab: &Lab, functor: &str) -> anyhow::Result<ExitCode> {
    let f = parse_functor(functor)?;
    let u = lab.universe(512);
    let c0 = zoo::canonical_costrength(&f, &cartesian(), &u, &u)?;
    let p = phi(&c0)?;
    let c1 = psi(&p, &u, &u)?;
    let mut report = check_costrength(&c1)?;
    report.tick();
    if c1 == c0 {
        report.note("rebuilding from the copoint recovers the registered costrength exactly");
    } else {
        report.fail(counterexample(
            "roundtrip",
            &[("functor", f.to_string())],
            "psi(phi(cst)) differs from cst",
        ));
    }
    emit_law(lab, &report)
}

fn cmd_mate(lab: &Lab, set: &str, direction: Direction) -> anyhow::Result<ExitCode> {
    let s = parse_set_arg(set)?;
    let mut report;
    match direction {
        Direction::Left => {
            // naturality sweeps over the widened transposition universes
            // need a tight hom cap to stay interactive
            let u = Universe::with_budget(
                lab.base_sets(),
                lab.budget_with(1024).with_max_hom(512),
            );
            let (u_strength, adj) = zoo::transposition_setup(&s, &u, &u)?;
            report = adj.check()?;
            let st = canonical_strength(&FunctorExpr::reader(s.clone()), &u_strength, &u)?;
            let cst = mate_left(&adj, &st, &u)?;
            report.absorb("mate-laws", check_costrength(&cst)?);
            let registered = zoo::canonical_costrength(
                &FunctorExpr::writer(s.clone()),
                &cartesian(),
                &u,
                &u,
            )?;
            report.tick();
            if cst == registered {
                report.note(format!(
                    "the mate of the Reader({n}) strength is the Writer({n}) symmetry",
                    n = s.size()
                ));
            } else {
                report.fail(counterexample(
                    "mate-left",
                    &[],
                    "the mate differs from the registered writer costrength",
                ));
            }
        }
        Direction::Right => {
            // the double mate looks the costrength up at reader images, so
            // the forward mate is built one universe level wider; the base
            // stays at sizes 0..=2 because each mate re-certifies the
            // adjunction over the widened universes
            let sizes = lab.universe_sizes.clone().unwrap_or_else(|| vec![0, 1, 2]);
            let objects: Vec<FinSet> = sizes.into_iter().map(io::sized_object).collect();
            let u = Universe::with_budget(objects, lab.budget_with(8192).with_max_hom(512));
            let reader_images: Vec<FinSet> = u
                .objects()
                .iter()
                .map(|x| exponential(&s, x).object)
                .collect();
            let u_mate = u.extended(reader_images);
            let (u_strength, adj) = zoo::transposition_setup(&s, &u, &u_mate)?;
            let st = canonical_strength(&FunctorExpr::reader(s.clone()), &u_strength, &u)?;
            let wide = mate_left(&adj, &st, &u_mate)?;
            let back = mate_right(&adj, &wide, &u)?;
            report = check_strength(&back)?;
            report.note("the adjunction laws are certified inside each transposition");
            for m in u.objects() {
                for y in u.objects() {
                    report.tick();
                    if back.component_at(m, y)? != st.component_at(m, y)? {
                        report.fail(counterexample(
                            "mate-roundtrip",
                            &[("grade", m.to_string()), ("object", y.to_string())],
                            "the double mate differs from the original strength",
                        ));
                    }
                }
            }
            report.count(
                "roundtrip-components",
                (u.len() * u.len()) as u64,
            );
        }
    }
    emit_law(lab, &report)
}

#[derive(Serialize)]
struct BehaviorOut {
    prefix: Vec<String>,
    lasso: String,
}

fn cmd_behave(lab: &Lab, path: &std::path::Path, state: usize, length: usize) -> anyhow::Result<ExitCode> {
    let a = read_json::<AutomatonFile>(path)?.build()?;
    let pre = behavior(&a, state, length)?;
    let lasso = behavior_lasso(&a, state)?;
    let out = BehaviorOut {
        prefix: pre
            .outputs
            .iter()
            .map(|&i| a.alphabet.label(i).to_string())
            .collect(),
        lasso: lasso.render(&a.alphabet),
    };
    emit_value(lab, &out, || {
        println!("prefix: {}", out.prefix.join(" "));
        println!("lasso:  {}", out.lasso);
    })?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_lift(
    lab: &Lab,
    path: &std::path::Path,
    functor: &str,
    out: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    let a = read_json::<AutomatonFile>(path)?.build()?;
    let f = parse_functor(functor)?;
    let base = lab.universe(512);
    let u = extend_unique(&base, [a.states.clone(), a.alphabet.clone()]);
    let c = zoo::canonical_costrength(&f, &cartesian(), &u, &u)?;
    let lifted = lift(&a, &c)?;
    let file = AutomatonFile::of(&lifted);
    match out {
        Some(p) => {
            write_json(p, &file)?;
            println!(
                "lifted along {}: {} states, written to {}",
                f,
                lifted.states.size(),
                p.display()
            );
        }
        None => println!("{}", serde_json::to_string_pretty(&file)?),
    }
    Ok(ExitCode::SUCCESS)
}

/// The unique copoint of the functor over small canonical sets, found by
/// exhaustive search. Ambiguity is an error: the file format can pin one.
/// The solver reads the component at the carrier directly, so the carrier
/// joins the search universe.
fn derive_copoint(f: &FunctorExpr, carrier: &FinSet, lab: &Lab) -> anyhow::Result<Copoint> {
    let mut objects = vec![carrier.clone()];
    objects.extend(
        (0..=carrier.size().max(2))
            .map(io::sized_object)
            .filter(|x| x != carrier),
    );
    let u = Universe::with_budget(objects, lab.budget_with(512));
    let mut found = Vec::new();
    for fam in enumerate_nat(f, &FunctorExpr::Id, &u)? {
        if let Ok(p) = Copoint::from_family(fam) {
            found.push(p);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("len is 1")),
        0 => bail!("no copoint of {f} exists over small sets; supply one in the file"),
        n => bail!("{n} copoints of {f} exist; supply the intended one in the file"),
    }
}

#[derive(Serialize)]
struct UpToOut {
    solution: AutomatonFile,
    behaviors: Vec<String>,
    report: LawReport,
}

fn cmd_upto(lab: &Lab, path: &std::path::Path) -> anyhow::Result<ExitCode> {
    let file: UpToFile = read_json(path)?;
    let carrier = label_set(&file.carrier)?;
    let alphabet = label_set(&file.alphabet)?;
    let f = parse_functor(&file.functor)?;
    let budget = lab.budget_with(512);
    let eps = match &file.copoint {
        Some(cp) => io::build_copoint(cp, &f, budget)?,
        None => derive_copoint(&f, &carrier, lab)?,
    };
    let fx = f.apply_obj(&carrier, budget.max_size)?;
    let p = costrength_core::finset::product(&alphabet, &fx);
    let map = FinFun::new(carrier.clone(), p.object.clone(), file.map.clone())?;
    let sys = UpToSystem::new(carrier, alphabet, f, eps, map)?;

    let (solution, mut report) = solve_up_to(&sys)?;
    let mut behaviors = Vec::with_capacity(solution.states.size());
    for i in 0..solution.states.size() {
        let l = behavior_lasso(&solution, i)?;
        behaviors.push(format!(
            "{} : {}",
            solution.states.label(i),
            l.render(&solution.alphabet)
        ));
    }
    report.seal();
    let failed = report.status == LawStatus::Fail;
    let out = UpToOut {
        solution: AutomatonFile::of(&solution),
        behaviors,
        report,
    };
    emit_value(lab, &out, || {
        for b in &out.behaviors {
            println!("{b}");
        }
        print_law_human(&out.report);
    })?;
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn describe_optic(o: &costrength_core::optics::OpticRep) -> String {
    format!(
        "residual {} over {}: {} -> {} focusing {} -> {}",
        o.residual,
        o.action.name(),
        o.boundary.outer_in,
        o.boundary.outer_out,
        o.boundary.inner_in,
        o.boundary.inner_out
    )
}

fn emit_optic(
    lab: &Lab,
    o: &costrength_core::optics::OpticRep,
    out: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    let file = OpticFile::of(o);
    match out {
        Some(p) => {
            write_json(p, &file)?;
            println!("{} (written to {})", describe_optic(o), p.display());
        }
        None if lab.json => println!("{}", serde_json::to_string_pretty(&file)?),
        None => {
            println!("{}", describe_optic(o));
            println!("fwd: {:?}", o.fwd.table());
            println!("bwd: {:?}", o.bwd.table());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_optic_compose(
    lab: &Lab,
    outer: &std::path::Path,
    inner: &std::path::Path,
    out: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    let a = read_json::<OpticFile>(outer)?.build()?;
    let b = read_json::<OpticFile>(inner)?.build()?;
    let cap = lab.budget_with(4096).max_size;
    let composed = compose_optics(&a, &b, cap)?;
    emit_optic(lab, &composed, out)
}

#[derive(Serialize)]
struct NfOut {
    kind: &'static str,
    first: FunFile,
    second: FunFile,
}

fn cmd_optic_nf(lab: &Lab, path: &std::path::Path) -> anyhow::Result<ExitCode> {
    let o = read_json::<OpticFile>(path)?.build()?;
    let (kind, names, first, second) = match o.action.name() {
        "cart" => {
            let nf = lens_nf(&o)?;
            ("lens", ("get", "put"), nf.get, nf.put)
        }
        "cocart" => {
            let nf = prism_nf(&o)?;
            ("prism", ("matcher", "build"), nf.matcher, nf.build)
        }
        other => bail!("no normal form is implemented for the {other} action"),
    };
    let out = NfOut {
        kind,
        first: FunFile::of(&first),
        second: FunFile::of(&second),
    };
    emit_value(lab, &out, || {
        println!("{} normal form", kind);
        println!("  {}: {:?}", names.0, first.table());
        println!("  {}: {:?}", names.1, second.table());
    })?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_optic_transform(
    lab: &Lab,
    path: &std::path::Path,
    functor: &str,
    target: Option<&str>,
    out: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    let o = read_json::<OpticFile>(path)?.build()?;
    let f = parse_functor(functor)?;
    let g = match target {
        Some(src) => parse_functor(src)?,
        None => f.clone(),
    };
    let base = lab.universe(512);
    let b = &o.boundary;
    let u = extend_unique(
        &base,
        [
            b.outer_in.clone(),
            b.inner_in.clone(),
            b.inner_out.clone(),
            b.outer_out.clone(),
            o.residual.clone(),
        ],
    );
    let f_cst = zoo::canonical_costrength(&f, &o.action, &u, &u)?;
    let g_st = zoo::canonical_strength_over(&g, &o.action, &u, &u)?;
    let transformed = transform_optic(&f_cst, &g_st, &o)?;
    emit_optic(lab, &transformed, out)
}

#[derive(Serialize)]
struct FreeBuildOut {
    functor: String,
    base: String,
    levels: Vec<usize>,
    terms: Vec<String>,
}

fn cmd_free_build(lab: &Lab, functor: &str, base: &str, depth: usize) -> anyhow::Result<ExitCode> {
    let f = parse_functor(functor)?;
    let x = parse_set_arg(base)?;
    let cap = lab.budget_with(1 << 16).max_size;
    let fm = FreeMonad::new(f.clone(), x.clone(), depth, cap)?;
    let levels: Vec<usize> = (0..=depth).map(|d| fm.level(d).size()).collect();
    let top = fm.level(depth);
    let shown = top.size().min(32);
    let terms: Vec<String> = (0..shown).map(|i| top.label(i).to_string()).collect();
    let out = FreeBuildOut {
        functor: f.to_string(),
        base: x.to_string(),
        levels,
        terms,
    };
    emit_value(lab, &out, || {
        let sizes: Vec<String> = out.levels.iter().map(|n| n.to_string()).collect();
        println!(
            "term levels of the free monad on {} over {}: {}",
            out.functor,
            out.base,
            sizes.join(" -> ")
        );
        for t in &out.terms {
            println!("  {t}");
        }
        if top.size() > shown {
            println!("  ... {} more", top.size() - shown);
        }
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FreeCstOut {
    functor: String,
    grade: String,
    base: String,
    levels: Vec<FunFile>,
}

fn cmd_free_cst(
    lab: &Lab,
    functor: &str,
    grade: &str,
    base: &str,
    depth: usize,
) -> anyhow::Result<ExitCode> {
    let f = parse_functor(functor)?;
    let m = parse_set_arg(grade)?;
    let x = parse_set_arg(base)?;
    let budget = lab.budget_with(1 << 12).with_max_hom(4096);
    let (objects, grades) = free_law_universes(&f, &m, &x, depth, budget)?;
    let c = zoo::canonical_costrength(&f, &cartesian(), &objects, &grades)?;
    let mx = costrength_core::finset::product(&m, &x).object;
    let mxt = FreeMonad::new(f.clone(), mx, depth, budget.max_size)?;
    let xt = FreeMonad::new(f.clone(), x.clone(), depth, budget.max_size)?;
    let maps = free_costrength_levels(&mxt, &xt, &c, &m, depth)?;
    let out = FreeCstOut {
        functor: f.to_string(),
        grade: m.to_string(),
        base: x.to_string(),
        levels: maps.iter().map(FunFile::of).collect(),
    };
    emit_value(lab, &out, || {
        println!(
            "term costrength of the free monad on {} (M = {}, X = {}):",
            out.functor, out.grade, out.base
        );
        for (d, map) in maps.iter().enumerate() {
            println!(
                "  level {d}: {} -> {} ({} entries)",
                map.dom(),
                map.cod(),
                map.table().len()
            );
        }
    })?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_free_laws(
    lab: &Lab,
    functor: &str,
    grade: &str,
    base: &str,
    depth: usize,
) -> anyhow::Result<ExitCode> {
    let f = parse_functor(functor)?;
    let m = parse_set_arg(grade)?;
    let x = parse_set_arg(base)?;
    let budget = lab.budget_with(1 << 12).with_max_hom(4096);
    let (objects, grades) = free_law_universes(&f, &m, &x, depth, budget)?;
    let c = zoo::canonical_costrength(&f, &cartesian(), &objects, &grades)?;
    let report = free_monad_law_report(&c, &m, &x, depth)?;
    emit_law(lab, &report)
}

fn cmd_graded_maybe(lab: &Lab, sizes: &[usize]) -> anyhow::Result<ExitCode> {
    let objects: Vec<FinSet> = sizes.iter().copied().map(io::sized_object).collect();
    let u = Universe::with_budget(objects, lab.budget_with(64));
    let gm = maybe_graded_monad(&u)?;
    let report = check_graded_laws(&gm)?;
    emit_law(lab, &report)
}

fn print_suite_line(r: &suites::SuiteReport) {
    let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut tail = String::new();
    if let Some(cx) = &r.counterexample {
        tail = format!("  [{}: {}]", cx.law, cx.detail);
    } else if r.status == LawStatus::Skipped && !r.skipped.is_empty() {
        tail = format!("  [{}]", r.skipped[0]);
    }
    println!(
        "{:<8} {:<16} {}  ({} checks, {} ms){}",
        status_word(r.status),
        r.suite,
        counts.join(" "),
        r.checked,
        r.timing_ms,
        tail
    );
}

fn cmd_suite_run(lab: &Lab, id: &str) -> anyhow::Result<ExitCode> {
    let spec = suites::find(id)
        .ok_or_else(|| anyhow!("unknown suite '{id}'; `suite list` shows the registry"))?;
    let report = suites::run_suite(spec, lab);
    if lab.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{}: {}", report.suite, status_word(report.status));
        println!("  {}", report.statement);
        println!("  scope: {}", spec.scope);
        println!("  checked: {}", report.checked);
        for (k, v) in &report.counts {
            println!("  {k} = {v}");
        }
        if let Some(cx) = &report.counterexample {
            println!("  counterexample in {}:", cx.law);
            for (k, v) in &cx.bindings {
                println!("    {k} = {v}");
            }
            println!("    {}", cx.detail);
        }
        for n in &report.notes {
            println!("  note: {n}");
        }
        for s in &report.skipped {
            println!("  skipped: {s}");
        }
        println!("  ({} ms)", report.timing_ms);
    }
    Ok(if report.status == LawStatus::Pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_suite_all(lab: &Lab, filter: Option<&str>) -> anyhow::Result<ExitCode> {
    let reports = suites::run_all(filter, lab);
    if reports.is_empty() {
        bail!(
            "no suite matches '{}'; `suite list` shows the registry",
            filter.unwrap_or("*")
        );
    }
    let agg = suites::aggregate(reports);
    if lab.json {
        println!("{}", serde_json::to_string_pretty(&agg)?);
    } else {
        for r in &agg.suites {
            print_suite_line(r);
        }
        println!(
            "{} passed, {} failed, {} skipped",
            agg.passed, agg.failed, agg.skipped
        );
    }
    Ok(if agg.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_suite_list() -> anyhow::Result<ExitCode> {
    for s in suites::registry() {
        println!("{:<16} {}", s.id, s.statement);
    }
    Ok(ExitCode::SUCCESS)
}
