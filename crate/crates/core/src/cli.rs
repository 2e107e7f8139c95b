//! The `lazyeq` command line. [`run`] is the whole program minus process
//! exit, so tests can drive it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::dag::{check_preference_family, dag_nash, dag_spe_via_linear_extension, DagGame, FamilyCheck, VeryLazy, VeryLazyVariant};
use crate::dynamics::{improvement_graph, run as run_dynamics, Dynamics, Policy, Relation, RunConfig, RunTrace, ScriptTarget, StepMode, Verdict};
use crate::equilibria::{backward_induction, equilibrium_report};
use crate::error::Error;
use crate::fixtures;
use crate::game::{Game, Profile, Universe};
use crate::generate::{generate, GameKind, GenParams, PrefKind};
use crate::graph::StateGraph;
use crate::io::{self, parse_profile_for, print_tree, Document};
use crate::markov::{build_chain, robustness_check, stable_profiles, stationary_distribution, ExactChain, StabilityParams};
use crate::normal_form::nf_nash;
use crate::potentials::{big_delta, global_bound, small_delta, step_bound};
use crate::scalar::parse_rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "lazyeq", version, about = "Equilibria and lazy improvement dynamics for abstract games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nash equilibria by brute force
    Ne { file: PathBuf },
    /// Subgame perfect equilibria of a tree game
    Spe { file: PathBuf },
    /// Backward induction outputs
    Bi { file: PathBuf },
    /// Run improvement dynamics from a start profile
    Run {
        file: PathBuf,
        #[arg(long, default_value = "lazy")]
        mode: StepMode,
        /// first, random, roundrobin or scripted (the document's script)
        #[arg(long, default_value = "random")]
        policy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Profile file: a starred tree or a starred document of the same game
        #[arg(long)]
        start: Option<PathBuf>,
        /// Restrict DAG steps to a very lazy variant
        #[arg(long)]
        variant: Option<VeryLazyVariant>,
        /// Keep going after the first revisited profile
        #[arg(long)]
        no_stop_on_cycle: bool,
        /// Independent trials with seeds `seed`, `seed+1`, ...
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Print every step
        #[arg(long)]
        trace: bool,
    },
    /// Build the improvement graph
    Graph {
        file: PathBuf,
        #[arg(long, default_value = "lazy")]
        mode: StepMode,
        #[arg(long)]
        variant: Option<VeryLazyVariant>,
        /// Write DOT here (`-` for standard output)
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Step bounds of lazy improvement
    Bound { file: PathBuf },
    /// Dismissed-outcome counts of the game and of a profile
    Delta {
        file: PathBuf,
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Decide whether lazy improvement terminates on all DAG games over these preferences
    Prefcheck { file: PathBuf },
    /// Stationary distribution of the perturbed chain
    Markov {
        file: PathBuf,
        #[arg(long, value_parser = rational)]
        p: Rational64,
        #[arg(long, value_parser = rational)]
        eps: Rational64,
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Stochastically stable profiles
    Stable {
        file: PathBuf,
        #[arg(long, value_parser = rational)]
        p: Rational64,
        #[arg(long, value_parser = rational)]
        eps0: Option<Rational64>,
        #[arg(long, default_value_t = 12)]
        levels: usize,
        #[arg(long, value_parser = rational, default_value = "1/1000")]
        threshold: Rational64,
        /// Also redraw edge masses in [x, alpha x] and compare stable sets
        #[arg(long, value_parser = rational)]
        alpha: Option<Rational64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random game document
    Gen {
        #[arg(long, default_value = "tree")]
        kind: GameKind,
        #[arg(long, default_value_t = 2)]
        players: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        branch: usize,
        #[arg(long, default_value_t = 3)]
        outcomes: usize,
        #[arg(long, default_value = "linear")]
        pref: PrefKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_profiles: Option<u128>,
    },
    /// Built-in examples
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    List,
    Emit { name: String },
    /// Replay one fixture's checks, or all of them
    Verify { name: Option<String> },
    /// Write every fixture file into a directory
    Write { dir: PathBuf },
}

fn rational(text: &str) -> Result<Rational64, String> {
    parse_rational(text).ok_or_else(|| format!("not a rational: {text}"))
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::StateSpaceTooLarge { .. } => EXIT_CAP,
            _ => EXIT_VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_VALIDATION, message: message.into() }
}

type Outcome = Result<String, Failure>;

/// Parses `args` (program name first), writes the report to `out` and
/// errors to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Failure> {
    Ok(io::parse(&read(path)?)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Ne { file } => ne(&load(&file)?),
        Command::Spe { file } => spe(&load(&file)?),
        Command::Bi { file } => bi(&load(&file)?),
        Command::Run { file, mode, policy, seed, max_steps, start, variant, no_stop_on_cycle, trials, jobs, trace } => {
            let doc = load(&file)?;
            let start = match start {
                Some(p) => Some(parse_profile_for(&read(&p)?, &doc)?),
                None => None,
            };
            let policy = match policy.as_str() {
                "scripted" => match &doc {
                    Document::Tree(d) => Policy::Scripted(d.script.clone()),
                    Document::Dag(d) => Policy::Scripted(d.script.clone()),
                    Document::NormalForm(_) => return Err(invalid("normal-form documents carry no script")),
                },
                other => crate::dynamics::parse_policy(other).map_err(usage)?,
            };
            let config = RunConfig { mode, policy, seed, max_steps, stop_on_cycle: !no_stop_on_cycle };
            let opts = RunOptions { start, variant, trials, jobs, trace };
            run_command(&doc, &config, &opts)
        }
        Command::Graph { file, mode, variant, dot } => graph(&load(&file)?, mode, variant, dot.as_deref()),
        Command::Bound { file } => bound(&load(&file)?),
        Command::Delta { file, profile } => {
            let doc = load(&file)?;
            let profile = match profile {
                Some(p) => Some(parse_profile_for(&read(&p)?, &doc)?),
                None => None,
            };
            delta(&doc, profile)
        }
        Command::Prefcheck { file } => prefcheck(universe(&load(&file)?)),
        Command::Markov { file, p, eps, dump_matrix } => markov(&load(&file)?, p, eps, dump_matrix.as_deref()),
        Command::Stable { file, p, eps0, levels, threshold, alpha, seed } => {
            let mut params = StabilityParams::new(p);
            if let Some(e) = eps0 {
                params.eps0 = e;
            }
            params.levels = levels;
            params.threshold = threshold.to_f64().unwrap_or(f64::NAN);
            stable(&load(&file)?, &params, alpha, seed)
        }
        Command::Gen { kind, players, depth, branch, outcomes, pref, seed, max_profiles } => {
            let params = GenParams { kind, players, depth, branch, outcomes, pref, max_profiles };
            Ok(io::print(&generate(&params, seed)?))
        }
        Command::Fixtures { action } => fixtures_command(action),
    }
}

fn universe(doc: &Document) -> &Universe {
    match doc {
        Document::Tree(d) => &d.game.universe,
        Document::Dag(d) => &d.game.universe,
        Document::NormalForm(g) => &g.universe,
    }
}

fn tree_only(doc: &Document) -> Result<&Game, Failure> {
    match doc {
        Document::Tree(d) => Ok(&d.game),
        _ => Err(invalid(format!("this command needs a tree game, got a {} document", doc.kind()))),
    }
}

/// One-line rendering of a profile of `doc`'s game.
pub fn profile_text(doc: &Document, s: &Profile) -> String {
    match doc {
        Document::Tree(d) => print_tree(&d.game, Some(s)),
        Document::Dag(d) => dag_profile_text(&d.game, s),
        Document::NormalForm(g) => g.profile_label(s),
    }
}

fn dag_profile_text(g: &DagGame, s: &Profile) -> String {
    (0..g.n_slots())
        .map(|k| {
            let v = g.node_of_slot(k);
            let w = g.succ(v)[s.choice(k) as usize];
            format!("{}->{}", g.nodes()[v].name, g.nodes()[w].name)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn list(doc: &Document, what: &str, profiles: &[Profile]) -> String {
    let mut text = format!("{} {what}\n", profiles.len());
    for s in profiles {
        let _ = writeln!(text, "  {}", profile_text(doc, s));
    }
    text
}

fn ne(doc: &Document) -> Outcome {
    let profiles = match doc {
        Document::Tree(d) => crate::equilibria::brute_force_nash(&d.game)?,
        Document::Dag(d) => dag_nash(&d.game)?,
        Document::NormalForm(g) => nf_nash(g)?,
    };
    Ok(list(doc, "Nash equilibria", &profiles))
}

fn spe(doc: &Document) -> Outcome {
    let report = equilibrium_report(tree_only(doc)?)?;
    Ok(list(doc, "subgame perfect equilibria", &report.spe))
}

fn bi(doc: &Document) -> Outcome {
    match doc {
        Document::Tree(d) => Ok(list(doc, "backward induction outputs", &backward_induction(&d.game)?)),
        Document::Dag(d) => {
            let s = dag_spe_via_linear_extension(&d.game)?;
            Ok(list(doc, "backward induction outputs (linear extension)", &[s]))
        }
        Document::NormalForm(_) => Err(invalid("backward induction needs a tree or DAG game")),
    }
}

struct RunOptions {
    start: Option<Profile>,
    variant: Option<VeryLazyVariant>,
    trials: usize,
    jobs: Option<usize>,
    trace: bool,
}

fn run_command(doc: &Document, config: &RunConfig, opts: &RunOptions) -> Outcome {
    match (doc, opts.variant) {
        (Document::Tree(d), None) => run_trials(doc, &d.game, opts.start.clone().or(d.profile.clone()), config, opts),
        (Document::Dag(d), None) => run_trials(doc, &d.game, opts.start.clone().or(d.profile.clone()), config, opts),
        (Document::Dag(d), Some(variant)) => {
            let sys = VeryLazy { game: &d.game, variant };
            run_trials(doc, &sys, opts.start.clone().or(d.profile.clone()), config, opts)
        }
        (Document::NormalForm(g), None) => run_trials(doc, g, opts.start.clone(), config, opts),
        (_, Some(_)) => Err(invalid("very lazy variants apply to DAG games only")),
    }
}

fn run_trials<D: Dynamics + ScriptTarget>(doc: &Document, sys: &D, start: Option<Profile>, config: &RunConfig, opts: &RunOptions) -> Outcome {
    if opts.trials == 0 {
        return Err(usage("--trials must be positive"));
    }
    let start = start.unwrap_or_else(|| Profile::zeros(sys.degrees().len()));
    let one = |i: usize| {
        let cfg = RunConfig { seed: config.seed.wrapping_add(i as u64), ..config.clone() };
        run_dynamics(sys, &start, &cfg)
    };
    let traces: Vec<RunTrace> = if opts.trials == 1 {
        vec![one(0)?]
    } else {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = opts.jobs {
            builder = builder.num_threads(j.max(1));
        }
        let pool = builder.build().map_err(|e| usage(e.to_string()))?;
        pool.install(|| (0..opts.trials).into_par_iter().map(one).collect::<crate::Result<_>>())?
    };
    let u = sys.universe();
    let mut text = String::new();
    for (i, trace) in traces.iter().enumerate() {
        if opts.trials > 1 {
            let _ = write!(text, "trial {i} (seed {}): ", trace.seed);
        } else {
            let _ = writeln!(text, "start {}", profile_text(doc, &trace.start));
        }
        if opts.trace {
            text.push('\n');
            for (k, step) in trace.steps.iter().enumerate() {
                let movers: Vec<&str> = step.movers.iter().map(|&a| u.player_name(a)).collect();
                let _ = writeln!(text, "  {:>4} {}: {}", k + 1, movers.join("+"), profile_text(doc, &step.profile));
            }
        }
        let _ = writeln!(text, "{}", verdict_line(trace));
        let counts: Vec<String> = u
            .player_ids()
            .map(|a| format!("{} {}", u.player_name(a), trace.step_counts[a.index()]))
            .collect();
        let _ = writeln!(text, "  steps per player: {}", counts.join(", "));
    }
    Ok(text)
}

fn verdict_line(trace: &RunTrace) -> String {
    let n = trace.len();
    match trace.verdict {
        Verdict::TerminatedAtNe => format!("terminated after {n} steps"),
        Verdict::CycleDetected { period, .. } => format!("cycle detected after {n} steps (period {period})"),
        Verdict::StepCapReached => match trace.first_cycle {
            Some((at, period)) => format!("step cap reached after {n} steps (first revisit at step {at}, period {period})"),
            None => format!("step cap reached after {n} steps"),
        },
    }
}

fn relation(mode: StepMode) -> Result<Relation, Failure> {
    match mode {
        StepMode::Plain => Ok(Relation::Plain),
        StepMode::Lazy => Ok(Relation::Lazy),
        StepMode::Sync => Err(invalid("graphs are built for plain or lazy steps")),
    }
}

fn graph(doc: &Document, mode: StepMode, variant: Option<VeryLazyVariant>, dot: Option<&Path>) -> Outcome {
    let relation = relation(mode)?;
    let g = match (doc, variant) {
        (Document::Tree(d), None) => improvement_graph(&d.game, relation)?,
        (Document::Dag(d), None) => improvement_graph(&d.game, relation)?,
        (Document::Dag(d), Some(variant)) => improvement_graph(&VeryLazy { game: &d.game, variant }, relation)?,
        (Document::NormalForm(g), None) => improvement_graph(g, relation)?,
        (_, Some(_)) => return Err(invalid("very lazy variants apply to DAG games only")),
    };
    let mut text = graph_summary(doc, &g);
    if let Some(path) = dot {
        let u = universe(doc);
        let rendered = g.to_dot(|s| profile_text(doc, &g.profile(s)), |a| u.player_name(a).to_string());
        if path == Path::new("-") {
            text.push_str(&rendered);
        } else {
            write_file(path, &rendered)?;
            let _ = writeln!(text, "wrote {}", path.display());
        }
    }
    Ok(text)
}

fn graph_summary(doc: &Document, g: &StateGraph) -> String {
    let mut text = format!("{} states, {} edges, {} sinks\n", g.n_states(), g.n_edges(), g.sinks().len());
    match g.find_cycle() {
        None => {
            let _ = writeln!(text, "acyclic, longest path {}", g.longest_path().unwrap_or(0));
        }
        Some(cycle) => {
            let _ = writeln!(text, "cycle of length {}:", cycle.len());
            for s in cycle {
                let _ = writeln!(text, "  {}", profile_text(doc, &g.profile(s)));
            }
        }
    }
    text
}

fn bound(doc: &Document) -> Outcome {
    let g = tree_only(doc)?;
    let u = &g.universe;
    let deltas = big_delta(g);
    let mut text = String::new();
    for a in u.player_ids() {
        let name = u.player_name(a);
        match (u.max_chain_height(a), step_bound(g, a)) {
            (Ok(h), Ok(b)) => {
                let _ = writeln!(text, "{name}: h {h}, Delta {}, at most {b} lazy steps", deltas[a.index()]);
            }
            _ => {
                let _ = writeln!(text, "{name}: cyclic preference, no bound");
            }
        }
    }
    match global_bound(g) {
        Ok(b) => {
            let _ = writeln!(text, "every lazy run: at most {b} steps ((h-1)(l-1) with l = {})", g.tree.n_leaves());
        }
        Err(_) => text.push_str("every lazy run: no bound (some preference is cyclic)\n"),
    }
    Ok(text)
}

fn delta(doc: &Document, profile: Option<Profile>) -> Outcome {
    let g = tree_only(doc)?;
    let u = &g.universe;
    let deltas = big_delta(g);
    let mut text = String::from("Delta:");
    for a in u.player_ids() {
        let _ = write!(text, " {} {}", u.player_name(a), deltas[a.index()]);
    }
    text.push('\n');
    if let Some(s) = profile.or_else(|| doc.profile().cloned()) {
        let table = small_delta(g, &s);
        let _ = writeln!(text, "delta of {}:", print_tree(g, Some(&s)));
        let names: Vec<&str> = (0..u.n_outcomes()).map(|o| u.outcome_name(crate::OutcomeId::new(o))).collect();
        let label = u.player_ids().map(|a| u.player_name(a).len()).max().unwrap_or(0);
        let width = names.iter().map(|n| n.len()).max().unwrap_or(1).max(2);
        let header: Vec<String> = names.iter().map(|n| format!("{n:>width$}")).collect();
        let _ = writeln!(text, "  {:label$}  {}", "", header.join(" "));
        for a in u.player_ids() {
            let row: Vec<String> = table[a.index()].iter().map(|d| format!("{d:>width$}")).collect();
            let _ = writeln!(text, "  {:label$}: {}", u.player_name(a), row.join(" "));
        }
    }
    Ok(text)
}

fn prefcheck(u: &Universe) -> Outcome {
    let name = |o| u.outcome_name(o).to_string();
    Ok(match check_preference_family(u)? {
        FamilyCheck::Terminating(p) => {
            let blocks: Vec<String> = p
                .blocks
                .iter()
                .zip(&p.split)
                .map(|(b, &split)| {
                    let inner = b.iter().map(|&o| name(o)).collect::<Vec<_>>().join(" ");
                    if split {
                        format!("{{{inner}}}*")
                    } else {
                        format!("{{{inner}}}")
                    }
                })
                .collect();
            format!("terminating: lazy improvement terminates in every DAG game\nblocks (worst first, * = players disagree): {}\n", blocks.join(" < "))
        }
        FamilyCheck::Violating(w) => {
            let (a, b) = (u.player_name(w.a), u.player_name(w.b));
            let (x, y, z) = (name(w.x), name(w.y), name(w.z));
            let pattern = match w.pattern {
                crate::dag::Pattern::Reversed => format!("{x} <{b} {y} <{b} {z}"),
                crate::dag::Pattern::Rotated => format!("{x} <{b} {z} <{b} {y}"),
            };
            format!("violating: some DAG game has a lazy improvement cycle\nwitness: {z} <{a} {y} <{a} {x} and {pattern}\n")
        }
    })
}

fn markov(doc: &Document, p: Rational64, eps: Rational64, dump: Option<&Path>) -> Outcome {
    let g = tree_only(doc)?;
    let chain: ExactChain = build_chain(g, p, eps)?;
    if let Some(path) = dump {
        write_file(path, &chain.dump())?;
    }
    let st = stationary_distribution(&chain, 1e-12, 200)?;
    let mut text = format!(
        "{} states, residual {:.3e}, {} recurrent classes{}\n",
        chain.n_states(),
        st.residual,
        st.recurrent_classes,
        if st.reducible { ", reducible improvement graph" } else { "" }
    );
    for (u, w) in st.pi.iter().enumerate() {
        let s = chain.shape.profile(u);
        let ne = if chain.shape.ne[u] { " NE" } else { "" };
        let _ = writeln!(text, "  {:>3} {:.10} {}{ne}", u, w, print_tree(g, Some(&s)));
    }
    Ok(text)
}

fn stable(doc: &Document, params: &StabilityParams, alpha: Option<Rational64>, seed: u64) -> Outcome {
    let g = tree_only(doc)?;
    let report = stable_profiles(g, params)?;
    let mut text = format!(
        "ladder eps0 = {}, {} levels, threshold {}\n",
        crate::scalar::format_rational(&params.eps0),
        params.levels,
        params.threshold
    );
    for st in &report.states {
        let mark = if st.stable { "stable" } else { "" };
        let ne = if st.is_ne { "NE" } else { "  " };
        let line = format!("  {:>3} {ne} limit {:.6} gap {:.1e} {}  {mark}", st.state, shown(st.limit), st.gap, print_tree(g, Some(&st.profile)));
        let _ = writeln!(text, "{}", line.trim_end());
    }
    let stable: Vec<String> = report.stable().iter().map(|&u| format!("{} ({:.4})", u, shown(report.limit(u)))).collect();
    let _ = writeln!(text, "stable: {}", if stable.is_empty() { "none".to_string() } else { stable.join(", ") });
    if let Some(alpha) = alpha {
        let same = robustness_check(g, params, alpha, seed)?;
        let _ = writeln!(text, "robust under factors in [1, {}]: {}", crate::scalar::format_rational(&alpha), if same { "yes" } else { "no" });
    }
    Ok(text)
}

/// Rounding noise below the printed precision shows as zero, not `-0.000000`.
fn shown(x: f64) -> f64 {
    if x.abs() < 5e-7 {
        0.0
    } else {
        x
    }
}

fn fixtures_command(action: FixtureAction) -> Outcome {
    match action {
        FixtureAction::List => {
            let mut text = String::new();
            for name in fixtures::NAMES {
                let _ = writeln!(text, "{name:<22} {}", fixtures::summary(name).unwrap_or(""));
            }
            Ok(text)
        }
        FixtureAction::Emit { name } => Ok(fixtures::emit(&name)?),
        FixtureAction::Verify { name } => {
            let names = match name {
                Some(n) => vec![n],
                None => fixtures::concrete_names(),
            };
            let mut text = String::new();
            let mut failed = 0;
            for name in names {
                for c in fixtures::verify(&name)? {
                    if !c.ok {
                        failed += 1;
                    }
                    let _ = writeln!(text, "{} {name}: {}", if c.ok { "ok  " } else { "FAIL" }, c.what);
                }
            }
            if failed > 0 {
                Err(invalid(format!("{text}{failed} checks failed")))
            } else {
                Ok(text)
            }
        }
        FixtureAction::Write { dir } => {
            fs::create_dir_all(&dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
            let mut text = String::new();
            for name in fixtures::concrete_names() {
                let path = dir.join(fixtures::file_name(&name));
                write_file(&path, &fixtures::emit(&name)?)?;
                let _ = writeln!(text, "wrote {}", path.display());
            }
            Ok(text)
        }
    }
}
