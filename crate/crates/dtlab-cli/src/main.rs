//! Command-line front end: generate instances, run learners and testers
//! against function files, measure distances, and drive seeded batch
//! suites. Reports are single-line JSON unless --pretty is given.
//!
//! Exit codes: 0 accept/success, 1 reject/not in class, 2 inconclusive or
//! budget exhausted, 3 usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dtlab::boolfn::{
    distance, DistanceMode, Distribution, Oracle, OracleSession, TruthTable,
};
use dtlab::io::{self, FunctionRepr};
use dtlab::learners::{self, DtdsParams};
use dtlab::reductions;
use dtlab::rng::{RngFactory, StreamDomain};
use dtlab::testers::{
    test_depth_appendix, test_depth_distfree, test_size_uniform, AppendixTestParams, Decision,
    DepthTestParams, SizeTestParams, TesterReport,
};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "dtlab", version, about = "decision-tree learning and testing lab")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a function file.
    Gen(GenArgs),
    /// Run a learner against a function file.
    Learn(LearnArgs),
    /// Run a tester against a function file.
    Test(TestArgs),
    /// Distance between two function files under a distribution.
    Distance(DistanceArgs),
    /// Run seeded trials from a config file and aggregate them.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long)]
    n: usize,
    /// Depth bound for tree-depth.
    #[arg(long)]
    depth: Option<u32>,
    /// Leaf count for tree-size.
    #[arg(long)]
    size: Option<u64>,
    /// Number of parity variables.
    #[arg(long)]
    k: Option<usize>,
    /// Degree cap for poly.
    #[arg(long)]
    degree: Option<usize>,
    /// Monomial count for poly.
    #[arg(long)]
    monomials: Option<usize>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    TreeDepth,
    TreeSize,
    Parity,
    Table,
    Poly,
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long = "fn")]
    function: PathBuf,
    /// Distribution file; uniform when omitted.
    #[arg(long)]
    dist: Option<PathBuf>,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long)]
    size: Option<u64>,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    budget: Option<u64>,
    /// Where to write the hypothesis function file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    /// Minimum consistent tree over the whole cube of the loaded table.
    Consis,
    /// Proper PAC for depth+size trees over all variables.
    Dtds,
    /// Proper PAC for depth+size trees behind the zero-projection.
    DtdsReduced,
    /// Proper PAC for size-bounded trees, uniform distribution.
    DtsUniform,
    /// Uniform size learner behind the zero-projection.
    DtsUniformReduced,
    /// Bounded-splits search with a non-proper size guarantee.
    Nonproper,
    /// Non-proper search behind the zero-projection.
    NonproperReduced,
    /// Exact identification of depth+size trees by membership queries.
    ExactDtds,
    /// Exact identification through a verified universal set.
    ExactUniversal,
}

#[derive(Args)]
struct TestArgs {
    #[arg(long, value_enum)]
    tester: Tester,
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long)]
    dist: Option<PathBuf>,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long)]
    size: Option<u64>,
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    reduced_constants: bool,
    /// Override the size tester's walk step cap
    #[arg(long)]
    step_cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Tester {
    /// Route-based depth tester, any example distribution.
    DepthDf,
    /// Walk-based size tester, uniform distribution only.
    SizeU,
    /// Learn-then-walk depth tester.
    DepthAppendix,
    /// Depth+size tester assembled from the projected learner.
    ByLearning,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long)]
    other: PathBuf,
    #[arg(long)]
    dist: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version output keeps exit 0.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(3);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Learn(a) => cmd_learn(a),
        Cmd::Test(a) => cmd_test(a),
        Cmd::Distance(a) => cmd_distance(a),
        Cmd::Suite(a) => cmd_suite(a),
    }
}

fn need<T: Copy>(opt: Option<T>, flag: &str) -> anyhow::Result<T> {
    opt.ok_or_else(|| anyhow::anyhow!("missing required flag --{flag} for this mode"))
}

fn generate(kind: GenKind, n: usize, a: &GenArgs, seed: u64) -> anyhow::Result<FunctionRepr> {
    let mut rng = RngFactory::new(seed).stream(StreamDomain::Generator, 0);
    Ok(match kind {
        GenKind::TreeDepth => {
            let d = need(a.depth, "depth")?;
            FunctionRepr::Tree(dtlab::gen::random_depth_tree(n, d, &mut rng))
        }
        GenKind::TreeSize => {
            let s = need(a.size, "size")?;
            FunctionRepr::Tree(dtlab::gen::random_size_tree(n, s, &mut rng))
        }
        GenKind::Parity => {
            let k = need(a.k, "k")?;
            anyhow::ensure!(k <= n, "parity needs k <= n");
            FunctionRepr::Poly(dtlab::gen::parity(n, k))
        }
        GenKind::Table => {
            anyhow::ensure!(n <= 24, "truth tables are capped at 24 variables");
            FunctionRepr::Table(dtlab::gen::random_truth_table(n, &mut rng))
        }
        GenKind::Poly => {
            let d = need(a.degree, "degree")?;
            let m = need(a.monomials, "monomials")?;
            FunctionRepr::Poly(dtlab::gen::random_poly(n, d, m, &mut rng))
        }
    })
}

fn cmd_gen(a: GenArgs) -> anyhow::Result<u8> {
    let f = generate(a.kind, a.n, &a, a.seed)?;
    io::save_function(&a.out, &f, a.pretty)?;
    Ok(0)
}

fn open_session(
    path: &Path,
    dist: &Option<PathBuf>,
    seed: u64,
    budget: Option<u64>,
) -> anyhow::Result<(OracleSession, usize)> {
    let f = io::load_function(path)?;
    let n = f.n();
    let d = match dist {
        None => Distribution::uniform(n),
        Some(p) => io::load_distribution(p, n)?,
    };
    let rng = RngFactory::new(seed).stream(StreamDomain::Session, 0);
    let session = OracleSession::new(f.into_arc(), d, rng).with_budget(budget);
    Ok((session, n))
}

#[derive(Serialize)]
struct LearnReport {
    algo: String,
    outcome: String,
    reason: String,
    queries: dtlab::boolfn::QueryCounts,
    seed: u64,
    params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>, pretty: bool) -> anyhow::Result<()> {
    let text = if pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    };
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => {
            use std::io::Write;
            // tolerate downstream consumers closing the pipe early
            if let Err(e) = writeln!(std::io::stdout(), "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn cmd_learn(a: LearnArgs) -> anyhow::Result<u8> {
    use dtlab::Error;
    let (mut o, n) = open_session(&a.function, &a.dist, a.seed, a.budget)?;
    let uniform_only = matches!(a.algo, Algo::DtsUniform | Algo::DtsUniformReduced);
    if uniform_only && a.dist.is_some() {
        anyhow::bail!("this learner is defined for the uniform distribution; drop --dist");
    }
    let started = Instant::now();
    let result: dtlab::Result<dtlab::boolfn::DecisionTree> = match a.algo {
        Algo::Consis => {
            anyhow::ensure!(n <= 16, "consis over the whole cube needs n <= 16");
            let table = TruthTable::from_boolfn(&io::load_function(&a.function)?);
            learners::min_size_from_truth_table(&table).map(|(_, t)| t)
        }
        Algo::Dtds => {
            let c = DtdsParams::new(need(a.depth, "depth")?, need(a.size, "size")?);
            learners::learn_dtds_distfree(&mut o, &c, a.eps, a.delta)
        }
        Algo::DtdsReduced => {
            let c = DtdsParams::new(need(a.depth, "depth")?, need(a.size, "size")?);
            learners::learn_dtds_reduced(&mut o, &c, a.eps, a.delta)
        }
        Algo::DtsUniform => {
            learners::learn_dts_uniform(&mut o, need(a.size, "size")?, a.eps, a.delta)
        }
        Algo::DtsUniformReduced => {
            learners::learn_dts_uniform_reduced(&mut o, need(a.size, "size")?, a.eps, a.delta)
        }
        Algo::Nonproper => {
            learners::learn_nonproper_pac(&mut o, need(a.size, "size")?, a.eps, a.delta)
        }
        Algo::NonproperReduced => {
            learners::learn_nonproper_reduced(&mut o, need(a.size, "size")?, a.eps, a.delta)
        }
        Algo::ExactDtds => {
            let c = DtdsParams::new(need(a.depth, "depth")?, need(a.size, "size")?);
            learners::exact_learn_dtds(&mut o, &c, a.delta)
        }
        Algo::ExactUniversal => {
            let c = DtdsParams::new(need(a.depth, "depth")?, need(a.size, "size")?);
            let mut urng = RngFactory::new(a.seed).stream(StreamDomain::Universal, 0);
            learners::exact_learn_universal(&mut o, &c, a.delta, &mut urng)
        }
    };
    let elapsed = started.elapsed().as_millis() as u64;
    let mut report = LearnReport {
        algo: algo_tag(a.algo).to_string(),
        outcome: "learned".into(),
        reason: String::new(),
        queries: o.counts(),
        seed: a.seed,
        params: serde_json::json!({
            "depth": a.depth, "size": a.size, "eps": a.eps, "delta": a.delta,
            "budget": a.budget,
        }),
        elapsed_ms: a.timing.then_some(elapsed),
    };
    let code = match result {
        Ok(tree) => {
            if let Some(out) = &a.out {
                io::save_function(out, &FunctionRepr::Tree(tree), a.pretty)?;
            }
            0
        }
        Err(Error::NotInClass(msg)) => {
            report.outcome = "not_in_class".into();
            report.reason = msg;
            1
        }
        Err(Error::BudgetExhausted { budget, bb, rex }) => {
            report.outcome = "inconclusive".into();
            report.reason = format!("query budget {budget} exhausted");
            report.queries = dtlab::boolfn::QueryCounts { bb, rex };
            2
        }
        Err(other) => return Err(other.into()),
    };
    emit(&report, &None, a.pretty)?;
    Ok(code)
}

fn algo_tag(a: Algo) -> &'static str {
    match a {
        Algo::Consis => "consis",
        Algo::Dtds => "dtds",
        Algo::DtdsReduced => "dtds-reduced",
        Algo::DtsUniform => "dts-uniform",
        Algo::DtsUniformReduced => "dts-uniform-reduced",
        Algo::Nonproper => "nonproper",
        Algo::NonproperReduced => "nonproper-reduced",
        Algo::ExactDtds => "exact-dtds",
        Algo::ExactUniversal => "exact-universal",
    }
}

#[allow(clippy::too_many_arguments)]
fn run_tester(
    tester: Tester,
    o: &mut OracleSession,
    depth: Option<u32>,
    size: Option<u64>,
    eps: f64,
    delta: f64,
    seed: u64,
    reduced: bool,
    step_cap: Option<usize>,
    uniform: bool,
) -> anyhow::Result<TesterReport> {
    Ok(match tester {
        Tester::DepthDf => {
            let p = DepthTestParams::new(need(depth, "depth")?, eps, delta);
            test_depth_distfree(o, &p, seed)?
        }
        Tester::SizeU => {
            anyhow::ensure!(uniform, "the size tester is defined under the uniform distribution");
            let mut p = SizeTestParams::new(need(size, "size")?, eps, delta);
            if reduced {
                p = p.reduced();
            }
            if let Some(cap) = step_cap {
                p = p.with_step_cap(cap);
            }
            test_size_uniform(o, &p, &RngFactory::new(seed))?
        }
        Tester::DepthAppendix => {
            let p = AppendixTestParams::new(need(depth, "depth")?, eps, delta);
            test_depth_appendix(o, &p, &RngFactory::new(seed))?
        }
        Tester::ByLearning => {
            let c = DtdsParams::new(need(depth, "depth")?, need(size, "size")?);
            let cap = c.relevant_cap();
            let learner: reductions::ProjectedLearner<'_, OracleSession, dtlab::boolfn::DecisionTree> =
                Box::new(move |zo, proj, eps, delta| {
                    let n = zo.n();
                    let m = learners::occam_sample_size(
                        eps,
                        delta,
                        learners::tree_class_log2(proj.found_relevant.len().max(2), c.size),
                    );
                    let examples = learners::draw_examples(zo, m)?;
                    let allowed: Vec<u32> = proj.found_relevant.iter().copied().collect();
                    Ok(learners::consis_over(&examples, n, c.depth, &allowed)
                        .filter(|t| t.size() <= c.size))
                });
            reductions::tester_from_learner(o, "by_learning", cap, eps, delta, seed, learner)?
        }
    })
}

fn cmd_test(a: TestArgs) -> anyhow::Result<u8> {
    let (mut o, _) = open_session(&a.function, &a.dist, a.seed, a.budget)?;
    let started = Instant::now();
    let mut report = run_tester(
        a.tester,
        &mut o,
        a.depth,
        a.size,
        a.eps,
        a.delta,
        a.seed,
        a.reduced_constants,
        a.step_cap,
        a.dist.is_none(),
    )?;
    if a.timing {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    emit(&report, &a.out, a.pretty)?;
    Ok(report.decision.exit_code() as u8)
}

fn cmd_distance(a: DistanceArgs) -> anyhow::Result<u8> {
    let f = io::load_function(&a.function)?;
    let g = io::load_function(&a.other)?;
    let n = f.n();
    let d = match &a.dist {
        None => Distribution::uniform(n),
        Some(p) => io::load_distribution(p, n)?,
    };
    let mode = match a.mode {
        Mode::Exact => DistanceMode::Exact,
        Mode::Sampled => DistanceMode::Sampled { samples: a.samples },
    };
    let mut rng = RngFactory::new(a.seed).stream(StreamDomain::Session, 0);
    let value = distance(f.as_boolfn(), g.as_boolfn(), &d, mode, &mut rng)?;
    let label = match a.mode {
        Mode::Exact => "exact",
        Mode::Sampled => "sampled",
    };
    emit(
        &serde_json::json!({ "distance": value, "mode": label }),
        &None,
        a.pretty,
    )?;
    Ok(0)
}

#[derive(Deserialize)]
struct SuiteConfig {
    tester: Tester,
    gen: GenSpec,
    #[serde(default)]
    params: SuiteParams,
    trials: u64,
    seed: u64,
    #[serde(default)]
    budget: Option<u64>,
}

#[derive(Deserialize)]
struct GenSpec {
    kind: String,
    n: usize,
    #[serde(default)]
    depth: Option<u32>,
    #[serde(default)]
    size: Option<u64>,
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    degree: Option<usize>,
    #[serde(default)]
    monomials: Option<usize>,
}

#[derive(Deserialize, Default)]
struct SuiteParams {
    #[serde(default)]
    depth: Option<u32>,
    #[serde(default)]
    size: Option<u64>,
    #[serde(default = "default_eps")]
    eps: f64,
    #[serde(default = "default_delta")]
    delta: f64,
    #[serde(default)]
    reduced_constants: bool,
    #[serde(default)]
    step_cap: Option<usize>,
}

fn default_eps() -> f64 {
    0.25
}

fn default_delta() -> f64 {
    0.1
}

#[derive(Serialize)]
struct TrialSummary {
    trial: u64,
    seed: u64,
    decision: Decision,
    bb: u64,
    rex: u64,
}

#[derive(Serialize)]
struct SuiteReport {
    trials: u64,
    accept: u64,
    reject: u64,
    inconclusive: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    accept_rate: Option<f64>,
    queries_bb: Quantiles,
    queries_rex: Quantiles,
    per_trial: Vec<TrialSummary>,
}

#[derive(Serialize, Default)]
struct Quantiles {
    p50: u64,
    p90: u64,
    max: u64,
}

fn quantiles(mut xs: Vec<u64>) -> Quantiles {
    if xs.is_empty() {
        return Quantiles::default();
    }
    xs.sort_unstable();
    let at = |q: f64| xs[((xs.len() - 1) as f64 * q).round() as usize];
    Quantiles {
        p50: at(0.5),
        p90: at(0.9),
        max: *xs.last().unwrap(),
    }
}

fn gen_from_spec(spec: &GenSpec, rng: &mut dtlab::rng::ChaCha8Rng) -> anyhow::Result<FunctionRepr> {
    Ok(match spec.kind.as_str() {
        "tree-depth" => FunctionRepr::Tree(dtlab::gen::random_depth_tree(
            spec.n,
            spec.depth.ok_or_else(|| anyhow::anyhow!("gen.depth missing"))?,
            rng,
        )),
        "tree-size" => FunctionRepr::Tree(dtlab::gen::random_size_tree(
            spec.n,
            spec.size.ok_or_else(|| anyhow::anyhow!("gen.size missing"))?,
            rng,
        )),
        "parity" => FunctionRepr::Poly(dtlab::gen::parity(
            spec.n,
            spec.k.ok_or_else(|| anyhow::anyhow!("gen.k missing"))?,
        )),
        "table" => FunctionRepr::Table(dtlab::gen::random_truth_table(spec.n, rng)),
        "poly" => FunctionRepr::Poly(dtlab::gen::random_poly(
            spec.n,
            spec.degree.ok_or_else(|| anyhow::anyhow!("gen.degree missing"))?,
            spec.monomials.ok_or_else(|| anyhow::anyhow!("gen.monomials missing"))?,
            rng,
        )),
        other => anyhow::bail!("unknown generator kind {other:?}"),
    })
}

fn cmd_suite(a: SuiteArgs) -> anyhow::Result<u8> {
    let cfg: SuiteConfig = serde_json::from_str(&std::fs::read_to_string(&a.config)?)?;
    let mut per_trial = Vec::new();
    let mut bb = Vec::new();
    let mut rex = Vec::new();
    let (mut accept, mut reject, mut inconclusive) = (0u64, 0u64, 0u64);
    for trial in 0..cfg.trials {
        let trial_seed = cfg.seed.wrapping_add(trial);
        let rf = RngFactory::new(trial_seed);
        let f = gen_from_spec(&cfg.gen, &mut rf.stream(StreamDomain::Generator, 0))?;
        let n = f.n();
        let mut o = OracleSession::new(
            f.into_arc(),
            Distribution::uniform(n),
            rf.stream(StreamDomain::Session, 0),
        )
        .with_budget(cfg.budget);
        let report = run_tester(
            cfg.tester,
            &mut o,
            cfg.params.depth,
            cfg.params.size,
            cfg.params.eps,
            cfg.params.delta,
            trial_seed,
            cfg.params.reduced_constants,
            cfg.params.step_cap,
            true,
        )?;
        match report.decision {
            Decision::Accept => accept += 1,
            Decision::Reject => reject += 1,
            Decision::Inconclusive => inconclusive += 1,
        }
        bb.push(report.queries.bb);
        rex.push(report.queries.rex);
        per_trial.push(TrialSummary {
            trial,
            seed: trial_seed,
            decision: report.decision,
            bb: report.queries.bb,
            rex: report.queries.rex,
        });
    }
    let report = SuiteReport {
        trials: cfg.trials,
        accept,
        reject,
        inconclusive,
        accept_rate: (cfg.trials > 0).then(|| accept as f64 / cfg.trials as f64),
        queries_bb: quantiles(bb),
        queries_rex: quantiles(rex),
        per_trial,
    };
    emit(&report, &a.out, a.pretty)?;
    Ok(0)
}
