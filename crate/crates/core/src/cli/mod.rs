//! The `recotree` command line.

pub mod bench;
pub mod files;
pub mod gen;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Cost, EdgeId, Tree};
use crate::mst::minimum_spanning_tree;
use crate::oracle::{brute_force_inc_st, brute_force_rec_st, OracleLimits, RobustOracle};
use crate::rec::{solve_rec_st_with, RecOptions};
use crate::robust::{
    approx_continuous_budget, approx_discrete_budget, evaluate_F, solve_interval, FValue, ScenarioModel,
};
use crate::{inc, rational};
use bench::{BenchParams, BenchSolver};
use files::{Certificate, Exact, InstanceFile, Objective, ParseError, ResultFile, Timing};
use gen::GenParams;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DISCONNECTED: u8 = 3;
pub const EXIT_NO_CERTIFICATE: u8 = 4;
pub const EXIT_ORACLE_CAP: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "recotree", version, about = "Recoverable spanning tree solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the recoverable spanning tree problem with costs C and c.
    SolveRec {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Include the solver event stream.
        #[arg(long)]
        trace: bool,
    },
    /// Solve the incremental problem with costs c around a fixed tree.
    SolveInc {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Comma separated edge ids of the fixed tree (default: MST under C).
        #[arg(long)]
        base: Option<String>,
    },
    /// Solve the robust problem under the instance's scenario model.
    SolveRobust {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the robust objective of a first-stage tree, or re-check a result file.
    Evaluate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Comma separated edge ids (default: MST under C).
        #[arg(long, conflicts_with = "check")]
        tree: Option<String>,
        /// Result file whose objective is recomputed from its trees.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Cross-check the solvers against exhaustive search.
    Oracle {
        /// Check this instance; otherwise generate `count` seeded ones.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        m_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random connected instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        cost_min: Cost,
        #[arg(long, default_value_t = 20)]
        cost_max: Cost,
        /// Largest deviation d (default: cost-max).
        #[arg(long)]
        dev_max: Option<Cost>,
        /// Recovery parameter (default: n / 2).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModelArg::Interval)]
        model: ModelArg,
        #[arg(long, default_value_t = 0)]
        gamma: Cost,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time a solver on generated instances and print CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [20, 40, 80])]
        sizes: Vec<usize>,
        /// Edge counts to sweep for every size (default: edge-factor * n).
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<usize>>,
        #[arg(long, default_value_t = 3)]
        edge_factor: usize,
        /// Recovery parameter (default: n / 2).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BenchSolver::Rec)]
        solver: BenchSolver,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Override the instance's recovery parameter.
    #[arg(long)]
    pub k: Option<usize>,
    /// Override the instance's scenario model.
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    /// Override the instance's budget.
    #[arg(long)]
    pub gamma: Option<Cost>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall time in the result.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Interval,
    BudgetDiscrete,
    BudgetContinuous,
}

impl From<ModelArg> for ScenarioModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Interval => ScenarioModel::Interval,
            ModelArg::BudgetDiscrete => ScenarioModel::DiscreteBudget,
            ModelArg::BudgetContinuous => ScenarioModel::ContinuousBudget,
        }
    }
}

/// A failed command: message for stderr plus its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Disconnected => EXIT_DISCONNECTED,
            Error::TooLarge(_) => EXIT_ORACLE_CAP,
            Error::InvalidRecovery { .. } | Error::InvalidInstance(_) => EXIT_PARSE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("recotree: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::SolveRec { instance, output, trace } => solve_rec(&instance, &output, trace),
        Command::SolveInc { instance, output, base } => solve_inc(&instance, &output, base.as_deref()),
        Command::SolveRobust { instance, output } => solve_robust(&instance, &output),
        Command::Evaluate {
            instance,
            output,
            tree,
            check,
        } => match check {
            Some(path) => check_result(&instance, &path),
            None => evaluate(&instance, &output, tree.as_deref()),
        },
        Command::Oracle {
            instance,
            count,
            seed,
            n_max,
            m_max,
            out,
        } => oracle(instance.as_deref(), count, seed, n_max, m_max, out.as_deref()),
        Command::Gen {
            n,
            m,
            cost_min,
            cost_max,
            dev_max,
            k,
            model,
            gamma,
            seed,
            out,
        } => {
            let params = GenParams {
                n,
                m,
                cost_min,
                cost_max,
                deviation_max: dev_max.unwrap_or(cost_max),
                k: k.unwrap_or(n / 2),
                model: model.into(),
                gamma,
                seed,
            };
            let file = gen::generate(&params).map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
            emit(out.as_deref(), &file.to_json())
        }
        Command::Bench {
            sizes,
            m,
            edge_factor,
            k,
            reps,
            seed,
            solver,
            out,
        } => {
            let rows = bench::run(&BenchParams {
                sizes,
                edges: m,
                edge_factor,
                k,
                reps,
                seed,
                solver,
            })?;
            emit(out.as_deref(), &bench::to_csv(&rows))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(args: &InstanceArgs) -> std::result::Result<InstanceFile, Failure> {
    let mut file = InstanceFile::read(&args.instance)?;
    if let Some(k) = args.k {
        file.k = k;
    }
    if let Some(model) = args.model {
        file.model = model.into();
    }
    if let Some(gamma) = args.gamma {
        file.gamma = gamma;
    }
    file.validate()?;
    Ok(file)
}

fn parse_edge_list(text: &str, file: &InstanceFile) -> std::result::Result<Tree, Failure> {
    let ids = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<EdgeId>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Failure::new(EXIT_PARSE, format!("edge list {text:?}: {e}")))?;
    Tree::new(&file.graph(), ids).map_err(|e| Failure::new(EXIT_PARSE, format!("edge list {text:?}: {e}")))
}

fn finish(mut result: ResultFile, started: Instant, output: &OutputArgs) -> CmdResult {
    if output.timing {
        result.timing = Some(Timing {
            wall_ns: started.elapsed().as_nanos() as u64,
        });
    }
    emit(output.out.as_deref(), &result.to_json())
}

fn f_objective(v: &FValue) -> Objective {
    match v {
        FValue::Exact(q) => Objective::Exact(Exact::from(q)),
        FValue::Bounds { lower, upper } => Objective::Bounds {
            lower: Exact::from(lower),
            upper: Exact::from(upper),
        },
    }
}

fn solve_rec(args: &InstanceArgs, output: &OutputArgs, trace: bool) -> CmdResult {
    let file = load(args)?;
    let started = Instant::now();
    let graph = file.graph();
    let sol = solve_rec_st_with(
        &graph,
        &file.first_costs(),
        &file.nominal_costs(),
        file.k,
        RecOptions { trace },
        &mut (),
    )?;
    let mut result = ResultFile::new("rec-st", &file, &sol.first_stage, Objective::Integer(sol.total_cost));
    result.recovery = Some(sol.recovery.edges().to_vec());
    result.certificate = Some(Certificate::Dual {
        theta: sol.state.theta,
        intersection: sol.state.intersection_size(),
        target: sol.state.target,
        dual_bound: sol.state.dual_bound(),
    });
    if trace {
        result.trace = Some(sol.trace);
    }
    finish(result, started, output)
}

fn solve_inc(args: &InstanceArgs, output: &OutputArgs, base: Option<&str>) -> CmdResult {
    let file = load(args)?;
    let started = Instant::now();
    let graph = file.graph();
    let base = match base {
        Some(text) => parse_edge_list(text, &file)?,
        None => minimum_spanning_tree(&graph, &file.first_costs())?,
    };
    let sol = inc::inc_st(&graph, &file.nominal_costs(), &base, file.k)?;
    let mut result = ResultFile::new("inc-st", &file, &base, Objective::Integer(sol.cost));
    result.recovery = Some(sol.tree.edges().to_vec());
    result.certificate = Some(Certificate::Lagrangian {
        multiplier: sol.multiplier,
        intersection: sol.intersection,
    });
    finish(result, started, output)
}

fn robust_id(model: ScenarioModel) -> &'static str {
    match model {
        ScenarioModel::Interval => "robust-interval",
        ScenarioModel::DiscreteBudget => "robust-budget-discrete",
        ScenarioModel::ContinuousBudget => "robust-budget-continuous",
    }
}

fn solve_robust(args: &InstanceArgs, output: &OutputArgs) -> CmdResult {
    let file = load(args)?;
    let started = Instant::now();
    let inst = file.to_instance();
    inst.graph.ensure_connected()?;
    let id = robust_id(inst.model);
    if inst.model == ScenarioModel::Interval {
        let sol = solve_interval(&inst)?;
        let mut result = ResultFile::new(id, &file, &sol.first_stage, Objective::Integer(sol.worst_case_total));
        result.recovery = Some(sol.recovery.edges().to_vec());
        return finish(result, started, output);
    }
    let cert = match inst.model {
        ScenarioModel::DiscreteBudget => approx_discrete_budget(&inst)?,
        _ => approx_continuous_budget(&inst)?,
    };
    let value = evaluate_F(&cert.first_stage, &inst, &OracleLimits::default())?;
    let mut result = ResultFile::new(id, &file, &cert.first_stage, f_objective(&value));
    result.recovery = Some(cert.recovery.edges().to_vec());
    result.certificate = Some(Certificate::ratio(inst.model, &cert));
    let certified = cert.certified_ratio.is_some();
    finish(result, started, output)?;
    if !certified {
        return Err(Failure::new(EXIT_NO_CERTIFICATE, "no finite approximation ratio can be certified"));
    }
    Ok(())
}

fn evaluate(args: &InstanceArgs, output: &OutputArgs, tree: Option<&str>) -> CmdResult {
    let file = load(args)?;
    let started = Instant::now();
    let inst = file.to_instance();
    let x = match tree {
        Some(text) => parse_edge_list(text, &file)?,
        None => minimum_spanning_tree(&inst.graph, &inst.first_cost)?,
    };
    let value = evaluate_F(&x, &inst, &OracleLimits::default())?;
    finish(ResultFile::new("evaluate", &file, &x, f_objective(&value)), started, output)
}

/// Recomputes the objective a result file claims from its own trees.
pub fn reevaluate(file: &InstanceFile, result: &ResultFile) -> std::result::Result<Objective, Failure> {
    let graph = file.graph();
    let bad = |what: &str| Failure::new(EXIT_FAILURE, format!("result file: {what}"));
    let x = Tree::new(&graph, result.first_stage.iter().copied()).map_err(|e| bad(&e.to_string()))?;
    let recovery = || -> std::result::Result<Tree, Failure> {
        let ids = result.recovery.as_ref().ok_or_else(|| bad("missing recovery tree"))?;
        let y = Tree::new(&graph, ids.iter().copied()).map_err(|e| bad(&e.to_string()))?;
        if x.intersection_size(&y) + file.k < graph.tree_size() {
            return Err(bad("recovery tree changes more than k edges"));
        }
        Ok(y)
    };
    let inst = file.to_instance();
    Ok(match result.solver.as_str() {
        "rec-st" => Objective::Integer(x.cost(&inst.first_cost) + recovery()?.cost(&inst.nominal)),
        "inc-st" => Objective::Integer(recovery()?.cost(&inst.nominal)),
        "robust-interval" => Objective::Integer(x.cost(&inst.first_cost) + recovery()?.cost(&inst.upper_costs())),
        "robust-budget-discrete" | "robust-budget-continuous" | "evaluate" => {
            f_objective(&evaluate_F(&x, &inst, &OracleLimits::default())?)
        }
        other => return Err(bad(&format!("unknown solver {other:?}"))),
    })
}

fn check_result(args: &InstanceArgs, path: &Path) -> CmdResult {
    let file = load(args)?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))?;
    let result: ResultFile = serde_json::from_str(&text).map_err(|e| {
        Failure::new(
            EXIT_PARSE,
            format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()),
        )
    })?;
    if result.instance_digest != file.digest() {
        return Err(Failure::new(EXIT_FAILURE, "MISMATCH instance digest"));
    }
    let recomputed = reevaluate(&file, &result)?;
    if recomputed != result.objective {
        return Err(Failure::new(
            EXIT_FAILURE,
            format!("MISMATCH objective: file has {:?}, recomputed {:?}", result.objective, recomputed),
        ));
    }
    println!("OK {} objective reproduced", result.solver);
    Ok(())
}

/// Parameters of the `seed`-th oracle instance.
pub fn oracle_params(seed: u64, n_max: usize, m_max: usize) -> GenParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=n_max.max(3));
    let m = rng.gen_range(n - 1..=m_max.clamp(n - 1, n * (n - 1) / 2));
    let model = [
        ScenarioModel::Interval,
        ScenarioModel::DiscreteBudget,
        ScenarioModel::ContinuousBudget,
    ][(seed % 3) as usize];
    let gamma = match model {
        ScenarioModel::Interval => 0,
        ScenarioModel::DiscreteBudget => rng.gen_range(0..=3.min(m as Cost)),
        ScenarioModel::ContinuousBudget => rng.gen_range(0..=40),
    };
    GenParams {
        n,
        m,
        cost_min: rng.gen_range(0..=1),
        cost_max: 20,
        deviation_max: 20,
        k: rng.gen_range(0..n),
        model,
        gamma,
        seed,
    }
}

/// Runs every solver on one instance against exhaustive search and appends
/// one line per check. Returns the number of mismatches.
pub fn oracle_check(label: &str, file: &InstanceFile, report: &mut String) -> std::result::Result<usize, Failure> {
    let inst = file.to_instance();
    let graph = &inst.graph;
    graph.ensure_connected()?;
    let mut mismatches = 0;
    let mut line = |ok: bool, text: String| {
        if !ok {
            mismatches += 1;
        }
        writeln!(report, "{} {label} {text}", if ok { "MATCH" } else { "MISMATCH" }).unwrap();
    };

    let fast = crate::rec::solve_rec_st(graph, &inst.first_cost, &inst.nominal, inst.k)?;
    let slow = brute_force_rec_st(graph, &inst.first_cost, &inst.nominal, inst.k)?;
    line(
        fast.total_cost == slow.cost,
        format!("rec-st k={} solver={} oracle={}", inst.k, fast.total_cost, slow.cost),
    );

    let base = minimum_spanning_tree(graph, &inst.first_cost)?;
    let fast = inc::inc_st(graph, &inst.nominal, &base, inst.k)?;
    let (_, slow) = brute_force_inc_st(graph, &inst.nominal, &base, inst.k)?;
    line(fast.cost == slow, format!("inc-st k={} solver={} oracle={slow}", inst.k, fast.cost));

    let oracle = RobustOracle::new(&inst)?;
    let (_, best) = oracle.rob_rec()?;
    match inst.model {
        ScenarioModel::Interval => {
            let sol = solve_interval(&inst)?;
            line(
                rational(sol.worst_case_total) == best,
                format!("robust-interval solver={} oracle={best}", sol.worst_case_total),
            );
        }
        model => {
            let cert = match model {
                ScenarioModel::DiscreteBudget => approx_discrete_budget(&inst)?,
                _ => approx_continuous_budget(&inst)?,
            };
            let achieved = oracle.f_value(&cert.first_stage)?;
            let evaluated = evaluate_F(&cert.first_stage, &inst, &OracleLimits::default())?;
            let agrees = evaluated.exact() == Some(&achieved);
            let (ok, ratio) = match &cert.certified_ratio {
                Some(r) => (achieved <= r * &best, r.to_string()),
                None => (true, "none".to_string()),
            };
            line(
                ok && agrees,
                format!(
                    "{} gamma={} F={achieved} optimum={best} ratio={ratio}",
                    robust_id(model),
                    inst.gamma
                ),
            );
        }
    }
    Ok(mismatches)
}

fn oracle(instance: Option<&Path>, count: u64, seed: u64, n_max: usize, m_max: usize, out: Option<&Path>) -> CmdResult {
    let mut report = String::new();
    let mut mismatches = 0;
    let mut checked = 0;
    match instance {
        Some(path) => {
            let file = InstanceFile::read(path)?;
            mismatches += oracle_check("instance", &file, &mut report)?;
            checked += 1;
        }
        None => {
            for s in seed..seed + count {
                let file = gen::generate(&oracle_params(s, n_max, m_max))?;
                mismatches += oracle_check(&format!("seed={s}"), &file, &mut report)?;
                checked += 1;
            }
        }
    }
    writeln!(report, "checked {checked} instances, {mismatches} mismatches").unwrap();
    emit(out, &report)?;
    if mismatches > 0 {
        return Err(Failure::new(EXIT_FAILURE, format!("{mismatches} mismatches")));
    }
    Ok(())
}
