//! Command-line front end. `run` returns the process exit status.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bounds::{instance_id, verify_bounds, RowKind};
use crate::error::{SearchBudget, SolveError};
use crate::exact::{chi_e, nu_w, tau_w};
use crate::family::{Point, WeightSystem};
use crate::generators::{gen_length_threshold_capped, gen_random, gen_walecki, RandomFamilySpec};
use crate::harness::{load_store, replay_witness, run_search, store_dir, write_store, SearchConfig, Witness};
use crate::instance::Instance;
use crate::lp::{chi_star_e, is_balanced, tau_star_w, Balance, GroundSet};
use crate::rational::{display, to_pq};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dinterval", version, about = "Exact invariants and bounds for d-interval hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute invariants with witnesses.
    Solve(SolveArgs),
    /// Check every bound; exit 1 if a theorem row fails.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print a generated instance as JSON.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Random search for large conjecture ratios.
    Search {
        #[arg(long)]
        config: PathBuf,
        /// Witness store directory (overrides DINTERVAL_STORE and the config).
        #[arg(long)]
        store: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the invariants of stored witnesses.
    Replay {
        /// A witness file or store directory (default: the store).
        path: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    Walecki {
        #[arg(long)]
        d: usize,
    },
    Threshold {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        granularity: u64,
        #[arg(long, default_value_t = 20_000)]
        max_edges: u128,
    },
    Random {
        /// JSON file with the random family parameters.
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Node limit for the exhaustive solvers.
    #[arg(long)]
    max_nodes: Option<u64>,
}

impl BudgetArgs {
    fn budget(self) -> SearchBudget {
        self.max_nodes.map(SearchBudget::with_max_nodes).unwrap_or_default()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Ground {
    Covered,
    Declared,
}

#[derive(Args, Debug)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long)]
    nu: bool,
    #[arg(long)]
    tau: bool,
    #[arg(long)]
    tau_star: bool,
    #[arg(long)]
    nu_w: bool,
    #[arg(long)]
    tau_w: bool,
    #[arg(long)]
    tau_star_w: bool,
    #[arg(long)]
    chi_e: bool,
    #[arg(long)]
    chi_star_e: bool,
    #[arg(long)]
    balanced: bool,
    /// Everything (the default when no flag is given).
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Ground::Covered)]
    ground: Ground,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Failure {
        Failure { code: EXIT_INPUT, message: message.to_string() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Failure {
        let code = match e {
            SolveError::BudgetExceeded { .. } => EXIT_BUDGET,
            SolveError::Invalid(_) | SolveError::Precondition(_) => EXIT_INPUT,
            _ => EXIT_VIOLATION,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(&a, out),
        Command::Verify { file, json, budget } => verify(&file, json, budget.budget(), out),
        Command::Gen(g) => generate(g, out),
        Command::Search { config, store, json } => search(&config, store.as_deref(), json, out, err),
        Command::Replay { path, json, budget } => replay(path.as_deref(), json, budget.budget(), out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(file: &Path) -> Result<Instance, Failure> {
    Instance::from_path(file).map_err(Failure::input)
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure { code: EXIT_INPUT, message: format!("writing output: {e}") })?;
    Ok(EXIT_OK)
}

fn points_json<V: Into<Value> + Clone>(m: impl IntoIterator<Item = (Point, V)>) -> Value {
    Value::Array(
        m.into_iter()
            .map(|(p, v)| json!({"line": p.line, "pos": p.pos, "value": v.into()}))
            .collect(),
    )
}

fn points_text<V: std::fmt::Display>(m: impl IntoIterator<Item = (Point, V)>) -> String {
    let parts: Vec<String> = m.into_iter().map(|(p, v)| format!("{p}×{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn solve(a: &SolveArgs, out: &mut dyn Write) -> Outcome {
    let inst = load(&a.file)?;
    let h = &inst.family;
    let w = inst.weights_or_unit();
    let unit = WeightSystem::unit(h.len());
    let budget = a.budget.budget();
    let none = !(a.nu || a.tau || a.tau_star || a.nu_w || a.tau_w || a.tau_star_w || a.chi_e || a.chi_star_e || a.balanced);
    let all = a.all || none;

    let mut obj = Map::new();
    let mut text = String::new();
    let id = instance_id(&inst);
    let form = if h.separated { "separated" } else { "single line" };
    let _ = writeln!(text, "instance {id}: d={} ({form}), {} edges", h.d, h.len());
    obj.insert("instance_id".into(), json!(id));

    let mut matching = |name: &str, ws: &WeightSystem, text: &mut String| -> Result<(), Failure> {
        let (v, m) = nu_w(h, ws, &budget)?;
        let _ = writeln!(text, "{name} = {v}  matching {:?}", m.edge_indices);
        obj.insert(name.into(), json!({"value": v, "matching": m.edge_indices}));
        Ok(())
    };
    if all || a.nu {
        matching("nu", &unit, &mut text)?;
    }
    if all || a.nu_w {
        matching("nu_w", &w, &mut text)?;
    }
    let mut cover = |name: &str, ws: &WeightSystem, text: &mut String| -> Result<(), Failure> {
        let (v, c) = tau_w(h, ws, &budget)?;
        let _ = writeln!(text, "{name} = {v}  cover {}", points_text(c.values.iter().map(|(p, n)| (*p, *n))));
        obj.insert(name.into(), json!({"value": v, "cover": points_json(c.values.clone())}));
        Ok(())
    };
    if all || a.tau {
        cover("tau", &unit, &mut text)?;
    }
    if all || a.tau_w {
        cover("tau_w", &w, &mut text)?;
    }
    let mut fractional = |name: &str, ws: &WeightSystem, text: &mut String| -> Result<(), Failure> {
        let s = tau_star_w(h, ws)?;
        let cover = s.cover.values.iter().map(|(p, v)| (*p, display(v)));
        let _ = writeln!(text, "{name} = {}  cover {}", display(&s.value), points_text(cover));
        let m: Vec<String> = s.matching.values.iter().map(display).collect();
        let _ = writeln!(text, "  fractional matching [{}]", m.join(", "));
        obj.insert(
            name.into(),
            json!({
                "value": to_pq(&s.value),
                "cover": points_json(s.cover.values.iter().map(|(p, v)| (*p, to_pq(v)))),
                "matching": s.matching.values.iter().map(to_pq).collect::<Vec<_>>(),
            }),
        );
        Ok(())
    };
    if all || a.tau_star {
        fractional("tau_star", &unit, &mut text)?;
    }
    if all || a.tau_star_w {
        fractional("tau_star_w", &w, &mut text)?;
    }
    if all || a.chi_e {
        let c = chi_e(h, &budget)?;
        let _ = writeln!(text, "chi_e = {}  colors {:?}", c.colors, c.assignment);
        obj.insert("chi_e".into(), json!({"value": c.colors, "assignment": c.assignment}));
    }
    if all || a.chi_star_e {
        let c = chi_star_e(h, &budget)?;
        let _ = writeln!(text, "chi_star_e = {}", display(&c.value));
        for (m, f) in c.matchings.iter().zip(&c.weights) {
            let _ = writeln!(text, "  {} × {:?}", display(f), m);
        }
        obj.insert(
            "chi_star_e".into(),
            json!({
                "value": to_pq(&c.value),
                "matchings": c.matchings,
                "weights": c.weights.iter().map(to_pq).collect::<Vec<_>>(),
            }),
        );
    }
    if all || a.balanced {
        let ground = match a.ground {
            Ground::Covered => GroundSet::Covered,
            Ground::Declared => GroundSet::Declared,
        };
        let b = is_balanced(h, ground)?;
        match &b {
            Balance::Balanced { matching } => {
                let m: Vec<String> = matching.values.iter().map(display).collect();
                let _ = writeln!(text, "balanced = true  perfect fractional matching [{}]", m.join(", "));
            }
            Balance::Unbalanced { .. } => {
                let _ = writeln!(text, "balanced = false  (Farkas certificate in --json output)");
            }
        }
        obj.insert("balanced".into(), serde_json::to_value(&b).expect("balance serializes"));
    }
    if a.json {
        emit(out, &format!("{}\n", serde_json::to_string_pretty(&Value::Object(obj)).expect("json")))
    } else {
        emit(out, &text)
    }
}

fn verify(file: &Path, json: bool, budget: SearchBudget, out: &mut dyn Write) -> Outcome {
    let inst = load(file)?;
    let report = verify_bounds(&inst, &budget);
    if json {
        emit(out, &format!("{}\n", serde_json::to_string_pretty(&report).expect("json")))?;
    } else {
        let mut text = String::new();
        let form = if report.separated { "separated" } else { "single line" };
        let _ = writeln!(text, "instance {}: d={} ({form})", report.instance_id, report.d);
        for (k, v) in &report.invariants.values {
            let _ = writeln!(text, "  {k} = {}", display(v));
        }
        for (k, e) in &report.invariants.errors {
            let _ = writeln!(text, "  {k}: {e}");
        }
        for r in &report.rows {
            let kind = match r.kind {
                RowKind::Theorem => "theorem",
                RowKind::Conjecture => "conjecture",
            };
            let verdict = match (r.holds, &r.error) {
                (_, Some(e)) => format!("not evaluated ({e})"),
                (Some(true), _) => "ok".into(),
                _ => "VIOLATED".into(),
            };
            let sides = match (&r.lhs, &r.rhs, &r.slack) {
                (Some(l), Some(rh), Some(s)) => format!("{} <= {} (slack {})", display(l), display(rh), display(s)),
                _ => String::new(),
            };
            let _ = writeln!(text, "[{kind}] {}: {sides} {verdict}", r.name);
        }
        emit(out, &text)?;
    }
    if !report.theorems_hold() {
        return Ok(EXIT_VIOLATION);
    }
    let budget_hit = report.invariants.errors.values().any(|e| e.contains("budget"));
    Ok(if budget_hit { EXIT_BUDGET } else { EXIT_OK })
}

fn generate(g: GenCommand, out: &mut dyn Write) -> Outcome {
    let inst = match g {
        GenCommand::Walecki { d } => Instance::unweighted(gen_walecki(d).map_err(Failure::input)?),
        GenCommand::Threshold { d, n, granularity, max_edges } => Instance::unweighted(
            gen_length_threshold_capped(d, n, granularity, max_edges).map_err(Failure::input)?,
        ),
        GenCommand::Random { spec } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| Failure::input(format!("{}: {e}", spec.display())))?;
            let spec: RandomFamilySpec =
                serde_json::from_str(&text).map_err(|e| Failure::input(format!("random spec: {e}")))?;
            let (h, w) = gen_random(&spec).map_err(Failure::input)?;
            Instance::new(h, (!w.is_unit()).then_some(w))
        }
    };
    emit(out, &format!("{}\n", inst.to_json_pretty()))
}

fn search(config: &Path, store: Option<&Path>, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(config).map_err(|e| Failure::input(format!("{}: {e}", config.display())))?;
    let cfg = SearchConfig::from_json(&text).map_err(Failure::input)?;
    let summary = run_search(&cfg, &mut |line| {
        let _ = writeln!(err, "{line}");
    })
    .map_err(Failure::input)?;
    let dir = store_dir(store, cfg.store_dir.as_deref());
    let manifest = write_store(&dir, &summary.retained).map_err(Failure::input)?;
    if json {
        let mut v = serde_json::to_value(&summary).expect("json");
        v["store"] = json!(dir.display().to_string());
        v["stored"] = json!(manifest.witnesses.len());
        emit(out, &format!("{}\n", serde_json::to_string_pretty(&v).expect("json")))?;
    } else {
        let mut t = String::new();
        let max = summary.max_ratio.as_ref().map(display).unwrap_or_else(|| "none".into());
        let _ = writeln!(t, "target {}: max ratio {max}", summary.target);
        let _ = writeln!(
            t,
            "evaluated {}, scored {}, budget skips {}, generation failures {}, errors {}",
            summary.evaluated, summary.scored, summary.skipped_budget, summary.generation_failures, summary.errors
        );
        let _ = writeln!(t, "retained {} witnesses in {}", summary.retained.len(), dir.display());
        if summary.timed_out {
            let _ = writeln!(t, "stopped early: time budget exhausted");
        }
        for v in &summary.theorem_violations {
            let _ = writeln!(t, "THEOREM VIOLATION {v}");
        }
        emit(out, &t)?;
    }
    Ok(if summary.theorem_violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION })
}

fn replay(path: Option<&Path>, json: bool, budget: SearchBudget, out: &mut dyn Write) -> Outcome {
    let path = path.map(Path::to_path_buf).unwrap_or_else(|| store_dir(None, None));
    let witnesses: Vec<(PathBuf, Witness)> = if path.is_dir() {
        load_store(&path).map_err(Failure::input)?
    } else {
        let text = std::fs::read_to_string(&path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let w = Witness::from_json(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        vec![(path.clone(), w)]
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    for (p, w) in &witnesses {
        let r = replay_witness(w, &budget);
        ok &= r.matches();
        let status = if r.matches() { "ok" } else { "MISMATCH" };
        let _ = writeln!(text, "{}: {} invariants {status}", p.display(), r.checked);
        for m in &r.mismatches {
            let _ = writeln!(text, "  {}: stored {} recomputed {}", m.invariant, m.stored, m.recomputed);
        }
        rows.push(json!({"file": p.display().to_string(), "replay": r}));
    }
    if json {
        emit(out, &format!("{}\n", serde_json::to_string_pretty(&rows).expect("json")))?;
    } else {
        emit(out, &text)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}
