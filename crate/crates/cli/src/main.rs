//! Command-line front end: feasibility verdicts, class censuses, schedule
//! construction and verification, grid scans and the digit machinery.
//!
//! Exit codes: 0 success or feasible, 1 domain-negative result (infeasible
//! shape, failed verification, decider disagreement, class mismatch), 2
//! usage or validation error, 3 enumeration budget exceeded. The json and
//! csv formats are byte-identical across runs; human output is for eyes
//! only.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use torus_broadcast::counting::{class_count_factored, class_table_oracle};
use torus_broadcast::feasibility::{
    cross_validate, divisibility_report, theorem_predicate, DivisibilityWitness, GridCell,
    GridReport,
};
use torus_broadcast::numtheory::{
    binomial, carries_in_addition, floor_sum, s_sequence, valuation, valuation_factorial,
    NumTheoryError,
};
use torus_broadcast::schedule::{
    build_balanced_tree, from_json_str, link_loads, to_json_string, verify_schedule, BuildError,
    ScheduleFileError, TreeError, VerificationReport,
};
use torus_broadcast::{analytic_feasible, TorusShape, DEFAULT_NODE_BUDGET};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "torus-broadcast",
    version,
    about = "Decide, construct and check optimal all-to-all broadcasts on k-ary n-dimensional tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility three independent ways
    Feasible {
        /// Arity of each ring (k >= 3)
        k: u64,
        /// Number of dimensions (n >= 1)
        n: u32,
        #[command(flatten)]
        format: FormatOpt,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Census the node classes and check the closed-form counts
    Classes {
        k: u64,
        n: u32,
        #[command(flatten)]
        format: FormatOpt,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Build a balanced schedule and write it as JSON
    Schedule {
        k: u64,
        n: u32,
        /// Output file for the schedule
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[command(flatten)]
        format: FormatOpt,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Re-validate and re-simulate a schedule file
    Verify {
        /// Schedule file written by `schedule`
        file: PathBuf,
        #[command(flatten)]
        format: FormatOpt,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Cross-validate the three deciders over a grid of shapes
    Scan {
        /// Arity range, inclusive (example: 3..9)
        #[arg(long, value_name = "LO..HI")]
        k: RangeArg,
        /// Dimension range, inclusive (example: 1..8)
        #[arg(long, value_name = "LO..HI")]
        n: RangeArg,
        #[command(flatten)]
        format: FormatOpt,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Digit, valuation and carry helpers
    Numtheory {
        #[command(subcommand)]
        op: NumTheoryOp,
    },
}

#[derive(Subcommand)]
enum NumTheoryOp {
    /// Print the base-q block sequence s_r
    Seq { q: u64, r: u32 },
    /// Print the exponent of the prime q in p!
    Legendre { q: u64, p: u64 },
    /// Print the carries in a + b base q and the valuation of C(a+b, a)
    Carries { q: u64, a: u64, b: u64 },
    /// Print sum of floor(m / q^i) over i >= 1
    Floorsum { m: u64, q: u64 },
}

#[derive(Args, Clone, Copy)]
struct FormatOpt {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
struct BudgetOpt {
    /// Enumeration budget in nodes
    #[arg(
        long,
        value_name = "NODES",
        env = "MAX_NODES",
        default_value_t = DEFAULT_NODE_BUDGET
    )]
    max_nodes: u64,
}

/// An inclusive `LO..HI` range argument.
#[derive(Clone, Copy)]
struct RangeArg {
    lo: u64,
    hi: u64,
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
        let lo: u64 = lo.parse().map_err(|_| format!("bad range start `{lo}`"))?;
        let hi: u64 = hi.parse().map_err(|_| format!("bad range end `{hi}`"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(RangeArg { lo, hi })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Feasible { k, n, format, budget } => {
            cmd_feasible(k, n, format.format, budget.max_nodes)
        }
        Command::Classes { k, n, format, budget } => {
            cmd_classes(k, n, format.format, budget.max_nodes)
        }
        Command::Schedule { k, n, out, format, budget } => {
            cmd_schedule(k, n, &out, format.format, budget.max_nodes)
        }
        Command::Verify { file, format, budget } => {
            cmd_verify(&file, format.format, budget.max_nodes)
        }
        Command::Scan { k, n, format, budget } => {
            cmd_scan(k, n, format.format, budget.max_nodes)
        }
        Command::Numtheory { op } => cmd_numtheory(op),
    };
    ExitCode::from(code)
}

fn parse_shape(k: u64, n: u32) -> Result<TorusShape, u8> {
    TorusShape::new(k, n).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

#[derive(Serialize)]
struct FeasibleOut {
    k: u64,
    n: u32,
    /// Node count; a decimal string in JSON when it exceeds u64.
    #[serde(serialize_with = "u128_json")]
    nodes: u128,
    /// None when the shape is over budget and the census was skipped.
    brute: Option<bool>,
    analytic: bool,
    theorem: bool,
    witnesses: Vec<DivisibilityWitness>,
}

fn cmd_feasible(k: u64, n: u32, format: Format, max_nodes: u64) -> u8 {
    let shape = match parse_shape(k, n) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let out = if shape.check_budget(max_nodes).is_ok() {
        let report = divisibility_report(&shape, max_nodes).expect("budget checked");
        FeasibleOut {
            k,
            n,
            nodes: shape.node_count(),
            brute: Some(report.brute),
            analytic: report.analytic,
            theorem: report.theorem,
            witnesses: report.witnesses,
        }
    } else {
        // Too large to census: the analytic and closed-form verdicts carry.
        FeasibleOut {
            k,
            n,
            nodes: shape.node_count(),
            brute: None,
            analytic: analytic_feasible(&shape),
            theorem: theorem_predicate(&shape),
            witnesses: Vec::new(),
        }
    };
    match format {
        Format::Human => {
            println!(
                "{shape}: {} nodes, diameter {}, degree {}",
                out.nodes,
                shape.diameter(),
                shape.degree()
            );
            match out.brute {
                Some(b) => println!("brute:    {}", verdict(b)),
                None => println!("brute:    not enumerated ({} nodes over budget {max_nodes})", out.nodes),
            }
            println!("analytic: {}", verdict(out.analytic));
            println!("theorem:  {}", verdict(out.theorem));
            if !out.witnesses.is_empty() {
                println!("violated classes (size not divisible by {}):", shape.degree());
                for w in &out.witnesses {
                    println!("  t={} p={} v={} count={}", w.t, w.p, w.v, w.count);
                }
            }
        }
        Format::Json => print_json(&out),
        Format::Csv => {
            let witness = out
                .witnesses
                .first()
                .map(|w| format!("t={};p={};v={}", w.t, w.p, w.v))
                .unwrap_or_default();
            let brute = out.brute.map(|b| b.to_string()).unwrap_or_default();
            println!("k,n,nodes,brute,analytic,theorem,first_witness");
            println!("{},{},{},{},{},{},{}", out.k, out.n, out.nodes, brute, out.analytic, out.theorem, witness);
        }
    }
    if out.analytic {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn verdict(feasible: bool) -> &'static str {
    if feasible {
        "feasible"
    } else {
        "infeasible"
    }
}

#[derive(Serialize)]
struct ClassRow {
    t: u64,
    p: u32,
    v: u64,
    oracle: u64,
    factored: serde_json::Value,
    r#match: bool,
}

#[derive(Serialize)]
struct ClassesOut {
    k: u64,
    n: u32,
    classes: Vec<ClassRow>,
}

fn cmd_classes(k: u64, n: u32, format: Format, max_nodes: u64) -> u8 {
    let shape = match parse_shape(k, n) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let oracle = match class_table_oracle(&shape, max_nodes) {
        Ok(table) => table,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_BUDGET;
        }
    };
    let rows: Vec<ClassRow> = oracle
        .entries()
        .map(|(key, count)| {
            let factored = class_count_factored(&shape, key);
            ClassRow {
                t: key.t,
                p: key.p,
                v: key.v,
                oracle: count,
                r#match: factored == BigUint::from(count),
                factored: big_json(&factored),
            }
        })
        .collect();
    let all_match = rows.iter().all(|r| r.r#match);
    match format {
        Format::Human => {
            println!(
                "{shape}: {} class{}, {} non-reference nodes",
                rows.len(),
                if rows.len() == 1 { "" } else { "es" },
                oracle.total()
            );
            println!("{:>4} {:>3} {:>4} {:>10} {:>10}  match", "t", "p", "v", "oracle", "factored");
            for r in &rows {
                println!(
                    "{:>4} {:>3} {:>4} {:>10} {:>10}  {}",
                    r.t,
                    r.p,
                    r.v,
                    r.oracle,
                    r.factored.to_string(),
                    if r.r#match { "yes" } else { "NO" }
                );
            }
            println!(
                "{}",
                if all_match {
                    "all classes match the closed form"
                } else {
                    "MISMATCH between census and closed form"
                }
            );
        }
        Format::Json => print_json(&ClassesOut { k, n, classes: rows }),
        Format::Csv => {
            let mut text = String::from("t,p,v,oracle,factored,match\n");
            for r in &rows {
                let _ = writeln!(text, "{},{},{},{},{},{}", r.t, r.p, r.v, r.oracle, r.factored, r.r#match);
            }
            print!("{text}");
        }
    }
    if all_match {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

#[derive(Serialize)]
struct ScheduleOut {
    file: String,
    k: u64,
    n: u32,
    entries: u64,
    steps: u64,
    /// Per-link load at each step, identical across the 2n directions.
    loads: Vec<u64>,
}

fn cmd_schedule(k: u64, n: u32, out: &PathBuf, format: Format, max_nodes: u64) -> u8 {
    let shape = match parse_shape(k, n) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let tree = match build_balanced_tree(&shape, max_nodes) {
        Ok(tree) => tree,
        Err(BuildError::Budget(e)) => {
            eprintln!("error: {e}");
            return EXIT_BUDGET;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NEGATIVE;
        }
    };
    let text = to_json_string(&tree);
    if let Err(e) = std::fs::write(out, &text) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return EXIT_USAGE;
    }
    let loads = link_loads(&tree)
        .uniform_loads()
        .expect("built trees are balanced");
    let report = ScheduleOut {
        file: out.display().to_string(),
        k,
        n,
        entries: tree.len(),
        steps: loads.len() as u64,
        loads,
    };
    match format {
        Format::Human => {
            println!(
                "wrote {}: {shape}, {} offsets, {} steps",
                report.file, report.entries, report.steps
            );
            let loads: Vec<String> = report.loads.iter().map(u64::to_string).collect();
            println!("per-link loads by step: {}", loads.join(" "));
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            println!("step,load_per_link");
            for (i, load) in report.loads.iter().enumerate() {
                println!("{},{load}", i + 1);
            }
        }
    }
    EXIT_OK
}

#[derive(Serialize)]
struct VerifyOut {
    k: u64,
    n: u32,
    #[serde(flatten)]
    report: VerificationReport,
}

fn cmd_verify(file: &PathBuf, format: Format, max_nodes: u64) -> u8 {
    let text = match std::fs::read_to_string(file) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return EXIT_USAGE;
        }
    };
    let tree = match from_json_str(&text, max_nodes) {
        Ok(tree) => tree,
        Err(ScheduleFileError::Json { line, column, message }) => {
            eprintln!("error: {}: line {line} column {column}: {message}", file.display());
            return EXIT_USAGE;
        }
        Err(ScheduleFileError::Tree(TreeError::Budget(e))) => {
            eprintln!("error: {e}");
            return EXIT_BUDGET;
        }
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return EXIT_USAGE;
        }
    };
    let shape = tree.shape();
    let report = match verify_schedule(&tree, max_nodes) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_BUDGET;
        }
    };
    let pass = report.all_ok();
    match format {
        Format::Human => {
            println!(
                "{shape}: {} steps, {} deliveries",
                report.steps, report.deliveries
            );
            println!("complete:       {}", report.complete);
            println!("no duplicates:  {}", report.nodup_ok);
            println!("shortest paths: {}", report.shortest_ok);
            println!("balanced loads: {}", report.balance_ok);
            if !report.violations.is_empty() {
                println!(
                    "violations ({} shown of {}):",
                    report.violations.len(),
                    report.violation_count
                );
                for v in &report.violations {
                    println!("  {v}");
                }
            }
            println!("result: {}", if pass { "pass" } else { "fail" });
        }
        Format::Json => print_json(&VerifyOut {
            k: shape.k(),
            n: shape.n(),
            report,
        }),
        Format::Csv => {
            println!("k,n,steps,deliveries,complete,nodup_ok,shortest_ok,balance_ok,violation_count");
            println!(
                "{},{},{},{},{},{},{},{},{}",
                shape.k(),
                shape.n(),
                report.steps,
                report.deliveries,
                report.complete,
                report.nodup_ok,
                report.shortest_ok,
                report.balance_ok,
                report.violation_count
            );
        }
    }
    if pass {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn cmd_scan(k: RangeArg, n: RangeArg, format: Format, max_nodes: u64) -> u8 {
    if n.hi > u32::MAX as u64 {
        eprintln!("error: dimension range end {} is out of range", n.hi);
        return EXIT_USAGE;
    }
    let report = cross_validate(k.lo..=k.hi, n.lo as u32..=n.hi as u32, max_nodes);
    match format {
        Format::Human => {
            for c in &report.cells {
                println!(
                    "k={} n={} nodes={} brute={} analytic={} theorem={}{}",
                    c.k,
                    c.n,
                    c.nodes,
                    c.brute,
                    c.analytic,
                    c.theorem,
                    match &c.first_witness {
                        Some(w) => format!(" witness=t={},p={},v={}", w.t, w.p, w.v),
                        None => String::new(),
                    }
                );
            }
            summarize_scan(&report);
        }
        Format::Json => print_json(&report),
        Format::Csv => print!("{}", report.to_csv_string()),
    }
    if report.all_agree() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn summarize_scan(report: &GridReport) {
    let feasible: Vec<String> = report
        .feasible_cells()
        .into_iter()
        .map(|(k, n)| format!("({k},{n})"))
        .collect();
    let disagreements: Vec<&GridCell> = report.disagreements();
    println!(
        "{} cell{}, {} feasible{}{}",
        report.cells.len(),
        if report.cells.len() == 1 { "" } else { "s" },
        feasible.len(),
        if feasible.is_empty() {
            String::new()
        } else {
            format!(": {}", feasible.join(" "))
        },
        if disagreements.is_empty() {
            String::new()
        } else {
            format!(", {} DISAGREEMENTS", disagreements.len())
        }
    );
}

fn cmd_numtheory(op: NumTheoryOp) -> u8 {
    let outcome: Result<String, NumTheoryError> = match op {
        NumTheoryOp::Seq { q, r } => s_sequence(q, r, DEFAULT_NODE_BUDGET).map(|terms| {
            terms
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        }),
        NumTheoryOp::Legendre { q, p } => valuation_factorial(q, p).map(|e| e.to_string()),
        NumTheoryOp::Carries { q, a, b } => {
            let Some(sum) = a.checked_add(b) else {
                eprintln!("error: a + b overflows");
                return EXIT_USAGE;
            };
            carries_in_addition(a, b, q).and_then(|carries| {
                let val = valuation(q, &binomial(sum, a))?;
                Ok(format!("carries={carries} valuation={val}"))
            })
        }
        NumTheoryOp::Floorsum { m, q } => floor_sum(m, q).map(|s| s.to_string()),
    };
    match outcome {
        Ok(text) => {
            println!("{text}");
            EXIT_OK
        }
        Err(e @ NumTheoryError::SequenceBudget { .. }) => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn big_json(value: &BigUint) -> serde_json::Value {
    match u64::try_from(value) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::String(value.to_string()),
    }
}

fn u128_json<S: serde::Serializer>(value: &u128, serializer: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(*value) {
        Ok(small) => serializer.serialize_u64(small),
        Err(_) => serializer.serialize_str(&value.to_string()),
    }
}

fn print_json(value: &impl Serialize) {
    let text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    println!("{text}");
}
