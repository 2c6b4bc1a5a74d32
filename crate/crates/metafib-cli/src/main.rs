//! Command-line front end: evaluate sequences, tabulate them, run the
//! verification suites, classify residue classes, inspect the automata and
//! export data.
//!
//! Exit codes: 0 success / all checks pass, 1 at least one verification
//! check failed, 2 usage or I/O error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use metafib::classifier::{classify, ClassifyOptions, Verdict};
use metafib::partitions::bin_table;
use metafib::recurrence::{
    eval, eval_range, g_spec, h_spec, EvalOutcome, FailureKind, NegMode, RecurrenceSpec, Term,
};
use metafib::series;
use num_bigint::BigInt;

use metafib_cli::suites::{run_suite, Depths};

#[derive(Parser)]
#[command(
    name = "metafib",
    version,
    about = "Exact evaluation and verification of meta-Fibonacci recurrences"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a single term
    Eval(EvalArgs),
    /// Print a sequence prefix as CSV
    Table(TableArgs),
    /// Run a verification suite (closed-forms, identities, series,
    /// automata, classifier, all)
    Verify(VerifyArgs),
    /// Split a sequence into residue classes and detect eventual laws
    Classify(ClassifyArgs),
    /// Print or export a built-in automaton (ptm, r2n)
    Dfao(DfaoArgs),
    /// Write tables and series to CSV files
    #[command(subcommand)]
    Export(ExportCmd),
}

/// Selects a sequence: a named family member or an explicit JSON spec.
#[derive(Args, Clone)]
struct SpecSelector {
    /// Family: h (value a below zero) or g (value 0 below zero)
    #[arg(long, value_parser = ["h", "g"])]
    family: Option<String>,
    /// Parameter a = f(0)
    #[arg(short = 'a', value_name = "A")]
    a: Option<u64>,
    /// Parameter b = f(1)
    #[arg(short = 'b', value_name = "B")]
    b: Option<u64>,
    /// Explicit recurrence spec as JSON, e.g.
    /// '{"terms":[{"nested":{"d":0,"u":1}},{"shift":2}],"init":[1,1],"neg":{"const":1}}'
    #[arg(long, conflicts_with = "family")]
    spec: Option<String>,
}

impl SpecSelector {
    fn resolve(&self) -> Result<RecurrenceSpec, String> {
        match (&self.family, &self.spec) {
            (Some(fam), None) => {
                let a = self.a.ok_or("missing -a (required with --family)")?;
                let b = self.b.ok_or("missing -b (required with --family)")?;
                if a == 0 || b == 0 {
                    return Err("family parameters require a, b >= 1".into());
                }
                Ok(if fam == "h" {
                    h_spec(a, b)
                } else {
                    g_spec(a, b)
                })
            }
            (None, Some(json)) => RecurrenceSpec::from_json(json).map_err(|e| e.to_string()),
            _ => Err("provide either --family with -a/-b or --spec".into()),
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    selector: SpecSelector,
    /// Index to evaluate
    #[arg(short = 'n', value_name = "N")]
    n: u64,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    selector: SpecSelector,
    /// Last index of the printed prefix
    #[arg(long)]
    to: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// closed-forms | identities | series | automata | classifier | all
    suite: String,
    /// Base truncation order for series checks (default 4096)
    #[arg(long)]
    order: Option<usize>,
    /// Base depth for tables and automata (defaults 10^4 / 2^18)
    #[arg(long)]
    nmax: Option<u64>,
    /// Double every depth (METAFIB_DEPTH=k scales by k as well)
    #[arg(long)]
    deep: bool,
    /// Emit the suite result as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    selector: SpecSelector,
    /// Nested offset u: adds the term f(n - f(n-u))
    #[arg(long, conflicts_with_all = ["family", "spec"])]
    u: Option<u64>,
    /// Shift offset v: adds the term f(n - v)
    #[arg(long, requires = "u")]
    v: Option<u64>,
    /// Initial values f(1)..f(k-1), comma separated; with --u/--v the value
    /// f(0) is taken from --neg-const (or --init0 under --strict)
    #[arg(long, value_delimiter = ',')]
    init: Vec<u64>,
    /// Value at negative indices
    #[arg(long)]
    neg_const: Option<u64>,
    /// Die on negative references instead of using a constant
    #[arg(long, conflicts_with = "neg_const")]
    strict: bool,
    /// f(0) under --strict
    #[arg(long)]
    init0: Option<u64>,
    /// Table depth
    #[arg(long, default_value_t = 10_000)]
    nmax: u64,
    /// Number of residue classes to split into
    #[arg(long, default_value_t = 1)]
    split: u64,
    /// Shortest accepted stable suffix
    #[arg(long, default_value_t = 64)]
    min_tail: usize,
    /// Largest recurrence order searched
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Solve window (default 8 * max_order)
    #[arg(long)]
    window: Option<usize>,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DfaoArgs {
    /// ptm | r2n
    which: String,
    /// Output format: json | dot
    #[arg(long, default_value = "json")]
    export: String,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Binary partition numbers as CSV (index, decimal value)
    Bin {
        /// Last index
        #[arg(long)]
        to: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// A sequence prefix as CSV (index, decimal value)
    Table {
        #[command(flatten)]
        selector: SpecSelector,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// A generating series as CSV (index, coefficient)
    Series {
        /// h | hb | bin | sign | g | gb
        #[arg(long)]
        which: String,
        /// Truncation order
        #[arg(long, default_value_t = 4096)]
        order: usize,
        /// Parameter b for hb / gb
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Table(args) => cmd_table(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Classify(args) => cmd_classify(args),
        Cmd::Dfao(args) => cmd_dfao(args),
        Cmd::Export(args) => cmd_export(args),
    }
}

fn cmd_eval(args: EvalArgs) -> Result<i32, String> {
    let spec = args.selector.resolve()?;
    match eval(&spec, args.n).map_err(|e| e.to_string())? {
        EvalOutcome::Value(v) => println!("{v}"),
        EvalOutcome::Failure { at, kind } => println!("failed: {} at index {at}", kind_name(kind)),
    }
    Ok(0)
}

fn kind_name(kind: FailureKind) -> &'static str {
    match kind {
        FailureKind::Died => "died",
        FailureKind::NonWellFounded => "non-well-founded reference",
    }
}

fn cmd_table(args: TableArgs) -> Result<i32, String> {
    let spec = args.selector.resolve()?;
    let table = eval_range(&spec, args.to).map_err(|e| e.to_string())?;
    println!("index,value");
    for (i, v) in table.values.iter().enumerate() {
        println!("{i},{v}");
    }
    if let (Some(at), Some(kind)) = (table.death, table.failure_kind) {
        eprintln!("note: sequence stopped, {} at index {at}", kind_name(kind));
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, String> {
    let valid = [
        "closed-forms",
        "identities",
        "series",
        "automata",
        "classifier",
        "all",
    ];
    if !valid.contains(&args.suite.as_str()) {
        return Err(format!(
            "unknown suite {:?}; valid: {}",
            args.suite,
            valid.join(", ")
        ));
    }
    let depths = Depths::new(args.order, args.nmax, args.deep);
    let result = run_suite(&args.suite, depths);
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&result).map_err(|e| e.to_string())?
        );
    } else {
        print!("{}", result.render_text());
    }
    Ok(if result.all_pass() { 0 } else { 1 })
}

fn cmd_classify(args: ClassifyArgs) -> Result<i32, String> {
    let spec = if let Some(u) = args.u {
        let v = args.v.ok_or("missing --v (required with --u)")?;
        let mut init: Vec<BigInt> = Vec::new();
        let neg_mode = if args.strict {
            let f0 = args
                .init0
                .ok_or("missing --init0 (required with --strict)")?;
            init.push(BigInt::from(f0));
            NegMode::Strict
        } else {
            let c = args
                .neg_const
                .ok_or("missing --neg-const (or use --strict)")?;
            init.push(BigInt::from(c));
            NegMode::Const(BigInt::from(c))
        };
        init.extend(args.init.iter().map(|&x| BigInt::from(x)));
        RecurrenceSpec::new(
            vec![Term::Nested { d: 0, u }, Term::Shift(v)],
            init,
            neg_mode,
        )
        .map_err(|e| e.to_string())?
    } else {
        args.selector.resolve()?
    };

    let max_order = args.max_order;
    let opts = ClassifyOptions {
        min_tail: args.min_tail,
        max_order,
        window: args.window.unwrap_or(8 * max_order),
    };
    let report = classify(&spec, args.split, args.nmax, &opts).map_err(|e| e.to_string())?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        );
        return Ok(0);
    }
    println!("spec: {}", spec.to_json());
    println!("split: {}   depth: {}", report.modulus, report.n_max);
    println!("{:<7} {:<21} {:<8} law", "class", "verdict", "start");
    for (residue, verdict) in report.verdicts.iter().enumerate() {
        let (kind, start, law) = verdict_row(verdict);
        println!("{residue:<7} {kind:<21} {start:<8} {law}");
    }
    Ok(0)
}

fn verdict_row(v: &Verdict) -> (&'static str, String, String) {
    match v {
        Verdict::EventuallyConstant {
            start,
            value,
            witness_window,
        } => (
            "eventually-constant",
            start.to_string(),
            format!("value {value} (window {witness_window})"),
        ),
        Verdict::EventuallyAp {
            start,
            difference,
            witness_window,
        } => (
            "eventually-ap",
            start.to_string(),
            format!("difference {difference} (window {witness_window})"),
        ),
        Verdict::LinearRecurrence {
            start,
            coeffs,
            witness_window,
        } => {
            let terms: Vec<String> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c}*s(n-{})", i + 1))
                .collect();
            (
                "linear-recurrence",
                start.to_string(),
                format!("s(n) = {} (window {witness_window})", terms.join(" + ")),
            )
        }
        Verdict::Dead { at } => ("dead", at.to_string(), String::new()),
        Verdict::Unclassified => ("unclassified", "-".into(), String::new()),
    }
}

fn cmd_dfao(args: DfaoArgs) -> Result<i32, String> {
    let dfao = match args.which.as_str() {
        "ptm" => metafib::automata::ptm_dfao(),
        "r2n" => metafib::automata::r2n_dfao(),
        other => return Err(format!("unknown automaton {other:?}; valid: ptm, r2n")),
    };
    let rendered = match args.export.as_str() {
        "json" => dfao.to_json(),
        "dot" => dfao.to_dot(),
        other => return Err(format!("unknown export format {other:?}; valid: json, dot")),
    };
    emit(args.out.as_deref(), &rendered)?;
    Ok(0)
}

fn cmd_export(cmd: ExportCmd) -> Result<i32, String> {
    match cmd {
        ExportCmd::Bin { to, out } => {
            let csv = bin_table(to).to_csv();
            write_file(&out, &csv)?;
        }
        ExportCmd::Table { selector, to, out } => {
            let spec = selector.resolve()?;
            let table = eval_range(&spec, to).map_err(|e| e.to_string())?;
            let mut csv = String::from("index,value\n");
            for (i, v) in table.values.iter().enumerate() {
                csv.push_str(&format!("{i},{v}\n"));
            }
            write_file(&out, &csv)?;
        }
        ExportCmd::Series {
            which,
            order,
            b,
            out,
        } => {
            let need_b = || b.ok_or("missing --b (required for hb / gb)".to_string());
            let csv = match which.as_str() {
                "h" => series::h_series(order).to_csv(),
                "hb" => series::hb_series(need_b()?, order).to_csv(),
                "bin" => series::b_series(order).to_csv(),
                "sign" => series::t_series(order).to_csv(),
                "g" => series::g_series(order).to_csv(),
                "gb" => series::gb_series(need_b()?, order).to_csv(),
                other => {
                    return Err(format!(
                        "unknown series {other:?}; valid: h, hb, bin, sign, g, gb"
                    ))
                }
            };
            write_file(&out, &csv)?;
        }
    }
    Ok(0)
}

fn emit(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => write_file(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
}
