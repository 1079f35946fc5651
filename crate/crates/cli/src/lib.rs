//! Command-line front end: verdicts, classes, orders, `Max` tables,
//! generators, the scaling bench and the oracle battery.
//!
//! Exit codes: 0 when the family is C1P (or the command succeeded), 1 when it
//! is not (or an oracle check failed), 2 on usage, input or internal errors.

pub mod bench;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use cutswap::family::{lr_order, star_family};
use cutswap::maxcomp::{compute_max, run_max};
use cutswap::oracle::{
    brute_c1p, brute_max, brute_overlap_classes, check_lemma1, check_lexicographic, check_swap_order,
    check_witness, BRUTE_C1P_LIMIT,
};
use cutswap::refine::run_pipeline;
use cutswap::{gen_family, parse_family, FamilyReport, GeneratorMode, GeneratorSpec, SetFamily};

use crate::bench::{render_table, scaling, Ladder};

#[derive(Debug, Parser)]
#[command(name = "cutswap", version, about = "Consecutive ones property testing by cut-or-swap partition refinement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// `.rows` file, or `-` for standard input
    file: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the family has the consecutive ones property
    Check {
        #[command(flatten)]
        input: Input,
        /// Print the full report as one line of JSON
        #[arg(long)]
        json: bool,
        /// Include wall time in the JSON report
        #[arg(long)]
        timing: bool,
    },
    /// List the overlap classes with at least two rows
    Classes {
        #[command(flatten)]
        input: Input,
    },
    /// Print the swap overlap order of every class
    Order {
        #[command(flatten)]
        input: Input,
    },
    /// Print Max(R) for every row
    Max {
        #[command(flatten)]
        input: Input,
    },
    /// Generate a family in `.rows` format
    Gen(GenArgs),
    /// Time the pipeline on doubling instance sizes
    Bench {
        #[arg(long, default_value_t = 16)]
        min_exp: u32,
        #[arg(long, default_value_t = 22)]
        max_exp: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Use star families, whose interval mass grows quadratically
        #[arg(long)]
        adversarial: bool,
    },
    /// Run every oracle against the pipeline on one instance
    OracleCheck {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Rows are windows of one hidden permutation (always C1P)
    #[arg(long, conflicts_with_all = ["uniform", "star"])]
    c1p: bool,
    /// Rows are uniform random subsets
    #[arg(long, conflicts_with = "star")]
    uniform: bool,
    /// K rows {hub, x_i}
    #[arg(long, value_name = "K")]
    star: Option<usize>,
    #[arg(long, default_value_t = 10)]
    cols: usize,
    #[arg(long, default_value_t = 10)]
    rows: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    min_len: usize,
    /// Defaults to the column count
    #[arg(long)]
    max_len: Option<usize>,
}

/// Runs the CLI with `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

type CmdResult = Result<i32, String>;

fn read_family(input: &Input) -> Result<SetFamily, String> {
    let text = if input.file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("reading stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(&input.file).map_err(|e| format!("reading {}: {e}", input.file))?
    };
    parse_family(&text).map_err(|e| e.to_string())
}

fn io(e: std::io::Error) -> String {
    format!("writing output: {e}")
}

fn join(items: &[usize]) -> String {
    items.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Check { input, json, timing } => {
            let f = read_family(&input)?;
            let report = cutswap::c1p_test(&f).map_err(|e| e.to_string())?;
            let report = if timing { report } else { report.without_timing() };
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).map_err(|e| e.to_string())?).map_err(io)?;
            } else {
                write_verdict(out, &f, &report).map_err(io)?;
            }
            Ok(if report.c1p { 0 } else { 1 })
        }
        Command::Classes { input } => {
            let f = read_family(&input)?;
            let run = run_pipeline(&f).map_err(|e| e.to_string())?;
            for (k, rows) in run.labels.classes().iter().enumerate() {
                writeln!(out, "{}: {}", k + 1, join(rows)).map_err(io)?;
            }
            Ok(0)
        }
        Command::Order { input } => {
            let f = read_family(&input)?;
            let run = run_pipeline(&f).map_err(|e| e.to_string())?;
            for (k, order) in run.orders.iter().enumerate() {
                writeln!(out, "{}: {}", k + 1, join(order)).map_err(io)?;
            }
            Ok(0)
        }
        Command::Max { input } => {
            let f = read_family(&input)?;
            let max = compute_max(&f, &lr_order(&f));
            for (r, m) in max.as_slice().iter().enumerate() {
                match m {
                    Some(x) => writeln!(out, "{r} -> {x}"),
                    None => writeln!(out, "{r} -> none"),
                }
                .map_err(io)?;
            }
            Ok(0)
        }
        Command::Gen(args) => {
            let f = if let Some(k) = args.star {
                star_family(k)
            } else {
                let mode = if args.uniform { GeneratorMode::UniformRandom } else { GeneratorMode::C1pPositive };
                let spec = GeneratorSpec::new(mode, args.cols, args.rows, args.seed)
                    .with_lengths(args.min_len, args.max_len.unwrap_or(args.cols));
                gen_family(&spec).map_err(|e| e.to_string())?
            };
            out.write_all(f.render().as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Bench { min_exp, max_exp, seed, repeats, adversarial } => {
            if min_exp == 0 || min_exp > max_exp || max_exp > 30 {
                return Err(format!("bad exponent range {min_exp}..={max_exp}"));
            }
            let ladder = if adversarial { Ladder::Star } else { Ladder::C1p };
            let rows = scaling(ladder, min_exp..=max_exp, seed, repeats);
            out.write_all(render_table(&rows).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::OracleCheck { input } => {
            let f = read_family(&input)?;
            oracle_battery(&f, out)
        }
    }
}

fn write_verdict(out: &mut dyn Write, f: &SetFamily, report: &FamilyReport) -> std::io::Result<()> {
    match report.first_failure() {
        None => writeln!(out, "C1P")?,
        Some(class) => {
            let row = class.fail.as_ref().map_or(0, |fail| fail.row);
            writeln!(out, "not C1P (class {} fails at row {row})", class.id)?;
        }
    }
    let unused = f.unused_columns();
    if !unused.is_empty() {
        let names: Vec<&str> = unused.iter().map(|&c| f.column_name(c)).collect();
        writeln!(out, "unused columns: {}", names.join(" "))?;
    }
    Ok(())
}

/// Sizes beyond which the quadratic oracles are skipped.
const ORACLE_ROW_LIMIT: usize = 3000;
const LEXICOGRAPHIC_LIMIT: usize = 400;

fn oracle_battery(f: &SetFamily, out: &mut dyn Write) -> CmdResult {
    let run = run_pipeline(f).map_err(|e| e.to_string())?;
    let mut results: Vec<(&str, Option<bool>)> = Vec::new();
    let small = f.m() <= ORACLE_ROW_LIMIT;

    results.push((
        "verdict == brute_c1p",
        (f.n() <= BRUTE_C1P_LIMIT).then(|| brute_c1p(f).map(|b| b == run.c1p()).unwrap_or(false)),
    ));
    results.push(("max == brute_max", small.then(|| run.max == brute_max(f, &run.lr))));
    results.push((
        "classes == brute components",
        small.then(|| {
            let g = brute_overlap_classes(f);
            let ours = run.labels.classes();
            let theirs: Vec<Vec<usize>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
            let mut ours_sorted = ours.clone();
            ours_sorted.sort();
            ours_sorted == theirs
        }),
    ));
    let classes = run.labels.classes();
    results.push((
        "swap orders valid",
        small.then(|| run.orders.iter().enumerate().all(|(k, o)| check_swap_order(f, &classes[k], o))),
    ));
    results.push((
        "witnesses consecutive",
        Some(
            run.reports
                .iter()
                .zip(&classes)
                .all(|(r, rows)| r.parts.as_ref().is_none_or(|parts| check_witness(f, rows, parts))),
        ),
    ));
    results.push(("lemma 1", small.then(|| check_lemma1(f, &run.max))));
    let lex_ok = f.n() <= LEXICOGRAPHIC_LIMIT && f.m() <= LEXICOGRAPHIC_LIMIT;
    results.push((
        "P_f lexicographic",
        lex_ok.then(|| {
            let lr = lr_order(f);
            let mc = run_max(f, &lr);
            check_lexicographic(f, &lr, &mc.pf) && mc.step3_moves == 0
        }),
    ));

    let mut all = true;
    for (name, result) in results {
        let tag = match result {
            Some(true) => "PASS",
            Some(false) => {
                all = false;
                "FAIL"
            }
            None => "SKIP",
        };
        writeln!(out, "{tag} {name}").map_err(io)?;
    }
    Ok(if all { 0 } else { 1 })
}
