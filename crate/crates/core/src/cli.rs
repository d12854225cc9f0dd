//! `bcdlut` command line: `add`, `verify`, `truth-table`, `netlist`, `cost`.
//!
//! Exit status is 0 on success, 1 when verification finds a mismatch, and
//! 2 for usage, parse or I/O errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bcd::{BcdNumber, Bit};
use crate::builder::{build_n_digit_adder, build_reference_ripple_adder, program_correction_luts};
use crate::cost::{
    builtin_cost_table, compare_report, design_catalog, find_design, improvements, reconcile_expressions,
    report_json, write_reconciliation_csv, write_report_csv, GAO, PROPOSED,
};
use crate::netlist::{area, critical_path, export_dot, export_json, CellType};
use crate::parallel::{add_number, truth_table, write_truth_table_csv, DigitTrace};
use crate::verify::{exhaustive_one_digit, random_cases, VerifyReport};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bcdlut", version, about = "Parallel LUT-based BCD adder workbench")]
pub struct Cli {
    /// Output format (command dependent: text, json, csv, dot).
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Add two decimal numbers with the parallel BCD adder.
    Add {
        a: String,
        b: String,
        /// Set the incoming carry.
        #[arg(long)]
        cin: bool,
        /// Print every intermediate signal per digit.
        #[arg(long)]
        trace: bool,
    },
    /// Check the model and both netlists against decimal addition.
    Verify {
        #[arg(value_enum)]
        mode: VerifyMode,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        digits: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// Upper-bit truth table of one digit for a fixed C0.
    TruthTable {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        c0: u8,
    },
    /// Build an adder netlist, export it, and report cost and timing.
    Netlist {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Design::Proposed)]
        design: Design,
    },
    /// Area/delay/ADP comparison of the five designs.
    Cost {
        /// Digit counts, comma separated.
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
        n: Vec<u64>,
        /// Also list totals that do not match their cost expressions.
        #[arg(long)]
        reconcile: bool,
        /// Also print the improvement of the proposed design over Gao.
        #[arg(long)]
        improvements: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    #[value(name = "exhaustive-1digit")]
    Exhaustive1Digit,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Design {
    Proposed,
    Reference,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<std::io::Error> for Usage {
    fn from(e: std::io::Error) -> Self {
        Usage(e.to_string())
    }
}

fn format_choice(given: &Option<String>, allowed: &[&str]) -> Result<String, Usage> {
    match given {
        None => Ok(allowed[0].to_string()),
        Some(f) if allowed.contains(&f.as_str()) => Ok(f.clone()),
        Some(f) => Err(Usage(format!(
            "unsupported --format `{f}` for this command (expected one of: {})",
            allowed.join(", ")
        ))),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> Result<(), Usage> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Usage(format!("cannot write {}: {e}", path.display()))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    match &cli.command {
        Command::Add { a, b, cin, trace } => cmd_add(cli, a, b, *cin, *trace, stdout),
        Command::Verify { mode, digits, cases } => cmd_verify(cli, *mode, *digits as usize, *cases, stdout),
        Command::TruthTable { c0 } => cmd_truth_table(cli, *c0, stdout),
        Command::Netlist { n, design } => cmd_netlist(cli, *n as usize, *design, stdout, stderr),
        Command::Cost {
            n,
            reconcile,
            improvements,
        } => cmd_cost(cli, n, *reconcile, *improvements, stdout),
    }
}

#[derive(Serialize)]
struct TraceJson {
    digit: usize,
    a: u8,
    b: u8,
    cin: u8,
    s0: u8,
    c0: u8,
    s_alpha: String,
    c: String,
    f: String,
    add3: bool,
    branch: String,
    gamma: String,
    beta: String,
    out: u8,
    cout: u8,
}

fn trace_json(i: usize, a: &BcdNumber, b: &BcdNumber, cin: Bit, t: &DigitTrace) -> TraceJson {
    TraceJson {
        digit: i,
        a: a.digit_or_zero(i).value(),
        b: b.digit_or_zero(i).value(),
        cin: cin.as_u8(),
        s0: t.s0.as_u8(),
        c0: t.c0.as_u8(),
        s_alpha: format!("{:03b}", t.s_alpha),
        c: format!("{:03b}", t.carries),
        f: format!("{:04b}", t.f),
        add3: t.add3_applied,
        branch: t.branch.to_string(),
        gamma: t.gamma.to_string(),
        beta: t.beta.to_string(),
        out: t.out_digit.value(),
        cout: t.cout.as_u8(),
    }
}

fn cmd_add(cli: &Cli, a: &str, b: &str, cin: bool, trace: bool, stdout: &mut dyn Write) -> Result<i32, Usage> {
    let format = format_choice(&cli.format, &["text", "json"])?;
    let an: BcdNumber = a.parse()?;
    let bn: BcdNumber = b.parse()?;
    let cin = Bit::new(cin);
    let (sum, carry, traces) = add_number(&an, &bn, cin);
    let result = if carry.is_set() {
        format!("1{sum}")
    } else {
        sum.to_string()
    };

    // Incoming carry of each digit, for display.
    let mut carries_in = Vec::with_capacity(traces.len());
    let mut c = cin;
    for t in &traces {
        carries_in.push(c);
        c = t.cout;
    }

    let text = if format == "json" {
        #[derive(Serialize)]
        struct AddJson {
            a: String,
            b: String,
            cin: u8,
            sum: String,
            carry: u8,
            result: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            trace: Option<Vec<TraceJson>>,
        }
        let doc = AddJson {
            a: a.to_string(),
            b: b.to_string(),
            cin: cin.as_u8(),
            sum: sum.to_string(),
            carry: carry.as_u8(),
            result,
            trace: trace.then(|| {
                traces
                    .iter()
                    .enumerate()
                    .map(|(i, t)| trace_json(i, &an, &bn, carries_in[i], t))
                    .collect()
            }),
        };
        serde_json::to_string_pretty(&doc).map_err(Error::from)? + "\n"
    } else {
        let mut s = format!("{result}\n");
        if trace {
            s.push_str("digit  A  B  Cin  S0  C0  Salpha  C(3:1)  F     Add3  branch  gamma  beta  Cout  S\n");
            for (i, t) in traces.iter().enumerate() {
                s.push_str(&format!(
                    "{:<5}  {}  {}  {}    {}   {}   {:03b}     {:03b}     {:04b}  {:<4}  {:<6}  {}   {}  {}     {}\n",
                    i,
                    an.digit_or_zero(i),
                    bn.digit_or_zero(i),
                    carries_in[i],
                    t.s0,
                    t.c0,
                    t.s_alpha,
                    t.carries,
                    t.f,
                    if t.add3_applied { "Add3" } else { "-" },
                    t.branch,
                    t.gamma,
                    t.beta,
                    t.cout,
                    t.out_digit,
                ));
            }
        }
        s
    };
    emit(cli, &text, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_verify(cli: &Cli, mode: VerifyMode, digits: usize, cases: usize, stdout: &mut dyn Write) -> Result<i32, Usage> {
    format_choice(&cli.format, &["text"])?;
    let (header, report): (String, VerifyReport) = match mode {
        VerifyMode::Exhaustive1Digit => ("exhaustive 1-digit".to_string(), exhaustive_one_digit()?),
        VerifyMode::Random => (
            format!("random: {cases} cases of {digits} digits, seed {}", cli.seed),
            random_cases(digits, cases, cli.seed)?,
        ),
    };
    let mut text = format!("{header}\n");
    text.push_str(&format!("algorithm: {}/{}\n", report.algorithm_pass, report.cases));
    text.push_str(&format!("netlist: {}/{}\n", report.netlist_pass, report.cases));
    text.push_str(&format!("reference: {}/{}\n", report.reference_pass, report.cases));
    for m in &report.mismatches {
        text.push_str(&format!("MISMATCH {m}\n"));
    }
    text.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
    emit(cli, &text, stdout)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_truth_table(cli: &Cli, c0: u8, stdout: &mut dyn Write) -> Result<i32, Usage> {
    format_choice(&cli.format, &["csv"])?;
    let rows = truth_table(Bit::from_u8(c0)?);
    let mut buf = Vec::new();
    write_truth_table_csv(&rows, &mut buf)?;
    emit(cli, &String::from_utf8(buf).expect("csv is utf-8"), stdout)?;
    Ok(EXIT_OK)
}

fn cmd_netlist(
    cli: &Cli,
    digits: usize,
    design: Design,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Usage> {
    let format = format_choice(&cli.format, &["json", "dot"])?;
    let netlist = match design {
        Design::Proposed => build_n_digit_adder(digits, &program_correction_luts())?,
        Design::Reference => build_reference_ripple_adder(digits)?,
    };
    let costs = builtin_cost_table();
    let a = area(&netlist, &costs)?;
    let cp = critical_path(&netlist, &costs)?;

    let mut summary = String::new();
    summary.push_str(&format!("digits: {digits}\n"));
    summary.push_str(&format!("cells: {}\n", netlist.census()));
    summary.push_str(&format!("area: {} transistors, {} LUTs\n", a.transistors, a.luts));
    if design == Design::Proposed {
        let expr = find_design(&design_catalog(), PROPOSED)?.clone();
        let terms: Vec<String> = expr
            .area_terms
            .iter()
            .map(|(t, m)| format!("{} {}", m * digits as u32, t))
            .collect();
        summary.push_str(&format!(
            "cost expression: {} transistors, {} LUTs ({})\n",
            expr.area_per_digit as usize * digits,
            expr.luts_per_digit as usize * digits,
            terms.join(", ")
        ));
    }
    summary.push_str(&format!("critical path: {} ns\n", cp.delay));
    let path: Vec<String> = cp
        .cells
        .iter()
        .map(|&c| format!("{}({c})", netlist.cell(c).kind.cell_type()))
        .collect();
    summary.push_str(&format!("path: {}\n", path.join(" -> ")));
    let stages = cp.cell_types(&netlist);
    let count = |t| stages.iter().filter(|&&s| s == t).count();
    summary.push_str(&format!(
        "path cells: {} FA, {} LUT6, {} INV, {} PASS_SWITCH, {} other\n",
        count(CellType::Fa),
        count(CellType::Lut6),
        count(CellType::Inv),
        count(CellType::PassSwitch),
        stages.len()
            - count(CellType::Fa)
            - count(CellType::Lut6)
            - count(CellType::Inv)
            - count(CellType::PassSwitch)
    ));

    let mut export = if format == "dot" {
        export_dot(&netlist)
    } else {
        export_json(&netlist)
    };
    if !export.ends_with('\n') {
        export.push('\n');
    }
    match &cli.out {
        Some(_) => {
            emit(cli, &export, stdout)?;
            stdout.write_all(summary.as_bytes())?;
        }
        None => {
            stdout.write_all(export.as_bytes())?;
            stderr.write_all(summary.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_cost(cli: &Cli, ns: &[u64], reconcile: bool, show_improvements: bool, stdout: &mut dyn Write) -> Result<i32, Usage> {
    let format = format_choice(&cli.format, &["csv", "json"])?;
    let catalog = design_catalog();
    let ns: Vec<usize> = ns.iter().map(|&n| n as usize).collect();
    let rows = compare_report(&catalog, &ns)?;
    let mismatches: Vec<_> = reconcile_expressions(&catalog, &builtin_cost_table())?
        .into_iter()
        .filter(|r| !r.matches)
        .collect();
    let imp = improvements(&catalog, GAO, PROPOSED)?;

    let text = if format == "json" {
        if reconcile || show_improvements {
            let mut doc = serde_json::Map::new();
            doc.insert("report".into(), serde_json::to_value(&rows).map_err(Error::from)?);
            if reconcile {
                doc.insert("reconcile".into(), serde_json::to_value(&mismatches).map_err(Error::from)?);
            }
            if show_improvements {
                doc.insert(
                    "improvements".into(),
                    serde_json::json!({
                        "baseline": GAO,
                        "target": PROPOSED,
                        "area_pct": imp.area_pct,
                        "delay_pct": imp.delay_pct,
                        "adp_pct": imp.adp_pct,
                    }),
                );
            }
            serde_json::to_string_pretty(&doc).map_err(Error::from)? + "\n"
        } else {
            report_json(&rows) + "\n"
        }
    } else {
        let mut buf = Vec::new();
        write_report_csv(&rows, &mut buf)?;
        if reconcile {
            buf.push(b'\n');
            write_reconciliation_csv(&mismatches, &mut buf)?;
        }
        if show_improvements {
            writeln!(
                buf,
                "\n{GAO} -> {PROPOSED}: area {:.2}%, delay {:.2}%, adp {:.2}%",
                imp.area_pct, imp.delay_pct, imp.adp_pct
            )?;
        }
        String::from_utf8(buf).expect("csv is utf-8")
    };
    emit(cli, &text, stdout)?;
    Ok(EXIT_OK)
}
