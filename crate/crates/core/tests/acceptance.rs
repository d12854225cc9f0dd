//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use bcdlut::builder::{build_digit_adder, build_n_digit_adder, program_correction_luts};
use bcdlut::cost::{
    builtin_cost_table, design_catalog, find_design, improvements, reconcile_expressions, GAO, PROPOSED,
};
use bcdlut::netlist::{area, critical_path, evaluate, export_json, import_json};
use bcdlut::parallel::{add_number, truth_table};
use bcdlut::verify::{exhaustive_one_digit, random_case};
use bcdlut::{oracle_add, Bit, CellType};

type Outcome = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn c1_exhaustive() -> Outcome {
    let t = Instant::now();
    let r = exhaustive_one_digit().map_err(|e| e.to_string())?;
    let took = t.elapsed();
    if let Some(m) = r.mismatches.first() {
        return Err(format!("{} mismatches, first: {m}", r.mismatches.len()));
    }
    check(
        r.cases == 200 && took < Duration::from_secs(1),
        format!("200/200 on algorithm, netlist and reference in {took:.2?}"),
        format!("{} cases in {took:.2?}", r.cases),
    )
}

fn c2_random() -> Outcome {
    const CASES: u64 = 10_000;
    let t = Instant::now();
    let mut total = 0;
    for digits in [2usize, 10, 100, 1000] {
        let bad = (0..CASES)
            .into_par_iter()
            .filter(|&i| {
                let (a, b, cin) = random_case(0xACCE, i, digits);
                let (s, c, _) = add_number(&a, &b, cin);
                (s, c) != oracle_add(&a, &b, cin)
            })
            .count();
        if bad != 0 {
            return Err(format!("{bad} mismatches at N={digits}"));
        }
        total += CASES;
    }
    let took = t.elapsed();
    check(
        took < Duration::from_secs(30),
        format!("{total} cases bit-exact in {took:.2?}"),
        format!("took {took:.2?}"),
    )
}

const TABLE_I: [&str; 12] = [
    "000,001,001,000,1,0010,-,0,0,1,0",
    "000,010,010,000,1,0011,-,0,0,0,0",
    "000,011,011,000,1,0100,-,0,0,0,0",
    "000,100,100,000,1,0101,Add3,1,0,0,0",
    "001,001,000,001,1,0011,-,0,0,0,0",
    "001,010,011,000,1,0100,-,0,0,0,0",
    "001,011,010,001,1,0101,Add3,1,0,0,0",
    "001,100,101,000,1,0110,Add3,1,0,0,1",
    "100,001,101,000,1,0110,Add3,1,0,0,1",
    "100,010,110,000,1,0111,Add3,1,0,1,0",
    "100,011,111,000,1,1000,Add3,1,0,1,1",
    "100,100,000,100,1,1001,Add3,1,1,0,0",
];

const TABLE_II: [&str; 12] = [
    "000,001,001,000,0,0001,-,0,0,0,1",
    "000,010,010,000,0,0010,-,0,0,1,0",
    "000,011,011,000,0,0011,-,0,0,1,1",
    "000,100,100,000,0,0100,-,0,1,0,0",
    "001,001,000,001,0,0010,-,0,0,1,0",
    "001,010,011,000,0,0011,-,0,0,1,1",
    "001,011,010,001,0,0100,-,0,1,0,0",
    "001,100,101,000,0,0101,Add3,1,0,0,0",
    "100,001,101,000,0,0101,Add3,1,0,0,0",
    "100,010,110,000,0,0110,Add3,1,0,0,1",
    "100,011,111,000,0,0111,Add3,1,0,1,0",
    "100,100,000,100,0,1000,Add3,1,0,1,1",
];

fn c3_truth_tables() -> Outcome {
    let mut bad = Vec::new();
    for (c0, table) in [(Bit::ONE, &TABLE_I), (Bit::ZERO, &TABLE_II)] {
        let generated: HashMap<String, String> = truth_table(c0)
            .iter()
            .map(|r| (format!("{:03b},{:03b}", r.b_in, r.a_in), r.to_csv_line()))
            .collect();
        for want in table.iter() {
            let got = generated.get(&want[..7]).map(String::as_str).unwrap_or("<missing>");
            if got != *want {
                bad.push(format!("C0={c0} want {want} got {got}"));
            }
        }
    }
    check(bad.is_empty(), "24/24 rows verbatim", format!("{} rows differ: {}", bad.len(), bad.join("; ")))
}

fn c4_luts() -> Outcome {
    let luts = program_correction_luts();
    let mut bad = 0;
    for index in 0..64u8 {
        // Sα(3:1) and C2C1C0 sit at the same weights (C0 carries into bit 1).
        let sum = (index >> 3) + (index & 0b111);
        let want = if sum < 5 { sum } else { (sum + 3) & 0xF };
        for (k, table) in luts.tables.iter().enumerate() {
            let bit = (want >> (3 - k)) & 1 == 1;
            if table.get(index) != bit {
                bad += 1;
            }
        }
    }
    check(bad == 0, "256/256 entries", format!("{bad} of 256 entries differ"))
}

fn c5_catalog() -> Outcome {
    let catalog = design_catalog();
    let want = [
        ("Gao", 132, 4, 69.56),
        ("Bioul", 120, 8, 140.72),
        ("Vazquez-A", 134, 5, 80.74),
        ("Vazquez-B", 204, 8, 168.64),
        ("Proposed", 108, 4, 41.8),
    ];
    let mut bad = Vec::new();
    for (name, area, luts, delay) in want {
        match find_design(&catalog, name) {
            Ok(d) => {
                if d.area_per_digit != area
                    || d.luts_per_digit != luts
                    || (d.delay_per_digit.as_ns() - delay).abs() > 0.005
                {
                    bad.push(name.to_string());
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    check(bad.is_empty(), "5/5 designs", format!("differ: {}", bad.join(", ")))
}

fn c6_improvements() -> Outcome {
    let i = improvements(&design_catalog(), GAO, PROPOSED).map_err(|e| e.to_string())?;
    let line = format!("area {:.2}%, delay {:.2}%, adp {:.2}%", i.area_pct, i.delay_pct, i.adp_pct);
    check(
        (i.area_pct - 18.18).abs() <= 0.01 && (i.delay_pct - 39.90).abs() <= 0.05 && (i.adp_pct - 50.8).abs() <= 0.1,
        line.clone(),
        line,
    )
}

fn sorted(mut v: Vec<CellType>) -> Vec<CellType> {
    v.sort();
    v
}

fn c7_critical_path() -> Outcome {
    let n = build_digit_adder(&program_correction_luts());
    let p = critical_path(&n, &builtin_cost_table()).map_err(|e| e.to_string())?;
    let types = p.cell_types(&n);
    let want = sorted(vec![
        CellType::Fa,
        CellType::Lut6,
        CellType::Inv,
        CellType::Inv,
        CellType::PassSwitch,
        CellType::PassSwitch,
    ]);
    let names: Vec<_> = types.iter().map(|t| t.name()).collect();
    let line = format!("{} ns via {}", p.delay, names.join(" -> "));
    check(p.delay.centi_ns() == 4180 && sorted(types) == want, line.clone(), line)
}

fn c8_reconcile() -> Outcome {
    let rows = reconcile_expressions(&design_catalog(), &builtin_cost_table()).map_err(|e| e.to_string())?;
    let bad: Vec<_> = rows
        .iter()
        .filter(|r| !r.matches)
        .map(|r| format!("{} {} delta {}", r.design, r.metric, r.delta))
        .collect();
    let line = bad.join(", ");
    check(bad.len() == 2, format!("2 mismatches: {line}"), format!("{} mismatches: {line}", bad.len()))
}

fn c9_scaling() -> Outcome {
    let luts = program_correction_luts();
    let costs = builtin_cost_table();
    let one = build_digit_adder(&luts);
    let a1 = area(&one, &costs).map_err(|e| e.to_string())?;
    let p1 = critical_path(&one, &costs).map_err(|e| e.to_string())?;
    for n in 1..=16usize {
        let net = build_n_digit_adder(n, &luts).map_err(|e| e.to_string())?;
        let a = area(&net, &costs).map_err(|e| e.to_string())?;
        let p = critical_path(&net, &costs).map_err(|e| e.to_string())?;
        let nn = n as u64;
        if a.transistors != nn * a1.transistors
            || a.luts != nn * a1.luts
            || p.delay.centi_ns() != nn * 4180
            || p.cells.len() != n * p1.cells.len()
        {
            return Err(format!("N={n}: area {a:?}, delay {}, {} path cells", p.delay, p.cells.len()));
        }
    }
    check(true, format!("N=1..16 linear, {} transistors + {} LUT6 per digit", a1.transistors, a1.luts), "")
}

fn c10_round_trip() -> Outcome {
    let n = build_digit_adder(&program_correction_luts());
    let back = import_json(&export_json(&n)).map_err(|e| e.to_string())?;
    let names: Vec<String> = n.inputs().iter().map(|&i| n.net_name(i).to_string()).collect();
    let mut checked = 0;
    for a in 0..=9u32 {
        for b in 0..=9u32 {
            for cin in 0..=1u32 {
                let word = cin | (a << 1) | (b << 5);
                let assign: HashMap<String, Bit> = names
                    .iter()
                    .enumerate()
                    .map(|(i, name)| (name.clone(), Bit::new(word >> i & 1 == 1)))
                    .collect();
                let x = evaluate(&n, &assign).map_err(|e| e.to_string())?;
                let y = evaluate(&back, &assign).map_err(|e| e.to_string())?;
                if x != y {
                    return Err(format!("outputs differ for a={a} b={b} cin={cin}"));
                }
                checked += 1;
            }
        }
    }
    check(checked == 200, "200/200 evaluations identical", format!("{checked} evaluations"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("one-digit exhaustive equivalence", c1_exhaustive),
        ("multi-digit random equivalence", c2_random),
        ("truth tables verbatim", c3_truth_tables),
        ("LUT contents", c4_luts),
        ("design catalog", c5_catalog),
        ("improvement percentages", c6_improvements),
        ("critical path", c7_critical_path),
        ("expression reconciliation", c8_reconcile),
        ("N-digit scaling", c9_scaling),
        ("JSON round trip", c10_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
