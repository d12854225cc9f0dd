//! Pre-layout area/delay model.
//!
//! Every design is costed per digit from a library of cell areas
//! (transistor counts) and critical-path delays. LUTs are tracked as a
//! separate count and contribute nothing to the transistor total; that is
//! the only reading under which the published per-digit totals reconcile.
//!
//! Delays are held in hundredths of a nanosecond so that sums of library
//! delays are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::iter::Sum;
use std::ops::{Add, Mul};

use serde::Serialize;

use crate::netlist::CellType;
use crate::Error;

/// A delay in hundredths of a nanosecond.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Delay(u64);

impl Delay {
    pub const ZERO: Delay = Delay(0);

    pub const fn from_centi_ns(centi: u64) -> Self {
        Delay(centi)
    }

    /// Rounds to the nearest hundredth of a nanosecond.
    pub fn from_ns(ns: f64) -> Self {
        assert!(ns >= 0.0 && ns.is_finite(), "delay must be a finite non-negative value");
        Delay((ns * 100.0).round() as u64)
    }

    pub const fn centi_ns(self) -> u64 {
        self.0
    }

    pub fn as_ns(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl Add for Delay {
    type Output = Delay;
    fn add(self, rhs: Delay) -> Delay {
        Delay(self.0 + rhs.0)
    }
}

impl Mul<u64> for Delay {
    type Output = Delay;
    fn mul(self, rhs: u64) -> Delay {
        Delay(self.0 * rhs)
    }
}

impl Sum for Delay {
    fn sum<I: Iterator<Item = Delay>>(iter: I) -> Delay {
        iter.fold(Delay::ZERO, Add::add)
    }
}

impl fmt::Display for Delay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_ns())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellCost {
    /// Transistors.
    pub area: u32,
    pub delay: Delay,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostTable {
    entries: BTreeMap<CellType, CellCost>,
}

impl CostTable {
    /// Builds a table, rejecting zero delays on anything but constants and
    /// non-zero cost on constants.
    pub fn new(entries: impl IntoIterator<Item = (CellType, CellCost)>) -> Result<Self, Error> {
        let entries: BTreeMap<_, _> = entries.into_iter().collect();
        for (&ty, cost) in &entries {
            let is_const = matches!(ty, CellType::Const0 | CellType::Const1);
            let ok = if is_const {
                cost.area == 0 && cost.delay == Delay::ZERO
            } else {
                cost.delay > Delay::ZERO
            };
            if !ok {
                return Err(Error::InvalidCost(ty));
            }
        }
        Ok(CostTable { entries })
    }

    pub fn get(&self, ty: CellType) -> Result<CellCost, Error> {
        self.entries.get(&ty).copied().ok_or(Error::MissingCost(ty))
    }

    pub fn iter(&self) -> impl Iterator<Item = (CellType, CellCost)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }
}

const fn cost(area: u32, centi_ns: u64) -> CellCost {
    CellCost {
        area,
        delay: Delay::from_centi_ns(centi_ns),
    }
}

/// 45 nm library gates and modules, plus two constants that the published
/// tables leave implicit:
///
/// * `LUT6`: 0 transistors, 24.9 ns. The delay is the only value that makes
///   the Gao per-digit delay (69.56 ns) add up, and it also reproduces both
///   Vazquez delay totals exactly.
/// * `PASS_SWITCH`: 1 transistor, 0.5 ns. The delay closes the proposed
///   design's 41.8 ns critical path (FA + LUT6 + 2 INV + 2 switches).
pub fn builtin_cost_table() -> CostTable {
    CostTable::new([
        (CellType::Inv, cost(1, 100)),
        (CellType::And2, cost(6, 468)),
        (CellType::Or2, cost(6, 450)),
        (CellType::Xor2, cost(8, 472)),
        (CellType::Mux2, cost(20, 1018)),
        (CellType::Ha, cost(14, 472)),
        (CellType::Fa, cost(34, 1390)),
        (CellType::Lut6, cost(0, 2490)),
        (CellType::PassSwitch, cost(1, 50)),
        (CellType::Const0, cost(0, 0)),
        (CellType::Const1, cost(0, 0)),
    ])
    .expect("builtin costs are well formed")
}

/// Per-digit cost of one published adder design. The stated totals are kept
/// as published; the term lists are what they should add up from.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignExpression {
    pub name: &'static str,
    pub area_per_digit: u32,
    pub luts_per_digit: u32,
    pub delay_per_digit: Delay,
    /// Asymptotic delay in digits `N` and bits per digit `b`.
    pub complexity: &'static str,
    pub area_terms: Vec<(CellType, u32)>,
    pub delay_terms: Vec<(CellType, u32)>,
}

use CellType::{And2, Fa, Ha, Inv, Lut6, Mux2, PassSwitch, Xor2};

pub const PROPOSED: &str = "Proposed";
pub const GAO: &str = "Gao";

/// The five compared designs, baselines first.
///
/// * `Gao`: full adder on bit 0, LUTs on the upper three bits with a +3
///   correction and extra fix-up logic.
/// * `Bioul`: carry-chain decimal adder.
/// * `Vazquez-A`: +6 correction on the upper-bit sum with a final 111 to 100
///   replacement.
/// * `Vazquez-B`: carry-chain LUT adder.
/// * `Proposed`: the parallel adder built by [`crate::builder`].
pub fn design_catalog() -> Vec<DesignExpression> {
    vec![
        DesignExpression {
            name: GAO,
            area_per_digit: 132,
            luts_per_digit: 4,
            delay_per_digit: Delay::from_centi_ns(6956),
            complexity: "O(N(b+2)+(N-1))",
            area_terms: vec![(Fa, 1), (Mux2, 3), (Xor2, 3), (Inv, 2), (And2, 2), (Lut6, 4)],
            delay_terms: vec![(Fa, 1), (Mux2, 2), (Xor2, 1), (Inv, 1), (And2, 1), (Lut6, 1)],
        },
        DesignExpression {
            name: "Bioul",
            area_per_digit: 120,
            luts_per_digit: 8,
            delay_per_digit: Delay::from_centi_ns(14072),
            complexity: "O(N(b+1)+(N-1))",
            area_terms: vec![(Lut6, 8), (Mux2, 6)],
            delay_terms: vec![(Lut6, 4), (Mux2, 4)],
        },
        DesignExpression {
            name: "Vazquez-A",
            area_per_digit: 134,
            luts_per_digit: 5,
            delay_per_digit: Delay::from_centi_ns(8074),
            complexity: "O(N(b+3)+(N-1))",
            area_terms: vec![(Lut6, 5), (Mux2, 4), (Xor2, 4), (Inv, 2), (And2, 2)],
            delay_terms: vec![(Lut6, 1), (Mux2, 4), (Xor2, 2), (Inv, 1), (And2, 1)],
        },
        DesignExpression {
            name: "Vazquez-B",
            area_per_digit: 204,
            luts_per_digit: 8,
            delay_per_digit: Delay::from_centi_ns(16864),
            complexity: "O(N(b+3)+(N-1))",
            area_terms: vec![(Lut6, 8), (Mux2, 7), (Xor2, 8)],
            delay_terms: vec![(Lut6, 4), (Mux2, 4), (Xor2, 6)],
        },
        DesignExpression {
            name: PROPOSED,
            area_per_digit: 108,
            luts_per_digit: 4,
            delay_per_digit: Delay::from_centi_ns(4180),
            complexity: "O(N(log2 b)+(N-1))",
            area_terms: vec![(Ha, 3), (Fa, 1), (Lut6, 4), (Inv, 6), (PassSwitch, 26)],
            delay_terms: vec![(Fa, 1), (Lut6, 1), (Inv, 2), (PassSwitch, 2)],
        },
    ]
}

pub fn find_design<'a>(catalog: &'a [DesignExpression], name: &str) -> Result<&'a DesignExpression, Error> {
    catalog
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownDesign(name.to_string()))
}

/// Cost of an `n`-digit instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesignCost {
    pub area: u64,
    pub luts: u64,
    pub delay: Delay,
}

impl DesignCost {
    /// Area-delay product in transistor-nanoseconds.
    pub fn adp(&self) -> f64 {
        (u128::from(self.area) * u128::from(self.delay.centi_ns())) as f64 / 100.0
    }
}

pub fn evaluate_design(d: &DesignExpression, n: usize) -> Result<DesignCost, Error> {
    if n == 0 {
        return Err(Error::InvalidSize(0));
    }
    let n = n as u64;
    Ok(DesignCost {
        area: n * u64::from(d.area_per_digit),
        luts: n * u64::from(d.luts_per_digit),
        delay: d.delay_per_digit * n,
    })
}

/// Percent reductions of `target` relative to `baseline`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Improvement {
    pub area_pct: f64,
    pub delay_pct: f64,
    pub adp_pct: f64,
}

/// `100 * (1 - target / baseline)` per metric. Independent of `N`, so the
/// one-digit figures are used.
pub fn improvements(catalog: &[DesignExpression], baseline: &str, target: &str) -> Result<Improvement, Error> {
    let b = evaluate_design(find_design(catalog, baseline)?, 1)?;
    let t = evaluate_design(find_design(catalog, target)?, 1)?;
    let pct = |t: f64, b: f64| 100.0 * (1.0 - t / b);
    Ok(Improvement {
        area_pct: pct(t.area as f64, b.area as f64),
        delay_pct: pct(t.delay.as_ns(), b.delay.as_ns()),
        adp_pct: pct(t.adp(), b.adp()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub design: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub area_transistors: u64,
    pub luts: u64,
    pub delay_ns: f64,
    pub adp: f64,
}

/// One row per design and digit count, grouped by design.
pub fn compare_report(catalog: &[DesignExpression], n_values: &[usize]) -> Result<Vec<ReportRow>, Error> {
    if n_values.is_empty() {
        return Err(Error::InvalidSize(0));
    }
    let mut rows = Vec::with_capacity(catalog.len() * n_values.len());
    for d in catalog {
        for &n in n_values {
            let c = evaluate_design(d, n)?;
            rows.push(ReportRow {
                design: d.name.to_string(),
                n,
                area_transistors: c.area,
                luts: c.luts,
                delay_ns: c.delay.as_ns(),
                adp: c.adp(),
            });
        }
    }
    Ok(rows)
}

/// Columns: `design,N,area_transistors,luts,delay_ns,adp`.
pub fn write_report_csv<W: io::Write>(rows: &[ReportRow], out: W) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn report_json(rows: &[ReportRow]) -> String {
    serde_json::to_string_pretty(rows).expect("report serialization cannot fail")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Area,
    Luts,
    Delay,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Area => "area",
            Metric::Luts => "luts",
            Metric::Delay => "delay",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reconciliation {
    pub design: String,
    pub metric: Metric,
    pub computed: f64,
    pub stated: f64,
    /// `stated - computed`.
    pub delta: f64,
    #[serde(skip)]
    pub matches: bool,
}

/// Recomputes every stated total from its term list. Returns one entry per
/// design and metric; the catalog itself is left untouched.
pub fn reconcile_expressions(
    catalog: &[DesignExpression],
    costs: &CostTable,
) -> Result<Vec<Reconciliation>, Error> {
    let mut out = Vec::with_capacity(catalog.len() * 3);
    for d in catalog {
        let mut area = 0u64;
        let mut luts = 0u64;
        for &(ty, m) in &d.area_terms {
            if ty == CellType::Lut6 {
                luts += u64::from(m);
            } else {
                area += u64::from(m) * u64::from(costs.get(ty)?.area);
            }
        }
        let delay: Delay = d
            .delay_terms
            .iter()
            .map(|&(ty, m)| costs.get(ty).map(|c| c.delay * u64::from(m)))
            .sum::<Result<Delay, Error>>()?;

        let entry = |metric, computed: f64, stated: f64, matches| Reconciliation {
            design: d.name.to_string(),
            metric,
            computed,
            stated,
            delta: ((stated - computed) * 100.0).round() / 100.0,
            matches,
        };
        out.push(entry(
            Metric::Area,
            area as f64,
            f64::from(d.area_per_digit),
            area == u64::from(d.area_per_digit),
        ));
        out.push(entry(
            Metric::Luts,
            luts as f64,
            f64::from(d.luts_per_digit),
            luts == u64::from(d.luts_per_digit),
        ));
        out.push(entry(
            Metric::Delay,
            delay.as_ns(),
            d.delay_per_digit.as_ns(),
            delay == d.delay_per_digit,
        ));
    }
    Ok(out)
}

/// Columns: `design,metric,computed,stated,delta`.
pub fn write_reconciliation_csv<W: io::Write>(rows: &[Reconciliation], out: W) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_values() {
        let t = builtin_cost_table();
        assert_eq!(t.get(CellType::Fa).unwrap(), cost(34, 1390));
        assert_eq!(t.get(CellType::Inv).unwrap(), cost(1, 100));
        assert_eq!(t.get(CellType::Mux2).unwrap(), cost(20, 1018));
        assert_eq!(t.get(CellType::Lut6).unwrap().delay.as_ns(), 24.9);
        assert_eq!(t.get(CellType::PassSwitch).unwrap().delay.as_ns(), 0.5);
    }

    #[test]
    fn derived_constants_solve_their_equations() {
        let t = builtin_cost_table();
        let d = |ty| t.get(ty).unwrap().delay.centi_ns() as i64;
        // Gao delay total minus its library terms leaves the LUT delay.
        let lut = 6956 - (d(Fa) + 2 * d(Mux2) + d(Xor2) + d(Inv) + d(And2));
        assert_eq!(lut, 2490);
        // Proposed total minus FA, LUT and two inverters leaves two switches.
        let two_switches = 4180 - (d(Fa) + lut + 2 * d(Inv));
        assert_eq!(two_switches, 2 * 50);
    }

    #[test]
    fn cost_table_rejects_zero_gate_delay() {
        assert!(matches!(
            CostTable::new([(CellType::Inv, cost(1, 0))]),
            Err(Error::InvalidCost(CellType::Inv))
        ));
        assert!(CostTable::new([(CellType::Const1, cost(2, 0))]).is_err());
    }

    #[test]
    fn evaluate_design_linear() {
        let cat = design_catalog();
        let p = evaluate_design(find_design(&cat, PROPOSED).unwrap(), 1).unwrap();
        assert_eq!((p.area, p.luts, p.delay.as_ns(), p.adp()), (108, 4, 41.8, 4514.4));
        let g = evaluate_design(find_design(&cat, GAO).unwrap(), 10).unwrap();
        assert_eq!((g.area, g.luts, g.delay.as_ns()), (1320, 40, 695.6));
        assert!(matches!(evaluate_design(&cat[0], 0), Err(Error::InvalidSize(0))));
    }

    #[test]
    fn unknown_design() {
        assert!(matches!(
            improvements(&design_catalog(), "Nope", PROPOSED),
            Err(Error::UnknownDesign(_))
        ));
    }

    #[test]
    fn report_csv_layout() {
        let rows = compare_report(&design_catalog(), &[1]).unwrap();
        let mut buf = Vec::new();
        write_report_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "design,N,area_transistors,luts,delay_ns,adp");
        assert!(lines.contains(&"Proposed,1,108,4,41.8,4514.4"));
        assert!(lines.contains(&"Gao,1,132,4,69.56,9181.92"));
        assert_eq!(lines.len(), 6);
        assert!(compare_report(&design_catalog(), &[]).is_err());
    }

    #[test]
    fn report_json_field_names() {
        let rows = compare_report(&design_catalog(), &[2]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report_json(&rows)).unwrap();
        let first = &v[0];
        for key in ["design", "N", "area_transistors", "luts", "delay_ns", "adp"] {
            assert!(first.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn reconcile_examples() {
        let rec = reconcile_expressions(&design_catalog(), &builtin_cost_table()).unwrap();
        let find = |d: &str, m| rec.iter().find(|r| r.design == d && r.metric == m).unwrap();
        let bioul = find("Bioul", Metric::Delay);
        assert_eq!((bioul.computed, bioul.stated, bioul.delta), (140.32, 140.72, 0.4));
        let va = find("Vazquez-A", Metric::Area);
        assert_eq!((va.computed, va.stated, va.delta), (126.0, 134.0, 8.0));
        let gao = find(GAO, Metric::Delay);
        assert!(gao.matches);
        assert_eq!(gao.delta, 0.0);
    }
}
