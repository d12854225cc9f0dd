//! JSON and Graphviz DOT forms of a netlist.
//!
//! JSON layout:
//!
//! ```json
//! {"nets":["a","y"],
//!  "cells":[{"kind":"INV","in":["a"],"out":["y"]}],
//!  "inputs":["a"],"outputs":["y"],"resolved":[]}
//! ```
//!
//! LUT6 cells carry `"truth"`: 16 hex digits of the 64-bit table, entry 0 in
//! the least significant bit.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{CellKind, CellType, Driver, LutTable, Netlist, NetId};
use crate::Error;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetlistJson {
    nets: Vec<String>,
    cells: Vec<CellJson>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    resolved: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    truth: Option<String>,
    #[serde(rename = "in")]
    inputs: Vec<String>,
    out: Vec<String>,
}

pub fn export_json(netlist: &Netlist) -> String {
    let names = |ids: &[NetId]| -> Vec<String> {
        ids.iter().map(|&i| netlist.net_name(i).to_string()).collect()
    };
    let doc = NetlistJson {
        nets: netlist.nets().map(|(_, n)| n.to_string()).collect(),
        cells: netlist
            .cells()
            .iter()
            .map(|c| CellJson {
                kind: c.kind.cell_type().name().to_string(),
                truth: match c.kind {
                    CellKind::Lut6(t) => Some(format!("{:016x}", t.0)),
                    _ => None,
                },
                inputs: names(&c.inputs),
                out: names(&c.outputs),
            })
            .collect(),
        inputs: names(netlist.inputs()),
        outputs: names(netlist.outputs()),
        resolved: netlist
            .resolved()
            .iter()
            .map(|&r| netlist.net_name(r).to_string())
            .collect(),
    };
    serde_json::to_string(&doc).expect("netlist JSON serialization cannot fail")
}

/// Parses the JSON produced by [`export_json`]. The result is not validated;
/// call [`Netlist::validate`] before simulating it.
pub fn import_json(text: &str) -> Result<Netlist, Error> {
    let doc: NetlistJson = serde_json::from_str(text)?;
    let mut n = Netlist::new();
    for name in &doc.nets {
        if n.find_net(name).is_some() {
            return Err(Error::Import(format!("duplicate net `{name}`")));
        }
        n.net(name.clone());
    }
    let lookup = |n: &Netlist, name: &str| {
        n.find_net(name)
            .ok_or_else(|| Error::Import(format!("unknown net `{name}`")))
    };
    for cell in &doc.cells {
        let ty = CellType::from_name(&cell.kind)
            .ok_or_else(|| Error::Import(format!("unknown cell kind `{}`", cell.kind)))?;
        let kind = match (ty, &cell.truth) {
            (CellType::Lut6, Some(t)) => CellKind::Lut6(LutTable(
                u64::from_str_radix(t, 16)
                    .ok()
                    .filter(|_| t.len() == 16)
                    .ok_or_else(|| Error::Import(format!("bad LUT6 truth table `{t}`")))?,
            )),
            (CellType::Lut6, None) => return Err(Error::Import("LUT6 cell without truth table".into())),
            (_, Some(_)) => {
                return Err(Error::Import(format!("{} cell cannot carry a truth table", cell.kind)))
            }
            (CellType::Inv, None) => CellKind::Inv,
            (CellType::And2, None) => CellKind::And2,
            (CellType::Or2, None) => CellKind::Or2,
            (CellType::Xor2, None) => CellKind::Xor2,
            (CellType::Mux2, None) => CellKind::Mux2,
            (CellType::Ha, None) => CellKind::Ha,
            (CellType::Fa, None) => CellKind::Fa,
            (CellType::PassSwitch, None) => CellKind::PassSwitch,
            (CellType::Const0, None) => CellKind::Const0,
            (CellType::Const1, None) => CellKind::Const1,
        };
        let ins = cell
            .inputs
            .iter()
            .map(|s| lookup(&n, s))
            .collect::<Result<Vec<_>, _>>()?;
        let outs = cell
            .out
            .iter()
            .map(|s| lookup(&n, s))
            .collect::<Result<Vec<_>, _>>()?;
        n.add_cell(kind, ins, outs);
    }
    for name in &doc.inputs {
        let id = lookup(&n, name)?;
        n.inputs.push(id);
    }
    for name in &doc.outputs {
        let id = lookup(&n, name)?;
        n.add_output(id);
    }
    for name in &doc.resolved {
        let id = lookup(&n, name)?;
        n.mark_resolved(id);
    }
    Ok(n)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Cells become boxes, primary inputs and outputs become ellipses, and
/// every net becomes one edge per (driver, reader) pair, labelled with the
/// net name.
pub fn export_dot(netlist: &Netlist) -> String {
    let mut out = String::from("digraph netlist {\n  rankdir=LR;\n");
    for &i in netlist.inputs() {
        let name = netlist.net_name(i);
        let _ = writeln!(out, "  {} [shape=ellipse, label={}];", quote(&format!("in:{name}")), quote(name));
    }
    for &o in netlist.outputs() {
        let name = netlist.net_name(o);
        let _ = writeln!(out, "  {} [shape=ellipse, label={}];", quote(&format!("out:{name}")), quote(name));
    }
    for (ci, cell) in netlist.cells().iter().enumerate() {
        let _ = writeln!(
            out,
            "  {} [shape=box, label={}];",
            quote(&format!("c{ci}")),
            quote(cell.kind.cell_type().name())
        );
    }

    let drivers = netlist.drivers();
    let readers = netlist.readers();
    let is_output: Vec<bool> = {
        let mut v = vec![false; netlist.net_count()];
        for &o in netlist.outputs() {
            v[o.0] = true;
        }
        v
    };
    for (net, name) in netlist.nets() {
        let style = if netlist.is_resolved(net) { ", style=dashed" } else { "" };
        for d in &drivers[net.0] {
            let from = match d {
                Driver::Input => format!("in:{name}"),
                Driver::Cell(c) => format!("c{}", c.0),
            };
            let mut sinks: Vec<String> = readers[net.0].iter().map(|r| format!("c{}", r.0)).collect();
            if is_output[net.0] {
                sinks.push(format!("out:{name}"));
            }
            for to in sinks {
                let _ = writeln!(out, "  {} -> {} [label={}{style}];", quote(&from), quote(&to), quote(name));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_netlist_json() {
        assert_eq!(
            export_json(&Netlist::new()),
            r#"{"nets":[],"cells":[],"inputs":[],"outputs":[],"resolved":[]}"#
        );
    }

    #[test]
    fn lut_truth_is_hex() {
        let mut n = Netlist::new();
        let ins: Vec<_> = (0..6).map(|i| n.add_input(format!("i{i}"))).collect();
        let y = n.gate(CellKind::Lut6(LutTable(0x8000_0000_0000_0001)), &ins, "y");
        n.add_output(y);
        let json = export_json(&n);
        assert!(json.contains(r#"{"kind":"LUT6","truth":"8000000000000001","in":["i0","i1","i2","i3","i4","i5"],"out":["y"]}"#));
        assert_eq!(import_json(&json).unwrap(), n);
    }

    #[test]
    fn import_rejects_bad_documents() {
        for doc in [
            r#"{"nets":["a"],"cells":[{"kind":"NAND","in":["a"],"out":["a"]}],"inputs":[],"outputs":[],"resolved":[]}"#,
            r#"{"nets":["a"],"cells":[{"kind":"INV","in":["b"],"out":["a"]}],"inputs":[],"outputs":[],"resolved":[]}"#,
            r#"{"nets":["a","a"],"cells":[],"inputs":[],"outputs":[],"resolved":[]}"#,
            r#"{"nets":["a"],"cells":[{"kind":"LUT6","truth":"xyz","in":[],"out":["a"]}],"inputs":[],"outputs":[],"resolved":[]}"#,
            r#"{"nets":["a"],"cells":[{"kind":"INV","truth":"0000000000000000","in":["a"],"out":["a"]}],"inputs":[],"outputs":[],"resolved":[]}"#,
        ] {
            assert!(import_json(doc).is_err(), "{doc}");
        }
        assert!(matches!(import_json("{"), Err(Error::Json(_))));
    }

    #[test]
    fn dot_lists_cells_and_edges() {
        let mut n = Netlist::new();
        let a = n.add_input("a");
        let y = n.gate(CellKind::Inv, &[a], "y");
        n.add_output(y);
        let dot = export_dot(&n);
        assert!(dot.starts_with("digraph netlist {"));
        assert!(dot.contains(r#""c0" [shape=box, label="INV"];"#));
        assert!(dot.contains(r#""in:a" -> "c0" [label="a"];"#));
        assert!(dot.contains(r#""c0" -> "out:y" [label="y"];"#));
        assert!(dot.trim_end().ends_with('}'));
    }
}
