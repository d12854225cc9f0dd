//! Builds a two-way selector from complementary pass switches by hand, the
//! same structure the digit adder uses to choose its outputs.

use std::collections::HashMap;

use bcdlut::cost::builtin_cost_table;
use bcdlut::netlist::{critical_path, evaluate, CellKind};
use bcdlut::{Bit, Netlist};

fn main() {
    let mut n = Netlist::new();
    let sel = n.add_input("sel");
    let d0 = n.add_input("d0");
    let d1 = n.add_input("d1");
    let nsel = n.gate(CellKind::Inv, &[sel], "nsel");
    let y = n.net("y");
    n.mark_resolved(y);
    n.add_cell(CellKind::PassSwitch, vec![nsel, d0], vec![y]);
    n.add_cell(CellKind::PassSwitch, vec![sel, d1], vec![y]);
    let ny = n.gate(CellKind::Inv, &[y], "ny");
    let out = n.gate(CellKind::Inv, &[ny], "out");
    n.add_output(out);

    let cp = critical_path(&n, &builtin_cost_table()).unwrap();
    println!("critical path {} ns through {} cells", cp.delay, cp.cells.len());
    for s in [false, true] {
        for (a, b) in [(false, true), (true, false)] {
            let inputs = HashMap::from([
                ("sel".to_string(), Bit::new(s)),
                ("d0".to_string(), Bit::new(a)),
                ("d1".to_string(), Bit::new(b)),
            ]);
            let o = evaluate(&n, &inputs).unwrap();
            println!("sel={} d0={} d1={} -> out={}", Bit::new(s), Bit::new(a), Bit::new(b), o["out"]);
        }
    }
}
