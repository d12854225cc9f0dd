//! Builds the one-digit LUT adder, simulates it, and reports area and the
//! critical path.

use bcdlut::builder::{adder_inputs, build_digit_adder, decode_outputs, program_correction_luts};
use bcdlut::cost::builtin_cost_table;
use bcdlut::netlist::{area, critical_path, Simulator};
use bcdlut::{BcdNumber, Bit};

fn main() {
    let netlist = build_digit_adder(&program_correction_luts());
    let costs = builtin_cost_table();

    println!("cells: {}", netlist.census());
    let a = area(&netlist, &costs).expect("costed");
    println!("area: {} transistors + {} LUT6", a.transistors, a.luts);

    let cp = critical_path(&netlist, &costs).expect("acyclic");
    println!("critical path {} ns:", cp.delay);
    for &c in &cp.cells {
        let cell = netlist.cell(c);
        println!("  {c} {} -> {}", cell.kind.cell_type(), netlist.net_name(cell.outputs[0]));
    }

    let sim = Simulator::new(&netlist).expect("valid");
    for (x, y) in [("7", "5"), ("9", "9"), ("3", "4")] {
        let (a, b): (BcdNumber, BcdNumber) = (x.parse().unwrap(), y.parse().unwrap());
        let out = sim.outputs(&adder_inputs(&a, &b, Bit::ZERO, 1)).expect("simulates");
        let (s, c) = decode_outputs(&out).unwrap();
        println!("{x} + {y} -> carry {c}, digit {s}");
    }
}
