//! Writes an N-digit adder as JSON and Graphviz DOT, then reloads the JSON.
//!
//!     cargo run --example export_netlist -- 4 /tmp/adder
//!     dot -Tsvg /tmp/adder.dot > adder.svg

use std::path::PathBuf;

use bcdlut::builder::{build_n_digit_adder, program_correction_luts};
use bcdlut::netlist::{export_dot, export_json, import_json};

fn main() {
    let mut args = std::env::args().skip(1);
    let digits: usize = args.next().map_or(2, |s| s.parse().expect("digit count"));
    let stem = PathBuf::from(args.next().unwrap_or_else(|| "adder".into()));

    let netlist = build_n_digit_adder(digits, &program_correction_luts()).expect("digits >= 1");
    let json = export_json(&netlist);
    std::fs::write(stem.with_extension("json"), &json).expect("write json");
    std::fs::write(stem.with_extension("dot"), export_dot(&netlist)).expect("write dot");

    let back = import_json(&json).expect("own export parses");
    assert_eq!(back.census(), netlist.census());
    println!(
        "{digits}-digit adder: {} cells, {} nets, written to {}.{{json,dot}}",
        netlist.cells().len(),
        netlist.net_count(),
        stem.display()
    );
}
