//! Prints the upper-bit truth tables for C0 = 1 and C0 = 0 as CSV.

use bcdlut::parallel::{truth_table, write_truth_table_csv};
use bcdlut::Bit;

fn main() {
    for c0 in [Bit::ONE, Bit::ZERO] {
        println!("# C0 = {c0}");
        write_truth_table_csv(&truth_table(c0), std::io::stdout()).expect("stdout");
        println!();
    }
}
