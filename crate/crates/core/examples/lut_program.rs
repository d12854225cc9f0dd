//! Dumps the four 64-entry correction LUTs and the hex words they load.

use bcdlut::builder::{program_correction_luts, LutProgram};

fn main() {
    let luts = program_correction_luts();
    for (name, t) in ["Cout", "S3", "S2", "S1"].iter().zip(luts.tables) {
        println!("{name:>4}: {:#018x}", t.0);
    }
    println!();
    println!("Salpha C2C1C0 -> Cout S3 S2 S1");
    for s in 0..8u8 {
        for c in 0..8u8 {
            let w = luts.word(LutProgram::index(s, c));
            let note = if s + c > 9 { "  (unreachable)" } else { "" };
            println!("  {s:03b}    {c:03b}   ->  {w}{note}");
        }
    }
}
