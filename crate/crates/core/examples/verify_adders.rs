//! Cross-checks the bit-level model, the LUT netlist and the ripple reference
//! netlist against plain decimal addition.

use bcdlut::verify::{exhaustive_one_digit, random_cases};

fn main() {
    let r = exhaustive_one_digit().expect("builds");
    println!(
        "1 digit, all {} cases: algorithm {}, netlist {}, reference {}",
        r.cases, r.algorithm_pass, r.netlist_pass, r.reference_pass
    );
    for digits in [4, 16, 64] {
        let r = random_cases(digits, 500, 2024).expect("builds");
        println!("{digits} digits, {} random cases: {}", r.cases, if r.passed() { "ok" } else { "MISMATCH" });
        for m in r.mismatches.iter().take(3) {
            println!("  {m}");
        }
    }
}
