//! Adds two decimal numbers digit by digit and prints every internal signal.
//!
//!     cargo run --example add_trace -- 4589 7318

use bcdlut::parallel::add_number;
use bcdlut::{BcdNumber, Bit};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = match args.as_slice() {
        [a, b, ..] => (a.as_str(), b.as_str()),
        _ => ("4589", "7318"),
    };
    let a: BcdNumber = a.parse().expect("decimal operand");
    let b: BcdNumber = b.parse().expect("decimal operand");
    let (sum, carry, traces) = add_number(&a, &b, Bit::ZERO);

    println!("{a} + {b} = {}{sum}", if carry.is_set() { "1" } else { "" });
    println!("digit  S0 C0  Salpha  C(3:1)  F     branch  out");
    for (i, t) in traces.iter().enumerate() {
        println!(
            "{i:<5}  {}  {}   {:03b}     {:03b}     {:04b}  {:<6}  {} carry {}",
            t.s0, t.c0, t.s_alpha, t.carries, t.f, t.branch.to_string(), t.out_digit, t.cout
        );
    }
}
