use num_bigint::BigUint;
use proptest::prelude::*;

use bcdlut::builder::{adder_inputs, build_n_digit_adder, build_reference_ripple_adder, decode_outputs, program_correction_luts};
use bcdlut::cost::{builtin_cost_table, design_catalog, evaluate_design};
use bcdlut::netlist::{area, critical_path, Simulator};
use bcdlut::parallel::{add_digit, add_number, Branch};
use bcdlut::{oracle_add, BcdDigit, BcdNumber, Bit};

fn number(max_digits: usize) -> impl Strategy<Value = BcdNumber> {
    prop::collection::vec(0u8..=9, 1..=max_digits).prop_map(|ds| {
        BcdNumber::from_digits(ds.into_iter().map(|d| BcdDigit::from_value(d).unwrap()).collect()).unwrap()
    })
}

fn big(n: &BcdNumber) -> BigUint {
    n.to_decimal_string().parse().unwrap()
}

proptest! {
    #[test]
    fn oracle_matches_bigint(a in number(60), b in number(60), cin in any::<bool>()) {
        let (s, c) = oracle_add(&a, &b, Bit::new(cin));
        let width = a.len().max(b.len());
        prop_assert_eq!(s.len(), width);
        let total = big(&s) + BigUint::from(c.as_u8()) * BigUint::from(10u32).pow(width as u32);
        prop_assert_eq!(total, big(&a) + big(&b) + BigUint::from(u8::from(cin)));
    }

    #[test]
    fn add_number_matches_oracle(a in number(200), b in number(200), cin in any::<bool>()) {
        let cin = Bit::new(cin);
        let (s, c, traces) = add_number(&a, &b, cin);
        prop_assert_eq!(traces.len(), s.len());
        prop_assert_eq!((s, c), oracle_add(&a, &b, cin));
    }

    #[test]
    fn addition_commutes(a in number(40), b in number(40), cin in any::<bool>()) {
        let cin = Bit::new(cin);
        let (s1, c1, _) = add_number(&a, &b, cin);
        let (s2, c2, _) = add_number(&b, &a, cin);
        prop_assert_eq!((s1, c1), (s2, c2));
    }

    #[test]
    fn trace_invariants(a in 0u8..=9, b in 0u8..=9, cin in any::<bool>()) {
        let (a, b) = (BcdDigit::from_value(a).unwrap(), BcdDigit::from_value(b).unwrap());
        let (d, cout, t) = add_digit(a, b, Bit::new(cin));
        let total = a.value() + b.value() + u8::from(cin);
        prop_assert_eq!(2 * t.f + t.s0.as_u8(), total);
        prop_assert_eq!(d.value() + 10 * cout.as_u8(), total);
        prop_assert_eq!(t.branch == Branch::Beta, t.c3().is_set());
    }

    #[test]
    fn netlists_match_algorithm(a in number(12), b in number(12), cin in any::<bool>()) {
        let digits = a.len().max(b.len());
        let cin = Bit::new(cin);
        let inputs = adder_inputs(&a, &b, cin, digits);
        let (s, c, _) = add_number(&a, &b, cin);
        let proposed = build_n_digit_adder(digits, &program_correction_luts()).unwrap();
        let reference = build_reference_ripple_adder(digits).unwrap();
        for net in [&proposed, &reference] {
            let out = Simulator::new(net).unwrap().outputs(&inputs).unwrap();
            prop_assert_eq!(decode_outputs(&out).unwrap(), (s.clone(), c));
        }
    }

    #[test]
    fn adp_scales_quadratically(n in 1usize..5000) {
        for d in design_catalog() {
            let one = evaluate_design(&d, 1).unwrap();
            let many = evaluate_design(&d, n).unwrap();
            prop_assert_eq!(many.area, n as u64 * one.area);
            prop_assert_eq!(many.delay.centi_ns(), n as u64 * one.delay.centi_ns());
            let want = (n * n) as f64 * one.adp();
            prop_assert!((many.adp() - want).abs() <= 1e-9 * want);
        }
    }
}

#[test]
fn n_digit_cost_is_linear() {
    let costs = builtin_cost_table();
    let luts = program_correction_luts();
    let one = build_n_digit_adder(1, &luts).unwrap();
    let a1 = area(&one, &costs).unwrap();
    let d1 = critical_path(&one, &costs).unwrap().delay;
    for n in [2, 7, 32] {
        let net = build_n_digit_adder(n, &luts).unwrap();
        assert_eq!(net.census(), one.census().scaled(n));
        let a = area(&net, &costs).unwrap();
        assert_eq!((a.transistors, a.luts), (a1.transistors * n as u64, a1.luts * n as u64));
        assert_eq!(critical_path(&net, &costs).unwrap().delay, d1 * n as u64);
    }
}
