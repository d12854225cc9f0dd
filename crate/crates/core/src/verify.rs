//! Equivalence runs of the bit-level model and both netlists against the
//! decimal reference adder.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bcd::{oracle_add, BcdDigit, BcdNumber, Bit};
use crate::builder::{
    adder_inputs, build_n_digit_adder, build_reference_ripple_adder, decode_outputs, program_correction_luts,
};
use crate::netlist::{Netlist, Simulator};
use crate::parallel::add_number;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Algorithm,
    Netlist,
    Reference,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Algorithm => "algorithm",
            Route::Netlist => "netlist",
            Route::Reference => "reference",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub route: Route,
    pub a: BcdNumber,
    pub b: BcdNumber,
    pub cin: Bit,
    pub expected: (BcdNumber, Bit),
    /// `None` when the netlist failed to evaluate.
    pub got: Option<(BcdNumber, Bit)>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} + {} + cin {} expected carry {} sum {}, got ",
            self.route, self.a, self.b, self.cin, self.expected.1, self.expected.0
        )?;
        match &self.got {
            Some((s, c)) => write!(f, "carry {c} sum {s}"),
            None => f.write_str("an evaluation error"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub cases: usize,
    pub algorithm_pass: usize,
    pub netlist_pass: usize,
    pub reference_pass: usize,
    /// In case order.
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

struct Routes {
    digits: usize,
    proposed: Netlist,
    reference: Netlist,
}

impl Routes {
    fn new(digits: usize) -> Result<Self, Error> {
        Ok(Routes {
            digits,
            proposed: build_n_digit_adder(digits, &program_correction_luts())?,
            reference: build_reference_ripple_adder(digits)?,
        })
    }

    fn check(
        &self,
        proposed: &Simulator<'_>,
        reference: &Simulator<'_>,
        a: &BcdNumber,
        b: &BcdNumber,
        cin: Bit,
    ) -> Vec<Mismatch> {
        let expected = oracle_add(a, b, cin);
        let inputs = adder_inputs(a, b, cin, self.digits);
        let (s, c, _) = add_number(a, b, cin);
        let candidates = [
            (Route::Algorithm, Some((s, c))),
            (Route::Netlist, proposed.outputs(&inputs).and_then(|o| decode_outputs(&o)).ok()),
            (Route::Reference, reference.outputs(&inputs).and_then(|o| decode_outputs(&o)).ok()),
        ];
        candidates
            .into_iter()
            .filter(|(_, got)| got.as_ref() != Some(&expected))
            .map(|(route, got)| Mismatch {
                route,
                a: a.clone(),
                b: b.clone(),
                cin,
                expected: expected.clone(),
                got,
            })
            .collect()
    }

    fn run(&self, cases: Vec<(BcdNumber, BcdNumber, Bit)>) -> Result<VerifyReport, Error> {
        let proposed = Simulator::new(&self.proposed)?;
        let reference = Simulator::new(&self.reference)?;
        let results: Vec<Vec<Mismatch>> = cases
            .par_iter()
            .map(|(a, b, cin)| self.check(&proposed, &reference, a, b, *cin))
            .collect();
        let count = |route| {
            results
                .iter()
                .filter(|ms| ms.iter().all(|m| m.route != route))
                .count()
        };
        Ok(VerifyReport {
            cases: cases.len(),
            algorithm_pass: count(Route::Algorithm),
            netlist_pass: count(Route::Netlist),
            reference_pass: count(Route::Reference),
            mismatches: results.into_iter().flatten().collect(),
        })
    }
}

/// All 10 x 10 x 2 one-digit cases.
pub fn exhaustive_one_digit() -> Result<VerifyReport, Error> {
    let mut cases = Vec::with_capacity(200);
    for a in 0..=9u8 {
        for b in 0..=9u8 {
            for cin in [Bit::ZERO, Bit::ONE] {
                let num = |v| BcdNumber::from_digits(vec![BcdDigit::from_value(v).expect("0..=9")]).expect("one digit");
                cases.push((num(a), num(b), cin));
            }
        }
    }
    Routes::new(1)?.run(cases)
}

pub fn random_operand<R: Rng>(rng: &mut R, digits: usize) -> BcdNumber {
    let digits = (0..digits)
        .map(|_| BcdDigit::from_value(rng.gen_range(0..=9)).expect("0..=9"))
        .collect();
    BcdNumber::from_digits(digits).expect("digits >= 1")
}

/// Case `i` draws from its own ChaCha stream of `seed`, so the cases do not
/// depend on how the work is split across threads.
pub fn random_case(seed: u64, index: u64, digits: usize) -> (BcdNumber, BcdNumber, Bit) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let a = random_operand(&mut rng, digits);
    let b = random_operand(&mut rng, digits);
    let cin = Bit::new(rng.gen());
    (a, b, cin)
}

pub fn random_cases(digits: usize, cases: usize, seed: u64) -> Result<VerifyReport, Error> {
    if digits == 0 {
        return Err(Error::InvalidSize(0));
    }
    let inputs = (0..cases as u64)
        .map(|i| random_case(seed, i, digits))
        .collect();
    Routes::new(digits)?.run(inputs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_passes() {
        let r = exhaustive_one_digit().unwrap();
        assert_eq!(r.cases, 200);
        assert_eq!((r.algorithm_pass, r.netlist_pass, r.reference_pass), (200, 200, 200));
        assert!(r.passed());
    }

    #[test]
    fn random_is_reproducible() {
        assert_eq!(random_case(7, 3, 20), random_case(7, 3, 20));
        assert_ne!(random_case(7, 3, 20), random_case(7, 4, 20));
        let r = random_cases(12, 25, 7).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 25);
    }

    #[test]
    fn zero_digits() {
        assert!(matches!(random_cases(0, 1, 0), Err(Error::InvalidSize(0))));
    }
}
