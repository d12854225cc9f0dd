//! Netlist construction for the proposed adder and a conventional reference.
//!
//! One digit of the proposed adder:
//!
//! ```text
//!  A0 B0 Cin ─ FA ─┬─ S0
//!                  └─ C0 ─────────────┐
//!  Ak Bk ───── HA ─── Sαk, Ck  (k=1..3)│
//!                                      ▼
//!  {Sα3 Sα2 Sα1 C2 C1 C0} ─ 4 × LUT6 ─ γ = Cout S3 S2 S1 (add-3 corrected)
//!
//!  per output bit:
//!    u = C3 ? β|C0=1 : γ     (pass pair, controls C3 / !C3)
//!    v = C3 ? β|C0=0 : γ     (pass pair, controls C3 / !C3)
//!    m = C0 ? u : v          (pass pair, controls C0 / !C0)
//!    out = INV(INV(m))       (level restore)
//! ```
//!
//! The β leaves are constants: `Cout S3 S2 S1` is `1100` when `C0 = 1` and
//! `1011` when `C0 = 0`. The longest path is FA, LUT6, two switches and
//! the two restoring inverters.

use crate::bcd::{BcdDigit, BcdNumber, Bit};
use crate::netlist::{CellKind, LutTable, NetId, Netlist};
use crate::parallel::{correct, gamma_sum, UpperBits};
use crate::Error;

/// Truth tables of the four correction LUTs, in output order
/// `Cout, S3, S2, S1`.
///
/// All four share the input index `Sα3 Sα2 Sα1 C2 C1 C0` read as a 6-bit
/// number (`C0` least significant). Indices whose γ sum exceeds 9 cannot
/// occur for BCD operands; they hold `(sum + 3) mod 16`, the same formula
/// carried past its domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LutProgram {
    pub tables: [LutTable; 4],
}

impl LutProgram {
    pub fn index(s_alpha: u8, c2c1c0: u8) -> u8 {
        ((s_alpha & 0b111) << 3) | (c2c1c0 & 0b111)
    }

    /// The four LUT outputs at `index`.
    pub fn word(&self, index: u8) -> UpperBits {
        let [cout, s3, s2, s1] = self.tables.map(|t| Bit::new(t.get(index)));
        UpperBits { cout, s3, s2, s1 }
    }
}

pub fn program_correction_luts() -> LutProgram {
    let words: Vec<u8> = (0..64u8)
        .map(|index| {
            let f = gamma_sum(index >> 3, index & 0b111);
            match correct(f) {
                Ok(w) => w.to_u8(),
                Err(_) => (f + 3) & 0xF,
            }
        })
        .collect();
    let table = |bit: u8| LutTable::from_fn(|i| (words[i as usize] >> bit) & 1 == 1);
    LutProgram {
        tables: [table(3), table(2), table(1), table(0)],
    }
}

struct DigitPorts {
    a: [NetId; 4],
    b: [NetId; 4],
    cin: NetId,
    /// Sum bits S0..S3, driven by the block.
    s: [NetId; 4],
    cout: NetId,
}

fn proposed_digit(n: &mut Netlist, luts: &LutProgram, p: &str, ports: &DigitPorts) {
    let c0 = n.net(format!("{p}c0"));
    n.add_cell(CellKind::Fa, vec![ports.a[0], ports.b[0], ports.cin], vec![ports.s[0], c0]);

    let mut s_alpha = [c0; 4];
    let mut carry = [c0; 4];
    for k in 1..4 {
        s_alpha[k] = n.net(format!("{p}sa{k}"));
        carry[k] = n.net(format!("{p}c{k}"));
        n.add_cell(CellKind::Ha, vec![ports.a[k], ports.b[k]], vec![s_alpha[k], carry[k]]);
    }

    // LUT input i0 is the index LSB.
    let lut_in = [c0, carry[1], carry[2], s_alpha[1], s_alpha[2], s_alpha[3]];
    let names = ["cout", "s3", "s2", "s1"];
    let gamma: Vec<NetId> = luts
        .tables
        .iter()
        .zip(names)
        .map(|(&t, name)| n.gate(CellKind::Lut6(t), &lut_in, format!("{p}g.{name}")))
        .collect();

    let c3 = carry[3];
    let c3n = n.gate(CellKind::Inv, &[c3], format!("{p}c3n"));
    let c0n = n.gate(CellKind::Inv, &[c0], format!("{p}c0n"));
    let k0 = n.gate(CellKind::Const0, &[], format!("{p}k0"));
    let k1 = n.gate(CellKind::Const1, &[], format!("{p}k1"));

    let beta_c0_high = UpperBits::from_u8(0b1100);
    let beta_c0_low = UpperBits::from_u8(0b1011);
    let bit_of = |w: UpperBits, j: usize| [w.cout, w.s3, w.s2, w.s1][j];
    let outs = [ports.cout, ports.s[3], ports.s[2], ports.s[1]];

    for (j, name) in names.iter().enumerate() {
        let leaf = |w: UpperBits| if bit_of(w, j).is_set() { k1 } else { k0 };
        let u = n.net(format!("{p}u.{name}"));
        let v = n.net(format!("{p}v.{name}"));
        let m = n.net(format!("{p}m.{name}"));
        n.add_cell(CellKind::PassSwitch, vec![c3n, gamma[j]], vec![u]);
        n.add_cell(CellKind::PassSwitch, vec![c3, leaf(beta_c0_high)], vec![u]);
        n.add_cell(CellKind::PassSwitch, vec![c3n, gamma[j]], vec![v]);
        n.add_cell(CellKind::PassSwitch, vec![c3, leaf(beta_c0_low)], vec![v]);
        n.add_cell(CellKind::PassSwitch, vec![c0, u], vec![m]);
        n.add_cell(CellKind::PassSwitch, vec![c0n, v], vec![m]);
        for net in [u, v, m] {
            n.mark_resolved(net);
        }
        let r = n.gate(CellKind::Inv, &[m], format!("{p}r.{name}"));
        n.add_cell(CellKind::Inv, vec![r], vec![outs[j]]);
    }
}

fn reference_digit(n: &mut Netlist, p: &str, ports: &DigitPorts) {
    // Plain 4-bit binary sum z, carry k.
    let mut z = [ports.cin; 4];
    let mut k = ports.cin;
    for i in 0..4 {
        z[i] = if i == 0 { ports.s[0] } else { n.net(format!("{p}z{i}")) };
        let ki = n.net(format!("{p}k{i}"));
        n.add_cell(CellKind::Fa, vec![ports.a[i], ports.b[i], k], vec![z[i], ki]);
        k = ki;
    }

    // Decimal carry: z > 9 or binary overflow.
    let t1 = n.gate(CellKind::And2, &[z[3], z[2]], format!("{p}t1"));
    let t2 = n.gate(CellKind::And2, &[z[3], z[1]], format!("{p}t2"));
    let o1 = n.gate(CellKind::Or2, &[k, t1], format!("{p}o1"));
    n.add_cell(CellKind::Or2, vec![o1, t2], vec![ports.cout]);

    // Add 0110 when the decimal carry is set.
    let e1 = n.net(format!("{p}e1"));
    n.add_cell(CellKind::Ha, vec![z[1], ports.cout], vec![ports.s[1], e1]);
    let e2 = n.net(format!("{p}e2"));
    n.add_cell(CellKind::Fa, vec![z[2], ports.cout, e1], vec![ports.s[2], e2]);
    let e3 = n.net(format!("{p}e3"));
    n.add_cell(CellKind::Ha, vec![z[3], e2], vec![ports.s[3], e3]);
}

/// Primary inputs are `CIN` then, per digit `i` from least significant,
/// `A{i}.0..3` and `B{i}.0..3`. Outputs are `S{i}.0..3` per digit, then
/// `COUT`.
fn chain(
    digits: usize,
    mut block: impl FnMut(&mut Netlist, &str, &DigitPorts),
) -> Result<Netlist, Error> {
    if digits == 0 {
        return Err(Error::InvalidSize(0));
    }
    let mut n = Netlist::new();
    let mut cin = n.add_input("CIN");
    let mut ports = Vec::with_capacity(digits);
    for i in 0..digits {
        let a = [0, 1, 2, 3].map(|k| n.add_input(format!("A{i}.{k}")));
        let b = [0, 1, 2, 3].map(|k| n.add_input(format!("B{i}.{k}")));
        let s = [0, 1, 2, 3].map(|k| n.net(format!("S{i}.{k}")));
        let cout = if i + 1 == digits {
            n.net("COUT")
        } else {
            n.net(format!("CARRY{}", i + 1))
        };
        ports.push(DigitPorts { a, b, cin, s, cout });
        cin = cout;
    }
    for (i, port) in ports.iter().enumerate() {
        block(&mut n, &format!("d{i}."), port);
        for &s in &port.s {
            n.add_output(s);
        }
    }
    let cout = ports.last().expect("digits >= 1").cout;
    n.add_output(cout);
    Ok(n)
}

pub fn build_n_digit_adder(digits: usize, luts: &LutProgram) -> Result<Netlist, Error> {
    chain(digits, |n, p, ports| proposed_digit(n, luts, p, ports))
}

pub fn build_digit_adder(luts: &LutProgram) -> Netlist {
    build_n_digit_adder(1, luts).expect("one digit")
}

/// Conventional BCD adder: 4-bit binary add, detect a sum above 9, add 6.
pub fn build_reference_ripple_adder(digits: usize) -> Result<Netlist, Error> {
    chain(digits, reference_digit)
}

/// Input vector for a netlist built by this module. Operands are
/// zero-extended to `digits`.
pub fn adder_inputs(a: &BcdNumber, b: &BcdNumber, cin: Bit, digits: usize) -> Vec<Bit> {
    let mut v = Vec::with_capacity(1 + 8 * digits);
    v.push(cin);
    for i in 0..digits {
        let (da, db) = (a.digit_or_zero(i), b.digit_or_zero(i));
        v.extend((0..4).map(|k| da.bit(k)));
        v.extend((0..4).map(|k| db.bit(k)));
    }
    v
}

/// Reads the sum and carry back out of an output vector.
pub fn decode_outputs(outputs: &[Bit]) -> Result<(BcdNumber, Bit), Error> {
    let (cout, sums) = outputs.split_last().ok_or(Error::InvalidSize(0))?;
    if sums.len() % 4 != 0 {
        return Err(Error::InvalidSize(sums.len()));
    }
    let digits = sums
        .chunks(4)
        .map(|s| BcdDigit::from_bits(s[3], s[2], s[1], s[0]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((BcdNumber::from_digits(digits)?, *cout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcd::oracle_add;
    use crate::netlist::{CellType, Simulator};

    #[test]
    fn lut_program_examples() {
        let p = program_correction_luts();
        assert_eq!(p.word(LutProgram::index(0b001, 0b001)).to_u8(), 0b0010);
        assert_eq!(p.word(0).to_u8(), 0);
        assert_eq!(p.word(LutProgram::index(0b111, 0b001)).to_u8(), 0b1011);
    }

    #[test]
    fn census_of_one_digit() {
        let n = build_digit_adder(&program_correction_luts());
        let c = n.census();
        assert_eq!(c.count(CellType::Fa), 1);
        assert_eq!(c.count(CellType::Ha), 3);
        assert_eq!(c.count(CellType::Lut6), 4);
        assert_eq!(c.count(CellType::Inv), 10);
        assert_eq!(c.count(CellType::PassSwitch), 24);
        assert!(n.validate().is_ok());
    }

    #[test]
    fn nine_plus_nine_plus_one() {
        let n = build_digit_adder(&program_correction_luts());
        let sim = Simulator::new(&n).unwrap();
        let nine: BcdNumber = "9".parse().unwrap();
        let out = sim.outputs(&adder_inputs(&nine, &nine, Bit::ONE, 1)).unwrap();
        let (s, c) = decode_outputs(&out).unwrap();
        assert_eq!((s.to_decimal_string().as_str(), c), ("9", Bit::ONE));
    }

    #[test]
    fn zero_digits_rejected() {
        let p = program_correction_luts();
        assert!(matches!(build_n_digit_adder(0, &p), Err(Error::InvalidSize(0))));
        assert!(matches!(build_reference_ripple_adder(0), Err(Error::InvalidSize(0))));
    }

    #[test]
    fn one_digit_chain_is_the_digit_adder() {
        let p = program_correction_luts();
        assert_eq!(build_n_digit_adder(1, &p).unwrap(), build_digit_adder(&p));
    }

    #[test]
    fn reference_eight_plus_eight() {
        let n = build_reference_ripple_adder(1).unwrap();
        let sim = Simulator::new(&n).unwrap();
        let eight: BcdNumber = "8".parse().unwrap();
        let out = sim.outputs(&adder_inputs(&eight, &eight, Bit::ZERO, 1)).unwrap();
        assert_eq!(decode_outputs(&out).unwrap(), ("6".parse().unwrap(), Bit::ONE));
    }

    #[test]
    fn three_digit_ripple() {
        let p = program_correction_luts();
        let n = build_n_digit_adder(3, &p).unwrap();
        let sim = Simulator::new(&n).unwrap();
        let a: BcdNumber = "999".parse().unwrap();
        let b: BcdNumber = "001".parse().unwrap();
        let out = sim.outputs(&adder_inputs(&a, &b, Bit::ZERO, 3)).unwrap();
        assert_eq!(decode_outputs(&out).unwrap(), oracle_add(&a, &b, Bit::ZERO));
    }
}
