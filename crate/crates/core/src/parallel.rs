//! Bit-level model of the tree-structured parallel BCD adder.
//!
//! A digit is added in two levels. Level one works on every bit position at
//! once: a full add on bit 0 (with the incoming carry) produces `S0` and
//! `C0`, and three half adds on bits 1..3 produce `Sα(3:1)` and `C(3:1)`.
//! Level two depends on the top carry `C3`, which can only be set when both
//! digits are 8 or 9:
//!
//! * `C3 = 0` (γ branch): `F = Sα(3:1) + C2C1C0`; if `F >= 5`, add 3.
//! * `C3 = 1` (β branch): the output is fixed up to `C0`:
//!   `Cout = 1, S3 = C0, S2 = S1 = !C0`.
//!
//! Adding 3 to the half-weight sum `F` is the same as adding 6 to the full
//! digit sum, since `S0` stays in place.

use std::fmt;
use std::io;

use serde::Serialize;

use crate::bcd::{BcdDigit, BcdNumber, Bit};
use crate::Error;

/// The four upper output bits of a digit adder, `Cout S3 S2 S1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct UpperBits {
    pub cout: Bit,
    pub s3: Bit,
    pub s2: Bit,
    pub s1: Bit,
}

impl UpperBits {
    /// Unpacks the low four bits of `v` as `Cout S3 S2 S1`.
    pub fn from_u8(v: u8) -> Self {
        UpperBits {
            cout: Bit::new(v & 0b1000 != 0),
            s3: Bit::new(v & 0b0100 != 0),
            s2: Bit::new(v & 0b0010 != 0),
            s1: Bit::new(v & 0b0001 != 0),
        }
    }

    pub fn to_u8(self) -> u8 {
        (self.cout.as_u8() << 3) | (self.s3.as_u8() << 2) | (self.s2.as_u8() << 1) | self.s1.as_u8()
    }

    /// `S3 S2 S1` as a 3-bit value.
    pub fn sum_bits(self) -> u8 {
        self.to_u8() & 0b111
    }
}

impl fmt::Display for UpperBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.to_u8())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Gamma,
    Beta,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Gamma => "gamma",
            Branch::Beta => "beta",
        })
    }
}

/// Every intermediate signal of one digit addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitTrace {
    pub s0: Bit,
    pub c0: Bit,
    /// `Sα3 Sα2 Sα1` packed as a 3-bit value.
    pub s_alpha: u8,
    /// `C3 C2 C1` packed as a 3-bit value.
    pub carries: u8,
    /// Intermediate sum `F(4:1) = Sα(3:1) + C3C2C1C0`, with `C3` at weight 8.
    pub f: u8,
    pub add3_applied: bool,
    pub branch: Branch,
    /// LUT-path candidate (computed in hardware regardless of the branch).
    pub gamma: UpperBits,
    pub beta: UpperBits,
    pub out_digit: BcdDigit,
    pub cout: Bit,
}

impl DigitTrace {
    pub fn c3(&self) -> Bit {
        Bit::new(self.carries & 0b100 != 0)
    }

    /// `C2 C1 C0` as a 3-bit value, the carry operand of the γ sum.
    pub fn low_carries(&self) -> u8 {
        ((self.carries & 0b011) << 1) | self.c0.as_u8()
    }
}

/// `Sα(3:1) + C2C1C0`, both read as 3-bit binary numbers.
pub fn gamma_sum(s_alpha: u8, c2c1c0: u8) -> u8 {
    debug_assert!(s_alpha < 8 && c2c1c0 < 8);
    (s_alpha & 0b111) + (c2c1c0 & 0b111)
}

/// Add-3 correction: values below 5 pass through, values 5..=9 get 3 added
/// and the 4-bit result is split into `Cout` and `S3 S2 S1`.
pub fn correct(f: u8) -> Result<UpperBits, Error> {
    match f {
        0..=4 => Ok(UpperBits::from_u8(f)),
        5..=9 => Ok(UpperBits::from_u8(f + 3)),
        _ => Err(Error::OutOfRange {
            what: "intermediate sum",
            value: i64::from(f),
            max: 9,
        }),
    }
}

/// Fixed output for the case where both digits are 8 or 9.
pub fn beta_override(c0: Bit) -> UpperBits {
    UpperBits {
        cout: Bit::ONE,
        s3: c0,
        s2: !c0,
        s1: !c0,
    }
}

pub fn select_output(c3: Bit, beta: UpperBits, gamma: UpperBits) -> UpperBits {
    if c3.is_set() {
        beta
    } else {
        gamma
    }
}

fn majority(a: Bit, b: Bit, c: Bit) -> Bit {
    (a & b) | (a & c) | (b & c)
}

/// Adds two digits and a carry, returning `(digit, cout, trace)`.
pub fn add_digit(a: BcdDigit, b: BcdDigit, cin: Bit) -> (BcdDigit, Bit, DigitTrace) {
    let (a0, b0) = (a.bit(0), b.bit(0));
    let s0 = a0 ^ b0 ^ cin;
    let c0 = majority(a0, b0, cin);

    // Half adds on bits 1..3, all independent of each other.
    let mut s_alpha = 0u8;
    let mut carries = 0u8;
    for i in 1..4 {
        let (ai, bi) = (a.bit(i), b.bit(i));
        s_alpha |= (ai ^ bi).as_u8() << (i - 1);
        carries |= (ai & bi).as_u8() << (i - 1);
    }
    let c3 = Bit::new(carries & 0b100 != 0);
    let c2c1c0 = ((carries & 0b011) << 1) | c0.as_u8();

    let g = gamma_sum(s_alpha, c2c1c0);
    let gamma = correct(g).expect("gamma sum of valid BCD digits is at most 9");
    let beta = beta_override(c0);
    let upper = select_output(c3, beta, gamma);

    let f = g + (c3.as_u8() << 3);
    let digit = BcdDigit::from_bits(upper.s3, upper.s2, upper.s1, s0)
        .expect("corrected output is a BCD digit");
    let trace = DigitTrace {
        s0,
        c0,
        s_alpha,
        carries,
        f,
        add3_applied: f >= 5,
        branch: if c3.is_set() { Branch::Beta } else { Branch::Gamma },
        gamma,
        beta,
        out_digit: digit,
        cout: upper.cout,
    };
    (digit, upper.cout, trace)
}

/// Ripples [`add_digit`] from the least significant digit up. The shorter
/// operand is zero-extended.
pub fn add_number(a: &BcdNumber, b: &BcdNumber, cin: Bit) -> (BcdNumber, Bit, Vec<DigitTrace>) {
    let n = a.len().max(b.len());
    let mut carry = cin;
    let mut digits = Vec::with_capacity(n);
    let mut traces = Vec::with_capacity(n);
    for i in 0..n {
        let (d, c, t) = add_digit(a.digit_or_zero(i), b.digit_or_zero(i), carry);
        digits.push(d);
        traces.push(t);
        carry = c;
    }
    let sum = BcdNumber::from_digits(digits).expect("n >= 1");
    (sum, carry, traces)
}

/// One row of the upper-bit truth table for a fixed `C0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruthTableRow {
    /// `B(3:1)`
    pub b_in: u8,
    /// `A(3:1)`
    pub a_in: u8,
    pub s_alpha: u8,
    /// `C(3:1)`
    pub c: u8,
    pub c0: Bit,
    /// `F(4:1)`
    pub f: u8,
    pub add3: bool,
    pub cout: Bit,
    pub s3: Bit,
    pub s2: Bit,
    pub s1: Bit,
}

impl TruthTableRow {
    pub const CSV_HEADER: [&'static str; 11] = [
        "B(3:1)",
        "A(3:1)",
        "S_alpha(3:1)",
        "C(3:1)",
        "C0",
        "F(4:1)",
        "Add3",
        "Cout",
        "S3",
        "S2",
        "S1",
    ];

    pub fn csv_fields(&self) -> [String; 11] {
        [
            format!("{:03b}", self.b_in),
            format!("{:03b}", self.a_in),
            format!("{:03b}", self.s_alpha),
            format!("{:03b}", self.c),
            self.c0.to_string(),
            format!("{:04b}", self.f),
            if self.add3 { "Add3" } else { "-" }.to_string(),
            self.cout.to_string(),
            self.s3.to_string(),
            self.s2.to_string(),
            self.s1.to_string(),
        ]
    }

    pub fn to_csv_line(&self) -> String {
        self.csv_fields().join(",")
    }
}

/// Truth table over every pair of upper-bit patterns that a valid BCD digit
/// can carry (`000..=100`), for a fixed `C0`. Rows are ordered by `B(3:1)`,
/// then `A(3:1)`.
pub fn truth_table(c0: Bit) -> Vec<TruthTableRow> {
    let mut rows = Vec::with_capacity(25);
    for b_in in 0..=4u8 {
        for a_in in 0..=4u8 {
            let s_alpha = a_in ^ b_in;
            let c = a_in & b_in;
            let c3 = Bit::new(c & 0b100 != 0);
            let c2c1c0 = ((c & 0b011) << 1) | c0.as_u8();
            let g = gamma_sum(s_alpha, c2c1c0);
            let f = g + (c3.as_u8() << 3);
            let out = if c3.is_set() {
                beta_override(c0)
            } else {
                correct(g).expect("gamma sum of BCD upper bits is at most 9")
            };
            rows.push(TruthTableRow {
                b_in,
                a_in,
                s_alpha,
                c,
                c0,
                f,
                add3: f >= 5,
                cout: out.cout,
                s3: out.s3,
                s2: out.s2,
                s1: out.s1,
            });
        }
    }
    rows
}

/// Writes the truth table as CSV, header first.
pub fn write_truth_table_csv<W: io::Write>(rows: &[TruthTableRow], out: W) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TruthTableRow::CSV_HEADER)?;
    for row in rows {
        w.write_record(row.csv_fields())?;
    }
    w.flush()?;
    Ok(())
}
