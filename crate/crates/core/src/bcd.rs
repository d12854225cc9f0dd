//! BCD digits and numbers, decimal-string conversion, and the grade-school
//! decimal reference adder used to check every other adder in the crate.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// A single binary signal value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub const fn new(value: bool) -> Self {
        Bit(value)
    }

    pub const fn is_set(self) -> bool {
        self.0
    }

    pub const fn as_u8(self) -> u8 {
        self.0 as u8
    }

    /// Returns an error if `v` is neither 0 nor 1.
    pub fn from_u8(v: u8) -> Result<Self, Error> {
        match v {
            0 => Ok(Bit::ZERO),
            1 => Ok(Bit::ONE),
            _ => Err(Error::InvalidBit(v)),
        }
    }
}

impl From<bool> for Bit {
    fn from(v: bool) -> Self {
        Bit(v)
    }
}

impl From<Bit> for bool {
    fn from(b: Bit) -> Self {
        b.0
    }
}

impl std::ops::Not for Bit {
    type Output = Bit;
    fn not(self) -> Bit {
        Bit(!self.0)
    }
}

impl std::ops::BitXor for Bit {
    type Output = Bit;
    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl std::ops::BitAnd for Bit {
    type Output = Bit;
    fn bitand(self, rhs: Bit) -> Bit {
        Bit(self.0 & rhs.0)
    }
}

impl std::ops::BitOr for Bit {
    type Output = Bit;
    fn bitor(self, rhs: Bit) -> Bit {
        Bit(self.0 | rhs.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// One BCD digit `b3 b2 b1 b0` (weights 8, 4, 2, 1). Always holds 0..=9.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BcdDigit(u8);

impl BcdDigit {
    pub const ZERO: BcdDigit = BcdDigit(0);
    pub const NINE: BcdDigit = BcdDigit(9);

    pub fn from_value(v: u8) -> Result<Self, Error> {
        if v <= 9 {
            Ok(BcdDigit(v))
        } else {
            Err(Error::InvalidDigit(v))
        }
    }

    /// Builds a digit from its four code bits, rejecting the six non-BCD codes.
    pub fn from_bits(b3: Bit, b2: Bit, b1: Bit, b0: Bit) -> Result<Self, Error> {
        let v = (b3.as_u8() << 3) | (b2.as_u8() << 2) | (b1.as_u8() << 1) | b0.as_u8();
        Self::from_value(v)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    /// Bit `i` of the code, `i` in 0..4.
    pub fn bit(self, i: usize) -> Bit {
        assert!(i < 4, "BCD digit has four bits");
        Bit::new((self.0 >> i) & 1 == 1)
    }

    /// Code bits as `[b3, b2, b1, b0]`.
    pub fn bits(self) -> [Bit; 4] {
        [self.bit(3), self.bit(2), self.bit(1), self.bit(0)]
    }
}

impl TryFrom<u8> for BcdDigit {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self, Error> {
        BcdDigit::from_value(v)
    }
}

impl fmt::Display for BcdDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Validated digit constructor.
pub fn digit_from_value(v: u8) -> Result<BcdDigit, Error> {
    BcdDigit::from_value(v)
}

pub fn digit_value(d: BcdDigit) -> u8 {
    d.value()
}

/// A non-empty little-endian sequence of BCD digits: `digits()[0]` is the
/// least significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BcdNumber {
    digits: Vec<BcdDigit>,
}

impl BcdNumber {
    /// Little-endian digits; fails on an empty sequence.
    pub fn from_digits(digits: Vec<BcdDigit>) -> Result<Self, Error> {
        if digits.is_empty() {
            return Err(Error::EmptyNumber);
        }
        Ok(BcdNumber { digits })
    }

    /// `n` zero digits.
    pub fn zero(n: usize) -> Self {
        BcdNumber {
            digits: vec![BcdDigit::ZERO; n.max(1)],
        }
    }

    pub fn digits(&self) -> &[BcdDigit] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digit `i` counting from the least significant, or zero past the end.
    pub fn digit_or_zero(&self, i: usize) -> BcdDigit {
        self.digits.get(i).copied().unwrap_or(BcdDigit::ZERO)
    }

    /// Copy of `self` padded with high zero digits up to `n` digits.
    pub fn zero_extended(&self, n: usize) -> Self {
        let mut digits = self.digits.clone();
        if digits.len() < n {
            digits.resize(n, BcdDigit::ZERO);
        }
        BcdNumber { digits }
    }

    /// Big-endian decimal text, keeping leading zeros.
    pub fn to_decimal_string(&self) -> String {
        self.digits
            .iter()
            .rev()
            .map(|d| char::from(b'0' + d.value()))
            .collect()
    }
}

impl FromStr for BcdNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() {
            return Err(Error::Parse("empty decimal string".into()));
        }
        let digits = s
            .bytes()
            .rev()
            .map(|c| match c {
                b'0'..=b'9' => Ok(BcdDigit(c - b'0')),
                _ => Err(Error::Parse(format!("non-decimal character in {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BcdNumber { digits })
    }
}

impl fmt::Display for BcdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

pub fn number_from_decimal_string(s: &str) -> Result<BcdNumber, Error> {
    s.parse()
}

/// Schoolbook decimal addition, one digit at a time: emit `sum mod 10`,
/// carry `sum >= 10`. Operates on plain integers and never touches the
/// bit-level representation. The shorter operand is zero-extended.
pub fn oracle_add(a: &BcdNumber, b: &BcdNumber, cin: Bit) -> (BcdNumber, Bit) {
    let n = a.len().max(b.len());
    let mut carry = u32::from(cin.as_u8());
    let mut digits = Vec::with_capacity(n);
    for i in 0..n {
        let s = u32::from(a.digit_or_zero(i).value()) + u32::from(b.digit_or_zero(i).value()) + carry;
        digits.push(BcdDigit((s % 10) as u8));
        carry = u32::from(s >= 10);
    }
    (BcdNumber { digits }, Bit::new(carry == 1))
}
