//! Parallel BCD addition, from bits to gates.
//!
//! * [`bcd`]: digit and number types plus a schoolbook decimal reference adder.
//! * [`parallel`]: the two-level parallel digit adder with add-3 correction,
//!   with full per-digit traces and the upper-bit truth tables.
//! * [`netlist`]: combinational netlists with simulation, static timing,
//!   area accounting, and JSON/DOT export.
//! * [`builder`]: the LUT-mapped digit adder, N-digit chaining, and a
//!   conventional ripple-correction adder for cross-checking.
//! * [`cost`]: cell cost library and the per-digit area/delay catalog of
//!   the proposed design and four published baselines.
//! * [`cli`]: the `bcdlut` command line.

pub mod bcd;
pub mod builder;
pub mod cli;
pub mod cost;
pub mod netlist;
pub mod parallel;
pub mod verify;

use thiserror::Error;

pub use bcd::{oracle_add, BcdDigit, BcdNumber, Bit};
pub use netlist::{CellType, Netlist};

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a BCD digit")]
    InvalidDigit(u8),
    #[error("{0} is not a bit")]
    InvalidBit(u8),
    #[error("a BCD number needs at least one digit")]
    EmptyNumber,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} {value} out of range 0..={max}")]
    OutOfRange { what: &'static str, value: i64, max: i64 },
    #[error("invalid size {0}")]
    InvalidSize(usize),
    #[error("no cost entry for {0}")]
    MissingCost(CellType),
    #[error("invalid cost entry for {0}")]
    InvalidCost(CellType),
    #[error("unknown design `{0}`")]
    UnknownDesign(String),
    #[error("net `{net}` has {active} active drivers")]
    DriveConflict { net: String, active: usize },
    #[error("primary input `{0}` not assigned")]
    UnassignedInput(String),
    #[error("expected {expected} input values, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("invalid netlist: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidNetlist(Vec<netlist::Violation>),
    #[error("netlist import: {0}")]
    Import(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
