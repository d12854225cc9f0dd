//! Area accounting and additive longest-path timing (zero wire delay).

use std::cmp::Ordering;
use std::rc::Rc;

use super::{CellId, CellType, Netlist};
use crate::cost::{CostTable, Delay};
use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Area {
    /// Transistor count of every non-LUT cell.
    pub transistors: u64,
    pub luts: u64,
}

impl std::ops::Add for Area {
    type Output = Area;
    fn add(self, rhs: Area) -> Area {
        Area {
            transistors: self.transistors + rhs.transistors,
            luts: self.luts + rhs.luts,
        }
    }
}

/// LUTs are counted separately and contribute nothing to the transistor
/// total.
pub fn area(netlist: &Netlist, costs: &CostTable) -> Result<Area, Error> {
    let mut total = Area::default();
    for cell in netlist.cells() {
        let ty = cell.kind.cell_type();
        let cost = costs.get(ty)?;
        if ty == CellType::Lut6 {
            total.luts += 1;
        } else {
            total.transistors += u64::from(cost.area);
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPath {
    pub delay: Delay,
    /// Cells from the launching primary input to the capturing output.
    pub cells: Vec<CellId>,
}

impl CriticalPath {
    pub fn cell_types(&self, netlist: &Netlist) -> Vec<CellType> {
        self.cells
            .iter()
            .map(|&c| netlist.cell(c).kind.cell_type())
            .collect()
    }
}

struct PathNode {
    cell: CellId,
    prev: Option<Rc<PathNode>>,
}

#[derive(Clone)]
struct Arrival {
    delay: Delay,
    path: Option<Rc<PathNode>>,
}

fn materialize(path: &Option<Rc<PathNode>>) -> Vec<CellId> {
    let mut cells = Vec::new();
    let mut cur = path.as_ref();
    while let Some(node) = cur {
        cells.push(node.cell);
        cur = node.prev.as_ref();
    }
    cells.reverse();
    cells
}

/// Later arrival wins; equal arrivals keep the lexicographically smaller
/// cell sequence.
fn better(candidate: &Arrival, current: &Arrival) -> bool {
    match candidate.delay.cmp(&current.delay) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            let same = match (&candidate.path, &current.path) {
                (Some(a), Some(b)) => Rc::ptr_eq(a, b),
                (None, None) => true,
                _ => false,
            };
            !same && materialize(&candidate.path) < materialize(&current.path)
        }
    }
}

fn merge(slot: &mut Option<Arrival>, candidate: Arrival) {
    match slot {
        Some(current) if !better(&candidate, current) => {}
        _ => *slot = Some(candidate),
    }
}

/// Longest primary-input to primary-output path, summing the delay of every
/// traversed cell. Nets fed only by constants carry no arrival time.
pub fn critical_path(netlist: &Netlist, costs: &CostTable) -> Result<CriticalPath, Error> {
    let order = netlist.require_valid()?;
    let mut arrival: Vec<Option<Arrival>> = vec![None; netlist.net_count()];
    for &i in netlist.inputs() {
        arrival[i.0] = Some(Arrival {
            delay: Delay::ZERO,
            path: None,
        });
    }

    for &cid in &order {
        let cell = netlist.cell(cid);
        let delay = costs.get(cell.kind.cell_type())?.delay;
        let mut launch: Option<Arrival> = None;
        for &i in &cell.inputs {
            if let Some(a) = &arrival[i.0] {
                merge(&mut launch, a.clone());
            }
        }
        let out = launch.map(|a| Arrival {
            delay: a.delay + delay,
            path: Some(Rc::new(PathNode { cell: cid, prev: a.path })),
        });
        // A resolved net keeps the latest of its drivers.
        for &o in &cell.outputs {
            if let Some(a) = &out {
                merge(&mut arrival[o.0], a.clone());
            }
        }
    }

    let mut best: Option<Arrival> = None;
    for &o in netlist.outputs() {
        if let Some(a) = &arrival[o.0] {
            merge(&mut best, a.clone());
        }
    }
    Ok(match best {
        Some(a) => CriticalPath {
            delay: a.delay,
            cells: materialize(&a.path),
        },
        None => CriticalPath {
            delay: Delay::ZERO,
            cells: Vec::new(),
        },
    })
}
