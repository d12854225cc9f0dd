//! Combinational netlists over a small cell vocabulary.
//!
//! Nets are named and every net has exactly one driver, with one exception:
//! nets marked *resolved* may be driven by several `PASS_SWITCH` cells, of
//! which exactly one must be conducting at any time.

mod export;
mod sim;
mod timing;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use export::{export_dot, export_json, import_json};
pub use sim::{evaluate, Simulator};
pub use timing::{area, critical_path, Area, CriticalPath};

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub usize);

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// 64-entry truth table of a 6-input LUT. Entry `i` is bit `i`; the LUT's
/// first input is the least significant bit of the index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LutTable(pub u64);

impl LutTable {
    pub fn from_fn(mut f: impl FnMut(u8) -> bool) -> Self {
        let mut bits = 0u64;
        for i in 0..64u8 {
            if f(i) {
                bits |= 1 << i;
            }
        }
        LutTable(bits)
    }

    pub fn get(self, index: u8) -> bool {
        assert!(index < 64, "LUT6 index out of range");
        (self.0 >> index) & 1 == 1
    }
}

/// Cell kind without configuration, the key of a cost table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellType {
    Inv,
    And2,
    Or2,
    Xor2,
    Mux2,
    Ha,
    Fa,
    Lut6,
    PassSwitch,
    Const0,
    Const1,
}

impl CellType {
    pub const ALL: [CellType; 11] = [
        CellType::Inv,
        CellType::And2,
        CellType::Or2,
        CellType::Xor2,
        CellType::Mux2,
        CellType::Ha,
        CellType::Fa,
        CellType::Lut6,
        CellType::PassSwitch,
        CellType::Const0,
        CellType::Const1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CellType::Inv => "INV",
            CellType::And2 => "AND2",
            CellType::Or2 => "OR2",
            CellType::Xor2 => "XOR2",
            CellType::Mux2 => "MUX2",
            CellType::Ha => "HA",
            CellType::Fa => "FA",
            CellType::Lut6 => "LUT6",
            CellType::PassSwitch => "PASS_SWITCH",
            CellType::Const0 => "CONST0",
            CellType::Const1 => "CONST1",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        CellType::ALL.into_iter().find(|t| t.name() == name)
    }

    /// `(inputs, outputs)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            CellType::Inv => (1, 1),
            CellType::And2 | CellType::Or2 | CellType::Xor2 => (2, 1),
            CellType::Mux2 => (3, 1),
            CellType::Ha => (2, 2),
            CellType::Fa => (3, 2),
            CellType::Lut6 => (6, 1),
            CellType::PassSwitch => (2, 1),
            CellType::Const0 | CellType::Const1 => (0, 1),
        }
    }
}

impl fmt::Display for CellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pin conventions:
///
/// | kind        | inputs             | outputs       |
/// |-------------|--------------------|---------------|
/// | MUX2        | `sel, d0, d1`      | `y`           |
/// | HA          | `a, b`             | `sum, carry`  |
/// | FA          | `a, b, cin`        | `sum, cout`   |
/// | LUT6        | `i0 .. i5`         | `y`           |
/// | PASS_SWITCH | `control, data`    | `y`           |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    Inv,
    And2,
    Or2,
    Xor2,
    Mux2,
    Ha,
    Fa,
    Lut6(LutTable),
    PassSwitch,
    Const0,
    Const1,
}

impl CellKind {
    pub fn cell_type(self) -> CellType {
        match self {
            CellKind::Inv => CellType::Inv,
            CellKind::And2 => CellType::And2,
            CellKind::Or2 => CellType::Or2,
            CellKind::Xor2 => CellType::Xor2,
            CellKind::Mux2 => CellType::Mux2,
            CellKind::Ha => CellType::Ha,
            CellKind::Fa => CellType::Fa,
            CellKind::Lut6(_) => CellType::Lut6,
            CellKind::PassSwitch => CellType::PassSwitch,
            CellKind::Const0 => CellType::Const0,
            CellKind::Const1 => CellType::Const1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub kind: CellKind,
    pub inputs: Vec<NetId>,
    pub outputs: Vec<NetId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A net is read (or exported) but nothing drives it.
    Dangling { net: String },
    MultipleDrivers { net: String, drivers: usize },
    /// Cells that could not be ordered because of a combinational loop.
    Cycle { cells: Vec<CellId> },
    Arity {
        cell: CellId,
        kind: CellType,
        inputs: usize,
        outputs: usize,
    },
    /// A resolved net is driven by something other than a pass switch.
    ResolvedDriver { net: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dangling { net } => write!(f, "net `{net}` has no driver"),
            Violation::MultipleDrivers { net, drivers } => {
                write!(f, "net `{net}` has {drivers} drivers")
            }
            Violation::Cycle { cells } => write!(f, "combinational cycle through {} cells", cells.len()),
            Violation::Arity {
                cell,
                kind,
                inputs,
                outputs,
            } => {
                let (ei, eo) = kind.arity();
                write!(f, "{cell} ({kind}) has {inputs}/{outputs} pins, expected {ei}/{eo}")
            }
            Violation::ResolvedDriver { net } => {
                write!(f, "resolved net `{net}` has a driver that is not a pass switch")
            }
        }
    }
}

/// Where a net gets its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Driver {
    Input,
    Cell(CellId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Netlist {
    nets: Vec<String>,
    net_index: HashMap<String, NetId>,
    cells: Vec<Cell>,
    inputs: Vec<NetId>,
    outputs: Vec<NetId>,
    resolved: BTreeSet<NetId>,
}

impl Netlist {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the net called `name`, creating it if needed.
    pub fn net(&mut self, name: impl Into<String>) -> NetId {
        let name = name.into();
        if let Some(&id) = self.net_index.get(&name) {
            return id;
        }
        let id = NetId(self.nets.len());
        self.net_index.insert(name.clone(), id);
        self.nets.push(name);
        id
    }

    pub fn find_net(&self, name: &str) -> Option<NetId> {
        self.net_index.get(name).copied()
    }

    pub fn net_name(&self, id: NetId) -> &str {
        &self.nets[id.0]
    }

    pub fn add_input(&mut self, name: impl Into<String>) -> NetId {
        let id = self.net(name);
        self.inputs.push(id);
        id
    }

    pub fn add_output(&mut self, net: NetId) {
        self.outputs.push(net);
    }

    pub fn mark_resolved(&mut self, net: NetId) {
        self.resolved.insert(net);
    }

    pub fn add_cell(&mut self, kind: CellKind, inputs: Vec<NetId>, outputs: Vec<NetId>) -> CellId {
        let id = CellId(self.cells.len());
        self.cells.push(Cell { kind, inputs, outputs });
        id
    }

    /// Adds a single-output cell driving a fresh net called `out`.
    pub fn gate(&mut self, kind: CellKind, inputs: &[NetId], out: impl Into<String>) -> NetId {
        let y = self.net(out);
        self.add_cell(kind, inputs.to_vec(), vec![y]);
        y
    }

    pub fn nets(&self) -> impl ExactSizeIterator<Item = (NetId, &str)> {
        self.nets.iter().enumerate().map(|(i, n)| (NetId(i), n.as_str()))
    }

    pub fn net_count(&self) -> usize {
        self.nets.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.0]
    }

    pub fn inputs(&self) -> &[NetId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NetId] {
        &self.outputs
    }

    pub fn resolved(&self) -> &BTreeSet<NetId> {
        &self.resolved
    }

    pub fn is_resolved(&self, net: NetId) -> bool {
        self.resolved.contains(&net)
    }

    /// All drivers of every net, indexed by net id.
    pub fn drivers(&self) -> Vec<Vec<Driver>> {
        let mut drivers = vec![Vec::new(); self.nets.len()];
        for &i in &self.inputs {
            drivers[i.0].push(Driver::Input);
        }
        for (ci, cell) in self.cells.iter().enumerate() {
            for &o in &cell.outputs {
                drivers[o.0].push(Driver::Cell(CellId(ci)));
            }
        }
        drivers
    }

    /// Cells reading each net, indexed by net id.
    pub fn readers(&self) -> Vec<Vec<CellId>> {
        let mut readers = vec![Vec::new(); self.nets.len()];
        for (ci, cell) in self.cells.iter().enumerate() {
            for &i in &cell.inputs {
                if !readers[i.0].contains(&CellId(ci)) {
                    readers[i.0].push(CellId(ci));
                }
            }
        }
        readers
    }

    /// Number of cells of each type.
    pub fn census(&self) -> Census {
        let mut census = Census::default();
        for cell in &self.cells {
            *census.counts.entry(cell.kind.cell_type()).or_insert(0) += 1;
        }
        census
    }

    /// Checks the structural invariants, returning every violation found.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();

        for (ci, cell) in self.cells.iter().enumerate() {
            let ty = cell.kind.cell_type();
            if ty.arity() != (cell.inputs.len(), cell.outputs.len()) {
                violations.push(Violation::Arity {
                    cell: CellId(ci),
                    kind: ty,
                    inputs: cell.inputs.len(),
                    outputs: cell.outputs.len(),
                });
            }
        }

        let drivers = self.drivers();
        let mut read = vec![false; self.nets.len()];
        for cell in &self.cells {
            for &i in &cell.inputs {
                read[i.0] = true;
            }
        }
        for &o in &self.outputs {
            read[o.0] = true;
        }
        for (ni, ds) in drivers.iter().enumerate() {
            let name = &self.nets[ni];
            if ds.is_empty() {
                if read[ni] {
                    violations.push(Violation::Dangling { net: name.clone() });
                }
                continue;
            }
            if self.resolved.contains(&NetId(ni)) {
                let bad = ds.iter().any(|d| match d {
                    Driver::Input => true,
                    Driver::Cell(c) => self.cells[c.0].kind != CellKind::PassSwitch,
                });
                if bad {
                    violations.push(Violation::ResolvedDriver { net: name.clone() });
                }
            } else if ds.len() > 1 {
                violations.push(Violation::MultipleDrivers {
                    net: name.clone(),
                    drivers: ds.len(),
                });
            }
        }

        if let Err(cells) = self.topological_order() {
            violations.push(Violation::Cycle { cells });
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Kahn ordering of the cells. On failure returns the cells left on a
    /// cycle (or downstream of one).
    pub fn topological_order(&self) -> Result<Vec<CellId>, Vec<CellId>> {
        let drivers = self.drivers();
        let readers = self.readers();
        let mut pending: Vec<usize> = self
            .cells
            .iter()
            .map(|cell| {
                let mut deps: Vec<usize> = cell
                    .inputs
                    .iter()
                    .flat_map(|i| drivers[i.0].iter())
                    .filter_map(|d| match d {
                        Driver::Cell(c) => Some(c.0),
                        Driver::Input => None,
                    })
                    .collect();
                deps.sort_unstable();
                deps.dedup();
                deps.len()
            })
            .collect();

        let mut ready: Vec<usize> = (0..self.cells.len()).filter(|&c| pending[c] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(self.cells.len());
        while let Some(c) = ready.pop() {
            order.push(CellId(c));
            let mut downstream: Vec<usize> = self.cells[c]
                .outputs
                .iter()
                .flat_map(|o| readers[o.0].iter().map(|r| r.0))
                .collect();
            downstream.sort_unstable();
            downstream.dedup();
            for r in downstream.into_iter().rev() {
                pending[r] -= 1;
                if pending[r] == 0 {
                    ready.push(r);
                }
            }
        }

        if order.len() == self.cells.len() {
            Ok(order)
        } else {
            Err((0..self.cells.len())
                .filter(|&c| pending[c] > 0)
                .map(CellId)
                .collect())
        }
    }

    /// Disjoint union: `other`'s nets are renamed with `prefix`.
    pub fn merge_prefixed(&mut self, other: &Netlist, prefix: &str) {
        let map: Vec<NetId> = other
            .nets
            .iter()
            .map(|n| self.net(format!("{prefix}{n}")))
            .collect();
        for cell in &other.cells {
            self.add_cell(
                cell.kind,
                cell.inputs.iter().map(|i| map[i.0]).collect(),
                cell.outputs.iter().map(|o| map[o.0]).collect(),
            );
        }
        self.inputs.extend(other.inputs.iter().map(|i| map[i.0]));
        self.outputs.extend(other.outputs.iter().map(|o| map[o.0]));
        self.resolved.extend(other.resolved.iter().map(|r| map[r.0]));
    }

    pub(crate) fn require_valid(&self) -> Result<Vec<CellId>, Error> {
        self.validate().map_err(Error::InvalidNetlist)?;
        Ok(self.topological_order().expect("validated netlist is acyclic"))
    }
}

/// Cell counts by type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub counts: std::collections::BTreeMap<CellType, usize>,
}

impl Census {
    pub fn count(&self, ty: CellType) -> usize {
        self.counts.get(&ty).copied().unwrap_or(0)
    }

    pub fn scaled(&self, n: usize) -> Census {
        Census {
            counts: self.counts.iter().map(|(&k, &v)| (k, v * n)).collect(),
        }
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (ty, n) in &self.counts {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{n} {ty}")?;
        }
        Ok(())
    }
}
