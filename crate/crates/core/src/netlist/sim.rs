use std::collections::HashMap;

use super::{CellId, CellKind, Netlist, NetId};
use crate::bcd::Bit;
use crate::Error;

/// A validated netlist with its evaluation order precomputed.
#[derive(Clone, Debug)]
pub struct Simulator<'a> {
    netlist: &'a Netlist,
    order: Vec<CellId>,
}

impl<'a> Simulator<'a> {
    pub fn new(netlist: &'a Netlist) -> Result<Self, Error> {
        let order = netlist.require_valid()?;
        Ok(Simulator { netlist, order })
    }

    pub fn netlist(&self) -> &'a Netlist {
        self.netlist
    }

    /// Evaluates with `inputs` given in primary-input order and returns the
    /// value of every net (`None` for nets that end up undriven, such as a
    /// pass-switch node nobody reads).
    pub fn run(&self, inputs: &[Bit]) -> Result<Vec<Option<Bit>>, Error> {
        let n = self.netlist;
        if inputs.len() != n.inputs().len() {
            return Err(Error::InputCount {
                expected: n.inputs().len(),
                got: inputs.len(),
            });
        }
        let mut values: Vec<Option<bool>> = vec![None; n.net_count()];
        let mut active = vec![0u32; n.net_count()];
        for (&net, &v) in n.inputs().iter().zip(inputs) {
            values[net.0] = Some(v.is_set());
        }

        let read = |values: &[Option<bool>], net: NetId| -> Result<bool, Error> {
            values[net.0].ok_or_else(|| Error::DriveConflict {
                net: n.net_name(net).to_string(),
                active: 0,
            })
        };

        for &cid in &self.order {
            let cell = n.cell(cid);
            let ins = &cell.inputs;
            let outs = &cell.outputs;
            match cell.kind {
                CellKind::PassSwitch => {
                    if read(&values, ins[0])? {
                        let v = read(&values, ins[1])?;
                        let y = outs[0];
                        active[y.0] += 1;
                        if active[y.0] > 1 {
                            return Err(Error::DriveConflict {
                                net: n.net_name(y).to_string(),
                                active: active[y.0] as usize,
                            });
                        }
                        values[y.0] = Some(v);
                    }
                }
                CellKind::Const0 => values[outs[0].0] = Some(false),
                CellKind::Const1 => values[outs[0].0] = Some(true),
                CellKind::Inv => values[outs[0].0] = Some(!read(&values, ins[0])?),
                CellKind::And2 => {
                    values[outs[0].0] = Some(read(&values, ins[0])? & read(&values, ins[1])?)
                }
                CellKind::Or2 => {
                    values[outs[0].0] = Some(read(&values, ins[0])? | read(&values, ins[1])?)
                }
                CellKind::Xor2 => {
                    values[outs[0].0] = Some(read(&values, ins[0])? ^ read(&values, ins[1])?)
                }
                CellKind::Mux2 => {
                    let sel = read(&values, ins[0])?;
                    let v = read(&values, if sel { ins[2] } else { ins[1] })?;
                    values[outs[0].0] = Some(v);
                }
                CellKind::Ha => {
                    let (a, b) = (read(&values, ins[0])?, read(&values, ins[1])?);
                    values[outs[0].0] = Some(a ^ b);
                    values[outs[1].0] = Some(a & b);
                }
                CellKind::Fa => {
                    let a = read(&values, ins[0])?;
                    let b = read(&values, ins[1])?;
                    let c = read(&values, ins[2])?;
                    values[outs[0].0] = Some(a ^ b ^ c);
                    values[outs[1].0] = Some((a & b) | (a & c) | (b & c));
                }
                CellKind::Lut6(table) => {
                    let mut index = 0u8;
                    for (k, &i) in ins.iter().enumerate() {
                        index |= u8::from(read(&values, i)?) << k;
                    }
                    values[outs[0].0] = Some(table.get(index));
                }
            }
        }

        for &o in n.outputs() {
            read(&values, o)?;
        }
        Ok(values.into_iter().map(|v| v.map(Bit::new)).collect())
    }

    /// Primary output values, in output order.
    pub fn outputs(&self, inputs: &[Bit]) -> Result<Vec<Bit>, Error> {
        let values = self.run(inputs)?;
        Ok(self
            .netlist
            .outputs()
            .iter()
            .map(|o| values[o.0].expect("outputs checked by run"))
            .collect())
    }
}

/// Evaluates `netlist` on named inputs and returns every driven net by name.
pub fn evaluate(netlist: &Netlist, inputs: &HashMap<String, Bit>) -> Result<HashMap<String, Bit>, Error> {
    let sim = Simulator::new(netlist)?;
    let vector = netlist
        .inputs()
        .iter()
        .map(|&i| {
            let name = netlist.net_name(i);
            inputs
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnassignedInput(name.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let values = sim.run(&vector)?;
    Ok(netlist
        .nets()
        .filter_map(|(id, name)| values[id.0].map(|v| (name.to_string(), v)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::LutTable;

    #[test]
    fn single_inverter() {
        let mut n = Netlist::new();
        let a = n.add_input("a");
        let y = n.gate(CellKind::Inv, &[a], "y");
        n.add_output(y);
        let out = evaluate(&n, &HashMap::from([("a".to_string(), Bit::ONE)])).unwrap();
        assert_eq!(out["y"], Bit::ZERO);
    }

    #[test]
    fn unassigned_input() {
        let mut n = Netlist::new();
        let a = n.add_input("a");
        let y = n.gate(CellKind::Inv, &[a], "y");
        n.add_output(y);
        assert!(matches!(evaluate(&n, &HashMap::new()), Err(Error::UnassignedInput(name)) if name == "a"));
    }

    fn six_input(table: LutTable) -> Netlist {
        let mut n = Netlist::new();
        let ins: Vec<_> = (0..6).map(|i| n.add_input(format!("i{i}"))).collect();
        let y = n.gate(CellKind::Lut6(table), &ins, "y");
        n.add_output(y);
        n
    }

    #[test]
    fn parity_lut_is_xor6() {
        let n = six_input(LutTable::from_fn(|i| i.count_ones() % 2 == 1));
        let sim = Simulator::new(&n).unwrap();
        for v in 0..64u8 {
            let bits: Vec<Bit> = (0..6).map(|k| Bit::new((v >> k) & 1 == 1)).collect();
            let expected = bits.iter().fold(false, |acc, b| acc ^ b.is_set());
            assert_eq!(sim.outputs(&bits).unwrap(), vec![Bit::new(expected)]);
        }
    }

    fn pass_pair(complementary: bool) -> Netlist {
        let mut n = Netlist::new();
        let s = n.add_input("s");
        let a = n.add_input("a");
        let b = n.add_input("b");
        let sn = if complementary {
            n.gate(CellKind::Inv, &[s], "s_n")
        } else {
            s
        };
        let y = n.net("y");
        n.add_cell(CellKind::PassSwitch, vec![s, a], vec![y]);
        n.add_cell(CellKind::PassSwitch, vec![sn, b], vec![y]);
        n.mark_resolved(y);
        n.add_output(y);
        n
    }

    #[test]
    fn complementary_pass_switches_select() {
        let n = pass_pair(true);
        let sim = Simulator::new(&n).unwrap();
        for v in 0..8u8 {
            let bits: Vec<Bit> = (0..3).map(|k| Bit::new((v >> k) & 1 == 1)).collect();
            let (s, a, b) = (bits[0], bits[1], bits[2]);
            let expected = if s.is_set() { a } else { b };
            assert_eq!(sim.outputs(&bits).unwrap(), vec![expected]);
        }
    }

    #[test]
    fn drive_conflicts() {
        let n = pass_pair(false);
        let sim = Simulator::new(&n).unwrap();
        assert!(matches!(
            sim.outputs(&[Bit::ONE, Bit::ZERO, Bit::ZERO]),
            Err(Error::DriveConflict { active: 2, .. })
        ));
        assert!(matches!(
            sim.outputs(&[Bit::ZERO, Bit::ZERO, Bit::ZERO]),
            Err(Error::DriveConflict { active: 0, .. })
        ));
    }

    #[test]
    fn invalid_netlist_is_rejected() {
        let mut n = Netlist::new();
        let y = n.net("y");
        n.add_cell(CellKind::Inv, vec![y], vec![y]);
        assert!(matches!(Simulator::new(&n), Err(Error::InvalidNetlist(_))));
    }
}
