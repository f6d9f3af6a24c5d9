//! Formulation for arbitrary graphs: a slot whose cycle has vertices on both
//! sides of a vertex cut must use at least two edges of that cut.
//!
//! For every nonempty proper `S` and slot, `b` says the cycle meets `S`,
//! `g` that it meets the complement, and `z` that both hold. The OR and AND
//! relations and the implication `z = 1 => cut >= 2` are written as plain
//! linear rows.

use super::{Formulation, IpError, IpModel, Sense, VarRole};
use crate::graph::Graph;

pub fn build_ip_gen(g: &Graph) -> Result<IpModel, IpError> {
    let n = g.order();
    let mut model = IpModel::new(g, Formulation::Gen)?;
    let (x, y) = model.add_cycle_slots(g);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let full = (1u32 << n) - 1;
    for slot in 1..=model.slots {
        for mask in 1..full {
            let rest = full & !mask;
            let b = model.add_var(format!("b_S{mask}_c{slot}"), VarRole::Inside { mask, slot });
            let gm = model.add_var(format!("g_S{mask}_c{slot}"), VarRole::Outside { mask, slot });
            let z = model.add_var(format!("z_S{mask}_c{slot}"), VarRole::Split { mask, slot });
            for (side, var, tag) in [(mask, b, 'b'), (rest, gm, 'g')] {
                let members: Vec<usize> = (0..n).filter(|&v| side >> v & 1 == 1).collect();
                for &v in &members {
                    model.add_constraint(
                        format!("{tag}ge_S{mask}_v{v}_c{slot}"),
                        vec![(var, 1), (y[v][slot - 1], -1)],
                        Sense::Ge,
                        0,
                    );
                }
                let mut terms = vec![(var, 1)];
                terms.extend(members.iter().map(|&v| (y[v][slot - 1], -1)));
                model.add_constraint(format!("{tag}le_S{mask}_c{slot}"), terms, Sense::Le, 0);
            }
            model.add_constraint(format!("zb_S{mask}_c{slot}"), vec![(z, 1), (b, -1)], Sense::Le, 0);
            model.add_constraint(format!("zg_S{mask}_c{slot}"), vec![(z, 1), (gm, -1)], Sense::Le, 0);
            model.add_constraint(format!("zand_S{mask}_c{slot}"), vec![(z, 1), (b, -1), (gm, -1)], Sense::Ge, -1);
            let mut cut: Vec<(usize, i64)> = edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, c))| (mask >> a ^ mask >> c) & 1 == 1)
                .map(|(k, _)| (x[k][slot - 1], 1))
                .collect();
            cut.push((z, -2));
            model.add_constraint(format!("cut_S{mask}_c{slot}"), cut, Sense::Ge, 0);
        }
    }
    Ok(model)
}
