//! Formulation for graphs with a vertex of degree `n - 1` or `n - 2`.

use super::{Formulation, IpError, IpModel, Sense};
use crate::graph::Graph;

/// Lowest vertex of degree `n - 1`, else lowest of degree `n - 2`.
pub fn find_hd_anchor(g: &Graph) -> Option<usize> {
    let n = g.order();
    let of_degree = |d: usize| (0..n).find(|&v| g.degree(v) == d);
    of_degree(n.saturating_sub(1)).or_else(|| if n >= 2 { of_degree(n - 2) } else { None })
}

/// Cover, degree and anchor rows, plus for every nonempty `S` avoiding the
/// anchor and every slot
/// `n * sum(x over edges touching S) >= (n + 1) * sum(y over S)`,
/// which fails for any cycle lying entirely inside `S`.
pub fn build_ip_hd(g: &Graph) -> Result<IpModel, IpError> {
    let anchor = find_hd_anchor(g).ok_or(IpError::NoAnchor)?;
    let n = g.order();
    let mut model = IpModel::new(g, Formulation::Hd { anchor })?;
    let (x, y) = model.add_cycle_slots(g);
    for slot in 1..=model.slots {
        model.add_constraint(format!("anchor_c{slot}"), vec![(y[anchor][slot - 1], 1)], Sense::Eq, 1);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let full = (1u32 << n) - 1;
    let others = full & !(1 << anchor);
    let coef = n as i64;
    for slot in 1..=model.slots {
        // nonempty submasks of `others`, ascending
        let mut mask = 0u32;
        loop {
            mask = mask.wrapping_sub(others) & others;
            if mask == 0 {
                break;
            }
            let mut terms: Vec<(usize, i64)> = edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| (mask >> a | mask >> b) & 1 == 1)
                .map(|(k, _)| (x[k][slot - 1], coef))
                .collect();
            terms.extend((0..n).filter(|&v| mask >> v & 1 == 1).map(|v| (y[v][slot - 1], -(coef + 1))));
            model.add_constraint(format!("cut_S{mask}_c{slot}"), terms, Sense::Ge, 0);
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn anchors() {
        assert_eq!(find_hd_anchor(&named::complete(5)), Some(0));
        assert_eq!(find_hd_anchor(&named::cycle(6)), None);
        assert_eq!(find_hd_anchor(&named::book3()), Some(0));
        // degrees (2, 2, 2, 2): n - 2 = 2 picks vertex 0
        assert_eq!(find_hd_anchor(&named::cycle(4)), Some(0));
        assert!(matches!(build_ip_hd(&named::cycle(6)), Err(IpError::NoAnchor)));
    }

    #[test]
    fn k5_counts() {
        let m = build_ip_hd(&named::complete(5)).unwrap();
        assert_eq!(m.slots, 2);
        assert_eq!(m.variables.len(), 30);
        assert_eq!(m.constraints.iter().filter(|c| c.name.starts_with("cut_")).count(), 30);
        assert_eq!(m.constraints.iter().filter(|c| c.name.starts_with("cover_")).count(), 10);
        assert_eq!(m.constraints.iter().filter(|c| c.name.starts_with("anchor_")).count(), 2);
    }
}
