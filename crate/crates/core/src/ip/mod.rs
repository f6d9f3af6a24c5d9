//! Integer programs whose feasible points are cycle decompositions within
//! the bound, built solver-independently and written out in LP format.
//!
//! Slot `i` (1-based in names) holds one cycle: `x_e{idx}_c{i}` selects edge
//! `idx` (lexicographic index in `K_n`) and `y_v{v}_c{i}` marks vertices on
//! it. [`build_ip_hd`] needs a vertex adjacent to almost everything and
//! forces every cycle through it; [`build_ip_gen`] works for any graph and
//! asks every vertex cut splitting a cycle to be crossed twice.

mod gen;
mod hd;
mod lp;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge_endpoints, edge_index, hajos_bound, Cycle, Decomposition, EdgeSet, Graph};

pub use gen::build_ip_gen;
pub use hd::{build_ip_hd, find_hd_anchor};
pub use lp::emit_lp;

/// Largest order for which models are built; both formulations enumerate
/// vertex subsets explicitly.
pub const MAX_IP_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IpError {
    #[error("order {0} is above {MAX_IP_ORDER}; the subset families would not fit")]
    OrderTooLarge(usize),
    #[error("no vertex of degree n-1 or n-2")]
    NoAnchor,
    #[error("assignment has no value for {0}")]
    MissingVariable(String),
    #[error("{found} cycles do not fit in {slots} slots")]
    TooManyCycles { found: usize, slots: usize },
    #[error("slot {slot} does not trace to a single cycle")]
    NotACycle { slot: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formulation {
    /// Every cycle passes through `anchor`.
    Hd { anchor: usize },
    Gen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
            Sense::Ge => lhs >= rhs,
        }
    }
}

/// What a binary variable stands for. Slots are 1-based; masks are vertex bit sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarRole {
    Edge { edge: (usize, usize), slot: usize },
    Vertex { vertex: usize, slot: usize },
    /// Some vertex of `mask` lies on the cycle.
    Inside { mask: u32, slot: usize },
    /// Some vertex outside `mask` lies on the cycle.
    Outside { mask: u32, slot: usize },
    /// Both of the above.
    Split { mask: u32, slot: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub role: VarRole,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    /// `(variable index, coefficient)` pairs.
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// Feasibility model over binary variables with a zero objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpModel {
    pub n: usize,
    pub slots: usize,
    pub formulation: Formulation,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    index: HashMap<String, usize>,
}

impl IpModel {
    fn new(g: &Graph, formulation: Formulation) -> Result<Self, IpError> {
        if g.order() > MAX_IP_ORDER {
            return Err(IpError::OrderTooLarge(g.order()));
        }
        Ok(IpModel {
            n: g.order(),
            slots: hajos_bound(g.order()),
            formulation,
            variables: Vec::new(),
            constraints: Vec::new(),
            index: HashMap::new(),
        })
    }

    fn add_var(&mut self, name: String, role: VarRole) -> usize {
        let id = self.variables.len();
        let previous = self.index.insert(name.clone(), id);
        debug_assert!(previous.is_none(), "duplicate variable {name}");
        self.variables.push(Variable { name, role });
        id
    }

    fn add_constraint(&mut self, name: String, terms: Vec<(usize, i64)>, sense: Sense, rhs: i64) {
        self.constraints.push(Constraint { name, terms, sense, rhs });
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Variables of a slot covering edge and vertex incidence, shared by both formulations.
    fn add_cycle_slots(&mut self, g: &Graph) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = g.order();
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut x = vec![Vec::new(); edges.len()];
        for (k, &(a, b)) in edges.iter().enumerate() {
            for slot in 1..=self.slots {
                x[k].push(self.add_var(x_name(edge_index(n, a, b), slot), VarRole::Edge { edge: (a, b), slot }));
            }
        }
        let mut y = vec![Vec::new(); n];
        for (v, ys) in y.iter_mut().enumerate() {
            for slot in 1..=self.slots {
                ys.push(self.add_var(y_name(v, slot), VarRole::Vertex { vertex: v, slot }));
            }
        }
        for (k, &(a, b)) in edges.iter().enumerate() {
            let terms = x[k].iter().map(|&id| (id, 1)).collect();
            self.add_constraint(format!("cover_e{}", edge_index(n, a, b)), terms, Sense::Eq, 1);
        }
        for v in 0..n {
            for slot in 1..=self.slots {
                let mut terms: Vec<(usize, i64)> = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(a, b))| a == v || b == v)
                    .map(|(k, _)| (x[k][slot - 1], 1))
                    .collect();
                terms.push((y[v][slot - 1], -2));
                self.add_constraint(format!("deg_v{v}_c{slot}"), terms, Sense::Eq, 0);
            }
        }
        (x, y)
    }

    /// Values of all variables in declaration order.
    fn resolve(&self, a: &Assignment) -> Result<Vec<bool>, IpError> {
        self.variables
            .iter()
            .map(|v| a.get(&v.name).ok_or_else(|| IpError::MissingVariable(v.name.clone())))
            .collect()
    }

    fn satisfied(c: &Constraint, values: &[bool]) -> bool {
        let lhs: i64 = c.terms.iter().filter(|&&(id, _)| values[id]).map(|&(_, coef)| coef).sum();
        c.sense.holds(lhs, c.rhs)
    }
}

fn x_name(edge: usize, slot: usize) -> String {
    format!("x_e{edge}_c{slot}")
}

fn y_name(v: usize, slot: usize) -> String {
    format!("y_v{v}_c{slot}")
}

/// Values for the variables of a model, keyed by name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment(pub BTreeMap<String, bool>);

impl Assignment {
    /// Every variable of `model` set to zero.
    pub fn zeros(model: &IpModel) -> Self {
        Assignment(model.variables.iter().map(|v| (v.name.clone(), false)).collect())
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, value: bool) {
        self.0.insert(name.into(), value);
    }
}

/// True when every constraint of `model` holds under `a`.
pub fn feasibility_check(model: &IpModel, a: &Assignment) -> Result<bool, IpError> {
    let values = model.resolve(a)?;
    Ok(model.constraints.iter().all(|c| IpModel::satisfied(c, &values)))
}

/// Names of the constraints violated by `a`, in model order.
pub fn violated_constraints<'m>(model: &'m IpModel, a: &Assignment) -> Result<Vec<&'m str>, IpError> {
    let values = model.resolve(a)?;
    Ok(model.constraints.iter().filter(|c| !IpModel::satisfied(c, &values)).map(|c| c.name.as_str()).collect())
}

/// Sets the cut indicator variables of an IP-Gen model to the only values
/// the linking constraints allow for the current `y` values.
pub fn complete_auxiliaries(model: &IpModel, a: &mut Assignment) {
    let full = (1u32 << model.n) - 1;
    for var in &model.variables {
        let (mask, slot, split) = match var.role {
            VarRole::Inside { mask, slot } => (mask, slot, None),
            VarRole::Outside { mask, slot } => (full & !mask, slot, None),
            VarRole::Split { mask, slot } => (mask, slot, Some(full & !mask)),
            _ => continue,
        };
        let touches = |m: u32| (0..model.n).any(|v| m >> v & 1 == 1 && a.get(&y_name(v, slot)) == Some(true));
        let value = match split {
            None => touches(mask),
            Some(rest) => touches(mask) && touches(rest),
        };
        a.set(var.name.clone(), value);
    }
}

/// The assignment placing cycle `k` of `d` in slot `k + 1`; unused slots
/// stay empty.
pub fn encode_decomposition(model: &IpModel, d: &Decomposition) -> Result<Assignment, IpError> {
    if d.len() > model.slots {
        return Err(IpError::TooManyCycles { found: d.len(), slots: model.slots });
    }
    let mut a = Assignment::zeros(model);
    for (k, cycle) in d.cycles.iter().enumerate() {
        encode_slot(&mut a, model.n, k + 1, cycle);
    }
    complete_auxiliaries(model, &mut a);
    Ok(a)
}

/// Writes `x`, `y` values for `cycle` into `slot` (auxiliaries untouched).
pub fn encode_slot(a: &mut Assignment, n: usize, slot: usize, cycle: &Cycle) {
    for (u, v) in cycle.edges() {
        a.set(x_name(edge_index(n, u, v), slot), true);
    }
    for &v in cycle.vertices() {
        a.set(y_name(v, slot), true);
    }
}

/// Traces the edges selected in each slot back into cycles.
pub fn decode_solution(model: &IpModel, a: &Assignment) -> Result<Decomposition, IpError> {
    let values = model.resolve(a)?;
    let mut per_slot = vec![EdgeSet::empty(model.n); model.slots];
    for (var, &on) in model.variables.iter().zip(&values) {
        if let (VarRole::Edge { edge: (u, v), slot }, true) = (var.role, on) {
            per_slot[slot - 1].insert(edge_index(model.n, u, v));
        }
    }
    let mut cycles = Vec::new();
    for (k, edges) in per_slot.iter().enumerate() {
        if edges.is_empty() {
            continue;
        }
        cycles.push(trace_cycle(model.n, edges).ok_or(IpError::NotACycle { slot: k + 1 })?);
    }
    Ok(Decomposition::new(model.n, cycles))
}

/// The single cycle formed by `edges`, if they form exactly one.
fn trace_cycle(n: usize, edges: &EdgeSet) -> Option<Cycle> {
    let g = Graph::from_edge_set(edges);
    if g.degrees().iter().any(|&d| d != 0 && d != 2) {
        return None;
    }
    let start = edge_endpoints(n, edges.first()?).0;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbor_iter(cur).find(|&w| w != prev)?;
        if next == start {
            break;
        }
        path.push(next);
        prev = cur;
        cur = next;
    }
    (path.len() == edges.len()).then(|| Cycle::new(path))
}
