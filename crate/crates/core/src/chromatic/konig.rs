//! Constructive König edge coloring of bipartite multigraphs.
//!
//! The multigraph is peeled into weighted matchings. Each round looks for a
//! matching that covers every vertex whose residual degree equals the number
//! of colors still available (one always exists in a bipartite multigraph),
//! then uses it as often as possible without making any uncovered vertex
//! exceed the remaining budget. Each round zeroes an edge or makes a vertex
//! full, so there are at most `|E| + |V|` rounds.
//!
//! Multiplicities may be integers or exact rationals.

use crate::flow::{max_feasible_flow, FlowNetwork};
use crate::scalar::ExactNum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KonigError<T: std::fmt::Debug + std::fmt::Display> {
    #[error("{side:?} vertex {index} has degree {degree} above the {colors} available colors")]
    DegreeExceeded { side: Side, index: usize, degree: T, colors: T },
    #[error("negative multiplicity on edge ({0}, {1})")]
    NegativeMultiplicity(usize, usize),
    #[error("multiplicity matrix has the wrong shape")]
    Shape,
    #[error("no matching covers all full vertices; the input degrees are inconsistent")]
    NoCoveringMatching,
}

/// A matching of `(left, right)` pairs used `multiplicity` times.
pub type WeightedMatching<T> = (Vec<(usize, usize)>, T);

/// Splits the bipartite multigraph `mult` (`left × right`) into matchings
/// whose multiplicities sum to exactly `colors`. Every edge `(u, v)` is
/// covered exactly `mult[u][v]` times; matchings may be empty.
pub fn edge_color_bipartite<T: ExactNum>(
    left: usize,
    right: usize,
    mult: &[Vec<T>],
    colors: T,
) -> Result<Vec<WeightedMatching<T>>, KonigError<T>> {
    if mult.len() != left || mult.iter().any(|row| row.len() != right) {
        return Err(KonigError::Shape);
    }
    for (u, row) in mult.iter().enumerate() {
        if let Some(v) = row.iter().position(|x| x.is_negative()) {
            return Err(KonigError::NegativeMultiplicity(u, v));
        }
    }
    let mut residual: Vec<Vec<T>> = mult.to_vec();
    let mut deg_l: Vec<T> = residual.iter().map(|row| row.iter().fold(T::zero(), |s, x| s + x.clone())).collect();
    let mut deg_r: Vec<T> = (0..right).map(|v| residual.iter().fold(T::zero(), |s, row| s + row[v].clone())).collect();
    for (side, degs) in [(Side::Left, &deg_l), (Side::Right, &deg_r)] {
        if let Some(i) = degs.iter().position(|d| d > &colors) {
            return Err(KonigError::DegreeExceeded { side, index: i, degree: degs[i].clone(), colors });
        }
    }

    let mut remaining = colors;
    let mut classes = Vec::new();
    while remaining.is_positive() {
        let matching = covering_matching(&residual, &deg_l, &deg_r, &remaining).ok_or(KonigError::NoCoveringMatching)?;

        let mut matched_l = vec![false; left];
        let mut matched_r = vec![false; right];
        for &(u, v) in &matching {
            matched_l[u] = true;
            matched_r[v] = true;
        }
        let unmatched_max = deg_l
            .iter()
            .zip(&matched_l)
            .chain(deg_r.iter().zip(&matched_r))
            .filter(|(_, &m)| !m)
            .map(|(d, _)| d.clone())
            .max()
            .unwrap_or_else(T::zero);
        let mut amount = remaining.clone() - unmatched_max;
        for &(u, v) in &matching {
            if residual[u][v] < amount {
                amount = residual[u][v].clone();
            }
        }
        if !amount.is_positive() {
            return Err(KonigError::NoCoveringMatching);
        }

        for &(u, v) in &matching {
            residual[u][v] = residual[u][v].clone() - amount.clone();
            deg_l[u] = deg_l[u].clone() - amount.clone();
            deg_r[v] = deg_r[v].clone() - amount.clone();
        }
        remaining = remaining - amount.clone();
        classes.push((matching, amount));
    }
    Ok(classes)
}

/// A maximum matching on the positive-residual edges that covers every
/// vertex whose degree equals `remaining`, via a lower-bounded flow.
fn covering_matching<T: ExactNum>(
    residual: &[Vec<T>],
    deg_l: &[T],
    deg_r: &[T],
    remaining: &T,
) -> Option<Vec<(usize, usize)>> {
    let mut net = FlowNetwork::new();
    let s = net.add_node("s");
    let t = net.add_node("t");
    let lv: Vec<usize> = (0..deg_l.len()).map(|u| net.add_node(format!("l{u}"))).collect();
    let rv: Vec<usize> = (0..deg_r.len()).map(|v| net.add_node(format!("r{v}"))).collect();
    for (u, d) in deg_l.iter().enumerate() {
        net.add_arc(s, lv[u], i64::from(d == remaining), Some(1));
    }
    let mut edge_arcs = Vec::new();
    for (u, row) in residual.iter().enumerate() {
        for (v, x) in row.iter().enumerate() {
            if x.is_positive() {
                edge_arcs.push((net.add_arc(lv[u], rv[v], 0, Some(1)), u, v));
            }
        }
    }
    for (v, d) in deg_r.iter().enumerate() {
        net.add_arc(rv[v], t, i64::from(d == remaining), Some(1));
    }
    let net = net.with_terminals(s, t);
    let flow = max_feasible_flow(&net).flow()?;
    Some(edge_arcs.into_iter().filter(|(a, _, _)| flow.values[*a] == 1).map(|(_, u, v)| (u, v)).collect())
}
