use crate::flow::{feasible_circulation, Circulation, FlowNetwork, ViolatedCut};
use crate::model::{Group, Instance, Violation};

use super::q::QSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecoverError {
    #[error("(y, r, w) violates Q: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotInQ(Vec<Violation>),
    #[error("no integral x exists for this y (violated cut over {} nodes)", .0.nodes.len())]
    Infeasible(ViolatedCut),
}

/// Finds an integral `x` completing an integral `y` feasible for `Q` at
/// `(r, w)`. The network is
///
/// `source →[r, r] γℓ →[lower_jℓ, a_jℓ] job j →[0, r] sink`
///
/// with `lower_jℓ = max(0, Σ_{h∈opp(ℓ)} (b_jh − y_jh) + a_jℓ − Δ(𝒢ℓ) + r)`.
pub fn recover_x(inst: &Instance, y: &[Vec<i64>], r: i64, w: i64) -> Result<Vec<[i64; 2]>, RecoverError> {
    let violations = QSystem::build(inst, r, w).violations(inst, y);
    if !violations.is_empty() {
        return Err(RecoverError::NotInQ(violations));
    }

    let mut net = FlowNetwork::new();
    let s = net.add_node("source");
    let t = net.add_node("sink");
    let gamma = Group::BOTH.map(|g| net.add_node(format!("gamma_{g}")));
    for g in Group::BOTH {
        net.add_arc(s, gamma[g.index()], r, Some(r));
    }
    let mut x_arcs = Vec::with_capacity(inst.n());
    for j in 0..inst.n() {
        let job = net.add_node(&inst.jobs[j]);
        let arcs = Group::BOTH.map(|g| {
            let slack: i64 = inst.machines_in(g.opposite()).map(|h| inst.b[j][h] - y[j][h]).sum();
            let a = inst.a[j][g.index()];
            let lower = (slack + a - inst.delta(g) + r).max(0);
            // Q bounds Σ_{opp}(b − y) + r by Δ(𝒢ℓ), so lower ≤ a
            debug_assert!(lower <= a);
            net.add_arc(gamma[g.index()], job, lower, Some(a))
        });
        net.add_arc(job, t, 0, Some(r));
        x_arcs.push(arcs);
    }
    let net = net.with_terminals(s, t);
    match feasible_circulation(&net) {
        Circulation::Feasible(flow) => Ok(x_arcs.iter().map(|arcs| arcs.map(|a| flow.values[a])).collect()),
        Circulation::Infeasible(cut) => Err(RecoverError::Infeasible(cut)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn id_pairs_the_opposite_hyperedges() {
        assert_eq!(recover_x(&i_d(), &[vec![1, 0], vec![0, 1]], 1, 1).unwrap(), vec![[0, 1], [1, 0]]);
    }

    #[test]
    fn ib_takes_every_hyperedge() {
        assert_eq!(recover_x(&i_b(), &[vec![0, 0], vec![0, 0]], 2, 0).unwrap(), vec![[1, 1], [1, 1]]);
    }

    #[test]
    fn no_hyperedges_no_x() {
        assert_eq!(recover_x(&i_c(), &[vec![1, 1], vec![1, 1]], 0, 2).unwrap(), vec![[0, 0], [0, 0]]);
    }

    #[test]
    fn y_outside_q_is_refused() {
        assert!(matches!(recover_x(&i_c(), &[vec![0, 0], vec![0, 0]], 0, 2), Err(RecoverError::NotInQ(_))));
    }
}
