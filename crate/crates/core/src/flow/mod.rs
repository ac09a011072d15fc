//! Integral flows with lower and upper arc bounds.

mod circulation;
mod network;

pub use circulation::{
    check_cut, cut_balance, feasible_circulation, max_feasible_flow, max_flow, Circulation, LowerBoundsPresent,
    ViolatedCut,
};
pub use network::{check_flow, Arc, ArcId, Flow, FlowNetwork, NodeId, MAX_BOUND};
