use std::collections::VecDeque;

use super::network::{check_flow, Flow, FlowNetwork, NodeId};

const INF: i64 = i64::MAX / 4;

/// Residual graph with paired edges (`e`, `e ^ 1`), solved by Dinic's
/// shortest-augmenting-path phases.
struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(nodes: usize) -> Self {
        Residual { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let e = self.head.len();
        self.head.push(v);
        self.cap.push(cap);
        self.adj[u].push(e);
        self.head.push(u);
        self.cap.push(0);
        self.adj[v].push(e + 1);
        e
    }

    fn levels(&self, s: usize) -> Vec<i64> {
        let mut level = vec![-1; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, limit: i64, level: &[i64], next: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let e = self.adj[u][next[u]];
            let v = self.head[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let pushed = self.augment(v, t, limit.min(self.cap[e]), level, next);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return total;
            }
            let mut next = vec![0; self.adj.len()];
            loop {
                let pushed = self.augment(s, t, INF, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l >= 0).collect()
    }
}

/// A node set `R` with more flow forced into it by lower bounds than its
/// outgoing arcs can carry: `Σ lower(δ⁻(R)) > Σ upper(δ⁺(R))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolatedCut {
    pub nodes: Vec<NodeId>,
    pub forced_in: i64,
    pub capacity_out: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Circulation {
    Feasible(Flow),
    Infeasible(ViolatedCut),
}

impl Circulation {
    pub fn flow(self) -> Option<Flow> {
        match self {
            Circulation::Feasible(f) => Some(f),
            Circulation::Infeasible(_) => None,
        }
    }
}

/// Lower bounds eliminated into a super-source/super-sink residual graph.
struct Reduced {
    res: Residual,
    arc_edges: Vec<usize>,
    closure: Option<usize>,
    super_edges: Vec<usize>,
    demand: i64,
    super_source: usize,
    super_sink: usize,
}

fn reduce(net: &FlowNetwork) -> Reduced {
    let n = net.node_count();
    let (ss, tt) = (n, n + 1);
    let mut res = Residual::new(n + 2);
    let mut excess = vec![0i64; n];
    let arc_edges = net
        .arcs
        .iter()
        .map(|a| {
            excess[a.head] += a.lower;
            excess[a.tail] -= a.lower;
            res.add_edge(a.tail, a.head, a.upper.map_or(INF, |u| u - a.lower))
        })
        .collect();
    let closure = match (net.source, net.sink) {
        (Some(s), Some(t)) => Some(res.add_edge(t, s, INF)),
        _ => None,
    };
    let mut demand = 0;
    let mut super_edges = Vec::new();
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            demand += e;
            super_edges.push(res.add_edge(ss, v, e));
        } else if e < 0 {
            super_edges.push(res.add_edge(v, tt, -e));
        }
    }
    Reduced { res, arc_edges, closure, super_edges, demand, super_source: ss, super_sink: tt }
}

fn arc_values(net: &FlowNetwork, red: &Reduced) -> Flow {
    let values = net
        .arcs
        .iter()
        .zip(&red.arc_edges)
        .map(|(a, &e)| a.lower + red.res.cap[e ^ 1])
        .collect();
    Flow { values }
}

/// Sum of lower bounds entering `set` and of upper bounds leaving it,
/// including the implicit return arc when terminals are designated.
/// Returns `None` for the capacity when an unbounded arc leaves `set`.
pub fn cut_balance(net: &FlowNetwork, set: &[bool]) -> (i64, Option<i64>) {
    let mut forced_in = 0;
    let mut cap_out = Some(0i64);
    for a in &net.arcs {
        if set[a.head] && !set[a.tail] {
            forced_in += a.lower;
        }
        if set[a.tail] && !set[a.head] {
            cap_out = match (cap_out, a.upper) {
                (Some(c), Some(u)) => Some(c + u),
                _ => None,
            };
        }
    }
    if let (Some(s), Some(t)) = (net.source, net.sink) {
        if set[t] && !set[s] {
            cap_out = None;
        }
    }
    (forced_in, cap_out)
}

/// Verifies that `cut` is a genuine infeasibility certificate for `net`.
pub fn check_cut(net: &FlowNetwork, cut: &ViolatedCut) -> bool {
    let mut set = vec![false; net.node_count()];
    for &v in &cut.nodes {
        if v >= set.len() {
            return false;
        }
        set[v] = true;
    }
    match cut_balance(net, &set) {
        (forced, Some(cap)) => forced > cap && forced == cut.forced_in && cap == cut.capacity_out,
        (_, None) => false,
    }
}

/// Finds an integral flow meeting every arc bound with conservation at every
/// node (terminals excepted when designated), or a violated cut proving none
/// exists.
pub fn feasible_circulation(net: &FlowNetwork) -> Circulation {
    let mut red = reduce(net);
    let pushed = red.res.max_flow(red.super_source, red.super_sink);
    if pushed < red.demand {
        let reach = red.res.reachable(red.super_source);
        let set: Vec<bool> = reach[..net.node_count()].to_vec();
        let (forced_in, cap_out) = cut_balance(net, &set);
        let cut = ViolatedCut {
            nodes: (0..net.node_count()).filter(|&v| set[v]).collect(),
            forced_in,
            capacity_out: cap_out.expect("residual cut never crosses an unbounded arc"),
        };
        debug_assert!(check_cut(net, &cut));
        return Circulation::Infeasible(cut);
    }
    let flow = arc_values(net, &red);
    debug_assert!(check_flow(net, &flow).is_ok());
    Circulation::Feasible(flow)
}

/// Like [`feasible_circulation`], then pushes as much additional flow from
/// the designated source to the designated sink as the bounds allow.
pub fn max_feasible_flow(net: &FlowNetwork) -> Circulation {
    let (Some(s), Some(t)) = (net.source, net.sink) else {
        return feasible_circulation(net);
    };
    let mut red = reduce(net);
    let pushed = red.res.max_flow(red.super_source, red.super_sink);
    if pushed < red.demand {
        return feasible_circulation(net);
    }
    for &e in red.super_edges.iter().chain(red.closure.iter()) {
        red.res.cap[e] = 0;
        red.res.cap[e ^ 1] = 0;
    }
    red.res.max_flow(s, t);
    let flow = arc_values(net, &red);
    debug_assert!(check_flow(net, &flow).is_ok());
    Circulation::Feasible(flow)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("max_flow requires zero lower bounds; arc {0} has a positive lower bound")]
pub struct LowerBoundsPresent(pub usize);

/// Maximum `s → t` flow in a network without lower bounds. Returns the arc
/// values and the flow value.
pub fn max_flow(net: &FlowNetwork, s: NodeId, t: NodeId) -> Result<(Flow, i64), LowerBoundsPresent> {
    if let Some(i) = net.arcs.iter().position(|a| a.lower != 0) {
        return Err(LowerBoundsPresent(i));
    }
    let mut res = Residual::new(net.node_count());
    let edges: Vec<usize> = net.arcs.iter().map(|a| res.add_edge(a.tail, a.head, a.upper.unwrap_or(INF))).collect();
    let value = if s == t { 0 } else { res.max_flow(s, t) };
    let values = edges.iter().map(|&e| res.cap[e ^ 1]).collect();
    Ok((Flow { values }, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_flow_on_bounded_arc_with_return() {
        let mut net = FlowNetwork::new();
        let s = net.add_node("s");
        let t = net.add_node("t");
        let st = net.add_arc(s, t, 2, Some(5));
        net.add_arc(t, s, 0, None);
        let flow = feasible_circulation(&net).flow().unwrap();
        assert_eq!(flow.values[st], 2);
        assert_eq!(flow.values[1], 2);
    }

    #[test]
    fn forced_flow_exceeding_capacity_yields_cut() {
        let mut net = FlowNetwork::new();
        let a = net.add_node("a");
        let v = net.add_node("v");
        let b = net.add_node("b");
        net.add_arc(a, v, 3, Some(3));
        net.add_arc(v, b, 0, Some(2));
        net.add_arc(b, a, 0, None);
        match feasible_circulation(&net) {
            Circulation::Infeasible(cut) => {
                assert_eq!(cut.nodes, vec![v]);
                assert_eq!((cut.forced_in, cut.capacity_out), (3, 2));
                assert!(check_cut(&net, &cut));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn zero_lower_bounds_give_zero_flow() {
        let mut net = FlowNetwork::new();
        let a = net.add_node("a");
        let b = net.add_node("b");
        net.add_arc(a, b, 0, Some(4));
        net.add_arc(b, a, 0, None);
        assert_eq!(feasible_circulation(&net).flow().unwrap().values, vec![0, 0]);
    }

    #[test]
    fn terminals_get_an_implicit_return_arc() {
        let mut net = FlowNetwork::new();
        let s = net.add_node("s");
        let v = net.add_node("v");
        let t = net.add_node("t");
        net.add_arc(s, v, 1, Some(4));
        net.add_arc(v, t, 0, Some(3));
        let net = net.with_terminals(s, t);
        let flow = feasible_circulation(&net).flow().unwrap();
        assert_eq!(flow.values, vec![1, 1]);
        check_flow(&net, &flow).unwrap();
        let most = max_feasible_flow(&net).flow().unwrap();
        assert_eq!(most.values, vec![3, 3]);
    }

    fn bipartite_unit(pairs: &[(usize, usize)], left: usize, right: usize) -> (FlowNetwork, usize, usize) {
        let mut net = FlowNetwork::new();
        let s = net.add_node("s");
        let l: Vec<_> = (0..left).map(|i| net.add_node(format!("l{i}"))).collect();
        let r: Vec<_> = (0..right).map(|i| net.add_node(format!("r{i}"))).collect();
        let t = net.add_node("t");
        for &v in &l {
            net.add_arc(s, v, 0, Some(1));
        }
        for &(i, j) in pairs {
            net.add_arc(l[i], r[j], 0, Some(1));
        }
        for &v in &r {
            net.add_arc(v, t, 0, Some(1));
        }
        (net, s, t)
    }

    #[test]
    fn max_flow_examples() {
        let (net, s, t) = bipartite_unit(&[(0, 0), (0, 1), (1, 0), (1, 1)], 2, 2);
        assert_eq!(max_flow(&net, s, t).unwrap().1, 2);

        let mut net = FlowNetwork::new();
        let s = net.add_node("s");
        let t = net.add_node("t");
        assert_eq!(max_flow(&net, s, t).unwrap().1, 0);

        let mut net = FlowNetwork::new();
        let v: Vec<_> = (0..4).map(|i| net.add_node(format!("{i}"))).collect();
        net.add_arc(v[0], v[1], 0, Some(3));
        net.add_arc(v[1], v[2], 0, Some(1));
        net.add_arc(v[2], v[3], 0, Some(4));
        let (flow, value) = max_flow(&net, v[0], v[3]).unwrap();
        assert_eq!(value, 1);
        assert_eq!(flow.values, vec![1, 1, 1]);

        net.arcs[0].lower = 1;
        assert!(max_flow(&net, v[0], v[3]).is_err());
    }
}
