use std::collections::HashMap;
use std::fmt::Write as _;

/// Largest finite arc bound accepted by the builder.
pub const MAX_BOUND: i64 = 1 << 40;

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub lower: i64,
    /// `None` is an unbounded arc.
    pub upper: Option<i64>,
}

/// A directed network with integral lower and upper arc bounds.
///
/// When both `source` and `sink` are designated, circulation routines treat
/// them as exempt from conservation (an unbounded `sink → source` return arc
/// is added internally).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlowNetwork {
    pub labels: Vec<String>,
    pub arcs: Vec<Arc>,
    pub source: Option<NodeId>,
    pub sink: Option<NodeId>,
}

impl FlowNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> NodeId {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    pub fn add_arc(&mut self, tail: NodeId, head: NodeId, lower: i64, upper: Option<i64>) -> ArcId {
        assert!(tail < self.labels.len() && head < self.labels.len(), "arc endpoint out of range");
        assert!((0..=MAX_BOUND).contains(&lower), "lower bound {lower} out of range");
        if let Some(u) = upper {
            assert!(u <= MAX_BOUND, "upper bound {u} exceeds {MAX_BOUND}");
            assert!(lower <= u, "lower bound {lower} exceeds upper bound {u}");
        }
        self.arcs.push(Arc { tail, head, lower, upper });
        self.arcs.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn with_terminals(mut self, source: NodeId, sink: NodeId) -> Self {
        self.source = Some(source);
        self.sink = Some(sink);
        self
    }

    /// Edge-list dump: `tail head lower upper` per line (`inf` for unbounded),
    /// preceded by optional `source` / `sink` lines.
    pub fn to_edge_list(&self) -> String {
        let label = |v: NodeId| self.labels[v].replace(char::is_whitespace, "_");
        let mut out = String::new();
        if let Some(s) = self.source {
            let _ = writeln!(out, "source {}", label(s));
        }
        if let Some(t) = self.sink {
            let _ = writeln!(out, "sink {}", label(t));
        }
        for a in &self.arcs {
            let up = a.upper.map_or_else(|| "inf".to_string(), |u| u.to_string());
            let _ = writeln!(out, "{} {} {} {}", label(a.tail), label(a.head), a.lower, up);
        }
        out
    }

    /// Parses the format written by [`FlowNetwork::to_edge_list`]. Nodes are
    /// created in order of first appearance.
    pub fn parse_edge_list(text: &str) -> Result<FlowNetwork, String> {
        let mut net = FlowNetwork::new();
        let mut ids: HashMap<String, NodeId> = HashMap::new();
        let mut node = |net: &mut FlowNetwork, name: &str| -> NodeId {
            *ids.entry(name.to_string()).or_insert_with(|| net.add_node(name))
        };
        for (lineno, line) in text.lines().enumerate() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |what: &str| format!("line {}: {what}", lineno + 1);
            match fields.as_slice() {
                [] => {}
                ["source", s] => net.source = Some(node(&mut net, s)),
                ["sink", t] => net.sink = Some(node(&mut net, t)),
                [tail, head, lower, upper] => {
                    let lower: i64 = lower.parse().map_err(|_| bad("bad lower bound"))?;
                    let upper = match *upper {
                        "inf" => None,
                        u => Some(u.parse::<i64>().map_err(|_| bad("bad upper bound"))?),
                    };
                    if lower < 0 || upper.is_some_and(|u| u < lower) {
                        return Err(bad("inconsistent bounds"));
                    }
                    let (t, h) = (node(&mut net, tail), node(&mut net, head));
                    net.add_arc(t, h, lower, upper);
                }
                _ => return Err(bad("expected `tail head lower upper`")),
            }
        }
        Ok(net)
    }
}

/// Integral arc values, indexed like [`FlowNetwork::arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub values: Vec<i64>,
}

impl Flow {
    /// Net outflow of `v` over the network's arcs.
    pub fn net_outflow(&self, net: &FlowNetwork, v: NodeId) -> i64 {
        net.arcs
            .iter()
            .zip(&self.values)
            .map(|(a, f)| if a.tail == v { *f } else { 0 } - if a.head == v { *f } else { 0 })
            .sum()
    }
}

/// Checks arc bounds and conservation at every node other than designated
/// terminals. Used as an independent check of returned flows.
pub fn check_flow(net: &FlowNetwork, flow: &Flow) -> Result<(), String> {
    if flow.values.len() != net.arcs.len() {
        return Err(format!("{} values for {} arcs", flow.values.len(), net.arcs.len()));
    }
    for (i, (a, f)) in net.arcs.iter().zip(&flow.values).enumerate() {
        if *f < a.lower || a.upper.is_some_and(|u| *f > u) {
            return Err(format!("arc {i} carries {f} outside [{}, {:?}]", a.lower, a.upper));
        }
    }
    for v in 0..net.node_count() {
        if Some(v) == net.source || Some(v) == net.sink {
            continue;
        }
        let out = flow.net_outflow(net, v);
        if out != 0 {
            return Err(format!("node {} has net outflow {out}", net.labels[v]));
        }
    }
    if let (Some(s), Some(t)) = (net.source, net.sink) {
        if s != t && flow.net_outflow(net, s) + flow.net_outflow(net, t) != 0 {
            return Err("terminal imbalance".to_string());
        }
    }
    Ok(())
}
