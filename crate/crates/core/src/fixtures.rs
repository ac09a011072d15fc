//! Small hand-checked instances used throughout the tests and docs.

use crate::model::Instance;

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn two_machines(n: usize, b: Vec<Vec<i64>>, a: Vec<[i64; 2]>) -> Instance {
    Instance { jobs: ids("J", n), group1: vec!["M1".into()], group2: vec!["M2".into()], b, a }
}

/// One job with one hyperedge to each group and no edges.
pub fn i_a() -> Instance {
    two_machines(1, vec![vec![0, 0]], vec![[1, 1]])
}

/// Two jobs, each with one hyperedge to each group and no edges.
pub fn i_b() -> Instance {
    two_machines(2, vec![vec![0, 0], vec![0, 0]], vec![[1, 1], [1, 1]])
}

/// Complete bipartite 2×2 with unit edges and no hyperedges.
pub fn i_c() -> Instance {
    two_machines(2, vec![vec![1, 1], vec![1, 1]], vec![[0, 0], [0, 0]])
}

/// `J1` has an edge to `M1` and a hyperedge to group 2; `J2` has an edge to
/// `M2` and a hyperedge to group 1.
pub fn i_d() -> Instance {
    two_machines(2, vec![vec![1, 0], vec![0, 1]], vec![[0, 1], [1, 0]])
}
