//! The side information graph model and its derived structures.
//!
//! Vertices are the receivers `1..=n` and a directed edge `(i, j)` records
//! that receiver `i` holds message `j` as side information. Everything the
//! schemes and converses need is derived from here: the interference graph,
//! the shortest directed cycle, induced subproblems, topological orders for
//! acyclic parts, and the cyclic-shift automorphism test.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph JSON: {0}")]
    Parse(String),
    #[error("receiver {0} lists itself as side information")]
    SelfSideInfo(usize),
    #[error("index {index} out of range for {n} receivers")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("vertex set must be nonempty")]
    EmptySet,
}

/// Directed side information graph on receivers `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideInfoGraph {
    n: usize,
    side_info: Vec<BTreeSet<usize>>, // 1-based, side_info[i-1] = K_i
}

/// Simple undirected graph on `1..=n` (no self-loops).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>, // normalized i < j
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    side_info: Vec<Vec<usize>>,
}

impl SideInfoGraph {
    pub fn new(n: usize, side_info: Vec<BTreeSet<usize>>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptySet);
        }
        if side_info.len() != n {
            return Err(GraphError::Parse(format!(
                "side_info has {} entries for n = {}",
                side_info.len(),
                n
            )));
        }
        for (idx, k) in side_info.iter().enumerate() {
            let i = idx + 1;
            for &j in k {
                if j == i {
                    return Err(GraphError::SelfSideInfo(i));
                }
                if j == 0 || j > n {
                    return Err(GraphError::IndexOutOfRange { index: j, n });
                }
            }
        }
        Ok(SideInfoGraph { n, side_info })
    }

    /// Strict-JSON parser for `{"n": N, "side_info": [[..], ..]}`.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let j: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        let side_info = j
            .side_info
            .into_iter()
            .map(|k| k.into_iter().collect())
            .collect();
        SideInfoGraph::new(j.n, side_info)
    }

    pub fn to_json(&self) -> String {
        let j = GraphJson {
            n: self.n,
            side_info: self
                .side_info
                .iter()
                .map(|k| k.iter().copied().collect())
                .collect(),
        };
        serde_json::to_string(&j).expect("graph serialization cannot fail")
    }

    /// Directed cycle `1 -> 2 -> ... -> n -> 1` where `K_i = {i+1}`.
    pub fn directed_cycle(n: usize) -> Self {
        let side_info = (1..=n)
            .map(|i| {
                let mut k = BTreeSet::new();
                if n > 1 {
                    k.insert(if i == n { 1 } else { i + 1 });
                }
                k
            })
            .collect();
        SideInfoGraph { n, side_info }
    }

    /// `K_i = {pi(i)}` for a fixed-point-free permutation `pi` (1-based).
    pub fn from_permutation(pi: &[usize]) -> Result<Self, GraphError> {
        let n = pi.len();
        let side_info = pi
            .iter()
            .map(|&p| {
                let mut k = BTreeSet::new();
                k.insert(p);
                k
            })
            .collect();
        SideInfoGraph::new(n, side_info)
    }

    /// Graph with no side information at all.
    pub fn empty(n: usize) -> Self {
        SideInfoGraph {
            n,
            side_info: vec![BTreeSet::new(); n],
        }
    }

    /// Every receiver knows every other message.
    pub fn complete_bidirected(n: usize) -> Self {
        let side_info = (1..=n)
            .map(|i| (1..=n).filter(|&j| j != i).collect())
            .collect();
        SideInfoGraph { n, side_info }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Side information set `K_i` (1-based receiver index).
    pub fn side_info(&self, i: usize) -> &BTreeSet<usize> {
        &self.side_info[i - 1]
    }

    /// Whether receiver `i` knows message `j`, i.e. the edge `(i, j)` exists.
    pub fn knows(&self, i: usize, j: usize) -> bool {
        self.side_info[i - 1].contains(&j)
    }

    pub fn edge_count(&self) -> usize {
        self.side_info.iter().map(|k| k.len()).sum()
    }

    /// All directed edges `(i, j)` with `j ∈ K_i`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for i in 1..=self.n {
            for &j in self.side_info(i) {
                e.push((i, j));
            }
        }
        e
    }

    /// Interference graph: `{i, j}` is an edge iff `i ∉ K_j` or `j ∉ K_i`.
    pub fn interference_graph(&self) -> UndirectedGraph {
        let mut edges = BTreeSet::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if !(self.knows(i, j) && self.knows(j, i)) {
                    edges.insert((i, j));
                }
            }
        }
        UndirectedGraph { n: self.n, edges }
    }

    /// Underlying undirected graph: `{i, j}` iff both directions exist.
    pub fn underlying_undirected(&self) -> UndirectedGraph {
        let mut edges = BTreeSet::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if self.knows(i, j) && self.knows(j, i) {
                    edges.insert((i, j));
                }
            }
        }
        UndirectedGraph { n: self.n, edges }
    }

    /// Girth of the directed graph together with the lexicographically
    /// smallest witness cycle (as a vertex sequence starting from its
    /// smallest vertex). `None` when the graph is acyclic.
    pub fn shortest_directed_cycle(&self) -> Option<(usize, Vec<usize>)> {
        let girth = self.directed_girth()?;
        // the first cycle found by an ascending depth-first sweep is the
        // lexicographically smallest sequence of that length
        for start in 1..=self.n {
            let mut path = vec![start];
            let mut on_path = vec![false; self.n + 1];
            on_path[start] = true;
            if let Some(cycle) = self.dfs_cycle(start, girth, &mut path, &mut on_path) {
                return Some((girth, cycle));
            }
        }
        None
    }

    fn dfs_cycle(
        &self,
        start: usize,
        target_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
    ) -> Option<Vec<usize>> {
        let last = *path.last().unwrap();
        if path.len() == target_len {
            return self.knows(last, start).then(|| path.clone());
        }
        for &next in self.side_info(last) {
            // only allow vertices above `start` so each cycle is found once,
            // rooted at its smallest vertex
            if next <= start || on_path[next] {
                continue;
            }
            path.push(next);
            on_path[next] = true;
            if let Some(c) = self.dfs_cycle(start, target_len, path, on_path) {
                return Some(c);
            }
            path.pop();
            on_path[next] = false;
        }
        None
    }

    /// Length of the shortest directed cycle via BFS from every vertex.
    fn directed_girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 1..=self.n {
            // shortest distance from s to every vertex; a cycle through s
            // closes with an edge (v, s)
            let mut dist = vec![usize::MAX; self.n + 1];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in self.side_info(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for v in 1..=self.n {
                if dist[v] != usize::MAX && self.knows(v, s) {
                    let len = dist[v] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced by `s`, relabeled to `1..=|s|`; also returns the
    /// mapping from new labels to original vertices.
    pub fn induced_subgraph(
        &self,
        s: &BTreeSet<usize>,
    ) -> Result<(SideInfoGraph, Vec<usize>), GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySet);
        }
        for &v in s {
            if v == 0 || v > self.n {
                return Err(GraphError::IndexOutOfRange {
                    index: v,
                    n: self.n,
                });
            }
        }
        let order: Vec<usize> = s.iter().copied().collect();
        let mut new_label = vec![0usize; self.n + 1];
        for (idx, &v) in order.iter().enumerate() {
            new_label[v] = idx + 1;
        }
        let side_info = order
            .iter()
            .map(|&v| {
                self.side_info(v)
                    .iter()
                    .filter(|j| s.contains(j))
                    .map(|&j| new_label[j])
                    .collect()
            })
            .collect();
        Ok((
            SideInfoGraph {
                n: order.len(),
                side_info,
            },
            order,
        ))
    }

    /// Topological order of the directed graph (edge `(i, j)` for `j ∈ K_i`
    /// forces `i` before `j`), or `None` when a directed cycle exists.
    /// Deterministic smallest-index-first Kahn sweep.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; self.n + 1];
        for (_, j) in self.edges() {
            indegree[j] += 1;
        }
        let mut ready: BTreeSet<usize> = (1..=self.n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &w in self.side_info(v) {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Whether the cyclic shift `σ(i) = (i mod n) + 1` maps the edge set
    /// onto itself.
    pub fn has_cyclic_automorphism(&self) -> bool {
        let sigma = |i: usize| (i % self.n) + 1;
        (1..=self.n).all(|i| {
            self.side_info(i)
                .iter()
                .all(|&j| self.knows(sigma(i), sigma(j)))
        })
    }
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .filter(|&(a, b)| a != b)
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        UndirectedGraph { n, edges }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                edges.insert((i, j));
            }
        }
        UndirectedGraph { n, edges }
    }

    /// Undirected cycle `1 - 2 - ... - n - 1`.
    pub fn cycle(n: usize) -> Self {
        UndirectedGraph::new(n, (1..=n).map(|i| (i, if i == n { 1 } else { i + 1 })))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&e)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.n).filter(|&u| self.has_edge(u, v)).collect()
    }

    /// Whether `s` is an independent set.
    pub fn is_independent(&self, s: &BTreeSet<usize>) -> bool {
        s.iter()
            .all(|&a| s.iter().all(|&b| a >= b || !self.has_edge(a, b)))
    }

    /// All maximal independent sets, in lexicographic order of their
    /// bitmask; intended for small `n`.
    pub fn maximal_independent_sets(&self) -> Vec<BTreeSet<usize>> {
        assert!(self.n <= 20, "maximal independent set sweep needs small n");
        let mut out = Vec::new();
        for mask in 1u32..(1 << self.n) {
            let s: BTreeSet<usize> = (1..=self.n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
            if !self.is_independent(&s) {
                continue;
            }
            let maximal = (1..=self.n)
                .filter(|v| !s.contains(v))
                .all(|v| s.iter().any(|&u| self.has_edge(u, v)));
            if maximal {
                out.push(s);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_directed_three_cycle() {
        let g = SideInfoGraph::parse(r#"{"n":3,"side_info":[[2],[3],[1]]}"#).unwrap();
        assert_eq!(g, SideInfoGraph::directed_cycle(3));
    }

    #[test]
    fn parse_single_vertex_and_errors() {
        let g = SideInfoGraph::parse(r#"{"n":1,"side_info":[[]]}"#).unwrap();
        assert_eq!(g.n(), 1);
        assert!(matches!(
            SideInfoGraph::parse(r#"{"n":2,"side_info":[[1],[1]]}"#),
            Err(GraphError::SelfSideInfo(1))
        ));
        assert!(matches!(
            SideInfoGraph::parse(r#"{"n":2,"side_info":[[3],[1]]}"#),
            Err(GraphError::IndexOutOfRange { index: 3, n: 2 })
        ));
        assert!(matches!(
            SideInfoGraph::parse("not json"),
            Err(GraphError::Parse(_))
        ));
    }

    #[test]
    fn interference_graph_of_directed_cycle_is_complete() {
        let g = SideInfoGraph::directed_cycle(3);
        assert_eq!(g.interference_graph(), UndirectedGraph::complete(3));
    }

    #[test]
    fn interference_graph_of_bidirected_clique_is_empty() {
        let g = SideInfoGraph::complete_bidirected(4);
        assert_eq!(g.interference_graph().edge_count(), 0);
    }

    #[test]
    fn interference_graph_mixed_case() {
        // bidirected edge {1,2} plus isolated vertex 3
        let g = SideInfoGraph::new(
            3,
            vec![BTreeSet::from([2]), BTreeSet::from([1]), BTreeSet::new()],
        )
        .unwrap();
        let h = g.interference_graph();
        assert!(!h.has_edge(1, 2));
        assert!(h.has_edge(1, 3));
        assert!(h.has_edge(2, 3));
    }

    #[test]
    fn interference_definition_exhaustive_on_small_graphs() {
        // every graph on 3 vertices (each of the 6 possible edges present or not)
        for mask in 0u32..(1 << 6) {
            let pairs = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];
            let mut side_info = vec![BTreeSet::new(); 3];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    side_info[i - 1].insert(j);
                }
            }
            let g = SideInfoGraph::new(3, side_info).unwrap();
            let h = g.interference_graph();
            for i in 1..=3 {
                for j in (i + 1)..=3 {
                    assert_eq!(h.has_edge(i, j), !(g.knows(i, j) && g.knows(j, i)));
                }
            }
        }
    }

    #[test]
    fn girth_of_directed_cycles() {
        for n in 2..=8 {
            let g = SideInfoGraph::directed_cycle(n);
            let (len, cycle) = g.shortest_directed_cycle().unwrap();
            assert_eq!(len, n);
            assert_eq!(cycle, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn dag_has_no_cycle_and_bidirected_edge_gives_two() {
        let dag = SideInfoGraph::new(
            3,
            vec![BTreeSet::from([2]), BTreeSet::from([3]), BTreeSet::new()],
        )
        .unwrap();
        assert!(dag.shortest_directed_cycle().is_none());

        let mut side_info = vec![BTreeSet::new(); 4];
        side_info[0].insert(3);
        side_info[2].insert(1); // bidirected {1,3}
        side_info[1].insert(3);
        let g = SideInfoGraph::new(4, side_info).unwrap();
        let (len, cycle) = g.shortest_directed_cycle().unwrap();
        assert_eq!(len, 2);
        assert_eq!(cycle, vec![1, 3]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = SideInfoGraph::directed_cycle(3);
        let all: BTreeSet<usize> = [1, 2, 3].into();
        let (sub, map) = g.induced_subgraph(&all).unwrap();
        assert_eq!(sub, g);
        assert_eq!(map, vec![1, 2, 3]);

        let (sub, map) = g.induced_subgraph(&[1, 2].into()).unwrap();
        assert_eq!(map, vec![1, 2]);
        assert_eq!(sub.side_info(1), &BTreeSet::from([2]));
        assert!(sub.side_info(2).is_empty());

        let (sub, _) = g.induced_subgraph(&[2].into()).unwrap();
        assert_eq!(sub.n(), 1);
        assert!(sub.side_info(1).is_empty());

        assert!(matches!(
            g.induced_subgraph(&BTreeSet::new()),
            Err(GraphError::EmptySet)
        ));
    }

    #[test]
    fn topological_order_of_chain() {
        // K_1 = {2}, K_2 = {3}: edges 1->2->3, so 1 precedes 2 precedes 3
        let g = SideInfoGraph::new(
            3,
            vec![BTreeSet::from([2]), BTreeSet::from([3]), BTreeSet::new()],
        )
        .unwrap();
        let order = g.topological_order().unwrap();
        assert_eq!(order, vec![1, 2, 3]);
        // no edge (i_b, i_a) for a < b
        for a in 0..order.len() {
            for b in (a + 1)..order.len() {
                assert!(!g.knows(order[b], order[a]));
            }
        }
    }

    #[test]
    fn topological_order_absent_iff_cycle_present() {
        let cyc = SideInfoGraph::directed_cycle(3);
        assert!(cyc.topological_order().is_none());
        assert!(cyc.shortest_directed_cycle().is_some());

        let single = SideInfoGraph::empty(1);
        assert_eq!(single.topological_order(), Some(vec![1]));
        assert!(single.shortest_directed_cycle().is_none());
    }

    #[test]
    fn girth_and_topological_order_are_dual() {
        // pseudo-random sweep: a cycle exists exactly when no topological
        // order does
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = (next() % 5 + 2) as usize;
            let mut side_info = vec![BTreeSet::new(); n];
            for i in 1..=n {
                for j in 1..=n {
                    if i != j && next() % 3 == 0 {
                        side_info[i - 1].insert(j);
                    }
                }
            }
            let g = SideInfoGraph::new(n, side_info).unwrap();
            assert_eq!(
                g.shortest_directed_cycle().is_none(),
                g.topological_order().is_some(),
                "on {}",
                g.to_json()
            );
        }
    }

    #[test]
    fn cyclic_automorphism_detection() {
        for n in 2..=6 {
            assert!(SideInfoGraph::directed_cycle(n).has_cyclic_automorphism());
        }
        let mut side_info: Vec<BTreeSet<usize>> = vec![[2, 3].into(), [3].into(), [1].into()];
        let g = SideInfoGraph::new(3, std::mem::take(&mut side_info)).unwrap();
        assert!(!g.has_cyclic_automorphism());
        assert!(SideInfoGraph::empty(4).has_cyclic_automorphism());
    }

    #[test]
    fn maximal_independent_sets_of_c5() {
        let c5 = UndirectedGraph::cycle(5);
        let sets = c5.maximal_independent_sets();
        assert_eq!(sets.len(), 5);
        for s in &sets {
            assert_eq!(s.len(), 2);
        }
    }
}
