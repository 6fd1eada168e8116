//! Undirected simple graphs on vertex ids `0..n` and vertex sets.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
}

/// Set of vertex ids with sorted iteration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = BTreeSet::new();
        s.insert(v);
        VertexSet(s)
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(vs: [usize; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Immutable undirected simple graph. Neighbor sets are sorted, so all
/// traversals are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Rejects
    /// self-loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![BTreeSet::new(); n];
        let mut m = 0;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v: u });
            }
            if !adj[u].insert(v) {
                return Err(GraphError::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            adj[v].insert(u);
            m += 1;
        }
        Ok(Graph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn is_clique(&self, xs: &VertexSet) -> bool {
        let vs = xs.to_vec();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Mapping between original vertex ids and the compacted ids of an
/// induced subgraph. Sub id `i` corresponds to the `i`-th smallest
/// retained original id.
#[derive(Debug, Clone)]
pub struct IdMap {
    to_orig: Vec<usize>,
}

impl IdMap {
    pub fn to_orig(&self, sub: usize) -> usize {
        self.to_orig[sub]
    }

    pub fn to_sub(&self, orig: usize) -> Option<usize> {
        self.to_orig.binary_search(&orig).ok()
    }

    pub fn set_to_orig(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_orig(v)).collect()
    }

    pub fn set_to_sub(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.to_sub(v)).collect()
    }
}

/// Subgraph induced by `keep`, with ids compacted to `0..keep.len()`.
pub fn induced_subgraph(g: &Graph, keep: &VertexSet) -> Result<(Graph, IdMap), GraphError> {
    if let Some(v) = keep.iter().find(|&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange { v, n: g.n() });
    }
    let to_orig = keep.to_vec();
    let map = IdMap { to_orig };
    let mut edges = Vec::new();
    for (su, &u) in map.to_orig.iter().enumerate() {
        for v in g.neighbors(u) {
            if v > u {
                if let Some(sv) = map.to_sub(v) {
                    edges.push((su, sv));
                }
            }
        }
    }
    let h = Graph::from_edges(map.to_orig.len(), &edges)?;
    Ok((h, map))
}

/// Open neighborhood `N(X)`: vertices outside `X` adjacent to `X`.
pub fn open_neighborhood(g: &Graph, xs: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for u in xs.iter() {
        for v in g.neighbors(u) {
            if !xs.contains(v) {
                out.insert(v);
            }
        }
    }
    out
}

/// Closed neighborhood `N[X] = X ∪ N(X)`.
pub fn closed_neighborhood(g: &Graph, xs: &VertexSet) -> VertexSet {
    xs.union(&open_neighborhood(g, xs))
}

/// Connected components of the subgraph induced by `within`, ordered by
/// their smallest member.
pub fn connected_components(g: &Graph, within: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::new();
    let mut comps = Vec::new();
    for seed in within.iter() {
        if seen.contains(seed) {
            continue;
        }
        let mut comp = VertexSet::new();
        let mut stack = vec![seed];
        seen.insert(seed);
        while let Some(u) = stack.pop() {
            comp.insert(u);
            for v in g.neighbors(u) {
                if within.contains(v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// True when some vertex of `a` can reach some vertex of `b` inside
/// `within` (both endpoints must lie in `within`).
pub fn sets_connected(g: &Graph, within: &VertexSet, a: &VertexSet, b: &VertexSet) -> bool {
    let a_in = a.intersection(within);
    if a_in.is_empty() {
        return false;
    }
    let b_in = b.intersection(within);
    if b_in.is_empty() {
        return false;
    }
    if !a_in.is_disjoint(&b_in) {
        return true;
    }
    let mut seen = a_in.clone();
    let mut stack = a_in.to_vec();
    while let Some(u) = stack.pop() {
        for v in g.neighbors(u) {
            if within.contains(v) && seen.insert(v) {
                if b_in.contains(v) {
                    return true;
                }
                stack.push(v);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn from_edges_rejects_self_loop() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(GraphError::SelfLoop { v: 0 })
        );
    }

    #[test]
    fn from_edges_rejects_duplicate() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
    }

    #[test]
    fn from_edges_rejects_out_of_range() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { v: 2, n: 2 })
        );
    }

    #[test]
    fn induced_subgraph_of_c4() {
        let g = cycle(4);
        let keep = VertexSet::from([0, 1, 3]);
        let (h, map) = induced_subgraph(&g, &keep).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(map.to_orig(2), 3);
        assert_eq!(map.to_sub(3), Some(2));
        assert_eq!(map.to_sub(2), None);
    }

    #[test]
    fn neighborhood_of_c4_pair() {
        let g = cycle(4);
        let xs = VertexSet::from([0, 1]);
        assert_eq!(open_neighborhood(&g, &xs), VertexSet::from([2, 3]));
        assert_eq!(closed_neighborhood(&g, &xs), VertexSet::from([0, 1, 2, 3]));
    }

    #[test]
    fn neighborhood_disjoint_from_input() {
        let g = cycle(5);
        let xs = VertexSet::from([1, 2]);
        assert!(open_neighborhood(&g, &xs).is_disjoint(&xs));
    }

    #[test]
    fn components_of_c4_fragment() {
        let g = cycle(4);
        // 2 isolated from {0,1,3}? No: restrict to {0,1,3}: edges 0-1, 0-3.
        let comps = connected_components(&g, &VertexSet::from([0, 1, 3]));
        assert_eq!(comps, vec![VertexSet::from([0, 1, 3])]);
        let comps = connected_components(&g, &VertexSet::from([1, 3]));
        assert_eq!(comps, vec![VertexSet::singleton(1), VertexSet::singleton(3)]);
    }

    #[test]
    fn components_of_empty_set() {
        let g = cycle(4);
        assert!(connected_components(&g, &VertexSet::new()).is_empty());
    }

    #[test]
    fn edge_case_empty_graph() {
        let g = Graph::from_edges(0, &[]).unwrap();
        assert_eq!(g.n(), 0);
        assert!(g.edges().is_empty());
        assert!(connected_components(&g, &VertexSet::new()).is_empty());
    }

    #[test]
    fn sets_connected_in_c4() {
        let g = cycle(4);
        let all = g.vertices();
        assert!(sets_connected(
            &g,
            &all,
            &VertexSet::singleton(0),
            &VertexSet::singleton(2)
        ));
        let no_middle = VertexSet::from([0, 2]);
        assert!(!sets_connected(
            &g,
            &no_middle,
            &VertexSet::singleton(0),
            &VertexSet::singleton(2)
        ));
    }

    #[test]
    fn clique_check() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        assert!(g.is_clique(&VertexSet::from([0, 1, 2])));
        assert!(!g.is_clique(&VertexSet::from([0, 1, 2, 3])));
        assert!(g.is_clique(&VertexSet::new()));
        assert!(g.is_clique(&VertexSet::singleton(3)));
    }
}
