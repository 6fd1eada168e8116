//! Vertex separators: budget-bounded minimum vertex cuts, balanced
//! separations from a separator, the guessed-partition boundary split,
//! node multiway cuts, and clique-plus-k separators for three cliques.
//!
//! Cut semantics throughout: a set Z separates A from B when every
//! A-B path *meets* Z, endpoints included — terminals themselves are
//! deletable unless a caller protects them.

mod flow;

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::chordal::{enumerate_maximal_cliques, CliqueBudget, CliqueEnumeration};
use crate::decomposition::SemiCliqueTreeDecomposition;
use crate::graph::{
    connected_components, induced_subgraph, sets_connected, Graph, IdMap, VertexSet,
};
use flow::VertexCutNetwork;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("invalid input: {0}")]
    InputError(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// True when every path from `a` to `b` (endpoints included) meets `x`.
pub fn vertex_set_separates(g: &Graph, a: &VertexSet, b: &VertexSet, x: &VertexSet) -> bool {
    let within = g.vertices().difference(x);
    !sets_connected(g, &within, a, b)
}

/// Nonnegative rational vertex weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFn {
    weights: Vec<Ratio<i64>>,
}

impl WeightFn {
    pub fn uniform(n: usize) -> WeightFn {
        WeightFn {
            weights: vec![Ratio::from_integer(1); n],
        }
    }

    pub fn zero(n: usize) -> WeightFn {
        WeightFn {
            weights: vec![Ratio::from_integer(0); n],
        }
    }

    pub fn new(weights: Vec<Ratio<i64>>) -> Result<WeightFn, SeparatorError> {
        if let Some((v, _)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| **w < Ratio::from_integer(0))
        {
            return Err(SeparatorError::InputError(format!(
                "negative weight at vertex {v}"
            )));
        }
        Ok(WeightFn { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: usize) -> Ratio<i64> {
        self.weights[v]
    }

    pub fn of_set(&self, s: &VertexSet) -> Ratio<i64> {
        s.iter().map(|v| self.weights[v]).sum()
    }
}

/// A separation (A, B): the two sides cover the graph and their
/// intersection separates them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    pub fn separator(&self) -> VertexSet {
        self.a.intersection(&self.b)
    }

    /// A ∪ B = V and no edge joins A∖B to B∖A.
    pub fn is_valid(&self, g: &Graph) -> bool {
        if self.a.union(&self.b) != g.vertices() {
            return false;
        }
        let only_a = self.a.difference(&self.b);
        let only_b = self.b.difference(&self.a);
        let crossing = only_a
            .iter()
            .any(|u| g.neighbors(u).any(|v| only_b.contains(v)));
        !crossing
    }
}

/// A separator that is one clique plus at most k extra vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiCliqueSeparator {
    pub d: VertexSet,
    pub z: VertexSet,
}

impl SemiCliqueSeparator {
    pub fn x(&self) -> VertexSet {
        self.d.union(&self.z)
    }
}

/// A 2-partition of a boundary set N with both sides small and a
/// clique-plus-k separator between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaNbSplit {
    pub n_a: VertexSet,
    pub n_b: VertexSet,
    pub sep: SemiCliqueSeparator,
}

impl NaNbSplit {
    /// Full contract check: partition of `n`, side bounds 4k+2, clique
    /// separator structure, and actual separation.
    pub fn is_valid(&self, g: &Graph, n: &VertexSet, k: usize) -> bool {
        self.n_a.is_disjoint(&self.n_b)
            && self.n_a.union(&self.n_b) == *n
            && self.n_a.len() <= 4 * k + 2
            && self.n_b.len() <= 4 * k + 2
            && self.sep.z.len() <= k
            && g.is_clique(&self.sep.d)
            && self.sep.d.is_disjoint(&self.sep.z)
            && vertex_set_separates(g, &self.n_a, &self.n_b, &self.sep.x())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutOutcome {
    Cut(VertexSet),
    LimitExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    Split(NaNbSplit),
    NoCvd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiwayOutcome {
    Cut(VertexSet),
    NoSolution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreeCliqueOutcome {
    Separator(SemiCliqueSeparator),
    NoCvd,
}

fn check_in_range(g: &Graph, s: &VertexSet, what: &str) -> Result<(), SeparatorError> {
    match s.iter().find(|&v| v >= g.n()) {
        Some(v) => Err(SeparatorError::InputError(format!(
            "{what} vertex {v} out of range"
        ))),
        None => Ok(()),
    }
}

/// Minimum set of vertices (terminals included) meeting every A-B
/// path, provided its size is at most `limit`; `LimitExceeded`
/// otherwise. The returned cut is the canonical source-side one.
pub fn min_vertex_cut(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    limit: usize,
) -> Result<CutOutcome, SeparatorError> {
    check_in_range(g, a, "terminal")?;
    check_in_range(g, b, "terminal")?;
    if !a.is_disjoint(b) {
        return Err(SeparatorError::InputError(
            "terminal sets intersect".into(),
        ));
    }
    let big = limit as u64 + 1;
    let mut net = VertexCutNetwork::new(g, big, |_| 1);
    for v in a.iter() {
        net.add_source_arc(v);
    }
    for v in b.iter() {
        net.add_sink_arc(v);
    }
    if net.augment_until(limit as u64) {
        Ok(CutOutcome::Cut(net.min_cut()))
    } else {
        Ok(CutOutcome::LimitExceeded)
    }
}

/// Balanced separation around a given separator X: components of G−X
/// are sorted by weight (descending, ties by smallest member), and the
/// A side takes the minimal prefix reaching a third of the total
/// weight. Requires every component to weigh at most half the total;
/// then both open sides weigh at most two thirds of the total.
pub fn balanced_separation_from_separator(
    g: &Graph,
    x: &VertexSet,
    w: &WeightFn,
) -> Result<Separation, SeparatorError> {
    check_in_range(g, x, "separator")?;
    if w.len() != g.n() {
        return Err(SeparatorError::InputError(format!(
            "weight function covers {} vertices, graph has {}",
            w.len(),
            g.n()
        )));
    }
    let total = w.of_set(&g.vertices());
    let rest = g.vertices().difference(x);
    let comps = connected_components(g, &rest);
    let two = Ratio::from_integer(2);
    for c in &comps {
        if w.of_set(c) > total / two {
            return Err(SeparatorError::PreconditionViolated(format!(
                "component {c} weighs more than half the total"
            )));
        }
    }

    let a_side: Vec<&VertexSet> = if total.is_zero() {
        comps.iter().collect()
    } else {
        let mut order: Vec<(&VertexSet, Ratio<i64>)> =
            comps.iter().map(|c| (c, w.of_set(c))).collect();
        order.sort_by(|(_, wa), (_, wb)| wb.cmp(wa));
        let threshold = total / Ratio::from_integer(3);
        let mut prefix = Vec::new();
        let mut sum = Ratio::from_integer(0);
        for (c, wc) in &order {
            prefix.push(*c);
            sum += *wc;
            if sum >= threshold {
                break;
            }
        }
        prefix
    };

    let mut a = x.clone();
    for c in &a_side {
        a = a.union(c);
    }
    let b = g.vertices().difference(&a).union(x);
    let sep = Separation { a, b };
    debug_assert!(sep.is_valid(g));
    debug_assert!(w.of_set(&sep.a.difference(&sep.b)) * Ratio::from_integer(3) <= total * two);
    debug_assert!(w.of_set(&sep.b.difference(&sep.a)) * Ratio::from_integer(3) <= total * two);
    Ok(sep)
}

/// Splits a boundary set N into sides N_A, N_B of at most 4k+2
/// vertices separated by one maximal clique plus at most k vertices.
/// NoCvd certifies that no chordal deletion set of size k exists.
///
/// Deterministic search: maximal cliques in enumeration order; within a
/// clique D, partitions in ascending binary-counter order over sorted N
/// (bit j set = j-th smallest vertex on the A side). The first
/// partition whose cut fits the budget wins.
pub fn find_balanced_split(
    g: &Graph,
    n: &VertexSet,
    k: usize,
) -> Result<SplitOutcome, SeparatorError> {
    check_in_range(g, n, "boundary")?;
    if n.len() < 5 * k + 3 || n.len() > 6 * k + 4 {
        return Err(SeparatorError::InputError(format!(
            "|N| = {} outside [{}, {}] for k = {k}",
            n.len(),
            5 * k + 3,
            6 * k + 4
        )));
    }
    let cliques = match enumerate_maximal_cliques(g, CliqueBudget::new(k, g.n())) {
        CliqueEnumeration::All(c) => c,
        CliqueEnumeration::BudgetExceeded => return Ok(SplitOutcome::NoCvd),
    };
    let sorted_n = n.to_vec();
    for d in &cliques {
        let keep = g.vertices().difference(d);
        let (h, map) = induced_subgraph(g, &keep).expect("keep is within range");
        let mut search = SplitSearch {
            d,
            map: &map,
            net: VertexCutNetwork::new(&h, k as u64 + 1, |_| 1),
            sorted_n: &sorted_n,
            side_cap: 4 * k + 2,
            k,
            n_a: VertexSet::new(),
            n_b: VertexSet::new(),
        };
        if let Some(split) = search.dfs(sorted_n.len()) {
            debug_assert!(split.is_valid(g, n, k));
            return Ok(SplitOutcome::Split(split));
        }
    }
    Ok(SplitOutcome::NoCvd)
}

struct SplitSearch<'a> {
    d: &'a VertexSet,
    map: &'a IdMap,
    net: VertexCutNetwork,
    sorted_n: &'a [usize],
    side_cap: usize,
    k: usize,
    n_a: VertexSet,
    n_b: VertexSet,
}

impl SplitSearch<'_> {
    /// Assigns position `remaining - 1` next (most significant bit
    /// first, B side before A side), so leaves appear in ascending
    /// binary-counter order. All prunes are exact-negative: a side
    /// over its cap, a side that can no longer reach its minimum, or a
    /// partial-terminal flow already above k (the cut for any
    /// completion is at least the cut for the terminals seen so far).
    fn dfs(&mut self, remaining: usize) -> Option<NaNbSplit> {
        let total = self.sorted_n.len();
        if self.n_a.len() > self.side_cap || self.n_b.len() > self.side_cap {
            return None;
        }
        if self.n_a.len() + remaining + self.side_cap < total
            || self.n_b.len() + remaining + self.side_cap < total
        {
            return None;
        }
        if remaining == 0 {
            let z = self.map.set_to_orig(&self.net.min_cut());
            return Some(NaNbSplit {
                n_a: self.n_a.clone(),
                n_b: self.n_b.clone(),
                sep: SemiCliqueSeparator {
                    d: self.d.clone(),
                    z,
                },
            });
        }
        let v = self.sorted_n[remaining - 1];
        let sub = if self.d.contains(v) {
            None
        } else {
            Some(self.map.to_sub(v).expect("v outside D maps into G - D"))
        };

        self.n_b.insert(v);
        match sub {
            None => {
                if let Some(hit) = self.dfs(remaining - 1) {
                    return Some(hit);
                }
            }
            Some(s) => {
                let cp = self.net.checkpoint();
                self.net.add_sink_arc(s);
                if self.net.augment_until(self.k as u64) {
                    if let Some(hit) = self.dfs(remaining - 1) {
                        return Some(hit);
                    }
                }
                self.net.rollback(cp);
            }
        }
        self.n_b.remove(v);

        self.n_a.insert(v);
        match sub {
            None => {
                if let Some(hit) = self.dfs(remaining - 1) {
                    return Some(hit);
                }
            }
            Some(s) => {
                let cp = self.net.checkpoint();
                self.net.add_source_arc(s);
                if self.net.augment_until(self.k as u64) {
                    if let Some(hit) = self.dfs(remaining - 1) {
                        return Some(hit);
                    }
                }
                self.net.rollback(cp);
            }
        }
        self.n_a.remove(v);
        None
    }
}

/// Minimum set X ⊆ V∖T of size at most k meeting every path between
/// two distinct terminals; NoSolution if no such set fits the budget.
pub fn node_multiway_cut(
    g: &Graph,
    terminals: &[usize],
    k: usize,
) -> Result<MultiwayOutcome, SeparatorError> {
    let mut tset = VertexSet::new();
    for &t in terminals {
        if t >= g.n() {
            return Err(SeparatorError::InputError(format!(
                "terminal {t} out of range"
            )));
        }
        if !tset.insert(t) {
            return Err(SeparatorError::InputError(format!(
                "duplicate terminal {t}"
            )));
        }
    }
    // Adjacent terminals are joined by a two-vertex path that no
    // non-terminal set can meet.
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            if g.has_edge(a, b) {
                return Ok(MultiwayOutcome::NoSolution);
            }
        }
    }
    for budget in 0..=k {
        let mut deleted = VertexSet::new();
        if let Some(cut) = multiway_search(g, terminals, &tset, &mut deleted, budget) {
            return Ok(MultiwayOutcome::Cut(cut));
        }
    }
    Ok(MultiwayOutcome::NoSolution)
}

/// Branch on the non-terminal vertices of a shortest violating path;
/// any valid cut must contain one of them. Iterative deepening over
/// the budget in the caller makes the first hit minimum.
fn multiway_search(
    g: &Graph,
    terminals: &[usize],
    tset: &VertexSet,
    deleted: &mut VertexSet,
    budget: usize,
) -> Option<VertexSet> {
    let path = match shortest_violating_path(g, terminals, deleted) {
        None => return Some(deleted.clone()),
        Some(p) => p,
    };
    if budget == 0 || multiway_bound_exceeded(g, terminals, tset, deleted, budget) {
        return None;
    }
    // The overall shortest pair path has no internal terminal: one
    // would give a strictly shorter pair path.
    for &v in &path[1..path.len() - 1] {
        debug_assert!(!tset.contains(v));
        deleted.insert(v);
        let hit = multiway_search(g, terminals, tset, deleted, budget - 1);
        deleted.remove(v);
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Shortest path between any two terminals avoiding `deleted`; ties
/// broken by terminal-pair order, so the result is deterministic.
fn shortest_violating_path(
    g: &Graph,
    terminals: &[usize],
    deleted: &VertexSet,
) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for (i, &s) in terminals.iter().enumerate() {
        let mut pred = vec![usize::MAX; g.n()];
        let mut dist = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if !deleted.contains(w) && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    pred[w] = u;
                    queue.push_back(w);
                }
            }
        }
        for &t in &terminals[i + 1..] {
            if dist[t] == usize::MAX {
                continue;
            }
            if best.as_ref().is_none_or(|p| dist[t] + 1 < p.len()) {
                let mut path = vec![t];
                let mut cur = t;
                while cur != s {
                    cur = pred[cur];
                    path.push(cur);
                }
                path.reverse();
                best = Some(path);
            }
        }
    }
    best
}

/// Lower-bound prune: the minimum vertex cut between any terminal pair
/// with all terminals protected and prior deletions free is a lower
/// bound on the remaining multiway-cut size.
fn multiway_bound_exceeded(
    g: &Graph,
    terminals: &[usize],
    tset: &VertexSet,
    deleted: &VertexSet,
    budget: usize,
) -> bool {
    let big = budget as u64 + 1;
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            let mut net = VertexCutNetwork::new(g, big, |v| {
                if deleted.contains(v) {
                    0
                } else if tset.contains(v) {
                    big
                } else {
                    1
                }
            });
            net.add_source_arc(a);
            net.add_sink_arc(b);
            if !net.augment_until(budget as u64) {
                return true;
            }
        }
    }
    false
}

/// Separator for three disjoint cliques: one maximal clique D plus at
/// most k extra vertices Z whose union meets every path between two
/// different input cliques. NoCvd certifies no chordal deletion set of
/// size k exists.
pub fn three_clique_separator(
    g: &Graph,
    cx: &VertexSet,
    cy: &VertexSet,
    cz: &VertexSet,
    k: usize,
) -> Result<ThreeCliqueOutcome, SeparatorError> {
    for c in [cx, cy, cz] {
        check_in_range(g, c, "clique")?;
        if !g.is_clique(c) {
            return Err(SeparatorError::InputError(format!(
                "input set {c} is not a clique"
            )));
        }
    }
    if !cx.is_disjoint(cy) || !cx.is_disjoint(cz) || !cy.is_disjoint(cz) {
        return Err(SeparatorError::InputError(
            "input cliques overlap".into(),
        ));
    }
    let cliques = match enumerate_maximal_cliques(g, CliqueBudget::new(k, g.n())) {
        CliqueEnumeration::All(c) => c,
        CliqueEnumeration::BudgetExceeded => return Ok(ThreeCliqueOutcome::NoCvd),
    };
    for d in &cliques {
        // G - D plus one fresh terminal per clique, adjacent to what
        // remains of that clique.
        let keep = g.vertices().difference(d);
        let (h0, map) = induced_subgraph(g, &keep).expect("keep is within range");
        let base = h0.n();
        let mut edges = h0.edges();
        for (offset, c) in [cx, cy, cz].iter().enumerate() {
            for v in c.difference(d).iter() {
                edges.push((map.to_sub(v).expect("v outside D"), base + offset));
            }
        }
        let h = Graph::from_edges(base + 3, &edges).expect("gadget edges are simple");
        match node_multiway_cut(&h, &[base, base + 1, base + 2], k)? {
            MultiwayOutcome::Cut(z_sub) => {
                let sep = SemiCliqueSeparator {
                    d: d.clone(),
                    z: map.set_to_orig(&z_sub),
                };
                debug_assert!(separates_clique_pairs(g, cx, cy, cz, &sep.x()));
                return Ok(ThreeCliqueOutcome::Separator(sep));
            }
            MultiwayOutcome::NoSolution => {}
        }
    }
    Ok(ThreeCliqueOutcome::NoCvd)
}

/// True when `x` meets every path between two different ones of the
/// three sets.
pub fn separates_clique_pairs(
    g: &Graph,
    cx: &VertexSet,
    cy: &VertexSet,
    cz: &VertexSet,
    x: &VertexSet,
) -> bool {
    vertex_set_separates(g, cx, cy, x)
        && vertex_set_separates(g, cx, cz, x)
        && vertex_set_separates(g, cy, cz, x)
}

/// The median node of three nodes in the decomposition tree: every
/// component of T − v contains at most one of {x, y, z}.
pub fn tree_triple_split(
    td: &SemiCliqueTreeDecomposition,
    x: usize,
    y: usize,
    z: usize,
) -> usize {
    let on_xy: std::collections::BTreeSet<usize> = path_between(td, x, y).into_iter().collect();
    path_between(td, z, x)
        .into_iter()
        .find(|v| on_xy.contains(v))
        .expect("path z->x always reaches x, which lies on path x->y")
}

fn node_depth(td: &SemiCliqueTreeDecomposition, v: usize) -> usize {
    let mut d = 0;
    let mut cur = v;
    while let Some(p) = td.nodes[cur].parent {
        cur = p;
        d += 1;
    }
    d
}

/// Tree path from `a` to `b`, inclusive, in walk order.
fn path_between(td: &SemiCliqueTreeDecomposition, a: usize, b: usize) -> Vec<usize> {
    let mut da = node_depth(td, a);
    let mut db = node_depth(td, b);
    let (mut ax, mut bx) = (a, b);
    let mut front = vec![ax];
    let mut back = vec![bx];
    while da > db {
        ax = td.nodes[ax].parent.unwrap();
        front.push(ax);
        da -= 1;
    }
    while db > da {
        bx = td.nodes[bx].parent.unwrap();
        back.push(bx);
        db -= 1;
    }
    while ax != bx {
        ax = td.nodes[ax].parent.expect("nodes share a root");
        front.push(ax);
        bx = td.nodes[bx].parent.expect("nodes share a root");
        back.push(bx);
    }
    back.pop();
    back.reverse();
    front.extend(back);
    front
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{SemiCliqueBag, TdNode};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn cut_on_c4_deletes_the_cheaper_terminal() {
        // Both 0-1-2 and 0-3-2 connect the opposite corners; deleting
        // vertex 0 itself meets every path at cost 1.
        let g = cycle(4);
        let got = min_vertex_cut(&g, &VertexSet::singleton(0), &VertexSet::singleton(2), 2);
        assert_eq!(got, Ok(CutOutcome::Cut(VertexSet::singleton(0))));
    }

    #[test]
    fn cut_on_single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        match min_vertex_cut(&g, &VertexSet::singleton(0), &VertexSet::singleton(1), 1).unwrap() {
            CutOutcome::Cut(z) => assert_eq!(z.len(), 1),
            CutOutcome::LimitExceeded => panic!("an endpoint is a valid cut"),
        }
    }

    #[test]
    fn cut_between_components_is_empty() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let got = min_vertex_cut(&g, &VertexSet::singleton(0), &VertexSet::singleton(3), 0);
        assert_eq!(got, Ok(CutOutcome::Cut(VertexSet::new())));
    }

    #[test]
    fn cut_rejects_intersecting_terminals() {
        let g = cycle(4);
        assert!(matches!(
            min_vertex_cut(&g, &VertexSet::from([0, 1]), &VertexSet::from([1, 2]), 3),
            Err(SeparatorError::InputError(_))
        ));
    }

    #[test]
    fn cut_reports_limit_exceeded() {
        // In K4 with two terminals on each side the minimum cut is a
        // full side, size 2.
        let g = complete(4);
        let a = VertexSet::from([0, 1]);
        let b = VertexSet::from([2, 3]);
        assert_eq!(
            min_vertex_cut(&g, &a, &b, 1),
            Ok(CutOutcome::LimitExceeded)
        );
        assert_eq!(
            min_vertex_cut(&g, &a, &b, 2),
            Ok(CutOutcome::Cut(VertexSet::from([0, 1])))
        );
    }

    #[test]
    fn separates_respects_deletable_endpoints() {
        let g = cycle(4);
        let a = VertexSet::singleton(0);
        let b = VertexSet::singleton(2);
        assert!(vertex_set_separates(&g, &a, &b, &VertexSet::from([1, 3])));
        assert!(vertex_set_separates(&g, &a, &b, &VertexSet::singleton(0)));
        assert!(!vertex_set_separates(&g, &a, &b, &VertexSet::singleton(1)));
    }

    #[test]
    fn balanced_separation_takes_heaviest_prefix() {
        let g = Graph::from_edges(3, &[]).unwrap();
        let w = WeightFn::new(vec![
            Ratio::from_integer(5),
            Ratio::from_integer(4),
            Ratio::from_integer(3),
        ])
        .unwrap();
        let sep = balanced_separation_from_separator(&g, &VertexSet::new(), &w).unwrap();
        assert_eq!(sep.a, VertexSet::singleton(0));
        assert_eq!(sep.b, VertexSet::from([1, 2]));
    }

    #[test]
    fn balanced_separation_rejects_heavy_component() {
        let g = Graph::from_edges(2, &[]).unwrap();
        let w = WeightFn::new(vec![Ratio::from_integer(7), Ratio::from_integer(1)]).unwrap();
        assert!(matches!(
            balanced_separation_from_separator(&g, &VertexSet::new(), &w),
            Err(SeparatorError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn balanced_separation_zero_weights_put_everything_left() {
        let g = cycle(4);
        let sep =
            balanced_separation_from_separator(&g, &VertexSet::singleton(0), &WeightFn::zero(4))
                .unwrap();
        assert_eq!(sep.a, g.vertices());
        assert_eq!(sep.b, VertexSet::singleton(0));
    }

    #[test]
    fn balanced_separation_on_star() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let sep =
            balanced_separation_from_separator(&g, &VertexSet::singleton(0), &WeightFn::uniform(4))
                .unwrap();
        // Total 4, components {1},{2},{3}: prefix of two reaches 4/3.
        assert_eq!(sep.a, VertexSet::from([0, 1, 2]));
        assert_eq!(sep.b, VertexSet::from([0, 3]));
        assert!(sep.is_valid(&g));
    }

    #[test]
    fn balanced_separation_heavy_separator_keeps_b_bare() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let w = WeightFn::new(vec![Ratio::from_integer(10), Ratio::from_integer(1)]).unwrap();
        let sep = balanced_separation_from_separator(&g, &VertexSet::singleton(0), &w).unwrap();
        assert_eq!(sep.a, VertexSet::from([0, 1]));
        assert_eq!(sep.b, VertexSet::singleton(0));
    }

    #[test]
    fn separation_validity_checks_cover_and_crossing_edges() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(Separation {
            a: VertexSet::from([0, 1]),
            b: VertexSet::from([1, 2]),
        }
        .is_valid(&g));
        assert!(!Separation {
            a: VertexSet::singleton(0),
            b: VertexSet::singleton(2),
        }
        .is_valid(&g));
        assert!(!Separation {
            a: VertexSet::from([0, 1]),
            b: VertexSet::from([2]),
        }
        .is_valid(&g));
    }

    #[test]
    fn split_on_complete_graph_k1() {
        // K8 with N = V, k = 1: the only maximal clique is everything,
        // so the first size-legal partition ({0,1} vs the rest) wins
        // with an empty cut.
        let g = complete(8);
        let n = g.vertices();
        match find_balanced_split(&g, &n, 1).unwrap() {
            SplitOutcome::Split(split) => {
                assert_eq!(split.n_a, VertexSet::from([0, 1]));
                assert_eq!(split.n_b, VertexSet::from([2, 3, 4, 5, 6, 7]));
                assert_eq!(split.sep.d, g.vertices());
                assert_eq!(split.sep.z, VertexSet::new());
                assert!(split.is_valid(&g, &n, 1));
            }
            SplitOutcome::NoCvd => panic!("K8 is chordal"),
        }
    }

    #[test]
    fn split_on_two_disjoint_edges_k0() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let n = g.vertices();
        match find_balanced_split(&g, &n, 0).unwrap() {
            SplitOutcome::Split(split) => {
                assert_eq!(split.n_a, VertexSet::from([0, 1]));
                assert_eq!(split.n_b, VertexSet::from([2, 3]));
                assert_eq!(split.sep.z, VertexSet::new());
                assert!(split.is_valid(&g, &n, 0));
            }
            SplitOutcome::NoCvd => panic!("disjoint edges split trivially"),
        }
    }

    #[test]
    fn split_rejects_out_of_range_boundary_size() {
        let g = complete(8);
        assert!(matches!(
            find_balanced_split(&g, &VertexSet::from([0, 1]), 1),
            Err(SeparatorError::InputError(_))
        ));
    }

    #[test]
    fn split_reports_no_cvd_on_clique_blowup() {
        // K_{2,2,2} has 8 maximal cliques, over the k=0 budget of 6.
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if u / 2 != v / 2 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(6, &edges).unwrap();
        assert_eq!(
            find_balanced_split(&g, &VertexSet::from([0, 1, 2]), 0),
            Ok(SplitOutcome::NoCvd)
        );
    }

    #[test]
    fn multiway_cut_of_star_is_center() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            node_multiway_cut(&g, &[1, 2, 3], 1),
            Ok(MultiwayOutcome::Cut(VertexSet::singleton(0)))
        );
    }

    #[test]
    fn multiway_cut_of_separated_terminals_is_empty() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(
            node_multiway_cut(&g, &[0, 2, 4], 0),
            Ok(MultiwayOutcome::Cut(VertexSet::new()))
        );
    }

    #[test]
    fn multiway_cut_adjacent_terminals_unsolvable() {
        let g = complete(3);
        assert_eq!(
            node_multiway_cut(&g, &[0, 1, 2], 5),
            Ok(MultiwayOutcome::NoSolution)
        );
    }

    #[test]
    fn multiway_cut_on_path_is_minimum() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(
            node_multiway_cut(&g, &[0, 2, 4], 1),
            Ok(MultiwayOutcome::NoSolution)
        );
        assert_eq!(
            node_multiway_cut(&g, &[0, 2, 4], 2),
            Ok(MultiwayOutcome::Cut(VertexSet::from([1, 3])))
        );
    }

    #[test]
    fn multiway_cut_rejects_duplicate_terminal() {
        let g = cycle(4);
        assert!(matches!(
            node_multiway_cut(&g, &[0, 0, 2], 1),
            Err(SeparatorError::InputError(_))
        ));
    }

    #[test]
    fn three_cliques_in_separate_components() {
        let mut edges = Vec::new();
        for base in [0, 3, 6] {
            edges.push((base, base + 1));
            edges.push((base, base + 2));
            edges.push((base + 1, base + 2));
        }
        let g = Graph::from_edges(9, &edges).unwrap();
        let (cx, cy, cz) = (
            VertexSet::from([0, 1, 2]),
            VertexSet::from([3, 4, 5]),
            VertexSet::from([6, 7, 8]),
        );
        match three_clique_separator(&g, &cx, &cy, &cz, 0).unwrap() {
            ThreeCliqueOutcome::Separator(sep) => {
                assert_eq!(sep.z, VertexSet::new());
                assert!(separates_clique_pairs(&g, &cx, &cy, &cz, &sep.x()));
            }
            ThreeCliqueOutcome::NoCvd => panic!("k=0 suffices here"),
        }
    }

    #[test]
    fn three_triangles_through_cut_vertex() {
        let mut edges = Vec::new();
        for base in [0, 3, 6] {
            edges.push((base, base + 1));
            edges.push((base, base + 2));
            edges.push((base + 1, base + 2));
            edges.push((base, 9));
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        let (cx, cy, cz) = (
            VertexSet::from([0, 1, 2]),
            VertexSet::from([3, 4, 5]),
            VertexSet::from([6, 7, 8]),
        );
        match three_clique_separator(&g, &cx, &cy, &cz, 1).unwrap() {
            ThreeCliqueOutcome::Separator(sep) => {
                assert!(sep.z.len() <= 1);
                assert!(separates_clique_pairs(&g, &cx, &cy, &cz, &sep.x()));
            }
            ThreeCliqueOutcome::NoCvd => panic!("cut vertex solves this with k=1"),
        }
    }

    #[test]
    fn three_cliques_inside_one_clique() {
        let g = complete(6);
        let (cx, cy, cz) = (
            VertexSet::from([0, 1]),
            VertexSet::from([2, 3]),
            VertexSet::from([4, 5]),
        );
        match three_clique_separator(&g, &cx, &cy, &cz, 0).unwrap() {
            ThreeCliqueOutcome::Separator(sep) => {
                assert_eq!(sep.d, g.vertices());
                assert_eq!(sep.z, VertexSet::new());
            }
            ThreeCliqueOutcome::NoCvd => panic!("the big clique is the separator"),
        }
    }

    #[test]
    fn three_clique_separator_rejects_bad_inputs() {
        let g = cycle(4);
        assert!(matches!(
            three_clique_separator(
                &g,
                &VertexSet::from([0, 2]),
                &VertexSet::singleton(1),
                &VertexSet::singleton(3),
                1
            ),
            Err(SeparatorError::InputError(_))
        ));
        assert!(matches!(
            three_clique_separator(
                &g,
                &VertexSet::singleton(0),
                &VertexSet::singleton(0),
                &VertexSet::singleton(2),
                1
            ),
            Err(SeparatorError::InputError(_))
        ));
    }

    fn bare_node(parent: Option<usize>, children: Vec<usize>) -> TdNode {
        TdNode {
            parent,
            children,
            bag: SemiCliqueBag::empty(),
        }
    }

    fn chain_td(n: usize) -> SemiCliqueTreeDecomposition {
        let nodes = (0..n)
            .map(|i| {
                bare_node(
                    if i == 0 { None } else { Some(i - 1) },
                    if i + 1 < n { vec![i + 1] } else { vec![] },
                )
            })
            .collect();
        SemiCliqueTreeDecomposition {
            nodes,
            root: 0,
            k: 0,
            clique_budget: 4,
            remainder_budget: 5,
        }
    }

    #[test]
    fn triple_split_on_chain() {
        let td = chain_td(5);
        assert_eq!(tree_triple_split(&td, 0, 2, 4), 2);
        assert_eq!(tree_triple_split(&td, 0, 4, 2), 2);
        assert_eq!(tree_triple_split(&td, 4, 0, 2), 2);
    }

    #[test]
    fn triple_split_on_star() {
        let nodes = vec![
            bare_node(None, vec![1, 2, 3]),
            bare_node(Some(0), vec![]),
            bare_node(Some(0), vec![]),
            bare_node(Some(0), vec![]),
        ];
        let td = SemiCliqueTreeDecomposition {
            nodes,
            root: 0,
            k: 0,
            clique_budget: 4,
            remainder_budget: 5,
        };
        assert_eq!(tree_triple_split(&td, 1, 2, 3), 0);
    }

    #[test]
    fn triple_split_degenerate_positions() {
        let td = chain_td(3);
        assert_eq!(tree_triple_split(&td, 0, 2, 1), 1);
        assert_eq!(tree_triple_split(&td, 1, 1, 1), 1);
        assert_eq!(tree_triple_split(&td, 0, 0, 2), 0);
    }
}
