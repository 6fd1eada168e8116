//! Semi-clique tree decompositions: data model, validation, the
//! decomposition engine and the refinement into nice form.

mod engine;
mod nice;

pub use engine::{decompose, DecomposeOutcome};
pub use nice::{refine_to_nice, validate_nice, NiceDecomposition, NiceNode, NiceNodeKind, RefineError};

use std::fmt;

use crate::graph::{connected_components, Graph, VertexSet};

/// Number of clique slots in every bag.
pub const CLIQUE_SLOTS: usize = 4;

/// A bag whose vertices are partitioned into at most four cliques plus
/// a remainder set. Empty slots are ordinary empty sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiCliqueBag {
    pub cliques: [VertexSet; CLIQUE_SLOTS],
    pub remainder: VertexSet,
}

impl SemiCliqueBag {
    pub fn empty() -> Self {
        SemiCliqueBag {
            cliques: Default::default(),
            remainder: VertexSet::new(),
        }
    }

    /// Bag with remainder `n` and no clique parts.
    pub fn from_remainder(n: VertexSet) -> Self {
        SemiCliqueBag {
            cliques: Default::default(),
            remainder: n,
        }
    }

    /// Bag from a list of clique parts (at most four) plus remainder.
    pub fn from_parts(cliques: &[VertexSet], remainder: VertexSet) -> Self {
        assert!(cliques.len() <= CLIQUE_SLOTS, "too many clique parts");
        let mut bag = SemiCliqueBag::from_remainder(remainder);
        for (i, c) in cliques.iter().enumerate() {
            bag.cliques[i] = c.clone();
        }
        bag
    }

    pub fn vertices(&self) -> VertexSet {
        let mut all = self.remainder.clone();
        for c in &self.cliques {
            all = all.union(c);
        }
        all
    }

    pub fn len(&self) -> usize {
        self.vertices().len()
    }

    pub fn is_empty(&self) -> bool {
        self.remainder.is_empty() && self.cliques.iter().all(VertexSet::is_empty)
    }

    pub fn nonempty_cliques(&self) -> usize {
        self.cliques.iter().filter(|c| !c.is_empty()).count()
    }

    /// Restriction of the bag (and its partition) to `keep`.
    pub fn restrict(&self, keep: &VertexSet) -> SemiCliqueBag {
        SemiCliqueBag {
            cliques: std::array::from_fn(|i| self.cliques[i].intersection(keep)),
            remainder: self.remainder.intersection(keep),
        }
    }

    /// Slot index of `v`: `0..4` for clique slots, `4` for remainder.
    pub fn slot_of(&self, v: usize) -> Option<usize> {
        for (i, c) in self.cliques.iter().enumerate() {
            if c.contains(v) {
                return Some(i);
            }
        }
        if self.remainder.contains(v) {
            Some(CLIQUE_SLOTS)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdNode {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub bag: SemiCliqueBag,
}

/// Rooted tree decomposition with per-bag semi-clique partitions and a
/// declared budget: at most `clique_budget` nonempty clique slots and
/// at most `remainder_budget` remainder vertices per bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiCliqueTreeDecomposition {
    pub nodes: Vec<TdNode>,
    pub root: usize,
    pub k: usize,
    pub clique_budget: usize,
    pub remainder_budget: usize,
}

impl SemiCliqueTreeDecomposition {
    /// Remainder budget `7k + 5` used by the decomposition engine.
    pub fn remainder_budget_for(k: usize) -> usize {
        7 * k + 5
    }

    pub fn bag(&self, t: usize) -> &SemiCliqueBag {
        &self.nodes[t].bag
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Union of all bags.
    pub fn all_vertices(&self) -> VertexSet {
        let mut all = VertexSet::new();
        for node in &self.nodes {
            all = all.union(&node.bag.vertices());
        }
        all
    }

    /// Decomposition with the same tree whose every bag additionally
    /// carries `extra` in its remainder, with the remainder budget
    /// raised accordingly.
    pub fn with_added_remainder(&self, extra: &VertexSet) -> SemiCliqueTreeDecomposition {
        let mut out = self.clone();
        for node in &mut out.nodes {
            node.bag.remainder = node.bag.remainder.union(extra);
        }
        out.remainder_budget += extra.len();
        out
    }
}

/// A single validation failure, attributed to a node or vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    BrokenTree { detail: String },
    MissingVertex { v: usize },
    UncoveredEdge { u: usize, v: usize },
    DisconnectedVertex { v: usize },
    ForeignVertex { node: usize, v: usize },
    SlotNotClique { node: usize, slot: usize, u: usize, v: usize },
    OverlappingSlots { node: usize, v: usize },
    TooManyCliques { node: usize, count: usize, budget: usize },
    RemainderTooLarge { node: usize, size: usize, budget: usize },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::BrokenTree { detail } => write!(f, "broken tree structure: {detail}"),
            TdViolation::MissingVertex { v } => write!(f, "vertex {v} appears in no bag"),
            TdViolation::UncoveredEdge { u, v } => {
                write!(f, "edge {u}-{v} contained in no bag")
            }
            TdViolation::DisconnectedVertex { v } => {
                write!(f, "bags containing vertex {v} do not form a subtree")
            }
            TdViolation::ForeignVertex { node, v } => {
                write!(f, "node {node} contains vertex {v} outside the graph")
            }
            TdViolation::SlotNotClique { node, slot, u, v } => write!(
                f,
                "node {node} clique slot {slot} contains non-adjacent {u},{v}"
            ),
            TdViolation::OverlappingSlots { node, v } => {
                write!(f, "node {node} assigns vertex {v} to several parts")
            }
            TdViolation::TooManyCliques {
                node,
                count,
                budget,
            } => write!(
                f,
                "node {node} has {count} nonempty clique slots, budget {budget}"
            ),
            TdViolation::RemainderTooLarge { node, size, budget } => write!(
                f,
                "node {node} has remainder of size {size}, budget {budget}"
            ),
        }
    }
}

/// Validation report; empty means the decomposition is clean.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TdReport {
    pub violations: Vec<TdViolation>,
}

impl TdReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for TdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Checks the three tree decomposition axioms plus the per-bag
/// semi-clique structure and declared budgets. Returns every violation
/// found, not just the first.
pub fn validate_td(g: &Graph, td: &SemiCliqueTreeDecomposition) -> TdReport {
    let mut report = TdReport::default();
    let n_nodes = td.len();

    if n_nodes == 0 {
        report.violations.push(TdViolation::BrokenTree {
            detail: "no nodes".into(),
        });
        return report;
    }
    if td.root >= n_nodes {
        report.violations.push(TdViolation::BrokenTree {
            detail: format!("root {} out of range", td.root),
        });
        return report;
    }

    // Parent/child agreement and reachability from the root.
    if td.nodes[td.root].parent.is_some() {
        report.violations.push(TdViolation::BrokenTree {
            detail: "root has a parent".into(),
        });
    }
    for (t, node) in td.nodes.iter().enumerate() {
        for &c in &node.children {
            if c >= n_nodes || td.nodes[c].parent != Some(t) {
                report.violations.push(TdViolation::BrokenTree {
                    detail: format!("child link {t}->{c} not mirrored"),
                });
            }
        }
        if let Some(p) = node.parent {
            if p >= n_nodes || !td.nodes[p].children.contains(&t) {
                report.violations.push(TdViolation::BrokenTree {
                    detail: format!("parent link {t}->{p} not mirrored"),
                });
            }
        }
    }
    let mut reached = vec![false; n_nodes];
    let mut stack = vec![td.root];
    reached[td.root] = true;
    while let Some(t) = stack.pop() {
        for &c in &td.nodes[t].children {
            if c < n_nodes && !reached[c] {
                reached[c] = true;
                stack.push(c);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        report.violations.push(TdViolation::BrokenTree {
            detail: "not all nodes reachable from root".into(),
        });
        return report;
    }

    // Per-bag structure.
    for (t, node) in td.nodes.iter().enumerate() {
        let bag = &node.bag;
        let mut seen = VertexSet::new();
        let mut parts: Vec<&VertexSet> = bag.cliques.iter().collect();
        parts.push(&bag.remainder);
        for part in parts {
            for v in part.iter() {
                if v >= g.n() {
                    report
                        .violations
                        .push(TdViolation::ForeignVertex { node: t, v });
                }
                if !seen.insert(v) {
                    report
                        .violations
                        .push(TdViolation::OverlappingSlots { node: t, v });
                }
            }
        }
        for (slot, c) in bag.cliques.iter().enumerate() {
            let vs = c.to_vec();
            'slot: for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    if u < g.n() && v < g.n() && !g.has_edge(u, v) {
                        report.violations.push(TdViolation::SlotNotClique {
                            node: t,
                            slot,
                            u,
                            v,
                        });
                        break 'slot;
                    }
                }
            }
        }
        let count = bag.nonempty_cliques();
        if count > td.clique_budget {
            report.violations.push(TdViolation::TooManyCliques {
                node: t,
                count,
                budget: td.clique_budget,
            });
        }
        if bag.remainder.len() > td.remainder_budget {
            report.violations.push(TdViolation::RemainderTooLarge {
                node: t,
                size: bag.remainder.len(),
                budget: td.remainder_budget,
            });
        }
    }

    // Axiom 1: vertex coverage. Axiom 3: occurrences form a subtree.
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (t, node) in td.nodes.iter().enumerate() {
        for v in node.bag.vertices().iter() {
            if v < g.n() {
                containing[v].push(t);
            }
        }
    }
    for v in 0..g.n() {
        if containing[v].is_empty() {
            report.violations.push(TdViolation::MissingVertex { v });
            continue;
        }
        let occ: std::collections::BTreeSet<usize> = containing[v].iter().copied().collect();
        let start = containing[v][0];
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            let node = &td.nodes[t];
            let mut neighbors = node.children.clone();
            if let Some(p) = node.parent {
                neighbors.push(p);
            }
            for nb in neighbors {
                if occ.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        if seen.len() != occ.len() {
            report.violations.push(TdViolation::DisconnectedVertex { v });
        }
    }

    // Axiom 2: edge coverage.
    for (u, v) in g.edges() {
        let covered = td
            .nodes
            .iter()
            .any(|node| node.bag.vertices().contains(u) && node.bag.vertices().contains(v));
        if !covered {
            report.violations.push(TdViolation::UncoveredEdge { u, v });
        }
    }

    report
}

/// Component partition sanity used in debug assertions: all components
/// within `within`, pairwise disjoint, exhaustive and edge-closed.
#[allow(dead_code)]
pub(crate) fn components_partition(g: &Graph, within: &VertexSet) -> bool {
    let comps = connected_components(g, within);
    let mut union = VertexSet::new();
    for c in &comps {
        if !c.is_subset(within) || !union.is_disjoint(c) {
            return false;
        }
        union = union.union(c);
    }
    union == *within
}
