//! Refinement of a semi-clique tree decomposition into a nice one:
//! unary introduce/forget/edge nodes, binary joins, leaves with empty
//! bags, and an empty root. Every bag of the nice tree is a
//! restriction of some original bag, so the budgets carry over.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

use super::{validate_td, SemiCliqueBag, SemiCliqueTreeDecomposition, TdNode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RefineError {
    #[error("input decomposition is invalid: {0}")]
    InputError(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceNodeKind {
    /// No children, empty bag.
    Leaf,
    /// Adds the vertex to the child's bag.
    IntroduceVertex(usize),
    /// Same bag as the child; accounts for the edge (u, v). Each graph
    /// edge is introduced exactly once, just below the forget of its
    /// first-forgotten endpoint.
    IntroduceEdge(usize, usize),
    /// Removes the vertex from the child's bag, never to return above.
    Forget(usize),
    /// Two children with identical bags equal to this node's bag.
    Join,
}

impl fmt::Display for NiceNodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NiceNodeKind::Leaf => write!(f, "leaf"),
            NiceNodeKind::IntroduceVertex(v) => write!(f, "introduce({v})"),
            NiceNodeKind::IntroduceEdge(u, v) => write!(f, "edge({u},{v})"),
            NiceNodeKind::Forget(v) => write!(f, "forget({v})"),
            NiceNodeKind::Join => write!(f, "join"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceNodeKind,
    pub bag: SemiCliqueBag,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
    pub k: usize,
    pub clique_budget: usize,
    pub remainder_budget: usize,
}

impl NiceDecomposition {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Reinterprets the nice tree as a plain decomposition so the
    /// generic validator applies to it.
    pub fn to_td(&self) -> SemiCliqueTreeDecomposition {
        SemiCliqueTreeDecomposition {
            nodes: self
                .nodes
                .iter()
                .map(|n| TdNode {
                    parent: n.parent,
                    children: n.children.clone(),
                    bag: n.bag.clone(),
                })
                .collect(),
            root: self.root,
            k: self.k,
            clique_budget: self.clique_budget,
            remainder_budget: self.remainder_budget,
        }
    }
}

/// Rebuilds `td` as a nice decomposition of `g`. The input must pass
/// the validator; the output has an empty root bag, each vertex is
/// forgotten exactly once, and each edge is introduced exactly once.
pub fn refine_to_nice(
    td: &SemiCliqueTreeDecomposition,
    g: &Graph,
) -> Result<NiceDecomposition, RefineError> {
    let report = validate_td(g, td);
    if !report.is_clean() {
        return Err(RefineError::InputError(report.to_string()));
    }
    let mut b = NiceBuilder {
        g,
        td,
        nodes: Vec::new(),
    };
    let mut cur = b.build(td.root);
    // Forget the root bag down to nothing.
    let root_bag = td.bag(td.root).clone();
    let mut have = root_bag.vertices();
    for v in root_bag.vertices().iter() {
        cur = b.forget(cur, v, &root_bag, &mut have);
    }
    debug_assert!(b.nodes[cur].bag.is_empty());
    Ok(NiceDecomposition {
        nodes: b.nodes,
        root: cur,
        k: td.k,
        clique_budget: td.clique_budget,
        remainder_budget: td.remainder_budget,
    })
}

struct NiceBuilder<'a> {
    g: &'a Graph,
    td: &'a SemiCliqueTreeDecomposition,
    nodes: Vec<NiceNode>,
}

impl NiceBuilder<'_> {
    fn push(&mut self, kind: NiceNodeKind, bag: SemiCliqueBag, children: Vec<usize>) -> usize {
        let idx = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = Some(idx);
        }
        self.nodes.push(NiceNode {
            kind,
            bag,
            parent: None,
            children,
        });
        idx
    }

    /// Returns the nice node whose bag equals the bag of `t`, with the
    /// whole subtree below t already refined underneath it.
    fn build(&mut self, t: usize) -> usize {
        let bag_t = self.td.bag(t).clone();
        let xt = bag_t.vertices();
        let kids = self.td.nodes[t].children.clone();
        let mut tops = Vec::new();
        for c in kids {
            let sub = self.build(c);
            let from = self.td.bag(c).clone();
            tops.push(self.lift(sub, &from, &bag_t));
        }
        match tops.len() {
            0 => {
                let mut cur = self.push(NiceNodeKind::Leaf, SemiCliqueBag::empty(), vec![]);
                let mut have = VertexSet::new();
                for v in xt.iter() {
                    have.insert(v);
                    cur = self.push(
                        NiceNodeKind::IntroduceVertex(v),
                        bag_t.restrict(&have),
                        vec![cur],
                    );
                }
                cur
            }
            1 => tops[0],
            _ => {
                let mut cur = tops[0];
                for &other in &tops[1..] {
                    cur = self.push(NiceNodeKind::Join, bag_t.clone(), vec![cur, other]);
                }
                cur
            }
        }
    }

    /// Transforms a chain top with bag `from` into one with bag `to`:
    /// forgets fall first (ascending), introductions follow
    /// (ascending). Bags on the way keep the partition of the nearer
    /// original bag.
    fn lift(&mut self, mut cur: usize, from: &SemiCliqueBag, to: &SemiCliqueBag) -> usize {
        let xf = from.vertices();
        let xt = to.vertices();
        let mut have = xf.clone();
        for v in xf.difference(&xt).iter() {
            cur = self.forget(cur, v, from, &mut have);
        }
        for v in xt.difference(&xf).iter() {
            have.insert(v);
            cur = self.push(
                NiceNodeKind::IntroduceVertex(v),
                to.restrict(&have),
                vec![cur],
            );
        }
        cur
    }

    /// Emits the introductions of all edges between v and the rest of
    /// the current bag, then the forget of v itself. `have` tracks the
    /// current bag and loses v.
    fn forget(
        &mut self,
        mut cur: usize,
        v: usize,
        reference: &SemiCliqueBag,
        have: &mut VertexSet,
    ) -> usize {
        let below = reference.restrict(have);
        for u in have.iter() {
            if u != v && self.g.has_edge(u, v) {
                cur = self.push(NiceNodeKind::IntroduceEdge(u, v), below.clone(), vec![cur]);
            }
        }
        have.remove(v);
        self.push(NiceNodeKind::Forget(v), reference.restrict(have), vec![cur])
    }
}

/// Collects every way `nd` fails to be a nice decomposition of `g`:
/// the generic decomposition axioms plus the per-kind shape rules and
/// the exactly-once accounting for edges and forgets.
pub fn validate_nice(g: &Graph, nd: &NiceDecomposition) -> Vec<String> {
    let mut out = Vec::new();
    let report = validate_td(g, &nd.to_td());
    if !report.is_clean() {
        out.push(report.to_string());
    }
    if !nd.nodes[nd.root].bag.is_empty() {
        out.push("root bag is not empty".to_string());
    }
    let mut edge_seen: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();
    let mut forgets = vec![0usize; g.n()];
    for (idx, node) in nd.nodes.iter().enumerate() {
        let kids = &node.children;
        let bad = |msg: String, out: &mut Vec<String>| out.push(format!("node {idx}: {msg}"));
        match node.kind {
            NiceNodeKind::Leaf => {
                if !kids.is_empty() {
                    bad("leaf has children".into(), &mut out);
                }
                if !node.bag.is_empty() {
                    bad("leaf bag is not empty".into(), &mut out);
                }
            }
            NiceNodeKind::IntroduceVertex(v) => {
                if kids.len() != 1 {
                    bad("introduce needs exactly one child".into(), &mut out);
                    continue;
                }
                let below = nd.nodes[kids[0]].bag.vertices();
                if below.contains(v) || {
                    let mut want = below.clone();
                    want.insert(v);
                    want != node.bag.vertices()
                } {
                    bad(format!("introduce({v}) does not extend the child bag"), &mut out);
                }
            }
            NiceNodeKind::IntroduceEdge(u, v) => {
                if kids.len() != 1 {
                    bad("edge introduction needs exactly one child".into(), &mut out);
                    continue;
                }
                if nd.nodes[kids[0]].bag.vertices() != node.bag.vertices() {
                    bad(format!("edge({u},{v}) changes the bag"), &mut out);
                }
                if !g.has_edge(u, v) {
                    bad(format!("edge({u},{v}) is not in the graph"), &mut out);
                }
                let bag = node.bag.vertices();
                if !bag.contains(u) || !bag.contains(v) {
                    bad(format!("edge({u},{v}) endpoints missing from the bag"), &mut out);
                }
                *edge_seen.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
            NiceNodeKind::Forget(v) => {
                if kids.len() != 1 {
                    bad("forget needs exactly one child".into(), &mut out);
                    continue;
                }
                let below = nd.nodes[kids[0]].bag.vertices();
                if !below.contains(v) || below.difference(&node.bag.vertices()) != VertexSet::singleton(v)
                {
                    bad(format!("forget({v}) does not shrink the child bag"), &mut out);
                }
                if node.bag.vertices().difference(&below) != VertexSet::new() {
                    bad(format!("forget({v}) adds vertices"), &mut out);
                }
                if v < forgets.len() {
                    forgets[v] += 1;
                }
            }
            NiceNodeKind::Join => {
                if kids.len() != 2 {
                    bad("join needs exactly two children".into(), &mut out);
                    continue;
                }
                for &c in kids {
                    if nd.nodes[c].bag.vertices() != node.bag.vertices() {
                        bad("join child bag differs".into(), &mut out);
                    }
                }
            }
        }
    }
    for (u, v) in g.edges() {
        match edge_seen.get(&(u, v)) {
            Some(1) => {}
            Some(c) => out.push(format!("edge ({u},{v}) introduced {c} times")),
            None => out.push(format!("edge ({u},{v}) never introduced")),
        }
    }
    for (v, &c) in forgets.iter().enumerate() {
        let present = nd.nodes.iter().any(|n| n.bag.vertices().contains(v));
        if present && c != 1 {
            out.push(format!("vertex {v} forgotten {c} times"));
        }
    }
    out
}
