//! Exact minimum Vertex Cover, Feedback Vertex Set, and Odd Cycle
//! Transversal by dynamic programming over a nice semi-clique tree
//! decomposition, given only the promised bound k. Each solver either
//! returns an optimal, verifier-checked solution or soundly concludes
//! that no chordal deletion set of size k exists.

mod fvs;
mod oct;
mod states;
mod trace;
mod vc;

pub use fvs::solve_fvs;
pub use oct::solve_oct;
pub use states::{enumerate_bag_states, BagStates, StateKind};
pub use vc::{solve_vc, solve_vc_given_modulator, ModulatorVcError};

use crate::decomposition::{decompose, refine_to_nice, DecomposeOutcome, NiceDecomposition};
use crate::graph::{Graph, VertexSet};

use states::BagCtx;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Vc,
    Fvs,
    Oct,
}

/// An optimal deletion set for one of the three problems. `meets_target`
/// reports `size <= target` when a target was supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub kind: SolutionKind,
    pub vertices: VertexSet,
    pub size: usize,
    pub meets_target: Option<bool>,
}

impl Solution {
    fn new(kind: SolutionKind, vertices: VertexSet, target: Option<usize>) -> Self {
        let size = vertices.len();
        Solution {
            kind,
            vertices,
            size,
            meets_target: target.map(|t| size <= t),
        }
    }
}

/// One-sided as everywhere: NoCvd always certifies that no chordal
/// deletion set of size k exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(Solution),
    NoCvd,
}

/// A nice decomposition together with the per-node position tables the
/// DPs index their bitmask states by.
pub(crate) struct Prepared {
    pub nd: NiceDecomposition,
    pub order: Vec<usize>,
    pub ctx: Vec<BagCtx>,
}

pub(crate) fn prepare(g: &Graph, k: usize) -> Option<Prepared> {
    let td = match decompose(g, k) {
        DecomposeOutcome::Built(td) => td,
        DecomposeOutcome::NoCvd => return None,
    };
    Some(prepare_nice(g, &td))
}

pub(crate) fn prepare_nice(
    g: &Graph,
    td: &crate::decomposition::SemiCliqueTreeDecomposition,
) -> Prepared {
    let nd = refine_to_nice(td, g).expect("engine decompositions pass the validator");
    let order = post_order(&nd);
    let ctx = nd.nodes.iter().map(|n| BagCtx::new(&n.bag)).collect();
    Prepared { nd, order, ctx }
}

/// Children before parents.
fn post_order(nd: &NiceDecomposition) -> Vec<usize> {
    let mut order = Vec::with_capacity(nd.len());
    let mut stack = vec![(nd.root, false)];
    while let Some((t, expanded)) = stack.pop() {
        if expanded {
            order.push(t);
            continue;
        }
        stack.push((t, true));
        for &c in &nd.nodes[t].children {
            stack.push((c, false));
        }
    }
    order
}
