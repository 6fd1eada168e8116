//! Brute-force reference implementations. Everything here enumerates
//! candidate sets in ascending size and lexicographic order, so results
//! are deterministic and the returned witness is the lexicographically
//! smallest optimum. Inputs beyond the size budget are refused rather
//! than silently attempted.

use itertools::Itertools;
use thiserror::Error;

use crate::chordal;
use crate::graph::{connected_components, Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph on {n} vertices exceeds oracle budget of {max_n}")]
    TooLarge { n: usize, max_n: usize },
    #[error("invalid oracle input: {0}")]
    InputError(String),
}

/// Size guard for the exponential oracles.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_n: usize,
}

impl OracleBudget {
    pub fn new(max_n: usize) -> Self {
        OracleBudget { max_n }
    }

    /// Default budget for vertex cover.
    pub fn vc_default() -> Self {
        OracleBudget { max_n: 18 }
    }

    /// Default budget for the acyclicity, bipartiteness and chordality
    /// deletion problems.
    pub fn deletion_default() -> Self {
        OracleBudget { max_n: 16 }
    }

    fn check(&self, g: &Graph) -> Result<(), OracleError> {
        if g.n() > self.max_n {
            Err(OracleError::TooLarge {
                n: g.n(),
                max_n: self.max_n,
            })
        } else {
            Ok(())
        }
    }
}

pub fn verify_vc(g: &Graph, xs: &VertexSet) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| xs.contains(u) || xs.contains(v))
}

pub fn verify_fvs(g: &Graph, xs: &VertexSet) -> bool {
    is_forest(g, &g.vertices().difference(xs))
}

pub fn verify_oct(g: &Graph, xs: &VertexSet) -> bool {
    is_bipartite(g, &g.vertices().difference(xs))
}

pub fn verify_cvd(g: &Graph, xs: &VertexSet) -> bool {
    let keep = g.vertices().difference(xs);
    let (h, _) = crate::graph::induced_subgraph(g, &keep).expect("valid vertex set");
    chordal::is_chordal(&h).is_chordal()
}

/// True when the subgraph induced by `within` has no cycle.
pub fn is_forest(g: &Graph, within: &VertexSet) -> bool {
    let comps = connected_components(g, within);
    let mut vertices = 0usize;
    let mut half_edges = 0usize;
    for comp in &comps {
        vertices += comp.len();
        for u in comp.iter() {
            half_edges += g.neighbors(u).filter(|&v| comp.contains(v)).count();
        }
    }
    half_edges / 2 == vertices - comps.len()
}

/// True when the subgraph induced by `within` is bipartite.
pub fn is_bipartite(g: &Graph, within: &VertexSet) -> bool {
    let mut color: std::collections::BTreeMap<usize, bool> = Default::default();
    for seed in within.iter() {
        if color.contains_key(&seed) {
            continue;
        }
        color.insert(seed, false);
        let mut stack = vec![seed];
        while let Some(u) = stack.pop() {
            let cu = color[&u];
            for v in g.neighbors(u) {
                if !within.contains(v) {
                    continue;
                }
                match color.get(&v) {
                    None => {
                        color.insert(v, !cu);
                        stack.push(v);
                    }
                    Some(&cv) => {
                        if cv == cu {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn brute_deletion(
    g: &Graph,
    budget: OracleBudget,
    good: impl Fn(&Graph, &VertexSet) -> bool,
) -> Result<VertexSet, OracleError> {
    budget.check(g)?;
    let vs: Vec<usize> = (0..g.n()).collect();
    for size in 0..=g.n() {
        for combo in vs.iter().copied().combinations(size) {
            let xs: VertexSet = combo.into_iter().collect();
            if good(g, &xs) {
                return Ok(xs);
            }
        }
    }
    unreachable!("deleting all vertices always succeeds")
}

/// Minimum vertex cover, lexicographically smallest witness.
pub fn brute_vc(g: &Graph, budget: OracleBudget) -> Result<VertexSet, OracleError> {
    brute_deletion(g, budget, verify_vc)
}

/// Minimum feedback vertex set.
pub fn brute_fvs(g: &Graph, budget: OracleBudget) -> Result<VertexSet, OracleError> {
    brute_deletion(g, budget, verify_fvs)
}

/// Minimum odd cycle transversal.
pub fn brute_oct(g: &Graph, budget: OracleBudget) -> Result<VertexSet, OracleError> {
    brute_deletion(g, budget, verify_oct)
}

/// Minimum chordal vertex deletion set.
pub fn brute_cvd(g: &Graph, budget: OracleBudget) -> Result<VertexSet, OracleError> {
    brute_deletion(g, budget, verify_cvd)
}

/// True when every path from `a` to `b` meets `z`. Endpoints count:
/// a path starting or ending inside `z` is hit.
pub fn separates(g: &Graph, a: &VertexSet, b: &VertexSet, z: &VertexSet) -> bool {
    let within = g.vertices().difference(z);
    !crate::graph::sets_connected(g, &within, a, b)
}

/// Minimum set of vertices (terminals allowed) meeting every `a`-`b`
/// path, by subset enumeration.
pub fn brute_min_separator(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    budget: OracleBudget,
) -> Result<VertexSet, OracleError> {
    budget.check(g)?;
    if !a.is_disjoint(b) {
        return Err(OracleError::InputError(
            "terminal sets must be disjoint".into(),
        ));
    }
    let vs: Vec<usize> = (0..g.n()).collect();
    for size in 0..=g.n() {
        for combo in vs.iter().copied().combinations(size) {
            let z: VertexSet = combo.into_iter().collect();
            if separates(g, a, b, &z) {
                return Ok(z);
            }
        }
    }
    unreachable!("deleting all vertices separates everything")
}

/// True when all terminals are pairwise separated after deleting `z`
/// (which must avoid the terminals).
pub fn separates_multiway(g: &Graph, terminals: &[usize], z: &VertexSet) -> bool {
    let within = g.vertices().difference(z);
    for (i, &s) in terminals.iter().enumerate() {
        for &t in &terminals[i + 1..] {
            if crate::graph::sets_connected(
                g,
                &within,
                &VertexSet::singleton(s),
                &VertexSet::singleton(t),
            ) {
                return false;
            }
        }
    }
    true
}

/// Minimum multiway cut disjoint from the terminals, of size at most
/// `k`; `None` when no such cut exists.
pub fn brute_multiway_cut(
    g: &Graph,
    terminals: &[usize],
    k: usize,
    budget: OracleBudget,
) -> Result<Option<VertexSet>, OracleError> {
    budget.check(g)?;
    let tset: VertexSet = terminals.iter().copied().collect();
    if tset.len() != terminals.len() {
        return Err(OracleError::InputError("duplicate terminal".into()));
    }
    let candidates: Vec<usize> = (0..g.n()).filter(|v| !tset.contains(*v)).collect();
    for size in 0..=k.min(candidates.len()) {
        for combo in candidates.iter().copied().combinations(size) {
            let z: VertexSet = combo.into_iter().collect();
            if separates_multiway(g, terminals, &z) {
                return Ok(Some(z));
            }
        }
    }
    Ok(None)
}
