//! Chordal graph machinery: recognition with certificates, budgeted
//! maximal clique enumeration, clique trees, and decompositions built
//! from a known deletion set.

use thiserror::Error;

use crate::decomposition::{SemiCliqueBag, SemiCliqueTreeDecomposition, TdNode};
use crate::graph::{induced_subgraph, Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChordalError {
    #[error("input graph is not chordal")]
    NonChordalInput,
    #[error("invalid input: {0}")]
    InputError(String),
}

/// Vertex order in elimination sequence; position 0 is eliminated
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
}

impl EliminationOrder {
    /// True when for every vertex the neighbors eliminated later form a
    /// clique.
    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.first_defect(g).is_none()
    }

    /// First violation `(v, x, y)`: `x` and `y` are non-adjacent
    /// neighbors of `v` that are both eliminated after `v`.
    fn first_defect(&self, g: &Graph) -> Option<(usize, usize, usize)> {
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &v) in self.order.iter().enumerate() {
            let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > i).collect();
            if later.len() < 2 {
                continue;
            }
            // Classic test: the earliest later neighbor must see all
            // the others; on failure scan the pair out explicitly.
            let p = *later.iter().min_by_key(|&&u| pos[u]).unwrap();
            if later.iter().all(|&u| u == p || g.has_edge(p, u)) {
                continue;
            }
            for (a_idx, &x) in later.iter().enumerate() {
                for &y in &later[a_idx + 1..] {
                    if !g.has_edge(x, y) {
                        return Some((v, x, y));
                    }
                }
            }
        }
        None
    }
}

/// Outcome of chordality recognition: a perfect elimination order, or a
/// chordless cycle of length at least four as counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrder),
    ChordlessCycle(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Maximum-cardinality search: repeatedly pick the unvisited vertex
/// with the most visited neighbors (smallest id on ties). The reverse
/// visit order is a perfect elimination order iff the graph is chordal.
pub fn mcs_order(g: &Graph) -> EliminationOrder {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .unwrap();
        visited[v] = true;
        visit.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    EliminationOrder { order: visit }
}

/// Recognizes chordal graphs. On success the witness is a perfect
/// elimination order; on failure, a chordless cycle of length >= 4
/// (returned in cyclic vertex order).
pub fn is_chordal(g: &Graph) -> Chordality {
    let order = mcs_order(g);
    match order.first_defect(g) {
        None => Chordality::Chordal(order),
        Some((v, x, y)) => {
            if let Some(cycle) = hole_through(g, v, x, y) {
                return Chordality::ChordlessCycle(cycle);
            }
            // The defect triple itself may not span a hole; some triple
            // from an actual hole always does.
            for v in 0..g.n() {
                let nb: Vec<usize> = g.neighbors(v).collect();
                for (i, &x) in nb.iter().enumerate() {
                    for &y in &nb[i + 1..] {
                        if g.has_edge(x, y) {
                            continue;
                        }
                        if let Some(cycle) = hole_through(g, v, x, y) {
                            return Chordality::ChordlessCycle(cycle);
                        }
                    }
                }
            }
            unreachable!("non-chordal graph must contain a chordless cycle")
        }
    }
}

/// Chordless cycle through `v` and its non-adjacent neighbors `x`, `y`:
/// a shortest `x`-`y` path avoiding `N[v]` except at its endpoints is
/// induced, and closing it through `v` keeps it chordless.
fn hole_through(g: &Graph, v: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let mut allowed = g.vertices();
    allowed.remove(v);
    for u in g.neighbors(v) {
        if u != x && u != y {
            allowed.remove(u);
        }
    }
    // BFS shortest path x -> y within `allowed`.
    let mut pred = vec![usize::MAX; g.n()];
    let mut seen = VertexSet::singleton(x);
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if u == y {
            break;
        }
        for w in g.neighbors(u) {
            if allowed.contains(w) && seen.insert(w) {
                pred[w] = u;
                queue.push_back(w);
            }
        }
    }
    if !seen.contains(y) {
        return None;
    }
    let mut path = vec![y];
    let mut cur = y;
    while cur != x {
        cur = pred[cur];
        path.push(cur);
    }
    path.push(v);
    path.reverse();
    debug_assert!(is_chordless_cycle(g, &path));
    Some(path)
}

/// True when `cycle` lists a chordless cycle of length >= 4 in order.
pub fn is_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = cycle.len();
    if n < 4 {
        return false;
    }
    let set: VertexSet = cycle.iter().copied().collect();
    if set.len() != n {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent_on_cycle = j == i + 1 || (i == 0 && j == n - 1);
            if g.has_edge(cycle[i], cycle[j]) != adjacent_on_cycle {
                return false;
            }
        }
    }
    true
}

/// Enumeration budget: abort once more than `limit` maximal cliques
/// appear. A graph with a chordal deletion set of size `k` has at most
/// `2^k * n` maximal cliques, so exceeding `limit = 2^k * n` certifies
/// that no such set exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueBudget {
    pub k: usize,
    pub limit: u64,
}

impl CliqueBudget {
    pub fn new(k: usize, n: usize) -> Self {
        let limit = if k >= 64 {
            u64::MAX
        } else {
            (1u64 << k).saturating_mul(n as u64)
        };
        CliqueBudget { k, limit }
    }

    pub fn unlimited() -> Self {
        CliqueBudget {
            k: 0,
            limit: u64::MAX,
        }
    }
}

/// Result of budgeted enumeration: the full list, or an abort that
/// certifies the clique count exceeds the budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueEnumeration {
    All(Vec<VertexSet>),
    BudgetExceeded,
}

/// All maximal cliques, in a deterministic order, aborting as soon as
/// the count would exceed `budget.limit`.
pub fn enumerate_maximal_cliques(g: &Graph, budget: CliqueBudget) -> CliqueEnumeration {
    if g.n() == 0 {
        return CliqueEnumeration::All(Vec::new());
    }
    let mut out = Vec::new();
    let mut r = VertexSet::new();
    let p: Vec<usize> = (0..g.n()).collect();
    if bron_kerbosch(g, &mut r, p, Vec::new(), budget.limit, &mut out) {
        CliqueEnumeration::All(out)
    } else {
        CliqueEnumeration::BudgetExceeded
    }
}

/// Pivoting Bron-Kerbosch; candidate lists stay sorted so emission
/// order is deterministic. Returns false on budget abort.
fn bron_kerbosch(
    g: &Graph,
    r: &mut VertexSet,
    p: Vec<usize>,
    x: Vec<usize>,
    limit: u64,
    out: &mut Vec<VertexSet>,
) -> bool {
    if p.is_empty() && x.is_empty() {
        if out.len() as u64 >= limit {
            return false;
        }
        out.push(r.clone());
        return true;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (p.iter().filter(|&&w| g.has_edge(u, w)).count(), usize::MAX - u))
        .unwrap();
    let candidates: Vec<usize> = p
        .iter()
        .copied()
        .filter(|&v| !g.has_edge(pivot, v))
        .collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        r.insert(v);
        let p2: Vec<usize> = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let x2: Vec<usize> = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        if !bron_kerbosch(g, r, p2, x2, limit, out) {
            return false;
        }
        r.remove(v);
        p.retain(|&w| w != v);
        x.push(v);
    }
    true
}

/// Clique tree of a chordal graph: bags are exactly the maximal
/// cliques, joined by a maximum-weight spanning tree on shared-vertex
/// counts. Every bag is a single clique part.
pub fn clique_tree(g: &Graph) -> Result<SemiCliqueTreeDecomposition, ChordalError> {
    if !is_chordal(g).is_chordal() {
        return Err(ChordalError::NonChordalInput);
    }
    let cliques = match enumerate_maximal_cliques(g, CliqueBudget::new(0, g.n().max(1))) {
        CliqueEnumeration::All(c) => c,
        CliqueEnumeration::BudgetExceeded => {
            unreachable!("chordal graph has at most n maximal cliques")
        }
    };
    if cliques.is_empty() {
        return Ok(SemiCliqueTreeDecomposition {
            nodes: vec![TdNode {
                parent: None,
                children: vec![],
                bag: SemiCliqueBag::empty(),
            }],
            root: 0,
            k: 0,
            clique_budget: 1,
            remainder_budget: 0,
        });
    }

    // Prim over the complete clique graph, maximizing |Ci ∩ Cj|.
    let q = cliques.len();
    let mut in_tree = vec![false; q];
    let mut best_weight = vec![0usize; q];
    let mut best_link = vec![0usize; q];
    in_tree[0] = true;
    for j in 1..q {
        best_weight[j] = cliques[0].intersection(&cliques[j]).len();
    }
    let mut parent = vec![None; q];
    for _ in 1..q {
        let j = (0..q)
            .filter(|&j| !in_tree[j])
            .max_by(|&a, &b| best_weight[a].cmp(&best_weight[b]).then(b.cmp(&a)))
            .unwrap();
        in_tree[j] = true;
        parent[j] = Some(best_link[j]);
        for t in 0..q {
            if !in_tree[t] {
                let w = cliques[j].intersection(&cliques[t]).len();
                if w > best_weight[t] {
                    best_weight[t] = w;
                    best_link[t] = j;
                }
            }
        }
    }

    let mut nodes: Vec<TdNode> = cliques
        .iter()
        .enumerate()
        .map(|(j, c)| TdNode {
            parent: parent[j],
            children: vec![],
            bag: SemiCliqueBag::from_parts(&[c.clone()], VertexSet::new()),
        })
        .collect();
    for j in 0..q {
        if let Some(p) = parent[j] {
            nodes[p].children.push(j);
        }
    }
    Ok(SemiCliqueTreeDecomposition {
        nodes,
        root: 0,
        k: 0,
        clique_budget: 1,
        remainder_budget: 0,
    })
}

/// Decomposition from a known deletion set: the clique tree of `g - s`
/// with `s` added to every bag's remainder. Bags are (1, |s|)-semi-
/// cliques. Fails when `g - s` is not chordal.
pub fn modulator_semi_clique_td(
    g: &Graph,
    s: &VertexSet,
) -> Result<SemiCliqueTreeDecomposition, ChordalError> {
    if let Some(v) = s.iter().find(|&v| v >= g.n()) {
        return Err(ChordalError::InputError(format!(
            "modulator vertex {v} out of range"
        )));
    }
    let keep = g.vertices().difference(s);
    let (h, map) = induced_subgraph(g, &keep).expect("vertex range checked");
    let ct = clique_tree(&h)?;
    let nodes: Vec<TdNode> = ct
        .nodes
        .iter()
        .map(|node| TdNode {
            parent: node.parent,
            children: node.children.clone(),
            bag: SemiCliqueBag::from_parts(
                &[map.set_to_orig(&node.bag.cliques[0])],
                s.clone(),
            ),
        })
        .collect();
    Ok(SemiCliqueTreeDecomposition {
        nodes,
        root: ct.root,
        k: s.len(),
        clique_budget: 1,
        remainder_budget: s.len(),
    })
}
