//! Instance generators: planted chordal-deletion instances, the
//! hitting-set-to-vertex-cover gadget, and the edge-triangulation
//! transform that turns vertex-cover-style structure into cycles.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::oracles::verify_cvd;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("invalid instance parameters: {0}")]
    InputError(String),
}

/// A generated graph together with the vertex set whose removal leaves it
/// chordal. The modulator is a certificate, not necessarily optimal.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub k: usize,
    pub seed: u64,
}

/// Generates a graph that is chordal after deleting a known set of `k`
/// vertices. The chordal part is built from a random elimination order:
/// each vertex samples neighbors among the vertices after it in the order
/// (one guaranteed, the rest with probability `density`), and the order is
/// then made a perfect elimination order by completing every vertex's
/// later-neighborhood into a clique. The `k` extra vertices then attach to
/// the rest with probability `density`, independently per endpoint.
///
/// Output is a pure function of the arguments: the same seed always yields
/// the same graph.
pub fn gen_planted(
    n: usize,
    k: usize,
    density: f64,
    seed: u64,
) -> Result<PlantedInstance, InstanceError> {
    if k > n {
        return Err(InstanceError::InputError(format!(
            "k = {k} exceeds the vertex count {n}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(InstanceError::InputError(format!(
            "density {density} is outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = n - k;

    let mut order: Vec<usize> = (0..base).collect();
    order.shuffle(&mut rng);
    let mut pos = vec![0usize; base];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }

    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); base];
    for i in 0..base {
        let v = order[i];
        let mut any = false;
        for &u in &order[i + 1..] {
            if rng.gen_bool(density) {
                adj[v].insert(u);
                adj[u].insert(v);
                any = true;
            }
        }
        // Keep the chordal part connected-ish: every non-last vertex gets at
        // least one later neighbor so density 0 still yields a forest spine.
        if !any && i + 1 < base {
            let u = order[rng.gen_range(i + 1..base)];
            adj[v].insert(u);
            adj[u].insert(v);
        }
    }

    // Play the elimination game along the order: completing each vertex's
    // current later-neighborhood (samples plus earlier fill) into a clique
    // makes the order a perfect elimination order of the result.
    for i in 0..base {
        let v = order[i];
        let later: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] > i).collect();
        for a in 0..later.len() {
            for b in a + 1..later.len() {
                adj[later[a]].insert(later[b]);
                adj[later[b]].insert(later[a]);
            }
        }
    }

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (v, nb) in adj.iter().enumerate() {
        for &u in nb {
            edges.insert((v.min(u), v.max(u)));
        }
    }
    for apex in base..n {
        for other in 0..apex {
            if rng.gen_bool(density) {
                edges.insert((other, apex));
            }
        }
    }

    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    let graph = Graph::from_edges(n, &edge_list).expect("generated edges are simple and in range");
    let modulator: VertexSet = (base..n).collect();
    assert!(
        verify_cvd(&graph, &modulator),
        "construction leaves the graph chordal after removing the planted set"
    );
    Ok(PlantedInstance {
        graph,
        modulator,
        k,
        seed,
    })
}

/// A hitting set instance: a universe `{0, .., universe-1}` and a family of
/// nonempty subsets, each of which must be hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
}

impl HittingSetInstance {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(InstanceError::InputError(format!("set {i} is empty")));
            }
            let mut seen = BTreeSet::new();
            for &u in s {
                if u >= universe {
                    return Err(InstanceError::InputError(format!(
                        "set {i} mentions element {u} outside the universe of size {universe}"
                    )));
                }
                if !seen.insert(u) {
                    return Err(InstanceError::InputError(format!(
                        "set {i} repeats element {u}"
                    )));
                }
            }
        }
        Ok(HittingSetInstance { universe, sets })
    }
}

/// Encodes hitting set as vertex cover. Vertices `0..universe` stand for the
/// elements; each family set contributes a clique with one copy vertex per
/// element, and each copy is attached to its element vertex. Covering a
/// clique of size s needs s-1 vertices, and the one copy left uncovered
/// forces its element vertex into the cover, so
/// `min VC = min hitting set + sum(|S| - 1)`.
///
/// Returns the graph, the set of element vertices (whose removal leaves a
/// disjoint union of cliques), and that size offset.
pub fn hitting_set_vc_instance(hs: &HittingSetInstance) -> (Graph, VertexSet, usize) {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = hs.universe;
    let mut offset = 0;
    for s in &hs.sets {
        let copies: Vec<usize> = (next..next + s.len()).collect();
        next += s.len();
        offset += s.len() - 1;
        for a in 0..copies.len() {
            for b in a + 1..copies.len() {
                edges.push((copies[a], copies[b]));
            }
        }
        for (i, &u) in s.iter().enumerate() {
            edges.push((u, copies[i]));
        }
    }
    let graph = Graph::from_edges(next, &edges).expect("gadget edges are simple and in range");
    let modulator: VertexSet = (0..hs.universe).collect();
    (graph, modulator, offset)
}

/// Subdivision-style thickening: every edge `(u, v)` gains a fresh vertex
/// adjacent to exactly `u` and `v`, turning each original edge into a
/// triangle. Any feedback vertex set or odd cycle transversal of the result
/// must break every such triangle, which is how vertex-cover-hard structure
/// is carried into the cycle problems. Original vertex ids are unchanged;
/// edge vertices are appended in sorted edge order.
pub fn triangulate_for_fvs_oct(g: &Graph) -> Graph {
    let orig = g.edges();
    let mut edges = orig.clone();
    let mut next = g.n();
    for &(u, v) in &orig {
        edges.push((u, next));
        edges.push((v, next));
        next += 1;
    }
    Graph::from_edges(next, &edges).expect("edge vertices are fresh")
}
