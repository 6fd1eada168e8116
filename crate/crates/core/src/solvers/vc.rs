//! Minimum vertex cover: the bitmask DP over the nice decomposition,
//! plus the direct algorithm for when a chordal-deletion modulator is
//! already known.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::rc::Rc;

use thiserror::Error;

use crate::chordal::{is_chordal, mcs_order};
use crate::decomposition::NiceNodeKind;
use crate::graph::{induced_subgraph, open_neighborhood, Graph, VertexSet};
use crate::oracles::verify_vc;

use super::states::{insert_bit, remove_bit, vc_ok};
use super::trace::Trace;
use super::{prepare, Prepared, Solution, SolutionKind, SolveOutcome};

type Table = BTreeMap<u64, (u64, Rc<Trace>)>;

fn relax(table: &mut Table, state: u64, cost: u64, trace: impl FnOnce() -> Rc<Trace>) {
    match table.entry(state) {
        Entry::Occupied(mut e) => {
            if e.get().0 > cost {
                e.insert((cost, trace()));
            }
        }
        Entry::Vacant(e) => {
            e.insert((cost, trace()));
        }
    }
}

/// Computes a minimum vertex cover of `g`, or concludes that no
/// chordal deletion set of size `k` exists.
pub fn solve_vc(g: &Graph, k: usize, target: Option<usize>) -> SolveOutcome {
    let prep = match prepare(g, k) {
        Some(p) => p,
        None => return SolveOutcome::NoCvd,
    };
    let Prepared { nd, order, ctx } = &prep;
    let mut tables: Vec<Table> = vec![Table::new(); nd.len()];
    for &t in order {
        assert!(
            ctx[t].width() <= 64,
            "bags wider than 64 vertices are beyond this DP's state encoding"
        );
        let node = &nd.nodes[t];
        let mut table = Table::new();
        match node.kind {
            NiceNodeKind::Leaf => {
                table.insert(0, (0, Trace::empty()));
            }
            NiceNodeKind::IntroduceVertex(v) => {
                let child = node.children[0];
                let vpos = ctx[t].pos_of(v);
                for (&s, (cost, w)) in &tables[child] {
                    let out = insert_bit(s, vpos, false);
                    if vc_ok(&ctx[t], out) {
                        relax(&mut table, out, *cost, || Rc::clone(w));
                    }
                    let inn = insert_bit(s, vpos, true);
                    if vc_ok(&ctx[t], inn) {
                        relax(&mut table, inn, *cost + 1, || Trace::pick(v, w));
                    }
                }
            }
            NiceNodeKind::IntroduceEdge(u, v) => {
                let child = node.children[0];
                let pu = ctx[t].pos_of(u);
                let pv = ctx[t].pos_of(v);
                for (&s, (cost, w)) in &tables[child] {
                    if s >> pu & 1 == 1 || s >> pv & 1 == 1 {
                        relax(&mut table, s, *cost, || Rc::clone(w));
                    }
                }
            }
            NiceNodeKind::Forget(v) => {
                let child = node.children[0];
                let vpos = ctx[child].pos_of(v);
                for (&s, (cost, w)) in &tables[child] {
                    let up = remove_bit(s, vpos);
                    debug_assert!(vc_ok(&ctx[t], up));
                    relax(&mut table, up, *cost, || Rc::clone(w));
                }
            }
            NiceNodeKind::Join => {
                let (a, b) = (node.children[0], node.children[1]);
                for (&s, (ca, wa)) in &tables[a] {
                    if let Some((cb, wb)) = tables[b].get(&s) {
                        let cost = *ca + *cb - u64::from(s.count_ones());
                        relax(&mut table, s, cost, || Trace::merge(wa, wb));
                    }
                }
            }
        }
        tables[t] = table;
        // A table feeds exactly one parent; drop it as soon as that
        // parent is built, so live memory tracks the frontier and not
        // the whole tree.
        for &c in &node.children {
            tables[c] = Table::new();
        }
    }

    let (size, root_trace) = &tables[nd.root][&0];
    let witness = root_trace.collect();
    assert!(verify_vc(g, &witness), "DP witness must cover every edge");
    assert_eq!(*size as usize, witness.len());
    SolveOutcome::Solved(Solution::new(SolutionKind::Vc, witness, target))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModulatorVcError {
    #[error("graph minus the modulator is not chordal")]
    NonChordalInput,
    #[error("invalid input: {0}")]
    InputError(String),
}

/// Minimum vertex cover when a modulator S with G−S chordal is already
/// known: guess the covered part of S, force the neighbors of the
/// uncovered part, and finish greedily on the chordal rest.
pub fn solve_vc_given_modulator(g: &Graph, s: &VertexSet) -> Result<Solution, ModulatorVcError> {
    if let Some(v) = s.iter().find(|&v| v >= g.n()) {
        return Err(ModulatorVcError::InputError(format!(
            "modulator vertex {v} out of range"
        )));
    }
    if s.len() >= 63 {
        return Err(ModulatorVcError::InputError(
            "modulator too large to enumerate".to_string(),
        ));
    }
    let rest = g.vertices().difference(s);
    let (h, _) = induced_subgraph(g, &rest).expect("rest is in range");
    if !is_chordal(&h).is_chordal() {
        return Err(ModulatorVcError::NonChordalInput);
    }

    let sv = s.to_vec();
    let mut best: Option<VertexSet> = None;
    for mask in 0u64..(1 << sv.len()) {
        let mut x = VertexSet::new();
        for (i, &v) in sv.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x.insert(v);
            }
        }
        let out = s.difference(&x);
        // Uncovered modulator vertices must form an independent set…
        let mut ok = true;
        'pairs: for a in out.iter() {
            for b in out.iter() {
                if a < b && g.has_edge(a, b) {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if !ok {
            continue;
        }
        // …and force all their neighbors into the cover.
        let forced = open_neighborhood(g, &out).difference(s);
        let remaining = rest.difference(&forced);
        let (rg, rmap) = induced_subgraph(g, &remaining).expect("remaining is in range");
        let cover_rest = rmap.set_to_orig(&chordal_min_vc(&rg));
        let total = x.union(&forced).union(&cover_rest);
        debug_assert!(verify_vc(g, &total));
        if best.as_ref().is_none_or(|b| total.len() < b.len()) {
            best = Some(total);
        }
    }
    let vertices = best.expect("some subset always yields a cover");
    assert!(verify_vc(g, &vertices));
    Ok(Solution::new(SolutionKind::Vc, vertices, None))
}

/// Minimum VC of a chordal graph: complement of a maximum independent
/// set, found greedily along a perfect elimination order.
fn chordal_min_vc(g: &Graph) -> VertexSet {
    let order = mcs_order(g);
    debug_assert!(order.is_perfect(g));
    let mut blocked = vec![false; g.n()];
    let mut mis = VertexSet::new();
    for &v in &order.order {
        if !blocked[v] {
            mis.insert(v);
            for u in g.neighbors(v) {
                blocked[u] = true;
            }
        }
    }
    g.vertices().difference(&mis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_vc, OracleBudget};

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn solved_size(out: SolveOutcome) -> usize {
        match out {
            SolveOutcome::Solved(sol) => {
                assert_eq!(sol.size, sol.vertices.len());
                sol.size
            }
            SolveOutcome::NoCvd => panic!("expected a solution"),
        }
    }

    #[test]
    fn complete_graphs_need_all_but_one() {
        for n in [1, 2, 4, 6] {
            assert_eq!(solved_size(solve_vc(&complete(n), 0, None)), n.saturating_sub(1));
        }
    }

    #[test]
    fn c4_with_k1() {
        let out = solve_vc(&cycle(4), 1, None);
        assert_eq!(solved_size(out), 2);
    }

    #[test]
    fn longer_cycles_match_brute_force() {
        for n in 3..9 {
            let g = cycle(n);
            let expect = brute_vc(&g, OracleBudget::new(10)).unwrap().len();
            assert_eq!(solved_size(solve_vc(&g, 1, None)), expect);
        }
    }

    #[test]
    fn empty_graph_has_empty_cover() {
        let g = Graph::from_edges(0, &[]).unwrap();
        assert_eq!(solved_size(solve_vc(&g, 0, None)), 0);
    }

    #[test]
    fn target_reporting() {
        let g = complete(4);
        match solve_vc(&g, 0, Some(3)) {
            SolveOutcome::Solved(sol) => assert_eq!(sol.meets_target, Some(true)),
            _ => panic!(),
        }
        match solve_vc(&g, 0, Some(2)) {
            SolveOutcome::Solved(sol) => assert_eq!(sol.meets_target, Some(false)),
            _ => panic!(),
        }
    }

    #[test]
    fn modulator_solver_on_k4() {
        let g = complete(4);
        let sol = solve_vc_given_modulator(&g, &VertexSet::singleton(0)).unwrap();
        assert_eq!(sol.size, 3);
    }

    #[test]
    fn modulator_solver_on_c4() {
        let g = cycle(4);
        let sol = solve_vc_given_modulator(&g, &VertexSet::singleton(1)).unwrap();
        assert_eq!(sol.size, 2);
    }

    #[test]
    fn modulator_solver_pure_chordal() {
        // S = ∅ on a chordal graph reduces to the greedy chordal VC.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let expect = brute_vc(&g, OracleBudget::new(10)).unwrap().len();
        let sol = solve_vc_given_modulator(&g, &VertexSet::new()).unwrap();
        assert_eq!(sol.size, expect);
    }

    #[test]
    fn modulator_solver_rejects_non_chordal_rest() {
        let g = cycle(4);
        assert_eq!(
            solve_vc_given_modulator(&g, &VertexSet::new()),
            Err(ModulatorVcError::NonChordalInput)
        );
    }

    #[test]
    fn modulator_matches_dp_on_cycles() {
        for n in 4..8 {
            let g = cycle(n);
            let sol = solve_vc_given_modulator(&g, &VertexSet::singleton(0)).unwrap();
            assert_eq!(solved_size(solve_vc(&g, 1, None)), sol.size);
        }
    }
}
