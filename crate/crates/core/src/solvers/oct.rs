//! Minimum odd cycle transversal: every bag vertex is deleted, left,
//! or right; edges forbid same-side survivors; the cheapest deletion
//! labeling at the empty root is optimal.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::rc::Rc;

use crate::decomposition::NiceNodeKind;
use crate::graph::Graph;
use crate::oracles::verify_oct;

use super::states::{get2, insert2, oct_ok, remove2};
use super::trace::Trace;
use super::{prepare, Prepared, Solution, SolutionKind, SolveOutcome};

const DELETED: u8 = 0;

type Table = BTreeMap<u128, (u64, Rc<Trace>)>;

fn relax(table: &mut Table, state: u128, cost: u64, trace: impl FnOnce() -> Rc<Trace>) {
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

/// Computes a minimum odd cycle transversal of `g`, or concludes that
/// no chordal deletion set of size `k` exists.
pub fn solve_oct(g: &Graph, k: usize, target: Option<usize>) -> SolveOutcome {
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
                    for label in 0..3u8 {
                        let cand = insert2(s, vpos, label);
                        if oct_ok(&ctx[t], cand) {
                            let add = u64::from(label == DELETED);
                            relax(&mut table, cand, *cost + add, || {
                                if label == DELETED {
                                    Trace::pick(v, w)
                                } else {
                                    Rc::clone(w)
                                }
                            });
                        }
                    }
                }
            }
            NiceNodeKind::IntroduceEdge(u, v) => {
                let child = node.children[0];
                let pu = ctx[t].pos_of(u);
                let pv = ctx[t].pos_of(v);
                for (&s, (cost, w)) in &tables[child] {
                    let (lu, lv) = (get2(s, pu), get2(s, pv));
                    if lu == DELETED || lv == DELETED || lu != lv {
                        relax(&mut table, s, *cost, || Rc::clone(w));
                    }
                }
            }
            NiceNodeKind::Forget(v) => {
                let child = node.children[0];
                let vpos = ctx[child].pos_of(v);
                for (&s, (cost, w)) in &tables[child] {
                    let up = remove2(s, vpos);
                    debug_assert!(oct_ok(&ctx[t], up));
                    relax(&mut table, up, *cost, || Rc::clone(w));
                }
            }
            NiceNodeKind::Join => {
                let (a, b) = (node.children[0], node.children[1]);
                let width = ctx[t].width();
                for (&s, (ca, wa)) in &tables[a] {
                    if let Some((cb, wb)) = tables[b].get(&s) {
                        let deleted = (0..width).filter(|&p| get2(s, p) == DELETED).count();
                        let cost = *ca + *cb - deleted as u64;
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
    assert!(verify_oct(g, &witness), "DP witness must leave a bipartite graph");
    assert_eq!(*size as usize, witness.len());
    SolveOutcome::Solved(Solution::new(SolutionKind::Oct, witness, target))
}
