//! Minimum feedback vertex set via an apex construction: add one
//! vertex adjacent to everything, make its edges optional in the DP,
//! and demand a single spanning tree over apex plus survivors — i
//! survivors carrying exactly i−1 chosen edges. Acyclicity is enforced
//! globally by that count, not locally at joins.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::rc::Rc;

use crate::decomposition::{decompose, DecomposeOutcome, NiceNodeKind};
use crate::graph::{Graph, VertexSet};
use crate::oracles::verify_fvs;

use super::states::{insert_bit, remove_bit, survivors_ok};
use super::trace::Trace;
use super::{prepare_nice, Prepared, Solution, SolutionKind, SolveOutcome};

type Mask = u64;

/// Survivor mask over bag positions, connectivity blocks of the
/// survivors as restricted-growth labels over survivor ranks, and
/// d = survivors minus chosen edges (component count while the partial
/// solution stays a forest).
type Key = (Mask, Vec<u8>, i32);

/// Value is the largest survivor count i reaching this key; the future
/// of a state depends only on the key, and larger i is always at least
/// as good.
type Table = BTreeMap<Key, (u32, Rc<Trace>)>;

fn relax(table: &mut Table, key: Key, i: u32, trace: impl FnOnce() -> Rc<Trace>) {
    match table.entry(key) {
        Entry::Occupied(mut e) => {
            if e.get().0 < i {
                e.insert((i, trace()));
            }
        }
        Entry::Vacant(e) => {
            e.insert((i, trace()));
        }
    }
}

/// Relabels blocks by first occurrence.
fn canon(rgs: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    rgs.iter()
        .map(|&l| {
            if map[l as usize] == u8::MAX {
                map[l as usize] = next;
                next += 1;
            }
            map[l as usize]
        })
        .collect()
}

fn survivor_rank(mask: Mask, pos: usize) -> usize {
    (mask & ((1u64 << pos) - 1)).count_ones() as usize
}

/// Computes a minimum feedback vertex set of `g`, or concludes that no
/// chordal deletion set of size `k` exists.
pub fn solve_fvs(g: &Graph, k: usize, target: Option<usize>) -> SolveOutcome {
    let td = match decompose(g, k) {
        DecomposeOutcome::Built(td) => td,
        DecomposeOutcome::NoCvd => return SolveOutcome::NoCvd,
    };
    let apex = g.n();
    let mut edges = g.edges();
    for v in 0..g.n() {
        edges.push((v, apex));
    }
    let gp = Graph::from_edges(g.n() + 1, &edges).expect("apex extension is well formed");
    let td = td.with_added_remainder(&VertexSet::singleton(apex));
    let prep = prepare_nice(&gp, &td);
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
                table.insert((0, Vec::new(), 0), (0, Trace::empty()));
            }
            NiceNodeKind::IntroduceVertex(v) => {
                let child = node.children[0];
                let vpos = ctx[t].pos_of(v);
                for ((m, rgs, d), (i, w)) in &tables[child] {
                    let dead = insert_bit(*m, vpos, false);
                    if survivors_ok(&ctx[t], dead) {
                        relax(&mut table, (dead, rgs.clone(), *d), *i, || {
                            Trace::pick(v, w)
                        });
                    }
                    let alive = insert_bit(*m, vpos, true);
                    if survivors_ok(&ctx[t], alive) {
                        let r = survivor_rank(alive, vpos);
                        let mut rgs2 = rgs.clone();
                        rgs2.insert(r, u8::MAX);
                        relax(&mut table, (alive, canon(&rgs2), *d + 1), *i + 1, || {
                            Rc::clone(w)
                        });
                    }
                }
            }
            NiceNodeKind::IntroduceEdge(u, v) => {
                let child = node.children[0];
                let pu = ctx[t].pos_of(u);
                let pv = ctx[t].pos_of(v);
                let optional = u == apex || v == apex;
                for ((m, rgs, d), (i, w)) in &tables[child] {
                    let both = m >> pu & 1 == 1 && m >> pv & 1 == 1;
                    if !both || optional {
                        // edge skipped (or vacuous)
                        relax(&mut table, (*m, rgs.clone(), *d), *i, || Rc::clone(w));
                    }
                    if both {
                        let bu = rgs[survivor_rank(*m, pu)];
                        let bv = rgs[survivor_rank(*m, pv)];
                        if bu != bv {
                            let merged: Vec<u8> = rgs
                                .iter()
                                .map(|&l| if l == bv { bu } else { l })
                                .collect();
                            relax(&mut table, (*m, canon(&merged), *d - 1), *i, || {
                                Rc::clone(w)
                            });
                        }
                        // same block on a mandatory edge: the state
                        // would close a cycle and dies here
                    }
                }
            }
            NiceNodeKind::Forget(v) => {
                let child = node.children[0];
                let vpos = ctx[child].pos_of(v);
                for ((m, rgs, d), (i, w)) in &tables[child] {
                    let up_mask = remove_bit(*m, vpos);
                    if m >> vpos & 1 == 0 {
                        relax(&mut table, (up_mask, rgs.clone(), *d), *i, || Rc::clone(w));
                        continue;
                    }
                    let r = survivor_rank(*m, vpos);
                    let block = rgs[r];
                    let alone = rgs.iter().filter(|&&l| l == block).count() == 1;
                    if alone && v != apex {
                        // a finished component that never reached the
                        // apex can never join the spanning tree
                        continue;
                    }
                    let mut rgs2 = rgs.clone();
                    rgs2.remove(r);
                    relax(&mut table, (up_mask, canon(&rgs2), *d), *i, || Rc::clone(w));
                }
            }
            NiceNodeKind::Join => {
                let (a, b) = (node.children[0], node.children[1]);
                let mut by_mask: BTreeMap<Mask, Vec<(&Key, u32, &Rc<Trace>)>> = BTreeMap::new();
                for (key, (i, w)) in &tables[b] {
                    by_mask.entry(key.0).or_default().push((key, *i, w));
                }
                for ((m, rgs1, d1), (i1, wa)) in &tables[a] {
                    let Some(rights) = by_mask.get(m) else { continue };
                    let y = m.count_ones();
                    for &(rkey, i2, wb) in rights {
                        let (_, rgs2, d2) = rkey;
                        let glued = glue(rgs1, rgs2);
                        relax(&mut table, (*m, glued, *d1 + *d2 - y as i32), *i1 + i2 - y, || {
                            Trace::merge(wa, wb)
                        });
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

    let root_key: Key = (0, Vec::new(), 1);
    let (i_max, root_trace) = tables[nd.root]
        .get(&root_key)
        .expect("deleting everything leaves the apex as a one-vertex tree");
    let witness = root_trace.collect();
    debug_assert!(!witness.contains(apex), "accepted runs keep the apex alive");
    assert_eq!(witness.len(), g.n() + 1 - *i_max as usize);
    assert!(verify_fvs(g, &witness), "DP witness must leave a forest");
    SolveOutcome::Solved(Solution::new(SolutionKind::Fvs, witness, target))
}

/// Unions the two block structures over the same survivor ranks.
fn glue(rgs1: &[u8], rgs2: &[u8]) -> Vec<u8> {
    let n = rgs1.len();
    debug_assert_eq!(n, rgs2.len());
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for rgs in [rgs1, rgs2] {
        for i in 0..n {
            for j in i + 1..n {
                if rgs[i] == rgs[j] {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let roots: Vec<u8> = (0..n).map(|x| find(&mut parent, x) as u8).collect();
    canon(&roots)
}
