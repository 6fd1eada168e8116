//! Bag-state enumeration and admissibility checks shared by the DP
//! solvers. A state never materializes unless it obeys the per-clique
//! caps: a vertex cover misses at most one vertex of any clique, and a
//! forest or bipartite remainder keeps at most two vertices of any
//! clique alive.

use crate::decomposition::SemiCliqueBag;
use crate::graph::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Vc,
    Fvs,
    Oct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BagStates {
    /// Cover choices Y ⊆ bag with |Ci ∖ Y| ≤ 1 per clique slot.
    Vc(Vec<VertexSet>),
    /// Survivor sets with at most two survivors per clique slot.
    Fvs(Vec<VertexSet>),
    /// (left, right) survivor sides, disjoint, with at most two
    /// survivors per clique slot; everything else is deleted.
    Oct(Vec<(VertexSet, VertexSet)>),
}

impl BagStates {
    pub fn len(&self) -> usize {
        match self {
            BagStates::Vc(v) | BagStates::Fvs(v) => v.len(),
            BagStates::Oct(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Lists every admissible state of the bag, each exactly once, in a
/// deterministic order.
pub fn enumerate_bag_states(bag: &SemiCliqueBag, kind: StateKind) -> BagStates {
    let cliques: Vec<VertexSet> = bag.cliques.iter().filter(|c| !c.is_empty()).cloned().collect();
    let rem: Vec<usize> = bag.remainder.to_vec();
    match kind {
        StateKind::Vc => BagStates::Vc(vc_states(&cliques, &rem)),
        StateKind::Fvs => BagStates::Fvs(fvs_states(&cliques, &rem)),
        StateKind::Oct => BagStates::Oct(oct_states(&cliques, &rem)),
    }
}

fn subsets(rem: &[usize]) -> Vec<VertexSet> {
    let mut out = Vec::with_capacity(1 << rem.len());
    for mask in 0u64..(1 << rem.len()) {
        let mut s = VertexSet::new();
        for (i, &v) in rem.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.insert(v);
            }
        }
        out.push(s);
    }
    out
}

fn vc_states(cliques: &[VertexSet], rem: &[usize]) -> Vec<VertexSet> {
    // Per clique: everything in the cover, or exactly one vertex out.
    let mut acc: Vec<VertexSet> = vec![VertexSet::new()];
    for c in cliques {
        let mut next = Vec::with_capacity(acc.len() * (c.len() + 1));
        for base in &acc {
            next.push(base.union(c));
            for v in c.iter() {
                let mut y = base.union(c);
                y.remove(v);
                next.push(y);
            }
        }
        acc = next;
    }
    let mut out = Vec::new();
    for base in &acc {
        for extra in subsets(rem) {
            out.push(base.union(&extra));
        }
    }
    out
}

fn small_subsets(c: &VertexSet, cap: usize) -> Vec<VertexSet> {
    let vs = c.to_vec();
    let mut out = vec![VertexSet::new()];
    if cap >= 1 {
        for &v in &vs {
            out.push(VertexSet::singleton(v));
        }
    }
    if cap >= 2 {
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                out.push(VertexSet::from([vs[i], vs[j]]));
            }
        }
    }
    out
}

fn fvs_states(cliques: &[VertexSet], rem: &[usize]) -> Vec<VertexSet> {
    let mut acc: Vec<VertexSet> = vec![VertexSet::new()];
    for c in cliques {
        let mut next = Vec::new();
        for base in &acc {
            for sub in small_subsets(c, 2) {
                next.push(base.union(&sub));
            }
        }
        acc = next;
    }
    let mut out = Vec::new();
    for base in &acc {
        for extra in subsets(rem) {
            out.push(base.union(&extra));
        }
    }
    out
}

fn oct_states(cliques: &[VertexSet], rem: &[usize]) -> Vec<(VertexSet, VertexSet)> {
    // Survivors of a clique (at most two of them) each pick a side.
    let mut acc: Vec<(VertexSet, VertexSet)> = vec![(VertexSet::new(), VertexSet::new())];
    for c in cliques {
        let mut next = Vec::new();
        for (l, r) in &acc {
            for sub in small_subsets(c, 2) {
                let vs = sub.to_vec();
                for sides in 0u32..(1 << vs.len()) {
                    let mut nl = l.clone();
                    let mut nr = r.clone();
                    for (i, &v) in vs.iter().enumerate() {
                        if sides >> i & 1 == 0 {
                            nl.insert(v);
                        } else {
                            nr.insert(v);
                        }
                    }
                    next.push((nl, nr));
                }
            }
        }
        acc = next;
    }
    let mut out = Vec::new();
    for (l, r) in &acc {
        // Remainder vertices choose deleted / left / right freely.
        let mut states = vec![(l.clone(), r.clone())];
        for &v in rem {
            let mut next = Vec::with_capacity(states.len() * 3);
            for (sl, sr) in &states {
                next.push((sl.clone(), sr.clone()));
                let mut al = sl.clone();
                al.insert(v);
                next.push((al, sr.clone()));
                let mut ar = sr.clone();
                ar.insert(v);
                next.push((sl.clone(), ar));
            }
            states = next;
        }
        out.extend(states);
    }
    out
}

/// Sorted bag vertices with each position's clique slot (None for the
/// remainder). Positions index the DP bitmasks.
pub(crate) struct BagCtx {
    pub verts: Vec<usize>,
    pub slot: Vec<Option<usize>>,
}

impl BagCtx {
    pub fn new(bag: &SemiCliqueBag) -> Self {
        let verts = bag.vertices().to_vec();
        let slot = verts
            .iter()
            .map(|&v| match bag.slot_of(v) {
                Some(s) if s < 4 => Some(s),
                _ => None,
            })
            .collect();
        BagCtx { verts, slot }
    }

    pub fn width(&self) -> usize {
        self.verts.len()
    }

    pub fn pos_of(&self, v: usize) -> usize {
        self.verts.binary_search(&v).expect("vertex is in the bag")
    }
}

/// Cover mask admissibility: each clique slot misses at most one
/// vertex.
pub(crate) fn vc_ok(ctx: &BagCtx, mask: u64) -> bool {
    let mut missing = [0usize; 4];
    for (pos, slot) in ctx.slot.iter().enumerate() {
        if let Some(s) = slot {
            if mask >> pos & 1 == 0 {
                missing[*s] += 1;
                if missing[*s] > 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Survivor mask admissibility: each clique slot keeps at most two
/// vertices alive.
pub(crate) fn survivors_ok(ctx: &BagCtx, mask: u64) -> bool {
    let mut alive = [0usize; 4];
    for (pos, slot) in ctx.slot.iter().enumerate() {
        if let Some(s) = slot {
            if mask >> pos & 1 == 1 {
                alive[*s] += 1;
                if alive[*s] > 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// Two-bit-label admissibility for the bipartite DP: each clique slot
/// keeps at most two undeleted vertices.
pub(crate) fn oct_ok(ctx: &BagCtx, labels: u128) -> bool {
    let mut alive = [0usize; 4];
    for (pos, slot) in ctx.slot.iter().enumerate() {
        if let Some(s) = slot {
            if labels >> (2 * pos) & 3 != 0 {
                alive[*s] += 1;
                if alive[*s] > 2 {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn insert_bit(mask: u64, pos: usize, bit: bool) -> u64 {
    let low = mask & ((1u64 << pos) - 1);
    let high = (mask >> pos) << (pos + 1);
    low | high | ((bit as u64) << pos)
}

pub(crate) fn remove_bit(mask: u64, pos: usize) -> u64 {
    let low = mask & ((1u64 << pos) - 1);
    let high = (mask >> (pos + 1)) << pos;
    low | high
}

pub(crate) fn get2(labels: u128, pos: usize) -> u8 {
    (labels >> (2 * pos) & 3) as u8
}

pub(crate) fn insert2(labels: u128, pos: usize, val: u8) -> u128 {
    let low = labels & ((1u128 << (2 * pos)) - 1);
    let high = (labels >> (2 * pos)) << (2 * (pos + 1));
    low | high | ((val as u128) << (2 * pos))
}

pub(crate) fn remove2(labels: u128, pos: usize) -> u128 {
    let low = labels & ((1u128 << (2 * pos)) - 1);
    let high = (labels >> (2 * (pos + 1))) << (2 * pos);
    low | high
}
