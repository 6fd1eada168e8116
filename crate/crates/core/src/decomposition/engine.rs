//! The decompose-or-refute engine: builds a (4, 7k+5)-semi-clique tree
//! decomposition of a graph given only the promised bound k on its
//! chordal-deletion distance, or soundly certifies that no chordal
//! deletion set of size k exists.

use crate::graph::{connected_components, induced_subgraph, open_neighborhood, Graph, VertexSet};
use crate::separators::{
    find_balanced_split, three_clique_separator, SplitOutcome, ThreeCliqueOutcome,
};

use super::{SemiCliqueBag, SemiCliqueTreeDecomposition, TdNode};

/// Success carries a validator-clean decomposition. NoCvd is
/// one-sided: it always certifies that no chordal deletion set of size
/// k exists, while a built decomposition does not certify the
/// converse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Built(SemiCliqueTreeDecomposition),
    NoCvd,
}

struct NoCvdConclusion;

/// One recursion frame: the working set W, its boundary S = N(W∖S)
/// inside G[W], and the recorded partition of S into compacted clique
/// parts plus the remainder.
struct Frame {
    w: VertexSet,
    s: VertexSet,
    slots: Vec<VertexSet>,
    n_part: VertexSet,
}

impl Frame {
    fn free(&self) -> VertexSet {
        self.w.difference(&self.s)
    }
}

/// Builds a decomposition of `g` or concludes that no chordal deletion
/// set of size `k` exists.
pub fn decompose(g: &Graph, k: usize) -> DecomposeOutcome {
    let mut b = Builder {
        g,
        k,
        nodes: Vec::new(),
    };
    let comps = connected_components(g, &g.vertices());
    let built = if comps.len() == 1 {
        b.decompose_rec(Frame {
            w: g.vertices(),
            s: VertexSet::new(),
            slots: Vec::new(),
            n_part: VertexSet::new(),
        })
    } else {
        // Disconnected (or empty) graph: decompose each component and
        // hang all roots under a fresh empty bag.
        let root = b.push_node(SemiCliqueBag::empty());
        let mut out = Ok(root);
        for c in &comps {
            match b.decompose_rec(Frame {
                w: c.clone(),
                s: VertexSet::new(),
                slots: Vec::new(),
                n_part: VertexSet::new(),
            }) {
                Ok(idx) => b.link(root, idx),
                Err(halt) => {
                    out = Err(halt);
                    break;
                }
            }
        }
        out
    };
    match built {
        Err(NoCvdConclusion) => DecomposeOutcome::NoCvd,
        Ok(root) => DecomposeOutcome::Built(SemiCliqueTreeDecomposition {
            nodes: b.nodes,
            root,
            k,
            clique_budget: 4,
            remainder_budget: SemiCliqueTreeDecomposition::remainder_budget_for(k),
        }),
    }
}

struct Builder<'a> {
    g: &'a Graph,
    k: usize,
    nodes: Vec<TdNode>,
}

impl Builder<'_> {
    fn push_node(&mut self, bag: SemiCliqueBag) -> usize {
        self.nodes.push(TdNode {
            parent: None,
            children: Vec::new(),
            bag,
        });
        self.nodes.len() - 1
    }

    fn link(&mut self, parent: usize, child: usize) {
        self.nodes[child].parent = Some(parent);
        self.nodes[parent].children.push(child);
    }

    fn check_frame(&self, fr: &Frame, split: bool) {
        let free = fr.free();
        debug_assert!(fr.s.is_subset(&fr.w));
        debug_assert!(!free.is_empty());
        debug_assert_eq!(
            fr.s,
            open_neighborhood(self.g, &free).intersection(&fr.w),
            "S must be the boundary of W∖S inside G[W]"
        );
        let mut covered = fr.n_part.clone();
        for c in &fr.slots {
            debug_assert!(!c.is_empty());
            debug_assert!(self.g.is_clique(c));
            debug_assert!(covered.is_disjoint(c));
            covered = covered.union(c);
        }
        debug_assert_eq!(covered, fr.s);
        if split {
            debug_assert_eq!(fr.slots.len(), 3);
            debug_assert!(fr.n_part.len() <= 5 * self.k + 3);
        } else {
            debug_assert!(fr.slots.len() <= 2);
            debug_assert!(fr.n_part.len() <= 6 * self.k + 4);
        }
    }

    /// Base case: at most k+1 vertices beyond the boundary fit into a
    /// single bag, with the new vertices joining the remainder.
    fn base_case(&mut self, fr: &Frame) -> Option<usize> {
        let free = fr.free();
        if free.len() > self.k + 1 {
            return None;
        }
        let bag = SemiCliqueBag::from_parts(&fr.slots, fr.n_part.union(&free));
        Some(self.push_node(bag))
    }

    fn decompose_rec(&mut self, fr: Frame) -> Result<usize, NoCvdConclusion> {
        self.check_frame(&fr, false);
        if let Some(idx) = self.base_case(&fr) {
            return Ok(idx);
        }
        let free = fr.free();
        let u = free.first().expect("free is nonempty past the base case");

        let (s_hat, slots, n_new) = if fr.n_part.len() < 5 * self.k + 3 {
            // Grow the boundary by one vertex.
            let mut s_hat = fr.s.clone();
            s_hat.insert(u);
            let mut n_new = fr.n_part.clone();
            n_new.insert(u);
            (s_hat, fr.slots.clone(), n_new)
        } else {
            // Boundary remainder is large: split it behind a
            // clique-plus-k separator of G[W].
            let (h, map) = induced_subgraph(self.g, &fr.w).expect("W is in range");
            let n_sub = map.set_to_sub(&fr.n_part);
            let split = match find_balanced_split(&h, &n_sub, self.k)
                .expect("boundary size is within the split range")
            {
                SplitOutcome::NoCvd => return Err(NoCvdConclusion),
                SplitOutcome::Split(sp) => sp,
            };
            let d = map.set_to_orig(&split.sep.d);
            let z = map.set_to_orig(&split.sep.z);
            let mut s_hat = fr.s.union(&d).union(&z);
            s_hat.insert(u);
            let mut slots = fr.slots.clone();
            let existing = slots
                .iter()
                .fold(VertexSet::new(), |acc, c| acc.union(c));
            let fresh = d.difference(&existing);
            if !fresh.is_empty() {
                slots.push(fresh);
            }
            let covered = existing.union(&d);
            let mut n_new = fr.n_part.union(&z);
            n_new.insert(u);
            let n_new = n_new.difference(&covered);
            (s_hat, slots, n_new)
        };

        let root = self.expand(&fr, s_hat, slots, n_new)?;
        Ok(root)
    }

    fn split_cliques(&mut self, fr: Frame) -> Result<usize, NoCvdConclusion> {
        self.check_frame(&fr, true);
        if let Some(idx) = self.base_case(&fr) {
            return Ok(idx);
        }
        let u = fr.free().first().expect("free is nonempty past the base case");

        let (h, map) = induced_subgraph(self.g, &fr.w).expect("W is in range");
        let sep = match three_clique_separator(
            &h,
            &map.set_to_sub(&fr.slots[0]),
            &map.set_to_sub(&fr.slots[1]),
            &map.set_to_sub(&fr.slots[2]),
            self.k,
        )
        .expect("frame slots are disjoint cliques")
        {
            ThreeCliqueOutcome::NoCvd => return Err(NoCvdConclusion),
            ThreeCliqueOutcome::Separator(sep) => sep,
        };
        let d = map.set_to_orig(&sep.d);
        let z = map.set_to_orig(&sep.z);
        let mut s_hat = fr.s.union(&d).union(&z);
        s_hat.insert(u);
        let three = fr
            .slots
            .iter()
            .fold(VertexSet::new(), |acc, c| acc.union(c));
        let mut slots = fr.slots.clone();
        let d_slot = d.difference(&three);
        if !d_slot.is_empty() {
            slots.push(d_slot);
        }
        let covered = three.union(&d);
        let mut n_new = fr.n_part.union(&z);
        n_new.insert(u);
        let n_new = n_new.difference(&covered);
        debug_assert!(n_new.len() <= 6 * self.k + 4);

        // Children get freshly assigned partitions: each component sees
        // at most one of the three residual cliques, plus parts of D.
        let root = self.push_node(SemiCliqueBag::from_parts(&slots, n_new));
        debug_assert_eq!(self.nodes[root].bag.vertices(), s_hat);
        let rest = fr.w.difference(&s_hat);
        let y_prime = {
            let mut y = d.union(&z);
            y.insert(u);
            y
        };
        for p in connected_components(self.g, &rest) {
            debug_assert!(p.len() < fr.free().len());
            let s_child = open_neighborhood(self.g, &p).intersection(&fr.w);
            debug_assert!(s_child.is_subset(&s_hat));
            let w_child = p.union(&s_child);

            let mut cq: Option<&VertexSet> = None;
            for c in &fr.slots {
                if !c.difference(&y_prime).is_disjoint(&s_child) {
                    debug_assert!(
                        cq.is_none(),
                        "a component may touch at most one residual clique"
                    );
                    cq = Some(c);
                }
            }
            let mut child_slots = Vec::new();
            let mut absorbed = d.clone();
            if let Some(c) = cq {
                absorbed = absorbed.union(c);
                let part = s_child.intersection(&c.difference(&d));
                if !part.is_empty() {
                    child_slots.push(part);
                }
            }
            let d_part = s_child.intersection(&d);
            if !d_part.is_empty() {
                child_slots.push(d_part);
            }
            let child_n = s_child.difference(&absorbed);
            debug_assert!(child_n.len() <= 6 * self.k + 4);
            debug_assert!(child_slots.len() <= 2);
            let idx = self.decompose_rec(Frame {
                w: w_child,
                s: s_child,
                slots: child_slots,
                n_part: child_n,
            })?;
            self.link(root, idx);
        }
        Ok(root)
    }

    /// Emits the bag for the grown boundary Ŝ and recurses into the
    /// components of G[W∖Ŝ], handing each the restriction of the new
    /// partition.
    fn expand(
        &mut self,
        fr: &Frame,
        s_hat: VertexSet,
        slots: Vec<VertexSet>,
        n_new: VertexSet,
    ) -> Result<usize, NoCvdConclusion> {
        let root = self.push_node(SemiCliqueBag::from_parts(&slots, n_new.clone()));
        debug_assert_eq!(self.nodes[root].bag.vertices(), s_hat);
        debug_assert!(self.nodes[root].bag.remainder.len() <= 7 * self.k + 5);
        let rest = fr.w.difference(&s_hat);
        for p in connected_components(self.g, &rest) {
            debug_assert!(p.len() < fr.free().len());
            let s_child = open_neighborhood(self.g, &p).intersection(&fr.w);
            debug_assert!(s_child.is_subset(&s_hat));
            let w_child = p.union(&s_child);
            let child_slots: Vec<VertexSet> = slots
                .iter()
                .map(|c| c.intersection(&s_child))
                .filter(|c| !c.is_empty())
                .collect();
            let child_n = n_new.intersection(&s_child);
            debug_assert!(
                child_n.len() <= 5 * self.k + 3,
                "every component is adjacent to at most 5k+3 remainder vertices"
            );
            let frame = Frame {
                w: w_child,
                s: s_child,
                slots: child_slots,
                n_part: child_n,
            };
            let idx = if frame.slots.len() == 3 {
                self.split_cliques(frame)?
            } else {
                self.decompose_rec(frame)?
            };
            self.link(root, idx);
        }
        Ok(root)
    }
}
