//! Persistent witness chains for the table DPs. Every table entry
//! carries an `Rc<Trace>` recording the deletions (or cover picks) on
//! its best run; pass-through transitions share the child's chain,
//! joins merge two chains, and picks prepend a cell. Because the chain
//! is self-contained, a child table can be dropped the moment its
//! parent is built — nothing waits for a back-pointer walk.

use std::rc::Rc;

use crate::graph::VertexSet;

#[derive(Debug)]
pub(super) enum Trace {
    Empty,
    Pick(usize, Rc<Trace>),
    Merge(Rc<Trace>, Rc<Trace>),
}

thread_local! {
    static NIL: Rc<Trace> = Rc::new(Trace::Empty);
}

impl Trace {
    pub(super) fn empty() -> Rc<Trace> {
        NIL.with(Rc::clone)
    }

    pub(super) fn pick(v: usize, rest: &Rc<Trace>) -> Rc<Trace> {
        Rc::new(Trace::Pick(v, Rc::clone(rest)))
    }

    pub(super) fn merge(a: &Rc<Trace>, b: &Rc<Trace>) -> Rc<Trace> {
        Rc::new(Trace::Merge(Rc::clone(a), Rc::clone(b)))
    }

    /// Gathers the picked vertices. The two sides of a join introduce
    /// their shared bag vertices independently, so the same vertex may
    /// be picked on both sides; the set unions those duplicates away.
    pub(super) fn collect(self: &Rc<Trace>) -> VertexSet {
        let mut out = VertexSet::new();
        let mut stack: Vec<&Rc<Trace>> = vec![self];
        while let Some(t) = stack.pop() {
            match t.as_ref() {
                Trace::Empty => {}
                Trace::Pick(v, rest) => {
                    out.insert(*v);
                    stack.push(rest);
                }
                Trace::Merge(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out
    }
}

/// Detaches `slot`, queueing the old link if this was its last owner.
fn unlink(slot: &mut Rc<Trace>, pending: &mut Vec<Rc<Trace>>) {
    let next = std::mem::replace(slot, Trace::empty());
    if Rc::strong_count(&next) == 1 {
        pending.push(next);
    }
}

impl Drop for Trace {
    /// Chains can outlive thousands of transitions; unlink iteratively
    /// so dropping a long one never recurses deeply.
    fn drop(&mut self) {
        let mut pending: Vec<Rc<Trace>> = Vec::new();
        match self {
            Trace::Empty => return,
            Trace::Pick(_, rest) => unlink(rest, &mut pending),
            Trace::Merge(a, b) => {
                unlink(a, &mut pending);
                unlink(b, &mut pending);
            }
        }
        while let Some(t) = pending.pop() {
            let mut t = Rc::try_unwrap(t).expect("sole owner checked before queueing");
            match &mut t {
                Trace::Empty => {}
                Trace::Pick(_, rest) => unlink(rest, &mut pending),
                Trace::Merge(a, b) => {
                    unlink(a, &mut pending);
                    unlink(b, &mut pending);
                }
            }
            // t's own drop runs now, but its links already point at
            // the shared nil, so the recursion stops one level down.
        }
    }
}
