//! Vertex-capacity flow network with incremental terminal attachment
//! and checkpoint rollback. Every graph vertex v is split into an
//! in-node and an out-node joined by an arc of capacity cap(v); graph
//! edges become arcs of effectively infinite capacity in both
//! directions. Cutting the in/out arc of v models deleting v.

use crate::graph::{Graph, VertexSet};

const SOURCE: u32 = 0;
const SINK: u32 = 1;

fn in_node(v: usize) -> u32 {
    2 + 2 * v as u32
}

fn out_node(v: usize) -> u32 {
    3 + 2 * v as u32
}

enum Entry {
    Cap { arc: u32, old: u64 },
    ArcPair { from: u32, to: u32 },
}

pub(crate) struct Checkpoint {
    journal_len: usize,
    flow: u64,
}

pub(crate) struct VertexCutNetwork {
    n: usize,
    big: u64,
    cap: Vec<u64>,
    to: Vec<u32>,
    adj: Vec<Vec<u32>>,
    flow: u64,
    journal: Vec<Entry>,
}

impl VertexCutNetwork {
    /// Network over `g` with per-vertex capacities. `big` acts as
    /// infinity and must exceed the search limit; `cap_of` gives the
    /// deletion cost of each vertex (0 = already deleted, `big` =
    /// protected).
    pub(crate) fn new(g: &Graph, big: u64, cap_of: impl Fn(usize) -> u64) -> Self {
        let mut net = VertexCutNetwork {
            n: g.n(),
            big,
            cap: Vec::new(),
            to: Vec::new(),
            adj: vec![Vec::new(); 2 + 2 * g.n()],
            flow: 0,
            journal: Vec::new(),
        };
        for v in 0..g.n() {
            net.push_arc_pair(in_node(v), out_node(v), cap_of(v));
        }
        for (u, v) in g.edges() {
            net.push_arc_pair(out_node(u), in_node(v), big);
            net.push_arc_pair(out_node(v), in_node(u), big);
        }
        net
    }

    fn push_arc_pair(&mut self, from: u32, to: u32, cap: u64) {
        let id = self.cap.len() as u32;
        self.cap.push(cap);
        self.to.push(to);
        self.cap.push(0);
        self.to.push(from);
        self.adj[from as usize].push(id);
        self.adj[to as usize].push(id + 1);
        self.journal.push(Entry::ArcPair { from, to });
    }

    /// Attach `v` to the source side (a flow terminal in A).
    pub(crate) fn add_source_arc(&mut self, v: usize) {
        self.push_arc_pair(SOURCE, in_node(v), self.big);
    }

    /// Attach `v` to the sink side (a flow terminal in B).
    pub(crate) fn add_sink_arc(&mut self, v: usize) {
        self.push_arc_pair(out_node(v), SINK, self.big);
    }

    #[cfg(test)]
    pub(crate) fn flow(&self) -> u64 {
        self.flow
    }

    pub(crate) fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            journal_len: self.journal.len(),
            flow: self.flow,
        }
    }

    /// Restores the network to the state captured by `cp`. Checkpoints
    /// must be rolled back newest-first.
    pub(crate) fn rollback(&mut self, cp: Checkpoint) {
        while self.journal.len() > cp.journal_len {
            match self.journal.pop().unwrap() {
                Entry::Cap { arc, old } => self.cap[arc as usize] = old,
                Entry::ArcPair { from, to } => {
                    self.adj[from as usize].pop();
                    self.adj[to as usize].pop();
                    self.cap.truncate(self.cap.len() - 2);
                    self.to.truncate(self.to.len() - 2);
                }
            }
        }
        self.flow = cp.flow;
    }

    fn set_cap(&mut self, arc: u32, value: u64) {
        self.journal.push(Entry::Cap {
            arc,
            old: self.cap[arc as usize],
        });
        self.cap[arc as usize] = value;
    }

    /// Augments until either the maximum flow is reached (true) or the
    /// flow value exceeds `limit` (false). Safe to call repeatedly as
    /// terminals are added; flow only grows.
    pub(crate) fn augment_until(&mut self, limit: u64) -> bool {
        loop {
            if self.flow > limit {
                return false;
            }
            let mut parent_arc = vec![u32::MAX; self.adj.len()];
            parent_arc[SOURCE as usize] = u32::MAX - 1;
            let mut queue = std::collections::VecDeque::from([SOURCE]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u as usize] {
                    let w = self.to[a as usize];
                    if self.cap[a as usize] > 0 && parent_arc[w as usize] == u32::MAX {
                        parent_arc[w as usize] = a;
                        if w == SINK {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if parent_arc[SINK as usize] == u32::MAX {
                return true;
            }
            let mut bottleneck = u64::MAX;
            let mut node = SINK;
            while node != SOURCE {
                let a = parent_arc[node as usize];
                bottleneck = bottleneck.min(self.cap[a as usize]);
                node = self.to[(a ^ 1) as usize];
            }
            let mut node = SINK;
            while node != SOURCE {
                let a = parent_arc[node as usize];
                self.set_cap(a, self.cap[a as usize] - bottleneck);
                self.set_cap(a ^ 1, self.cap[(a ^ 1) as usize] + bottleneck);
                node = self.to[(a ^ 1) as usize];
            }
            self.flow += bottleneck;
        }
    }

    /// Source-side minimum vertex cut; only meaningful after
    /// `augment_until` returned true. The set is canonical: vertices
    /// whose in-node is residually reachable while the out-node is not.
    pub(crate) fn min_cut(&self) -> VertexSet {
        let mut reach = vec![false; self.adj.len()];
        reach[SOURCE as usize] = true;
        let mut stack = vec![SOURCE];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u as usize] {
                let w = self.to[a as usize];
                if self.cap[a as usize] > 0 && !reach[w as usize] {
                    reach[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.n)
            .filter(|&v| reach[in_node(v) as usize] && !reach[out_node(v) as usize])
            .collect()
    }
}
