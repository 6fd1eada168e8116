//! Exact solvers for Vertex Cover, Feedback Vertex Set and Odd Cycle
//! Transversal on graphs that are close to chordal.
//!
//! The central object is a *semi-clique tree decomposition*: a tree
//! decomposition in which every bag is partitioned into at most four
//! cliques plus a small remainder set. Given a graph `G` and a promised
//! bound `k` on the size of a chordal vertex deletion set (a set whose
//! removal leaves a chordal graph), [`decomposition::decompose`] either
//! builds a decomposition whose bags are (4, 7k+5)-semi-cliques or
//! certifies that no deletion set of size `k` exists. The construction
//! never needs to see a deletion set; the promise alone is enough.
//!
//! Dynamic programming over such a decomposition ([`solvers`]) then
//! solves the three vertex deletion problems exactly. Every solver is
//! *robust*: it either returns an optimal solution or reports that the
//! promise fails. Success does not certify the promise; the report in
//! the other direction is always sound.
//!
//! Supporting layers: [`graph`] (plain adjacency-set graphs),
//! [`chordal`] (recognition with certificates, clique trees, budgeted
//! maximal clique enumeration), [`separators`] (vertex cuts, balanced
//! separations, multiway cuts), [`oracles`] (brute-force references for
//! testing), [`instances`] (seeded generators) and [`io`] (file
//! formats).

pub mod chordal;
pub mod decomposition;
pub mod graph;
pub mod instances;
pub mod io;
pub mod oracles;
pub mod separators;
pub mod solvers;
