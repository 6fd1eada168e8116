//! Randomized cross-checks: every nontrivial routine is compared against
//! an independent brute-force oracle or a structural invariant.

use proptest::prelude::*;

use scdt_core::chordal::{
    clique_tree, enumerate_maximal_cliques, is_chordal, CliqueBudget, CliqueEnumeration,
};
use scdt_core::decomposition::{
    decompose, refine_to_nice, validate_nice, validate_td, DecomposeOutcome,
    SemiCliqueTreeDecomposition,
};
use scdt_core::graph::{
    connected_components, induced_subgraph, open_neighborhood, Graph, VertexSet,
};
use scdt_core::instances::{gen_planted, hitting_set_vc_instance, HittingSetInstance};
use scdt_core::io::{format_decomposition, format_graph, parse_decomposition, parse_graph};
use scdt_core::oracles::{
    brute_cvd, brute_fvs, brute_min_separator, brute_multiway_cut, brute_oct, brute_vc,
    separates, separates_multiway, verify_cvd, verify_fvs, verify_oct, verify_vc, OracleBudget,
};
use scdt_core::separators::{min_vertex_cut, node_multiway_cut, CutOutcome, MultiwayOutcome};
use scdt_core::solvers::{
    solve_fvs, solve_oct, solve_vc, solve_vc_given_modulator, SolveOutcome, Solution,
};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, 0.05f64..0.95).prop_flat_map(|(n, p)| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(proptest::bool::weighted(p), pairs)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn built(g: &Graph, k: usize) -> Option<SemiCliqueTreeDecomposition> {
    match decompose(g, k) {
        DecomposeOutcome::Built(td) => Some(td),
        DecomposeOutcome::NoCvd => None,
    }
}

fn solved(outcome: SolveOutcome) -> Solution {
    match outcome {
        SolveOutcome::Solved(sol) => sol,
        SolveOutcome::NoCvd => panic!("promise held, so the solver may not bail"),
    }
}

/// Chordality by definition: no induced cycle on four or more vertices.
fn has_induced_long_cycle(g: &Graph) -> bool {
    let n = g.n();
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) < 4 {
            continue;
        }
        let vs: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let (h, _) = induced_subgraph(g, &vs).unwrap();
        let cycle = h.m() == h.n()
            && (0..h.n()).all(|v| h.degree(v) == 2)
            && connected_components(&h, &h.vertices()).len() == 1;
        if cycle {
            return true;
        }
    }
    false
}

fn brute_maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut cliques: Vec<VertexSet> = Vec::new();
    for mask in 1u32..(1 << n) {
        let vs: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if !g.is_clique(&vs) {
            continue;
        }
        let maximal = (0..n)
            .filter(|v| !vs.contains(*v))
            .all(|v| !vs.iter().all(|u| g.has_edge(u, v)));
        if maximal {
            cliques.push(vs);
        }
    }
    cliques.sort_by_key(|c| c.to_vec());
    cliques
}

fn brute_hitting_set(hs: &HittingSetInstance) -> usize {
    (0u32..(1 << hs.universe))
        .filter(|mask| {
            hs.sets
                .iter()
                .all(|s| s.iter().any(|&u| mask >> u & 1 == 1))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("the full universe hits everything")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn induced_subgraph_of_everything_is_identity(g in arb_graph(10)) {
        let (h, map) = induced_subgraph(&g, &g.vertices()).unwrap();
        prop_assert_eq!(&h, &g);
        for v in 0..g.n() {
            prop_assert_eq!(map.to_orig(v), v);
        }
    }

    #[test]
    fn open_neighborhood_avoids_the_set(g in arb_graph(10), pick in any::<u64>()) {
        let xs: VertexSet = (0..g.n()).filter(|&v| pick >> v & 1 == 1).collect();
        let nb = open_neighborhood(&g, &xs);
        prop_assert!(nb.is_disjoint(&xs));
        for v in nb.iter() {
            prop_assert!(g.neighbors(v).any(|u| xs.contains(u)));
        }
    }

    #[test]
    fn components_partition_the_vertices(g in arb_graph(12)) {
        let comps = connected_components(&g, &g.vertices());
        let mut seen = VertexSet::new();
        for c in &comps {
            prop_assert!(!c.is_empty());
            prop_assert!(seen.is_disjoint(c));
            seen = seen.union(c);
            // No edge leaves a component.
            for v in c.iter() {
                prop_assert!(g.neighbors(v).all(|u| c.contains(u)));
            }
        }
        prop_assert_eq!(seen, g.vertices());
    }

    #[test]
    fn dimacs_round_trip(g in arb_graph(14)) {
        prop_assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn chordality_matches_induced_cycle_search(g in arb_graph(8)) {
        prop_assert_eq!(is_chordal(&g).is_chordal(), !has_induced_long_cycle(&g));
    }

    #[test]
    fn clique_enumeration_is_exhaustive(g in arb_graph(10)) {
        let got = match enumerate_maximal_cliques(&g, CliqueBudget::unlimited()) {
            CliqueEnumeration::All(mut cs) => {
                cs.sort_by_key(|c| c.to_vec());
                cs
            }
            CliqueEnumeration::BudgetExceeded => panic!("unlimited budget aborted"),
        };
        prop_assert_eq!(got, brute_maximal_cliques(&g));
    }

    #[test]
    fn clique_tree_of_chordal_graph_validates(g in arb_graph(9)) {
        prop_assume!(is_chordal(&g).is_chordal());
        let td = clique_tree(&g).unwrap();
        prop_assert!(validate_td(&g, &td).is_clean());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_cut_matches_brute_separator(
        g in arb_graph(9),
        ai in any::<proptest::sample::Index>(),
        bi in any::<proptest::sample::Index>(),
    ) {
        prop_assume!(g.n() >= 2);
        let a = ai.index(g.n());
        let b = bi.index(g.n());
        prop_assume!(a != b);
        let (a, b) = (VertexSet::singleton(a), VertexSet::singleton(b));
        let best = brute_min_separator(&g, &a, &b, OracleBudget::new(10)).unwrap();
        match min_vertex_cut(&g, &a, &b, g.n()).unwrap() {
            CutOutcome::Cut(x) => {
                prop_assert_eq!(x.len(), best.len());
                prop_assert!(separates(&g, &a, &b, &x));
            }
            CutOutcome::LimitExceeded => prop_assert!(false, "limit n can never be exceeded"),
        }
        if !best.is_empty() {
            prop_assert_eq!(
                min_vertex_cut(&g, &a, &b, best.len() - 1).unwrap(),
                CutOutcome::LimitExceeded
            );
        }
    }

    #[test]
    fn multiway_cut_matches_brute(
        g in arb_graph(9),
        picks in proptest::collection::vec(any::<proptest::sample::Index>(), 3),
    ) {
        prop_assume!(g.n() >= 3);
        let mut terminals: Vec<usize> = picks.iter().map(|i| i.index(g.n())).collect();
        terminals.sort_unstable();
        terminals.dedup();
        prop_assume!(terminals.len() == 3);
        let best = brute_multiway_cut(&g, &terminals, g.n(), OracleBudget::new(10)).unwrap();
        match best {
            Some(z) => {
                match node_multiway_cut(&g, &terminals, z.len()).unwrap() {
                    MultiwayOutcome::Cut(x) => {
                        prop_assert_eq!(x.len(), z.len());
                        prop_assert!(separates_multiway(&g, &terminals, &x));
                        for &t in &terminals {
                            prop_assert!(!x.contains(t));
                        }
                    }
                    MultiwayOutcome::NoSolution => {
                        prop_assert!(false, "brute found a cut of size {}", z.len())
                    }
                }
                if !z.is_empty() {
                    prop_assert_eq!(
                        node_multiway_cut(&g, &terminals, z.len() - 1).unwrap(),
                        MultiwayOutcome::NoSolution
                    );
                }
            }
            None => prop_assert_eq!(
                node_multiway_cut(&g, &terminals, g.n()).unwrap(),
                MultiwayOutcome::NoSolution
            ),
        }
    }

    #[test]
    fn engine_never_bails_below_the_true_distance(g in arb_graph(8)) {
        let cvd = brute_cvd(&g, OracleBudget::new(8)).unwrap();
        // One-sided robustness: with the promise satisfied, NoCvd is a bug.
        let td = built(&g, cvd.len()).expect("k >= cvd size");
        prop_assert!(validate_td(&g, &td).is_clean());
        let nd = refine_to_nice(&td, &g).unwrap();
        prop_assert!(validate_nice(&g, &nd).is_empty());
    }

    #[test]
    fn decomposition_json_round_trip(g in arb_graph(9)) {
        if let Some(td) = built(&g, 2) {
            let back = parse_decomposition(&format_decomposition(&td), Some(&g)).unwrap();
            prop_assert_eq!(back, td);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solvers_match_oracles(g in arb_graph(9)) {
        let budget = OracleBudget::new(9);
        let k = brute_cvd(&g, budget).unwrap().len();
        let vc = solved(solve_vc(&g, k, None));
        prop_assert_eq!(vc.size, brute_vc(&g, budget).unwrap().len());
        prop_assert!(verify_vc(&g, &vc.vertices));
        let fvs = solved(solve_fvs(&g, k, None));
        prop_assert_eq!(fvs.size, brute_fvs(&g, budget).unwrap().len());
        prop_assert!(verify_fvs(&g, &fvs.vertices));
        let oct = solved(solve_oct(&g, k, None));
        prop_assert_eq!(oct.size, brute_oct(&g, budget).unwrap().len());
        prop_assert!(verify_oct(&g, &oct.vertices));
    }

    #[test]
    fn adding_an_edge_never_shrinks_optima(g in arb_graph(8), pick in any::<proptest::sample::Index>()) {
        let non_edges: Vec<(usize, usize)> = (0..g.n())
            .flat_map(|u| ((u + 1)..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!non_edges.is_empty());
        let (u, v) = non_edges[pick.index(non_edges.len())];
        let mut edges = g.edges();
        edges.push((u, v));
        let bigger = Graph::from_edges(g.n(), &edges).unwrap();
        let budget = OracleBudget::new(8);
        prop_assert!(
            brute_vc(&bigger, budget).unwrap().len() >= brute_vc(&g, budget).unwrap().len()
        );
        prop_assert!(
            brute_fvs(&bigger, budget).unwrap().len() >= brute_fvs(&g, budget).unwrap().len()
        );
        prop_assert!(
            brute_oct(&bigger, budget).unwrap().len() >= brute_oct(&g, budget).unwrap().len()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planted_instances_hold_their_promises(
        n in 4usize..=24,
        k in 0usize..=3,
        density in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        prop_assume!(k <= n);
        let inst = gen_planted(n, k, density, seed).unwrap();
        prop_assert!(verify_cvd(&inst.graph, &inst.modulator));
        let td = built(&inst.graph, k).expect("planted instances satisfy the promise");
        prop_assert!(validate_td(&inst.graph, &td).is_clean());
        prop_assert_eq!(td.remainder_budget, 7 * k + 5);
        // Graphs this close to chordal have few maximal cliques.
        let enumeration =
            enumerate_maximal_cliques(&inst.graph, CliqueBudget::new(k, inst.graph.n()));
        prop_assert!(enumeration != CliqueEnumeration::BudgetExceeded);
    }

    #[test]
    fn modulator_solver_agrees_with_the_dp(
        n in 4usize..=14,
        k in 0usize..=2,
        density in 0.1f64..=0.8,
        seed in any::<u64>(),
    ) {
        prop_assume!(k <= n);
        let inst = gen_planted(n, k, density, seed).unwrap();
        let via_mod = solve_vc_given_modulator(&inst.graph, &inst.modulator).unwrap();
        prop_assert!(verify_vc(&inst.graph, &via_mod.vertices));
        let via_dp = solved(solve_vc(&inst.graph, k, None));
        prop_assert_eq!(via_mod.size, via_dp.size);
    }

    #[test]
    fn hitting_set_gadget_encodes_the_optimum(
        u in 1usize..=4,
        raw_sets in proptest::collection::vec(
            proptest::collection::btree_set(0usize..4, 1..=4),
            1..=3,
        ),
    ) {
        let sets: Vec<Vec<usize>> = raw_sets
            .into_iter()
            .map(|s| s.into_iter().filter(|&x| x < u).collect::<Vec<_>>())
            .filter(|s: &Vec<usize>| !s.is_empty())
            .collect();
        prop_assume!(!sets.is_empty());
        let hs = HittingSetInstance::new(u, sets).unwrap();
        let (g, modulator, offset) = hitting_set_vc_instance(&hs);
        let vc = brute_vc(&g, OracleBudget::new(20)).unwrap();
        prop_assert_eq!(vc.len(), brute_hitting_set(&hs) + offset);
        let rest = g.vertices().difference(&modulator);
        let (h, _) = induced_subgraph(&g, &rest).unwrap();
        prop_assert!(is_chordal(&h).is_chordal());
    }
}
