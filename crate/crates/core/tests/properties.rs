use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypergreedy::experiments::{run_trials, TrialPlan};
use hypergreedy::generators::{
    make_loose_berge_cycle, make_tree, random_hypertree, random_linear_bounded_degree, random_regular_girth, TreeSpec,
    TreeVariant,
};
use hypergreedy::greedy::{
    closure_vertices, greedy_by_ranking, greedy_uniform, is_influence_blocking, static_min_select, WeightAssignment,
};
use hypergreedy::hypercore::{berge_girth, parse_hypergraph, Girth, Hypergraph};
use hypergreedy::oracle::{exact_greedy_stats, exact_sequential_expected_size};
use num_bigint::BigInt;
use num_rational::BigRational;

fn sorted_edges(g: &Hypergraph) -> Vec<Vec<usize>> {
    let mut es: Vec<Vec<usize>> = g
        .edges()
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e
        })
        .collect();
    es.sort();
    es
}

/// Small hypergraphs with edges of size 2 or 3.
fn arb_hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(|n| {
        let edge = (2..=3usize.min(n)).prop_flat_map(move |k| subsequence((0..n).collect::<Vec<_>>(), k));
        prop::collection::vec(edge, 0..=2 * n).prop_map(move |es| {
            let set: BTreeSet<Vec<usize>> = es.into_iter().collect();
            Hypergraph::new(n, set).unwrap()
        })
    })
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (3..=max_n).prop_flat_map(|n| {
        prop::collection::vec(subsequence((0..n).collect::<Vec<_>>(), 2), 0..=2 * n).prop_map(move |es| {
            let set: BTreeSet<Vec<usize>> = es.into_iter().collect();
            Hypergraph::new(n, set).unwrap()
        })
    })
}

fn with_ranking(g: Hypergraph) -> impl Strategy<Value = (Hypergraph, WeightAssignment)> {
    let n = g.n();
    (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|(g, order)| (g, WeightAssignment::from_ranking(order).unwrap()))
}

/// Girth of a simple graph: for each edge, the shortest detour between its ends.
fn graph_girth(g: &Hypergraph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    for (skip, e) in g.edges().iter().enumerate() {
        let (s, t) = (e[0], e[1]);
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for (id, f) in g.edges().iter().enumerate() {
                if id == skip || !f.contains(&x) {
                    continue;
                }
                let y = if f[0] == x { f[1] } else { f[0] };
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        if dist[t] != usize::MAX {
            let c = dist[t] + 1;
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn greedy_output_is_independent_and_witnessed((g, w) in arb_hypergraph(9).prop_flat_map(with_ranking)) {
        let out = greedy_by_ranking(&g, &w).unwrap();
        prop_assert!(g.is_independent(&out.selected));
        prop_assert!(out.validate(&g));
        // maximal: adding any deleted vertex completes an edge
        for v in 0..g.n() {
            if !out.contains(v) {
                let mut s = out.selected.clone();
                s.push(v);
                prop_assert!(!g.is_independent(&s));
            }
        }
    }

    #[test]
    fn static_selection_is_contained_in_greedy((g, w) in arb_hypergraph(9).prop_flat_map(with_ranking)) {
        let out = greedy_by_ranking(&g, &w).unwrap();
        for v in static_min_select(&g, &w).unwrap() {
            prop_assert!(out.contains(v));
        }
    }

    #[test]
    fn girth_two_iff_nonlinear(g in arb_hypergraph(8)) {
        let res = berge_girth(&g);
        prop_assert_eq!(res.girth == Girth::Finite(2), !g.is_linear());
        if let Some(w) = &res.witness {
            prop_assert!(w.validate(&g));
            prop_assert_eq!(Girth::Finite(w.len()), res.girth);
        } else {
            prop_assert_eq!(res.girth, Girth::Acyclic);
        }
    }

    #[test]
    fn graph_girth_matches_plain_bfs(g in arb_graph(10)) {
        let expect = graph_girth(&g).map_or(Girth::Acyclic, Girth::Finite);
        prop_assert_eq!(berge_girth(&g).girth, expect);
    }

    #[test]
    fn neighbourhoods_grow_with_radius(g in arb_hypergraph(9), v in 0usize..9) {
        let v = v % g.n();
        let mut prev: BTreeSet<usize> = BTreeSet::new();
        for h in 0..5 {
            let cur: BTreeSet<usize> = g.neighborhood(v, h).unwrap().into_iter().collect();
            prop_assert!(cur.contains(&v));
            prop_assert!(prev.is_subset(&cur));
            if g.is_linear() {
                let path: BTreeSet<usize> = g.path_neighborhood(v, h).unwrap().into_iter().collect();
                prop_assert_eq!(&path, &cur);
            }
            prev = cur;
        }
    }

    #[test]
    fn induced_on_everything_is_identity(g in arb_hypergraph(9)) {
        let all: Vec<usize> = (0..g.n()).collect();
        let (sub, map) = g.induced(&all).unwrap();
        prop_assert_eq!(sorted_edges(&sub), sorted_edges(&g));
        prop_assert_eq!(map.to_parent, all);
    }

    #[test]
    fn io_round_trip(g in arb_hypergraph(9)) {
        let back = parse_hypergraph(&g.to_string()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(sorted_edges(&back), sorted_edges(&g));
    }

    #[test]
    fn same_seed_same_run(g in arb_hypergraph(9), seed in any::<u64>()) {
        prop_assert_eq!(greedy_uniform(&g, seed), greedy_uniform(&g, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_restriction_agrees_with_full_run(
        r in 1usize..=2,
        d in 2usize..=3,
        n in 6usize..=40,
        seed in any::<u64>(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=3),
    ) {
        let g = random_linear_bounded_degree(r, d, n, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let w = WeightAssignment::random_ranking(g.n(), &mut rng);
        let seeds: Vec<usize> = picks.iter().map(|i| i.index(g.n())).collect();
        let verts = closure_vertices(&g, &w, &seeds).unwrap();
        let mut member = vec![false; g.n()];
        for &v in &verts {
            member[v] = true;
        }
        prop_assert!(is_influence_blocking(&g, &w, &member));

        let full = greedy_by_ranking(&g, &w).unwrap();
        let (sub, map) = g.induced(&verts).unwrap();
        let local = greedy_by_ranking(&sub, &w.restrict(&map)).unwrap();
        let local_parent: BTreeSet<usize> = local.selected.iter().map(|&i| map.to_parent[i]).collect();
        let restricted: BTreeSet<usize> = full.selected.iter().copied().filter(|&v| member[v]).collect();
        prop_assert_eq!(local_parent, restricted);
    }

    #[test]
    fn random_trees_are_rooted_hypertrees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_hypertree(3, 3, 80, &mut rng).unwrap();
        let g = t.hypergraph();
        prop_assert!(g.is_linear());
        prop_assert_eq!(berge_girth(g).girth, Girth::Acyclic);
        prop_assert!(g.is_connected());
        // bonus at the root is its weight exactly when the root is kept
        let w = WeightAssignment::random_weights(g.n(), &mut rng);
        let s = t.bonus_function(&w).unwrap();
        let kept = greedy_by_ranking(g, &w).unwrap().contains(t.root());
        prop_assert_eq!(s[t.root()], if kept { w.weight(t.root()) } else { 0.0 });
    }

    #[test]
    fn sequential_and_ranking_greedy_have_the_same_expectation(g in arb_hypergraph(7)) {
        let e = exact_greedy_stats(&g).unwrap().expected_size;
        let ranked = BigRational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()));
        prop_assert_eq!(exact_sequential_expected_size(&g).unwrap(), ranked);
    }

    #[test]
    fn linear_generator_respects_degree(r in 1usize..=3, d in 1usize..=4, n in 4usize..=60, seed in any::<u64>()) {
        prop_assume!(n > r);
        let g = random_linear_bounded_degree(r, d, n, seed).unwrap();
        prop_assert!(g.is_linear());
        prop_assert_eq!(g.uniformity().unwrap_or(r + 1), r + 1);
        prop_assert!(g.degree_profile().max_degree <= d);
        let again = random_linear_bounded_degree(r, d, n, seed).unwrap();
        prop_assert_eq!(sorted_edges(&g), sorted_edges(&again));
    }
}

#[test]
fn tree_generators_match_vertex_formula() {
    for variant in [TreeVariant::Full, TreeVariant::RootHeavy] {
        for r in 1..=3 {
            for d in 2..=4 {
                for h in 0..=3 {
                    let spec = TreeSpec::new(r, d, h, variant).unwrap();
                    let t = make_tree(spec).unwrap();
                    let g = t.hypergraph();
                    assert_eq!(g.n() as u128, spec.vertex_count());
                    assert!(g.is_linear());
                    assert_eq!(berge_girth(g).girth, Girth::Acyclic);
                    assert_eq!(t.root(), 0);
                    assert_eq!(t.descending_edges(0).len(), if h == 0 { 0 } else { d });
                    if h >= 2 {
                        // vertex 1 is a child of the root
                        let want = if variant == TreeVariant::Full { d } else { d - 1 };
                        assert_eq!(t.descending_edges(1).len(), want, "{variant:?} r={r} d={d} h={h}");
                    }
                }
            }
        }
    }
}

#[test]
fn loose_cycles_have_their_length_as_girth() {
    for r in 1..=3 {
        for k in 3..=8 {
            let g = make_loose_berge_cycle(r, k).unwrap();
            let res = berge_girth(&g);
            assert_eq!(res.girth, Girth::Finite(k));
            assert!(res.witness.unwrap().validate(&g));
        }
    }
}

#[test]
fn regular_generator_meets_its_girth() {
    for (r, d, n, gmin) in [(1, 3, 40, 5), (2, 2, 30, 4), (1, 2, 12, 12)] {
        let inst = random_regular_girth(r, d, n, gmin, 9, 10_000).unwrap();
        let g = inst.graph;
        assert!(g.degree_profile().is_regular);
        assert_eq!(g.degree_profile().max_degree, d);
        assert_eq!(g.uniformity(), Some(r + 1));
        assert!(berge_girth(&g).girth.at_least(gmin));
    }
}

#[test]
fn trials_do_not_depend_on_thread_count() {
    let g = random_linear_bounded_degree(2, 3, 200, 17).unwrap();
    let plan = TrialPlan::new(5000, 99).with_root(3).with_escape(5, 2);
    let one = run_trials(&g, &plan.clone().with_threads(Some(1))).unwrap();
    let many = run_trials(&g, &plan.with_threads(Some(4))).unwrap();
    assert_eq!(one, many);
}
