use num_traits::{One, Zero};
use proptest::prelude::*;

use potts_sp::sptree::validate_tree;
use potts_sp::{
    brute_force_z, build_sp_tree, build_sp_tree_with, count_proper_colorings, evaluate, parallel_weight, parse_graph,
    partition_polynomial, random_sp_graph, serialize_graph, series_weight, EvalRequest, GeneratorSpec, Rational,
    WeightedMultigraph, WorklistOrder,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_q() -> impl Strategy<Value = Rational> {
    rational().prop_filter("q must be nonzero", |q| !q.is_zero())
}

fn generated(max_ops: usize) -> impl Strategy<Value = WeightedMultigraph> {
    (0..=max_ops, any::<u64>(), 0.0f64..=1.0)
        .prop_map(|(ops, seed, bias)| random_sp_graph(&GeneratorSpec::new(ops, seed).with_series_bias(bias)).unwrap())
}

/// Generated shape with every weight replaced by an arbitrary signed rational.
fn generated_signed(max_ops: usize) -> impl Strategy<Value = WeightedMultigraph> {
    generated(max_ops).prop_flat_map(|g| {
        let m = g.edge_count();
        (Just(g), prop::collection::vec(rational(), m)).prop_map(|(g, ws)| {
            WeightedMultigraph::from_edges(g.vertex_count(), g.edges().iter().zip(ws).map(|(e, w)| (e.u, e.v, w)))
                .unwrap()
        })
    })
}

fn arbitrary_multigraph() -> impl Strategy<Value = WeightedMultigraph> {
    (1usize..8).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, rational()), 0..14)
            .prop_map(move |edges| WeightedMultigraph::from_edges(n, edges).unwrap())
    })
}

/// `None` when the evaluation point is singular for the reduction.
fn sp_value(g: &WeightedMultigraph, q: &Rational) -> Option<Rational> {
    match evaluate(&EvalRequest::new(g, q.clone())) {
        Ok(z) => Some(z),
        Err(e) if e.is_singular() => None,
        Err(e) => panic!("unexpected error {e}"),
    }
}

fn replace_edge(
    g: &WeightedMultigraph,
    target: usize,
    gadget: &[(usize, usize, Rational)],
    extra: usize,
) -> WeightedMultigraph {
    let mut out = WeightedMultigraph::new(g.vertex_count() + extra).unwrap();
    for e in g.edges().iter().filter(|e| e.id != target) {
        out.add_edge(e.u, e.v, e.weight.clone()).unwrap();
    }
    for (u, v, w) in gadget {
        out.add_edge(*u, *v, w.clone()).unwrap();
    }
    out
}

fn k4(weights: &[Rational]) -> WeightedMultigraph {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    WeightedMultigraph::from_edges(4, pairs.iter().zip(weights).map(|(&(u, v), w)| (u, v, w.clone()))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn decomposition_matches_subset_expansion(g in generated_signed(15), q in nonzero_q()) {
        let oracle = brute_force_z(&g, &q).unwrap();
        if let Some(z) = sp_value(&g, &q) {
            prop_assert_eq!(z, oracle);
        }
    }

    #[test]
    fn positive_weights_at_positive_q_are_never_singular(g in generated(15), q in 1i64..10) {
        let q = Rational::from_integer(q);
        prop_assert_eq!(evaluate(&EvalRequest::new(&g, q.clone())).unwrap(), brute_force_z(&g, &q).unwrap());
    }

    #[test]
    fn disjoint_union_multiplies(a in generated_signed(6), b in generated_signed(6), q in nonzero_q()) {
        let union = a.disjoint_union(&b);
        if let (Some(za), Some(zb)) = (sp_value(&a, &q), sp_value(&b, &q)) {
            prop_assert_eq!(sp_value(&union, &q).unwrap(), za * zb);
        }
    }

    #[test]
    fn self_loop_contributes_one_plus_weight(g in generated(8), w in rational(), at in any::<prop::sample::Index>(), q in nonzero_q()) {
        let mut looped = g.clone();
        let x = at.index(g.vertex_count());
        looped.add_edge(x, x, w.clone()).unwrap();
        let expected = brute_force_z(&g, &q).unwrap() * (Rational::one() + w);
        prop_assert_eq!(brute_force_z(&looped, &q).unwrap(), expected.clone());
        if let Some(z) = sp_value(&looped, &q) {
            prop_assert_eq!(z, expected);
        }
    }

    #[test]
    fn chromatic_weights_count_colorings(g in generated(10), k in 1u32..=4) {
        let q = Rational::from_integer(k as i64);
        let request = EvalRequest::new(&g, q).with_weight_override(Some(Rational::from_integer(-1)));
        match evaluate(&request) {
            Ok(z) => prop_assert_eq!(z, Rational::from_integer(count_proper_colorings(&g, k).unwrap() as i64)),
            Err(e) => prop_assert!(e.is_singular()),
        }
    }

    #[test]
    fn worklist_order_does_not_change_value(g in generated_signed(40), q in nonzero_q(), seeds in prop::array::uniform3(any::<u64>())) {
        // Orders may meet a vanishing denominator at different nodes, so only
        // the successful evaluations are compared.
        let mut values = Vec::new();
        for order in [WorklistOrder::Fifo].into_iter().chain(seeds.map(WorklistOrder::Random)) {
            match evaluate(&EvalRequest::new(&g, q.clone()).with_worklist(order)) {
                Ok(z) => values.push(z),
                Err(e) => prop_assert!(e.is_singular()),
            }
        }
        prop_assert!(values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn interpolated_polynomial_agrees_with_oracle(g in generated_signed(9), q in rational()) {
        let p = partition_polynomial(&g, false).unwrap();
        prop_assert_eq!(p.eval(&q), brute_force_z(&g, &q).unwrap());
        prop_assert_eq!(p.degree(), g.vertex_count());
        prop_assert!(p.coefficient(0).is_zero());
    }

    #[test]
    fn serialize_then_parse_is_identity(g in arbitrary_multigraph()) {
        prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn generator_shape(ops in 0usize..300, seed in any::<u64>(), bias in 0.0f64..=1.0) {
        let g = random_sp_graph(&GeneratorSpec::new(ops, seed).with_series_bias(bias)).unwrap();
        prop_assert_eq!(g.edge_count(), ops + 1);
        let simple = g.simple_edges();
        let n = g.vertex_count();
        prop_assert!(simple.len() + 3 <= 2 * n || n == 2);
        let mut degree = vec![0usize; n];
        for &(u, v) in &simple {
            degree[u] += 1;
            degree[v] += 1;
        }
        prop_assert!(degree.iter().any(|&d| d <= 2));
    }

    #[test]
    fn series_gadget_preserves_partition_function(
        ws in prop::array::uniform6(rational()),
        path in prop::collection::vec(rational(), 2..5),
        target in 0usize..6,
        q in nonzero_q(),
    ) {
        // K4 is not series-parallel, so only the oracle is involved.
        let g = k4(&ws);
        let (u, v) = (g.edges()[target].u, g.edges()[target].v);
        let mut chain = Vec::new();
        let mut at = u;
        for (i, w) in path.iter().enumerate() {
            let next = if i + 1 == path.len() { v } else { 4 + i };
            chain.push((at, next, w.clone()));
            at = next;
        }
        let expanded = replace_edge(&g, target, &chain, path.len() - 1);
        if let Ok(edge) = series_weight(&path, &q) {
            let reduced = replace_edge(&g, target, &[(u, v, edge.weight.clone())], 0);
            prop_assert_eq!(brute_force_z(&expanded, &q).unwrap(), brute_force_z(&reduced, &q).unwrap() * edge.prefactor);
        }
    }

    #[test]
    fn parallel_gadget_preserves_partition_function(
        ws in prop::array::uniform6(rational()),
        bundle in prop::collection::vec(rational(), 1..5),
        target in 0usize..6,
        q in nonzero_q(),
    ) {
        let g = k4(&ws);
        let (u, v) = (g.edges()[target].u, g.edges()[target].v);
        let copies: Vec<_> = bundle.iter().map(|w| (u, v, w.clone())).collect();
        let expanded = replace_edge(&g, target, &copies, 0);
        let reduced = replace_edge(&g, target, &[(u, v, parallel_weight(&bundle))], 0);
        prop_assert_eq!(brute_force_z(&expanded, &q).unwrap(), brute_force_z(&reduced, &q).unwrap());
    }
}

#[test]
fn trees_of_generated_graphs_are_valid() {
    for seed in 0..500u64 {
        let g =
            random_sp_graph(&GeneratorSpec::new((seed % 200) as usize, seed).with_series_bias((seed % 5) as f64 / 4.0))
                .unwrap();
        let fifo = build_sp_tree(&g).unwrap();
        assert!(validate_tree(&fifo, &g), "seed {seed}");
        assert_eq!(fifo.leaf_count(), g.edge_count(), "seed {seed}");
        let shuffled = build_sp_tree_with(&g, WorklistOrder::Random(seed)).unwrap();
        assert!(validate_tree(&shuffled, &g), "seed {seed}");
        assert_eq!(shuffled.leaf_count(), g.edge_count(), "seed {seed}");
    }
}

#[test]
fn pendant_reduction_matches_oracle() {
    for seed in 0..60u64 {
        let mut g = random_sp_graph(&GeneratorSpec::new((seed % 8) as usize, seed)).unwrap();
        // Hang a small tree off the graph so it is no longer two-terminal.
        let mut anchor = (seed as usize) % g.vertex_count();
        for i in 0..(1 + seed % 3) as usize {
            let leaf = g.add_vertex();
            g.add_edge(anchor, leaf, Rational::new(i as i64 + 1, 3).unwrap())
                .unwrap();
            if i % 2 == 0 {
                anchor = leaf;
            }
        }
        let star_like = g.vertex_count() > 2 && build_sp_tree(&g).is_err();
        let q = Rational::new(5, 2).unwrap();
        let reduced = evaluate(&EvalRequest::new(&g, q.clone()).with_reduce_pendants(true)).unwrap();
        assert_eq!(reduced, brute_force_z(&g, &q).unwrap(), "seed {seed}");
        if star_like {
            assert!(evaluate(&EvalRequest::new(&g, q.clone())).is_err(), "seed {seed}");
        }
    }
}

#[test]
fn float_mode_tracks_exact_mode() {
    for seed in 0..20u64 {
        let g = random_sp_graph(&GeneratorSpec::new(99, seed)).unwrap();
        assert_eq!(g.edge_count(), 100);
        for q in [2i64, 3, 7] {
            let exact = evaluate(&EvalRequest::new(&g, Rational::from_integer(q)))
                .unwrap()
                .to_f64();
            let float = evaluate(&EvalRequest::new(&g, q as f64)).unwrap();
            assert!(
                ((float - exact) / exact).abs() <= 1e-6,
                "seed {seed} q={q}: {float} vs {exact}"
            );
        }
    }
}
