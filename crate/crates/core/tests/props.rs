//! Property tests for the library invariants: metric laws, ball algebra,
//! isomorphism codes, text round trips, sampling determinism, and the rank
//! bookkeeping of the surgery moves.

mod common;

use common::{naive_rooted_isomorphic, random_multigraph, relabeled_copy, seeded_rng};
use endgraph::closed_set::{no_triple_ones_automaton, parse_closed_set, two_point_automaton};
use endgraph::iso::{balls_equivalent, canonical_code};
use endgraph::surgery::{
    add_self_loops, attach_barrel, attach_lollipop, double_edges, split_degree6, subdivide_edge,
    SplitGrouping,
};
use endgraph::{
    delta_u, distance, enumerate_pants_complexes, in_basic_open, parse_graph, resolve_graph_spec,
    sample_configuration, ClosedSetPresentation, DyadicDistance, EdgeId, Error, FiniteMultigraph,
    GraphInput, PantsComplex, Radius, StandardGraphDescriptor, VertexId, BUILTIN_NAMES,
};
use proptest::prelude::*;

fn finite(g: FiniteMultigraph) -> GraphInput {
    GraphInput::finite(g)
}

/// Distance classified for ultrametric arithmetic: agreement depth as an
/// extended half-exponent, with `Zero` at infinity. `UpperBound` never
/// occurs for finite graphs under a generous budget.
fn decided_half_exponent(d: &DyadicDistance) -> u32 {
    match d {
        DyadicDistance::Zero => u32::MAX,
        DyadicDistance::Exact { half_exponent } => *half_exponent,
        DyadicDistance::UpperBound { .. } => panic!("finite graphs must decide: {d:?}"),
    }
}

fn arb_closed_set() -> impl Strategy<Value = ClosedSetPresentation> {
    let word = proptest::collection::vec(any::<bool>(), 0..5);
    let period = proptest::collection::vec(any::<bool>(), 1..4);
    prop_oneof![
        Just(ClosedSetPresentation::Full),
        (word.clone(), period)
            .prop_map(|(prefix, period)| ClosedSetPresentation::Singleton { prefix, period }),
        proptest::collection::vec(word, 1..5)
            .prop_map(|words| ClosedSetPresentation::CylinderUnion { words }),
        Just(two_point_automaton()),
        Just(no_triple_ones_automaton()),
    ]
}

fn arb_descriptor() -> impl Strategy<Value = StandardGraphDescriptor> {
    use endgraph::CantorLoops;
    prop_oneof![
        (0u32..6, 0u32..5)
            .prop_map(|(r, n)| StandardGraphDescriptor::finite_pair(r, n, 0).unwrap()),
        (1u32..5, 1u32..5).prop_map(|(n, l)| {
            let l = l.min(n);
            StandardGraphDescriptor::finite_pair_infinite_rank(n, l).unwrap()
        }),
        (0u32..6).prop_map(|r| StandardGraphDescriptor::cantor(r, CantorLoops::Empty).unwrap()),
        Just(StandardGraphDescriptor::cantor_infinite_rank(CantorLoops::ProperClopen).unwrap()),
        Just(StandardGraphDescriptor::cantor_infinite_rank(CantorLoops::All).unwrap()),
        any::<bool>().prop_map(|l| StandardGraphDescriptor::convergent(l).unwrap()),
    ]
}

proptest! {
    #[test]
    fn distance_is_symmetric_and_decided(sa in any::<u64>(), sb in any::<u64>()) {
        let a = finite(random_multigraph(&mut seeded_rng(sa), "a", 8));
        let b = finite(random_multigraph(&mut seeded_rng(sb), "b", 8));
        let ab = distance(&a, &b, 64).unwrap();
        let ba = distance(&b, &a, 64).unwrap();
        prop_assert_eq!(&ab, &ba);
        // A generous budget always decides a pair of small finite graphs.
        decided_half_exponent(&ab);
    }

    #[test]
    fn distance_is_an_ultrametric(sx in any::<u64>(), sy in any::<u64>(), sz in any::<u64>()) {
        let x = finite(random_multigraph(&mut seeded_rng(sx), "x", 8));
        let y = finite(random_multigraph(&mut seeded_rng(sy), "y", 8));
        let z = finite(random_multigraph(&mut seeded_rng(sz), "z", 8));
        let xy = decided_half_exponent(&distance(&x, &y, 64).unwrap());
        let yz = decided_half_exponent(&distance(&y, &z, 64).unwrap());
        let xz = decided_half_exponent(&distance(&x, &z, 64).unwrap());
        // d(x,z) <= max(d(x,y), d(y,z)), i.e. agreement depths satisfy
        // the reverse on the exponent scale.
        prop_assert!(xz >= xy.min(yz), "xy={xy} yz={yz} xz={xz}");
    }

    #[test]
    fn self_distance_never_certifies_separation(seed in any::<u64>(), budget in 0u32..14) {
        let g = finite(random_multigraph(&mut seeded_rng(seed), "g", 8));
        let d = distance(&g, &g, budget).unwrap();
        prop_assert!(
            !matches!(d, DyadicDistance::Exact { .. }),
            "self-distance came out positive: {d:?}"
        );
        prop_assert!(in_basic_open(&g, &g, Radius(budget)).unwrap());
    }

    #[test]
    fn truncation_matches_direct_extraction(
        seed in any::<u64>(),
        big in 0u32..16,
        cut in 0u32..16,
    ) {
        let cut = cut.min(big);
        let g = finite(random_multigraph(&mut seeded_rng(seed), "t", 8));
        let whole = g.ball(Radius(big)).unwrap();
        prop_assert_eq!(whole.truncate(Radius(cut)).unwrap(), g.ball(Radius(cut)).unwrap());
    }

    #[test]
    fn relabeling_is_invisible_to_codes(seed in any::<u64>(), m in 0u32..9) {
        let mut rng = seeded_rng(seed);
        let g = random_multigraph(&mut rng, "r", 8);
        let h = relabeled_copy(&g, &mut rng);
        let bg = finite(g).ball(Radius(m)).unwrap();
        let bh = finite(h).ball(Radius(m)).unwrap();
        prop_assert!(balls_equivalent(&bg, &bh));
        prop_assert!(naive_rooted_isomorphic(&bg, &bh));
        prop_assert_eq!(canonical_code(&bg), canonical_code(&bh));
    }

    #[test]
    fn code_equality_is_exactly_isomorphism(sa in any::<u64>(), sb in any::<u64>(), m in 0u32..7) {
        let a = finite(random_multigraph(&mut seeded_rng(sa), "a", 6)).ball(Radius(m)).unwrap();
        let b = finite(random_multigraph(&mut seeded_rng(sb), "b", 6)).ball(Radius(m)).unwrap();
        let by_naive = naive_rooted_isomorphic(&a, &b);
        prop_assert_eq!(balls_equivalent(&a, &b), by_naive);
        prop_assert_eq!(canonical_code(&a) == canonical_code(&b), by_naive);
    }

    #[test]
    fn closed_set_text_round_trips(set in arb_closed_set()) {
        prop_assume!(set.validate().is_ok());
        let text = set.to_text();
        prop_assert_eq!(parse_closed_set(&text).unwrap(), set);
    }

    #[test]
    fn descriptor_text_round_trips(d in arb_descriptor()) {
        let text = d.to_string();
        prop_assert_eq!(text.parse::<StandardGraphDescriptor>().unwrap(), d);
    }

    #[test]
    fn graph_file_round_trips(seed in any::<u64>()) {
        let g = random_multigraph(&mut seeded_rng(seed), "f", 8);
        let text = g.to_text();
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back.rank(), g.rank());
    }

    #[test]
    fn pants_round_trip_and_euler_law(index in 0usize..200) {
        let pool = enumerate_pants_complexes(3, 2);
        let p = &pool[index % pool.len()];
        prop_assert_eq!(&PantsComplex::parse(&p.to_text()).unwrap(), p);
        prop_assert_eq!(p.euler_characteristic(), 2 - 2 * p.genus() as i64);
    }

    #[test]
    fn configuration_model_is_regular_and_reproducible(
        k in 3u32..6,
        half in 5u32..20,
        seed in any::<u64>(),
    ) {
        let n = 2 * half; // even vertex count keeps k * n even for every k
        let g = sample_configuration(k, n, seed).unwrap();
        let again = sample_configuration(k, n, seed).unwrap();
        prop_assert_eq!(g.to_text(), again.to_text());
        prop_assert_eq!(g.vertex_count(), n as usize);
        prop_assert!(g.is_regular(k));
    }

    #[test]
    fn surgery_moves_shift_rank_predictably(
        seed in any::<u64>(),
        parallel in 1u32..6,
        loops in 0u32..5,
    ) {
        let mut rng = seeded_rng(seed);
        let mut g = random_multigraph(&mut rng, "s", 8);
        let root = VertexId::new("v0");

        let first_edge = g.edges().map(|(id, _)| id.clone()).next();
        if let Some(e) = first_edge {
            let before = g.rank();
            subdivide_edge(&mut g, &e).unwrap();
            prop_assert_eq!(g.rank(), before);
        }
        let before = g.rank();
        attach_lollipop(&mut g, &root).unwrap();
        prop_assert_eq!(g.rank(), before + 1);

        let before = g.rank();
        attach_barrel(&mut g, &root, parallel).unwrap();
        prop_assert_eq!(g.rank(), before + parallel as usize);

        let before = g.rank();
        add_self_loops(&mut g, &root, loops).unwrap();
        prop_assert_eq!(g.rank(), before + loops as usize);

        let before = g.rank();
        let edges = g.edge_count();
        double_edges(&mut g);
        prop_assert_eq!(g.rank(), before + edges);
    }

    #[test]
    fn degree6_split_keeps_rank(tail in 0u32..4, flags in proptest::array::uniform6(any::<bool>())) {
        prop_assume!(flags.iter().filter(|f| **f).count() == 3);
        // A hub with three doubled spokes has degree 6; a pendant tail of
        // variable length keeps the instances distinct.
        let mut g = FiniteMultigraph::new("hub");
        g.add_vertex("h".into()).unwrap();
        for leaf in ["x", "y", "z"] {
            g.add_vertex(leaf.into()).unwrap();
            g.add_edge(EdgeId::new(format!("{leaf}0")), "h".into(), leaf.into()).unwrap();
            g.add_edge(EdgeId::new(format!("{leaf}1")), "h".into(), leaf.into()).unwrap();
        }
        for i in 0..tail {
            g.add_vertex(VertexId::new(format!("t{i}"))).unwrap();
            let prev = if i == 0 { "x".to_string() } else { format!("t{}", i - 1) };
            g.add_edge(
                EdgeId::new(format!("te{i}")),
                VertexId::new(prev),
                VertexId::new(format!("t{i}")),
            )
            .unwrap();
        }
        g.set_root("h".into()).unwrap();

        let before = g.rank();
        let (h0, h1) = split_degree6(&mut g, &"h".into(), SplitGrouping(flags)).unwrap();
        prop_assert_eq!(g.rank(), before);
        prop_assert_eq!(g.degree(&h0).unwrap(), 4);
        prop_assert_eq!(g.degree(&h1).unwrap(), 4);
    }

    #[test]
    fn barrel_surgery_outside_a_ball_adds_rank_invisibly(k in 3u32..6, seed in any::<u64>()) {
        let mut g = sample_configuration(k, 40, seed).unwrap();
        let before = g.clone();
        let rank_before = g.rank();
        match delta_u(&mut g, 1, 1, k) {
            Ok(_) => {
                prop_assert_eq!(g.rank(), rank_before + (k - 2) as usize);
                prop_assert!(g.is_regular(k));
                prop_assert!(in_basic_open(
                    &finite(g),
                    &finite(before),
                    Radius(5)
                ).unwrap());
            }
            Err(Error::NotEnoughEdgesOutside { .. }) => {}
            Err(other) => return Err(TestCaseError::fail(other.to_string())),
        }
    }

    #[test]
    fn radius_text_round_trips(half_steps in 0u32..80) {
        let r = Radius(half_steps);
        prop_assert_eq!(r.to_string().parse::<Radius>().unwrap(), r);
    }
}

#[test]
fn builtin_resolution_is_deterministic() {
    for name in BUILTIN_NAMES {
        let a = resolve_graph_spec(name).unwrap();
        let b = resolve_graph_spec(name).unwrap();
        assert_eq!(a.label(), b.label());
        for m in [0, 3, 7, 10] {
            assert_eq!(a.ball(Radius(m)).unwrap(), b.ball(Radius(m)).unwrap(), "{name} at {m}");
        }
    }
}
