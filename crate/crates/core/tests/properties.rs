mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ymgraph_core::calculus::{betti, d, euler_characteristic, RealForm};
use ymgraph_core::gauge::{Connection, GaugeTransformation, Group};
use ymgraph_core::graph::{CliqueComplex, Graph};
use ymgraph_core::io::{connection_from_json, connection_to_json, format_g17, parse_graph, to_json_string};
use ymgraph_core::yangmills::{ym_residual, ym_upper_bound, ym_value};
use ymgraph_core::Orientation;

/// Undirected edge set on `n` vertices plus an injective key that orients
/// every edge from the smaller to the larger key.
fn oriented_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, mask, key)| {
            let mut pairs = Vec::new();
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[bit] {
                        pairs.push((u, v));
                    }
                    bit += 1;
                }
            }
            Graph::oriented_by_key(n, &pairs, &key).unwrap()
        })
}

fn group() -> impl Strategy<Value = Group> {
    prop_oneof![
        Just(Group::u1()),
        Just(Group::orthogonal(2)),
        Just(Group::orthogonal(3)),
        Just(Group::unitary(2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clique_lists_match_subset_scan(g in oriented_graph(10)) {
        let cx = CliqueComplex::build(g.clone(), None);
        let brute = common::brute_force_cliques(&g);
        prop_assert_eq!(cx.num_degrees(), brute.len());
        for (k, level) in brute.iter().enumerate() {
            let mut ours = cx.simplices(k).to_vec();
            ours.sort();
            prop_assert_eq!(&ours, level);
        }
    }

    #[test]
    fn simplices_are_closed_under_faces(g in oriented_graph(9)) {
        let cx = CliqueComplex::build(g, None);
        for k in 1..cx.num_degrees() {
            for (i, s) in cx.simplices(k).iter().enumerate() {
                for (j, &f) in cx.faces(k, i).iter().enumerate() {
                    let mut face = s.clone();
                    face.remove(j);
                    prop_assert_eq!(cx.simplex(k - 1, f), face.as_slice());
                }
            }
        }
    }

    #[test]
    fn canonical_edges_follow_the_orientation(g in oriented_graph(9)) {
        let cx = CliqueComplex::build(g.clone(), None);
        let mut directed: Vec<Vec<usize>> = g.edges().iter().map(|&(u, v)| vec![u, v]).collect();
        directed.sort();
        let mut ours = cx.simplices(1).to_vec();
        ours.sort();
        prop_assert_eq!(ours, directed);
        for s in cx.simplices(2) {
            prop_assert!(g.precedes(s[0], s[1]) && g.precedes(s[1], s[2]));
        }
    }

    #[test]
    fn parallel_neighbours_are_symmetric(g in oriented_graph(9)) {
        let cx = CliqueComplex::build(g, None);
        for k in 0..cx.num_degrees() {
            for i in 0..cx.count(k) {
                for (j, s) in cx.parallel_neighbors(k, i) {
                    prop_assert!(s == 1.0 || s == -1.0);
                    let back = cx.parallel_neighbors(k, j);
                    prop_assert!(back.contains(&(i, s)));
                }
            }
        }
    }

    #[test]
    fn d_squares_to_zero(g in oriented_graph(9), seed in any::<u64>()) {
        let cx = CliqueComplex::build(g, None);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..cx.num_degrees() {
            use rand_distr::{Distribution, StandardNormal};
            let values = (0..cx.count(k)).map(|_| StandardNormal.sample(&mut rng)).collect();
            let f = RealForm::from_values(&cx, k, values).unwrap();
            prop_assert!(d(&cx, &d(&cx, &f)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn euler_characteristic_from_betti_numbers(g in oriented_graph(9)) {
        let cx = CliqueComplex::build(g.clone(), None);
        let alternating: i64 = (0..cx.num_degrees())
            .map(|k| {
                let b = betti(&cx, k).unwrap() as i64;
                if k % 2 == 0 { b } else { -b }
            })
            .sum();
        prop_assert_eq!(alternating, euler_characteristic(&cx));
        let oracle: Vec<usize> = common::betti_oracle(&g);
        let ours: Vec<usize> = (0..cx.num_degrees()).map(|k| betti(&cx, k).unwrap()).collect();
        prop_assert_eq!(ours, oracle);
    }

    #[test]
    fn functional_is_bounded_and_gauge_invariant(g in oriented_graph(7), grp in group(), seed in any::<u64>()) {
        let cx = CliqueComplex::build(g, None);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Connection::random(&cx, grp, &mut rng);
        let value = ym_value(&cx, &a).unwrap();
        prop_assert!(value >= -1e-12 && value <= ym_upper_bound(&cx, &a) + 1e-12);
        let gt = GaugeTransformation::random(cx.num_vertices(), grp, &mut rng);
        let b = gt.act_connection(&cx, &a).unwrap();
        prop_assert!((ym_value(&cx, &b).unwrap() - value).abs() < 1e-10);
        let ra = ym_residual(&cx, &a).unwrap().inf_norm();
        let rb = ym_residual(&cx, &b).unwrap().inf_norm();
        prop_assert!((ra - rb).abs() < 1e-10);
    }

    #[test]
    fn connection_json_round_trips(g in oriented_graph(6), grp in group(), seed in any::<u64>()) {
        let cx = CliqueComplex::build(g, None);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Connection::random(&cx, grp, &mut rng);
        let text = to_json_string(&connection_to_json(&cx, &a));
        let b = connection_from_json(&cx, &text).unwrap();
        prop_assert!(a.distance(&b) <= 1e-15);
    }

    #[test]
    fn graph_text_round_trips(g in oriented_graph(10)) {
        let text = ymgraph_core::io::graph_to_text(&g);
        let back = parse_graph(&text, Orientation::FileOrder).unwrap();
        prop_assert_eq!(back.num_vertices(), g.num_vertices());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn seventeen_digits_are_lossless(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let s = format_g17(x);
        prop_assert_eq!(s.parse::<f64>().unwrap(), x);
        prop_assert!(serde_json::from_str::<f64>(&s).is_ok());
    }
}
