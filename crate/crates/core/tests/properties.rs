use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use respart::anatomy::tree_anatomy;
use respart::constructions::{construct, construct_thm1, Method};
use respart::lab::{prufer_from_tree, random_generalized_tree, random_tree, tree_from_prufer, GenTreeParams};
use respart::resolver::{is_resolving_partition, partition_dimension_exact, partition_representation};
use respart::{all_pairs_distances, block_decomposition, ExactOptions, Graph, VertexPartition};

fn prufer(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (2..=max_n).prop_flat_map(|n| proptest::collection::vec(0..n, n - 2))
}

fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
    prufer(max_n).prop_map(|seq| tree_from_prufer(&seq).unwrap())
}

/// A tree plus a few extra edges, so cycles and larger blocks show up.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (tree(12), proptest::collection::vec((0usize..12, 0usize..12), 0..6)).prop_map(|(t, extra)| {
        let n = t.n();
        let mut edges: Vec<_> = t.edges().collect();
        for (u, v) in extra {
            let (u, v) = (u % n, v % n);
            if u != v && !edges.contains(&(u.min(v), u.max(v))) {
                edges.push((u.min(v), u.max(v)));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn tree_or_gentree() -> impl Strategy<Value = Graph> {
    prop_oneof![
        tree(14),
        any::<u64>().prop_map(|seed| random_generalized_tree(&GenTreeParams::default(), seed).unwrap().0),
    ]
}

proptest! {
    #[test]
    fn distances_are_a_metric(g in connected_graph()) {
        let dm = all_pairs_distances(&g).unwrap();
        let n = g.n();
        for u in 0..n {
            prop_assert_eq!(dm.get(u, u), 0);
            for v in 0..n {
                prop_assert_eq!(dm.get(u, v), dm.get(v, u));
                prop_assert_eq!(dm.get(u, v) == 1, g.has_edge(u, v));
                for w in 0..n {
                    prop_assert!(dm.get(u, w) <= dm.get(u, v) + dm.get(v, w));
                }
            }
        }
    }

    #[test]
    fn tree_blocks_are_edges(g in tree(14)) {
        let bd = block_decomposition(&g).unwrap();
        prop_assert_eq!(bd.blocks.len(), g.n() - 1);
        prop_assert!(bd.blocks.iter().all(|b| b.len() == 2));
        prop_assert_eq!(bd.extreme_vertices.clone(), g.leaves());
    }

    #[test]
    fn prufer_round_trip(seq in prufer(12)) {
        let g = tree_from_prufer(&seq).unwrap();
        prop_assert_eq!(prufer_from_tree(&g).unwrap(), seq);
        prop_assert!(g.is_tree());
    }

    #[test]
    fn one_zero_coordinate(g in connected_graph(), seed in any::<u64>()) {
        let dm = all_pairs_distances(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = rng.gen_range(1..=g.n());
        // every class index is hit once before the rest are drawn at random
        let mut class_of: Vec<usize> = (0..g.n()).map(|v| if v < t { v } else { rng.gen_range(0..t) }).collect();
        class_of.shuffle(&mut rng);
        let pi = VertexPartition::from_assignment(&class_of).unwrap();
        for v in 0..g.n() {
            let r = partition_representation(&dm, &pi, v).unwrap();
            prop_assert_eq!(r.0.iter().filter(|&&d| d == 0).count(), 1);
            prop_assert_eq!(r.0[pi.class_of()[v]], 0);
        }
    }

    #[test]
    fn refinement_keeps_resolving(g in tree_or_gentree(), seed in any::<u64>()) {
        let dm = all_pairs_distances(&g).unwrap();
        let pi = construct(&g, &dm, Method::Auto).unwrap().partition;
        prop_assert!(is_resolving_partition(&dm, &pi).unwrap().resolving);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let splittable: Vec<usize> = (0..pi.num_classes()).filter(|&i| pi.classes()[i].len() >= 2).collect();
        if let Some(&index) = splittable.choose(&mut rng) {
            let class = &pi.classes()[index];
            let take = rng.gen_range(1..class.len());
            let part: Vec<usize> = class.choose_multiple(&mut rng, take).copied().collect();
            let finer = pi.split_class(index, &part).unwrap();
            prop_assert_eq!(finer.num_classes(), pi.num_classes() + 1);
            prop_assert!(is_resolving_partition(&dm, &finer).unwrap().resolving);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pd_ignores_labels(g in tree(8), seed in any::<u64>()) {
        let opts = ExactOptions::brute_force();
        let dm = all_pairs_distances(&g).unwrap();
        let pd = partition_dimension_exact(&g, &dm, &opts).unwrap().0;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        let dh = all_pairs_distances(&h).unwrap();
        prop_assert_eq!(partition_dimension_exact(&h, &dh, &opts).unwrap().0, pd);
    }
}

#[test]
fn thm1_ignores_terminal_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    let mut seed = 0;
    while checked < 50 {
        seed += 1;
        let g = random_tree(rng.gen_range(4..=16), seed).unwrap();
        if g.is_path_graph() {
            continue;
        }
        let dm = all_pairs_distances(&g).unwrap();
        let anat = tree_anatomy(&g, &dm).unwrap();
        for _ in 0..5 {
            let mut shuffled = anat.clone();
            shuffled.exterior_majors.shuffle(&mut rng);
            for major in &mut shuffled.exterior_majors {
                let mut order: Vec<usize> = (0..major.legs.len()).collect();
                order.shuffle(&mut rng);
                major.terminals = order.iter().map(|&k| major.terminals[k]).collect();
                major.legs = order.iter().map(|&k| major.legs[k].clone()).collect();
            }
            let pi = construct_thm1(&g, &dm, &shuffled)
                .unwrap_or_else(|e| panic!("seed {seed}: {e} with order {:?}", shuffled.exterior_majors));
            assert_eq!(pi.num_classes(), anat.kappa + anat.tau - 1);
        }
        checked += 1;
    }
}
