mod common;

use std::collections::HashMap;

use portview::views::{
    naive_view_tree, nonbacktracking_label_sequences, nonbacktracking_label_sequences_up_to, quotient_graph,
    stabilized_partition, view_classes, views_equal, LabelSequence,
};
use portview::{HalfEdge, NodeId, PortLabeledGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = PortLabeledGraph> {
    (1..=max_nodes, 0.1f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_graph(&mut rng, n, p)
    })
}

/// Every class of `fine` lies inside one class of `coarse`.
fn refines(fine: &[u32], coarse: &[u32]) -> bool {
    let mut map = HashMap::new();
    fine.iter().zip(coarse).all(|(f, c)| *map.entry(f).or_insert(c) == c)
}

/// Runs `extra` more rounds by hand from the last stored coloring.
fn extra_rounds(g: &PortLabeledGraph, start: &[u32], extra: usize) -> Vec<Vec<u32>> {
    let mut out = vec![start.to_vec()];
    for _ in 0..extra {
        let last = out.last().unwrap();
        let sigs: Vec<Vec<u32>> = g
            .nodes()
            .map(|v| {
                let mut s = vec![g.degree(v) as u32];
                for h in g.ports(v) {
                    s.push(h.reverse_port);
                    s.push(last[h.neighbor.index()]);
                }
                s
            })
            .collect();
        let mut ids: HashMap<&Vec<u32>, u32> = HashMap::new();
        let next = sigs
            .iter()
            .map(|s| {
                let fresh = ids.len() as u32;
                *ids.entry(s).or_insert(fresh)
            })
            .collect();
        out.push(next);
    }
    out
}

proptest! {
    #[test]
    fn rounds_refine_their_predecessors(g in graph_strategy(16)) {
        let p = stabilized_partition(&g);
        for pair in p.rounds.windows(2) {
            prop_assert!(refines(&pair[1], &pair[0]));
        }
    }

    #[test]
    fn stability_is_absorbing(g in graph_strategy(16)) {
        let p = stabilized_partition(&g);
        let s = p.stabilization_round.unwrap();
        prop_assert_eq!(s + 1, p.computed_rounds());
        let more = extra_rounds(&g, p.final_coloring(), 3);
        for round in &more {
            prop_assert_eq!(round.as_slice(), p.final_coloring());
        }
        for k in s..s + 4 {
            prop_assert_eq!(p.coloring(k).unwrap(), p.final_coloring());
        }
    }

    #[test]
    fn refinement_is_deterministic(g in graph_strategy(16)) {
        prop_assert_eq!(stabilized_partition(&g), stabilized_partition(&g));
        prop_assert_eq!(stabilized_partition(&g).to_json(), stabilized_partition(&g).to_json());
    }

    #[test]
    fn stabilization_within_n_minus_one(g in graph_strategy(20)) {
        let s = stabilized_partition(&g).stabilization_round.unwrap();
        prop_assert!(s < g.node_count());
    }

    #[test]
    fn quotient_is_consistent(g in graph_strategy(16)) {
        let q = quotient_graph(&g);
        for v in g.nodes() {
            let c = q.class_of[v.index()] as usize;
            prop_assert_eq!(q.table[c].len(), g.degree(v));
            for (i, h) in g.ports(v).iter().enumerate() {
                prop_assert_eq!(q.table[c][i], (q.class_of[h.neighbor.index()], h.reverse_port));
            }
        }
    }

    #[test]
    fn trees_decide_views_on_six_nodes(g in graph_strategy(6), k in 0usize..=4) {
        let trees: Vec<_> = g.nodes().map(|v| naive_view_tree(&g, v, k).unwrap()).collect();
        for u in g.nodes() {
            for v in g.nodes() {
                prop_assert_eq!(trees[u.index()] == trees[v.index()], views_equal(&g, u, v, k));
            }
        }
    }
}

/// With minimum degree two every walk extends, so walks of exactly `k`
/// steps carry the whole depth-`k` view.
#[test]
fn exact_length_walks_decide_views_without_leaves() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    for _ in 0..200 {
        let n = rng.gen_range(3..=8);
        let p = rng.gen_range(0.0..0.6);
        let g = common::random_min_degree_two(&mut rng, n, p);
        for k in 0..=4 {
            let sets: Vec<_> = g.nodes().map(|v| nonbacktracking_label_sequences(&g, v, k).unwrap()).collect();
            let colors = view_classes(&g, k).coloring(k).unwrap().to_vec();
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(sets[u] == sets[v], colors[u] == colors[v], "k={k} ({u},{v})");
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 10_000);
}

/// Two-node path versus the middle of a three-node path: at depth 2 neither
/// has a non-backtracking walk of length 2, yet their views differ.
#[test]
fn exact_length_walks_miss_leaves() {
    let h = |v: u32, q: u32| HalfEdge { neighbor: NodeId(v), reverse_port: q };
    // 0 - 1 and 2 - 3 - 4; node 3 reaches 2 on port 1 and 4 on port 2.
    let g = PortLabeledGraph::from_adjacency(vec![
        vec![h(1, 1)],
        vec![h(0, 1)],
        vec![h(3, 1)],
        vec![h(2, 1), h(4, 1)],
        vec![h(3, 2)],
    ])
    .unwrap();
    let (a, b) = (NodeId(0), NodeId(3));
    assert!(nonbacktracking_label_sequences(&g, a, 2).unwrap().is_empty());
    assert!(nonbacktracking_label_sequences(&g, b, 2).unwrap().is_empty());
    assert!(!views_equal(&g, a, b, 2));
    let up_a = nonbacktracking_label_sequences_up_to(&g, a, 2).unwrap();
    let up_b = nonbacktracking_label_sequences_up_to(&g, b, 2).unwrap();
    assert_ne!(up_a, up_b);
    assert!(up_a.contains(&LabelSequence(vec![(1, 1)])));
    assert!(up_b.contains(&LabelSequence(vec![(2, 1)])));
    assert!(!views_equal(&g, a, b, 1));
}
