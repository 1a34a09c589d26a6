#![allow(dead_code)]

use std::collections::BTreeSet;

use portview::{HalfEdge, NodeId, PortLabeledGraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random simple graph on `n` nodes with edge probability `p` and a random
/// port numbering at every node. Not necessarily connected.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> PortLabeledGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    from_edge_pairs(rng, n, &edges)
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> PortLabeledGraph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    from_edge_pairs(rng, n, &edges)
}

/// Random graph with minimum degree at least 2: a cycle plus extra edges.
pub fn random_min_degree_two<R: Rng>(rng: &mut R, n: usize, p: f64) -> PortLabeledGraph {
    assert!(n >= 3);
    let mut edges = BTreeSet::new();
    for v in 0..n {
        let w = (v + 1) % n;
        edges.insert((v.min(w), v.max(w)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    from_edge_pairs(rng, n, &edges)
}

fn from_edge_pairs<R: Rng>(rng: &mut R, n: usize, edges: &[(usize, usize)]) -> PortLabeledGraph {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    // port_of[edge] = (port at u, port at v)
    let mut port_of = vec![(0u32, 0u32); edges.len()];
    for (x, list) in incident.iter_mut().enumerate() {
        list.shuffle(rng);
        for (k, &e) in list.iter().enumerate() {
            if edges[e].0 == x {
                port_of[e].0 = k as u32 + 1;
            } else {
                port_of[e].1 = k as u32 + 1;
            }
        }
    }
    let adjacency = incident
        .iter()
        .enumerate()
        .map(|(x, list)| {
            list.iter()
                .map(|&e| {
                    let (u, v) = edges[e];
                    let (pu, pv) = port_of[e];
                    if u == x {
                        HalfEdge { neighbor: NodeId(v as u32), reverse_port: pv }
                    } else {
                        HalfEdge { neighbor: NodeId(u as u32), reverse_port: pu }
                    }
                })
                .collect()
        })
        .collect();
    PortLabeledGraph::from_adjacency(adjacency).expect("generated graph is valid")
}
