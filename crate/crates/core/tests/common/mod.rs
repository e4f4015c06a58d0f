//! Helpers shared by the integration test targets: a seeded random
//! multigraph generator, a structure-preserving relabeler, and a
//! brute-force rooted-ball isomorphism check that is deliberately
//! independent of the library's refinement-based matcher.
#![allow(dead_code)]

use std::collections::BTreeMap;

use endgraph::{Ball, EdgeId, FiniteMultigraph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small random connected rooted multigraph: a spanning tree over
/// `1..=max_vertices` vertices plus a few extra edges, loops and parallel
/// edges included. The root is always `v0`.
pub fn random_multigraph(rng: &mut ChaCha8Rng, tag: &str, max_vertices: usize) -> FiniteMultigraph {
    let n = rng.random_range(1..=max_vertices.max(1));
    let mut g = FiniteMultigraph::new(format!("rand-{tag}"));
    let vid = |i: usize| VertexId::new(format!("v{i}"));
    for i in 0..n {
        g.add_vertex(vid(i)).unwrap();
    }
    for i in 1..n {
        let parent = rng.random_range(0..i);
        g.add_edge(EdgeId::new(format!("t{i}")), vid(parent), vid(i))
            .unwrap();
    }
    let extra = rng.random_range(0..=6);
    for j in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        g.add_edge(EdgeId::new(format!("x{j}")), vid(u), vid(v))
            .unwrap();
    }
    g.set_root(vid(0)).unwrap();
    g
}

/// The same graph under a random renaming of vertices and edges, inserted
/// in a random order. Balls extracted from the copy may number their
/// vertices differently, which is exactly what invariance tests need.
pub fn relabeled_copy(g: &FiniteMultigraph, rng: &mut ChaCha8Rng) -> FiniteMultigraph {
    let mut vertices: Vec<VertexId> = g.vertices().cloned().collect();
    let mut codes: Vec<usize> = (0..vertices.len()).collect();
    codes.shuffle(rng);
    let names: BTreeMap<VertexId, VertexId> = vertices
        .iter()
        .zip(codes)
        .map(|(v, c)| (v.clone(), VertexId::new(format!("w{c}"))))
        .collect();

    let mut h = FiniteMultigraph::new(format!("{}-relabeled", g.name()));
    vertices.shuffle(rng);
    for v in &vertices {
        h.add_vertex(names[v].clone()).unwrap();
    }
    let mut edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .map(|(_, (u, v))| (u.clone(), v.clone()))
        .collect();
    edges.shuffle(rng);
    for (i, (u, v)) in edges.iter().enumerate() {
        h.add_edge(
            EdgeId::new(format!("f{i}")),
            names[u].clone(),
            names[v].clone(),
        )
        .unwrap();
    }
    if let Some(r) = g.root() {
        h.set_root(names[r].clone()).unwrap();
    }
    h
}

/// Plain permutation-search isomorphism on raw ball data. The root is
/// pinned, candidates are filtered by the evident per-vertex invariants
/// (depth, stub count, loop count), and a completed assignment is accepted
/// only if it maps the edge multiset of `a` exactly onto that of `b`.
pub fn naive_rooted_isomorphic(a: &Ball, b: &Ball) -> bool {
    if a.radius != b.radius
        || a.vertex_count() != b.vertex_count()
        || a.edges.len() != b.edges.len()
        || a.stub_count() != b.stub_count()
        || a.loops.iter().sum::<u32>() != b.loops.iter().sum::<u32>()
    {
        return false;
    }
    let n = a.vertex_count();
    if n == 0 {
        return true;
    }
    let compatible = |i: usize, j: usize| {
        a.depth[i] == b.depth[j] && a.stubs[i] == b.stubs[j] && a.loops[i] == b.loops[j]
    };
    if !compatible(0, 0) {
        return false;
    }
    let mut b_edges = b.edges.clone();
    b_edges.sort_unstable();

    fn extend(
        a: &Ball,
        b_edges: &[(u32, u32)],
        compatible: &dyn Fn(usize, usize) -> bool,
        next: usize,
        image: &mut Vec<u32>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.vertex_count();
        if next == n {
            let mut mapped: Vec<(u32, u32)> = a
                .edges
                .iter()
                .map(|&(u, v)| {
                    let (x, y) = (image[u as usize], image[v as usize]);
                    (x.min(y), x.max(y))
                })
                .collect();
            mapped.sort_unstable();
            return mapped == b_edges;
        }
        for j in 0..n {
            if !used[j] && compatible(next, j) {
                image[next] = j as u32;
                used[j] = true;
                if extend(a, b_edges, compatible, next + 1, image, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }

    let mut image = vec![0u32; n];
    let mut used = vec![false; n];
    used[0] = true;
    extend(a, &b_edges, &compatible, 1, &mut image, &mut used)
}

#[cfg(test)]
mod sanity {
    // Nothing here: the helpers are exercised through the test targets that
    // include this module.
}
