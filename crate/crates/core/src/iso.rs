//! Rooted isomorphism of balls.
//!
//! Two balls are compared as rooted stub-decorated multigraphs: a witness is
//! a bijection sending root to root and preserving edge multiplicities,
//! self-loop counts and stub counts. Depths are automatically preserved
//! (every vertex's parent edge is in full, so depth is graph-theoretic
//! distance from the root).
//!
//! The test runs joint color refinement first and backtracks only inside
//! color classes, which keeps it effectively linear on the tree-like balls
//! this crate produces. [`canonical_code`] additionally computes a canonical
//! form by individualization-refinement; it is meant for small balls (shape
//! counting, deduplication), not for the metric hot path.

use std::collections::BTreeMap;

use crate::ball::Ball;

/// Initial color: everything local to a vertex that any witness must match.
fn seed_key(b: &Ball, v: usize) -> (u32, u32, u32) {
    (b.depth[v], b.stubs[v], b.loops[v])
}

/// One refinement round over several graphs at once. New color ids are
/// assigned by the sorted order of the (old color, neighborhood signature)
/// keys — never by encounter order — so they are comparable across graphs
/// *and* canonical: relabeling a graph cannot change the id its classes
/// receive.
fn refine_round(
    adjs: &[&Vec<BTreeMap<u32, u32>>],
    colors: &mut [Vec<u32>],
) -> usize {
    type Key = (u32, Vec<(u32, u32)>);
    let mut keys: Vec<Vec<Key>> = Vec::with_capacity(adjs.len());
    let mut table: BTreeMap<Key, u32> = BTreeMap::new();
    for (gi, adj) in adjs.iter().enumerate() {
        let mut per_vertex = Vec::with_capacity(adj.len());
        for v in 0..adj.len() {
            let mut sig: Vec<(u32, u32)> = adj[v]
                .iter()
                .map(|(&w, &mult)| (colors[gi][w as usize], mult))
                .collect();
            sig.sort_unstable();
            let key = (colors[gi][v], sig);
            table.insert(key.clone(), 0);
            per_vertex.push(key);
        }
        keys.push(per_vertex);
    }
    for (rank, id) in table.values_mut().enumerate() {
        *id = rank as u32;
    }
    for (gi, per_vertex) in keys.iter().enumerate() {
        for (v, key) in per_vertex.iter().enumerate() {
            colors[gi][v] = table[key];
        }
    }
    table.len()
}

/// Seed colors for several balls at once, id-ordered by the seed key so
/// the assignment is both shared and canonical.
fn seed_colors(balls: &[&Ball]) -> Vec<Vec<u32>> {
    let mut table: BTreeMap<(u32, u32, u32), u32> = BTreeMap::new();
    for b in balls {
        for v in 0..b.vertex_count() {
            table.insert(seed_key(b, v), 0);
        }
    }
    for (rank, id) in table.values_mut().enumerate() {
        *id = rank as u32;
    }
    balls
        .iter()
        .map(|b| {
            (0..b.vertex_count())
                .map(|v| table[&seed_key(b, v)])
                .collect()
        })
        .collect()
}

/// Refines to a stable partition; colors are comparable across the inputs.
fn joint_refine(balls: &[&Ball]) -> Vec<Vec<u32>> {
    let adjs: Vec<_> = balls.iter().map(|b| b.adjacency()).collect();
    let adj_refs: Vec<&Vec<BTreeMap<u32, u32>>> = adjs.iter().collect();
    let mut colors = seed_colors(balls);
    let mut count = colors
        .iter()
        .flat_map(|c| c.iter().copied())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    loop {
        let new_count = refine_round(&adj_refs, &mut colors);
        if new_count == count {
            return colors;
        }
        count = new_count;
    }
}

fn color_histogram(colors: &[u32]) -> BTreeMap<u32, u32> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Searches for a root-preserving isomorphism; returns the image of each
/// `a`-vertex on success. Balls of different radii never match.
pub fn rooted_isomorphic(a: &Ball, b: &Ball) -> Option<Vec<u32>> {
    if a.radius != b.radius
        || a.vertex_count() != b.vertex_count()
        || a.edges.len() != b.edges.len()
        || a.stub_count() != b.stub_count()
        || a.full_edge_count() != b.full_edge_count()
    {
        return None;
    }
    let n = a.vertex_count();
    let colors = joint_refine(&[a, b]);
    if colors[0][0] != colors[1][0] {
        return None; // roots landed in different classes
    }
    if color_histogram(&colors[0]) != color_histogram(&colors[1]) {
        return None;
    }
    let adj_a = a.adjacency();
    let adj_b = b.adjacency();
    // Candidates per a-vertex: b-vertices of the same refined color.
    let mut by_color: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for v in 0..n as u32 {
        by_color.entry(colors[1][v as usize]).or_default().push(v);
    }
    let mut map: Vec<Option<u32>> = vec![None; n];
    let mut inv: Vec<Option<u32>> = vec![None; n];

    fn consistent(
        i: usize,
        cand: u32,
        map: &[Option<u32>],
        inv: &[Option<u32>],
        adj_a: &[BTreeMap<u32, u32>],
        adj_b: &[BTreeMap<u32, u32>],
    ) -> bool {
        for (&u, &mult) in &adj_a[i] {
            if let Some(u_img) = map[u as usize] {
                if adj_b[cand as usize].get(&u_img).copied().unwrap_or(0) != mult {
                    return false;
                }
            }
        }
        for &w in adj_b[cand as usize].keys() {
            // A mapped b-neighbor whose preimage is not an a-neighbor of i
            // would leave an unmatched edge; the loop above already compared
            // multiplicities for genuine a-neighbors.
            if let Some(pre) = inv[w as usize] {
                if !adj_a[i].contains_key(&pre) {
                    return false;
                }
            }
        }
        true
    }

    // Depth-first over vertices in BFS index order.
    #[allow(clippy::too_many_arguments)]
    fn search(
        i: usize,
        n: usize,
        colors: &[Vec<u32>],
        by_color: &BTreeMap<u32, Vec<u32>>,
        adj_a: &[BTreeMap<u32, u32>],
        adj_b: &[BTreeMap<u32, u32>],
        map: &mut Vec<Option<u32>>,
        inv: &mut Vec<Option<u32>>,
    ) -> bool {
        if i == n {
            return true;
        }
        let c = colors[0][i];
        if let Some(cands) = by_color.get(&c) {
            for &cand in cands {
                if inv[cand as usize].is_some()
                    || !consistent(i, cand, map, inv, adj_a, adj_b)
                {
                    continue;
                }
                map[i] = Some(cand);
                inv[cand as usize] = Some(i as u32);
                if search(i + 1, n, colors, by_color, adj_a, adj_b, map, inv) {
                    return true;
                }
                map[i] = None;
                inv[cand as usize] = None;
            }
        }
        false
    }

    if search(0, n, &colors, &by_color, &adj_a, &adj_b, &mut map, &mut inv) {
        Some(map.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

/// Convenience wrapper when only the yes/no answer matters.
pub fn balls_equivalent(a: &Ball, b: &Ball) -> bool {
    rooted_isomorphic(a, b).is_some()
}

/// Refines a single ball starting from the given colors (individualization
/// support for the canonical form).
fn refine_from(adj: &Vec<BTreeMap<u32, u32>>, start: Vec<u32>) -> Vec<u32> {
    let mut colors = vec![start];
    let mut count = color_histogram(&colors[0]).len();
    loop {
        let new_count = refine_round(&[adj], &mut colors);
        if new_count == count {
            return colors.pop().unwrap();
        }
        count = new_count;
    }
}

/// Flattens the ball along a discrete coloring (a total vertex order).
fn code_under(b: &Ball, colors: &[u32]) -> Vec<u64> {
    let n = b.vertex_count();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| colors[v as usize]);
    let mut pos = vec![0u32; n];
    for (rank, &v) in order.iter().enumerate() {
        pos[v as usize] = rank as u32;
    }
    let mut out = vec![b.radius.0 as u64, n as u64];
    for &v in &order {
        let v = v as usize;
        out.push(b.depth[v] as u64);
        out.push(b.stubs[v] as u64);
        out.push(b.loops[v] as u64);
    }
    let mut edges: Vec<(u32, u32)> = b
        .edges
        .iter()
        .map(|&(u, v)| {
            let (pu, pv) = (pos[u as usize], pos[v as usize]);
            (pu.min(pv), pu.max(pv))
        })
        .collect();
    edges.sort_unstable();
    for (u, v) in edges {
        out.push(u as u64);
        out.push(v as u64);
    }
    out
}

fn canon_rec(b: &Ball, adj: &Vec<BTreeMap<u32, u32>>, colors: Vec<u32>) -> Vec<u64> {
    let hist = color_histogram(&colors);
    if hist.values().all(|&c| c == 1) {
        return code_under(b, &colors);
    }
    // Branch on the first non-singleton class in color order; renumber so the
    // individualized vertex forms its own class just below its old one.
    let target = *hist.iter().find(|(_, &c)| c > 1).unwrap().0;
    let mut best: Option<Vec<u64>> = None;
    for v in 0..colors.len() {
        if colors[v] != target {
            continue;
        }
        let mut next = colors.iter().map(|&c| 2 * c + 1).collect::<Vec<_>>();
        next[v] = 2 * target;
        let refined = refine_from(adj, next);
        let code = canon_rec(b, adj, refined);
        if best.as_ref().map_or(true, |b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap()
}

/// Canonical code: equal codes exactly characterize rooted isomorphism.
/// Exhaustive over symmetry branches, so keep inputs small (tens of
/// vertices); the metric path never calls this.
pub fn canonical_code(b: &Ball) -> Vec<u64> {
    let adj = b.adjacency();
    let seed = seed_colors(&[b]).pop().unwrap();
    let refined = refine_from(&adj, seed);
    canon_rec(b, &adj, refined)
}
