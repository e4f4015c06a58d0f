//! Local rewriting moves on finite multigraphs.
//!
//! These are the building blocks of the degree-adjusting constructions: edge
//! subdivision, lollipops (pendant vertex carrying a self-loop), barrel cacti
//! (pendant vertex joined by a sheaf of parallel edges plus a self-loop),
//! edge doubling, and the degree-6 vertex split. Every move mints ids derived
//! from the rewritten elements, so repeated runs produce identical graphs.

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, FiniteMultigraph, VertexId};

/// Replaces edge `e = uv` by `u -- m -- v` through a fresh midpoint `m`.
/// Returns the midpoint id. Subdividing a self-loop yields two parallel
/// edges between the vertex and the midpoint, which is the correct
/// topological subdivision of a loop.
pub fn subdivide_edge(g: &mut FiniteMultigraph, e: &EdgeId) -> Result<VertexId> {
    let (u, v) = g.endpoints(e)?.clone();
    let m = g.fresh_vertex_id(&format!("{e}.m"));
    let a = g.fresh_edge_id(&format!("{e}.a"));
    let b = g.fresh_edge_id(&format!("{e}.b"));
    g.remove_edge(e)?;
    g.add_vertex(m.clone())?;
    g.add_edge(a, u, m.clone())?;
    g.add_edge(b, m.clone(), v)?;
    Ok(m)
}

/// Attaches a lollipop at `v`: a fresh stem vertex joined to `v` by one edge
/// and carrying one self-loop. Raises deg(v) by 1 and the rank by 1.
/// Returns the stem id.
pub fn attach_lollipop(g: &mut FiniteMultigraph, v: &VertexId) -> Result<VertexId> {
    if !g.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.clone()));
    }
    let stem = g.fresh_vertex_id(&format!("{v}+lp"));
    let edge = g.fresh_edge_id(&format!("{v}+lpe"));
    let loop_id = g.fresh_edge_id(&format!("{v}+lpl"));
    g.add_vertex(stem.clone())?;
    g.add_edge(edge, v.clone(), stem.clone())?;
    g.add_edge(loop_id, stem.clone(), stem.clone())?;
    Ok(stem)
}

/// Attaches a barrel cactus at `v`: a fresh vertex joined to `v` by
/// `parallel` parallel edges and carrying one self-loop. Raises deg(v) by
/// `parallel`; the new vertex has degree `parallel + 2`.
pub fn attach_barrel(g: &mut FiniteMultigraph, v: &VertexId, parallel: u32) -> Result<VertexId> {
    if !g.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.clone()));
    }
    if parallel == 0 {
        return Err(Error::InvalidSurgery(
            "barrel cactus needs at least one connecting edge".into(),
        ));
    }
    let barrel = g.fresh_vertex_id(&format!("{v}+bar"));
    g.add_vertex(barrel.clone())?;
    for i in 0..parallel {
        let e = g.fresh_edge_id(&format!("{v}+bare{i}"));
        g.add_edge(e, v.clone(), barrel.clone())?;
    }
    let loop_id = g.fresh_edge_id(&format!("{v}+barl"));
    g.add_edge(loop_id, barrel.clone(), barrel.clone())?;
    Ok(barrel)
}

/// Adds `count` self-loops at `v` (each raises the degree by 2).
pub fn add_self_loops(g: &mut FiniteMultigraph, v: &VertexId, count: u32) -> Result<()> {
    if !g.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.clone()));
    }
    for i in 0..count {
        let id = g.fresh_edge_id(&format!("{v}+sl{i}"));
        g.add_edge(id, v.clone(), v.clone())?;
    }
    Ok(())
}

/// Doubles every edge of the graph (self-loops included). The copy of edge
/// `e` is named `e+d`.
pub fn double_edges(g: &mut FiniteMultigraph) {
    let snapshot: Vec<(EdgeId, VertexId, VertexId)> = g
        .edges()
        .map(|(id, (u, v))| (id.clone(), u.clone(), v.clone()))
        .collect();
    for (id, u, v) in snapshot {
        let copy = g.fresh_edge_id(&format!("{id}+d"));
        g.add_edge(copy, u, v).expect("endpoints exist");
    }
}

/// How the six edge-ends of a degree-6 vertex are distributed over the two
/// halves of a split: `ends[i] = false` sends end `i` to the first half.
/// Ends are indexed in the deterministic incidence order (edge id order,
/// with a self-loop occupying two consecutive slots).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitGrouping(pub [bool; 6]);

impl SplitGrouping {
    /// First three ends on one side, last three on the other.
    pub fn default_grouping() -> Self {
        SplitGrouping([false, false, false, true, true, true])
    }

    pub fn is_balanced(&self) -> bool {
        self.0.iter().filter(|side| **side).count() == 3
    }
}

/// Splits a degree-6 vertex `v` into two degree-4 vertices `v+0`, `v+1`
/// joined by a fresh edge; the six former edge-ends are distributed three
/// and three according to `grouping`. Preserves the first Betti number.
/// Returns the pair of new vertex ids.
pub fn split_degree6(
    g: &mut FiniteMultigraph,
    v: &VertexId,
    grouping: SplitGrouping,
) -> Result<(VertexId, VertexId)> {
    let deg = g.degree(v)?;
    if deg != 6 {
        return Err(Error::InvalidSurgery(format!(
            "split_degree6 requires degree 6 at {v}, found {deg}"
        )));
    }
    if !grouping.is_balanced() {
        return Err(Error::InvalidSurgery(
            "split grouping must send three ends to each side".into(),
        ));
    }

    // Collect the six ends in edge-id order; a loop contributes two slots.
    let ends: Vec<(EdgeId, u8)> = {
        let mut ends = Vec::new();
        for (id, (a, b)) in g.edges() {
            if a == v && b == v {
                ends.push((id.clone(), 0));
                ends.push((id.clone(), 1));
            } else if a == v {
                ends.push((id.clone(), 0));
            } else if b == v {
                ends.push((id.clone(), 1));
            }
        }
        ends
    };
    debug_assert_eq!(ends.len(), 6);

    let half0 = VertexId::new(format!("{v}+0"));
    let half1 = VertexId::new(format!("{v}+1"));
    if g.contains_vertex(&half0) || g.contains_vertex(&half1) {
        return Err(Error::DuplicateId(format!("{v}+0 / {v}+1")));
    }
    g.add_vertex(half0.clone())?;
    g.add_vertex(half1.clone())?;

    // Re-anchor each end on its assigned half.
    let mut reanchored: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
    {
        let mut pending: std::collections::BTreeMap<EdgeId, (VertexId, VertexId)> =
            g.edges()
                .filter(|(id, _)| ends.iter().any(|(eid, _)| eid == *id))
                .map(|(id, (a, b))| (id.clone(), (a.clone(), b.clone())))
                .collect();
        for (slot, (eid, which_end)) in ends.iter().enumerate() {
            let target = if grouping.0[slot] { &half1 } else { &half0 };
            let entry = pending.get_mut(eid).expect("end edge present");
            if *which_end == 0 {
                entry.0 = target.clone();
            } else {
                entry.1 = target.clone();
            }
        }
        for (id, (a, b)) in pending {
            reanchored.push((id, a, b));
        }
    }
    for (id, a, b) in reanchored {
        g.remove_edge(&id)?;
        g.add_edge(id, a, b)?;
    }

    let join = g.fresh_edge_id(&format!("{v}+join"));
    g.add_edge(join, half0.clone(), half1.clone())?;
    let root_was_split = g.root() == Some(v);
    remove_isolated(g, v);
    if root_was_split {
        g.set_root(half0.clone())?;
    }
    Ok((half0, half1))
}

fn remove_isolated(g: &mut FiniteMultigraph, v: &VertexId) {
    // The split leaves `v` with no incident edges; rebuild without it.
    let mut rebuilt = FiniteMultigraph::new(g.name().to_owned());
    for w in g.vertices() {
        if w != v {
            rebuilt.ensure_vertex(w.clone());
        }
    }
    for (id, (a, b)) in g.edges() {
        rebuilt
            .add_edge(id.clone(), a.clone(), b.clone())
            .expect("rebuild preserves edges");
    }
    if let Some(r) = g.root() {
        if r != v {
            rebuilt.set_root(r.clone()).expect("root kept");
        }
    }
    *g = rebuilt;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> FiniteMultigraph {
        let mut g = FiniteMultigraph::new("p3");
        for v in ["a", "b", "c"] {
            g.add_vertex(v.into()).unwrap();
        }
        g.add_edge("ab".into(), "a".into(), "b".into()).unwrap();
        g.add_edge("bc".into(), "b".into(), "c".into()).unwrap();
        g
    }

    #[test]
    fn subdivision_preserves_rank_and_stretches_path() {
        let mut g = path3();
        let before = g.rank();
        let m = subdivide_edge(&mut g, &"ab".into()).unwrap();
        assert_eq!(g.rank(), before);
        assert_eq!(g.degree(&m).unwrap(), 2);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn subdividing_a_loop_gives_two_parallel_edges() {
        let mut g = FiniteMultigraph::new("g");
        g.add_vertex("v".into()).unwrap();
        g.add_edge("l".into(), "v".into(), "v".into()).unwrap();
        let m = subdivide_edge(&mut g, &"l".into()).unwrap();
        assert_eq!(g.degree(&"v".into()).unwrap(), 2);
        assert_eq!(g.degree(&m).unwrap(), 2);
        assert_eq!(g.rank(), 1, "subdividing a loop keeps the cycle");
    }

    #[test]
    fn lollipop_adds_one_to_degree_and_rank() {
        let mut g = path3();
        let stem = attach_lollipop(&mut g, &"b".into()).unwrap();
        assert_eq!(g.degree(&"b".into()).unwrap(), 3);
        assert_eq!(g.degree(&stem).unwrap(), 3);
        assert_eq!(g.rank(), 1);
    }

    #[test]
    fn barrel_adds_parallel_sheaf_plus_loop() {
        let mut g = path3();
        let barrel = attach_barrel(&mut g, &"b".into(), 5).unwrap();
        assert_eq!(g.degree(&"b".into()).unwrap(), 2 + 5);
        assert_eq!(g.degree(&barrel).unwrap(), 5 + 2);
        // Five parallel edges contribute 4 independent cycles, the loop one.
        assert_eq!(g.rank(), 5);
    }

    #[test]
    fn double_edges_doubles_degrees() {
        let mut g = path3();
        double_edges(&mut g);
        assert_eq!(g.degree(&"a".into()).unwrap(), 2);
        assert_eq!(g.degree(&"b".into()).unwrap(), 4);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn split_degree6_preserves_betti_number() {
        // Star of three doubled edges around the hub: degree 6, rank 2.
        let mut g = FiniteMultigraph::new("g");
        for v in ["h", "x", "y", "z"] {
            g.add_vertex(v.into()).unwrap();
        }
        for (i, leaf) in ["x", "y", "z"].iter().enumerate() {
            g.add_edge(EdgeId::new(format!("e{i}")), "h".into(), (*leaf).into())
                .unwrap();
            g.add_edge(EdgeId::new(format!("e{i}+d")), "h".into(), (*leaf).into())
                .unwrap();
        }
        let before = g.rank();
        let (h0, h1) = split_degree6(&mut g, &"h".into(), SplitGrouping::default_grouping()).unwrap();
        assert_eq!(g.rank(), before, "splitting must preserve the Betti number");
        assert_eq!(g.degree(&h0).unwrap(), 4);
        assert_eq!(g.degree(&h1).unwrap(), 4);
        assert!(!g.contains_vertex(&"h".into()));
    }

    #[test]
    fn split_rejects_wrong_degree() {
        let mut g = path3();
        assert!(matches!(
            split_degree6(&mut g, &"b".into(), SplitGrouping::default_grouping()),
            Err(Error::InvalidSurgery(_))
        ));
    }

    #[test]
    fn split_handles_self_loops_across_sides() {
        // Hub with three self-loops: degree 6, rank 3.
        let mut g = FiniteMultigraph::new("g");
        g.add_vertex("h".into()).unwrap();
        for i in 0..3 {
            g.add_edge(EdgeId::new(format!("l{i}")), "h".into(), "h".into())
                .unwrap();
        }
        let before = g.rank();
        split_degree6(&mut g, &"h".into(), SplitGrouping::default_grouping()).unwrap();
        assert_eq!(g.rank(), before);
        assert!(g.is_regular(4));
    }
}
