//! End-structure invariants computed from finite windows.
//!
//! A *window* of radius `R` is the closed ball: all vertices at depth at
//! most `R`, every edge among them, and stubs only for edges that leave the
//! window. Inside a window we stratify by depth: level `i` consists of the
//! connected components of the subgraph induced on vertices at depth `>= i`
//! (the complement of the open `i`-ball). Components nest as `i` grows,
//! giving a rooted tree whose branches approximate the ends of the graph:
//! a branch reaching the deepest level with unexplored stubs is evidence of
//! an end, while a branch that dies early was a finite protrusion.
//!
//! Cycle bookkeeping rides along: each node carries the first Betti number
//! of its component, and `new_cycles` records how many independent cycles
//! the node has that no single child retains — the level at which a cycle
//! is "passed" on the way toward an end.

use serde::Serialize;

use crate::ball::{Ball, Radius};
use crate::error::Result;
use crate::multigraph::VertexId;
use crate::oracle::GraphInput;

/// Closed ball of integer radius `R`: all vertices at depth `<= R`, all
/// edges among them, stubs only toward depth `R + 1`.
pub fn window(g: &GraphInput, radius: u32) -> Result<Ball> {
    g.ball(Radius(2 * radius + 2))
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentNode {
    pub level: u32,
    pub vertex_count: u32,
    /// Stubs out of the window (never edges toward shallower levels), so a
    /// positive count means the component continues past the horizon.
    pub stub_count: u32,
    /// First Betti number of the component inside the window.
    pub b1: u32,
    /// Cycles of this component not inherited by any child.
    pub new_cycles: u32,
    pub children: Vec<usize>,
    /// Smallest-index vertex, for stable reporting.
    pub representative: VertexId,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentTree {
    pub window_radius: u32,
    /// Level-major order; node 0 is the whole window.
    pub nodes: Vec<ComponentNode>,
}

pub(crate) struct UnionFind(Vec<u32>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }
    pub(crate) fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut c = x;
        while self.0[c as usize] != r {
            let next = self.0[c as usize];
            self.0[c as usize] = r;
            c = next;
        }
        r
    }
    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi as usize] = lo;
        }
    }
}

impl ComponentTree {
    pub fn level_count(&self, level: u32) -> usize {
        self.nodes.iter().filter(|n| n.level == level).count()
    }

    /// Nodes at the deepest level that still have unexplored stubs; each is
    /// the tip of a branch witnessing (at this horizon) an end.
    pub fn persistent_leaves(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.level == self.window_radius && n.stub_count > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn parent_of(&self, node: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.children.contains(&node))
    }

    /// For each node, whether it lies on a branch that is still alive at the
    /// horizon: an ancestor-or-self of a persistent leaf.
    pub fn persistent_flags(&self) -> Vec<bool> {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                parent[c] = i;
            }
        }
        let mut flag = vec![false; self.nodes.len()];
        for leaf in self.persistent_leaves() {
            let mut cur = leaf;
            loop {
                flag[cur] = true;
                if parent[cur] == usize::MAX {
                    break;
                }
                cur = parent[cur];
            }
        }
        flag
    }

    /// Number of components at this level that continue to the horizon: the
    /// branch count of the end structure as resolved at depth `level`.
    pub fn branch_count(&self, level: u32) -> usize {
        let flags = self.persistent_flags();
        self.nodes
            .iter()
            .zip(&flags)
            .filter(|(n, &f)| n.level == level && f)
            .count()
    }

    /// For each persistent leaf, the cycles passed on the way down: entry
    /// `i` is `b1(window) - b1(ancestor at level i)`, the number of
    /// independent cycles separated from the branch tail by level `i`.
    /// Nondecreasing in `i`; strict growth is the loop-accumulation witness.
    pub fn branch_profiles(&self) -> Vec<Vec<u32>> {
        let total = self.nodes[0].b1;
        self.persistent_leaves()
            .into_iter()
            .map(|leaf| {
                let mut chain = vec![leaf];
                let mut cur = leaf;
                while let Some(p) = self.parent_of(cur) {
                    chain.push(p);
                    cur = p;
                }
                chain.reverse();
                chain.iter().map(|&n| total - self.nodes[n].b1).collect()
            })
            .collect()
    }
}

/// Builds the stratified component tree of the radius-`R` window.
pub fn component_tree(g: &GraphInput, radius: u32) -> Result<ComponentTree> {
    let w = window(g, radius)?;
    let n = w.vertex_count();
    let mut nodes: Vec<ComponentNode> = Vec::new();
    // comp_of[level] maps vertex index -> node index (or usize::MAX).
    let mut prev_assignment: Vec<usize> = vec![usize::MAX; n];

    for level in 0..=radius {
        let mut uf = UnionFind::new(n);
        let inside = |v: usize| w.depth[v] >= level;
        for &(u, v) in &w.edges {
            if inside(u as usize) && inside(v as usize) {
                uf.union(u, v);
            }
        }
        // Group by root, ordered by smallest member index.
        let mut members: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for v in 0..n as u32 {
            if inside(v as usize) {
                members.entry(uf.find(v)).or_default().push(v);
            }
        }
        let mut assignment: Vec<usize> = vec![usize::MAX; n];
        for (_, verts) in members {
            let idx = nodes.len();
            let mut edge_count = 0u32;
            for &(u, v) in &w.edges {
                if assignment_get(&verts, u) && assignment_get(&verts, v) {
                    edge_count += 1;
                }
            }
            let mut stub_count = 0;
            let mut loops = 0;
            for &v in &verts {
                stub_count += w.stubs[v as usize];
                loops += w.loops[v as usize];
            }
            let b1 = edge_count + loops + 1 - verts.len() as u32;
            for &v in &verts {
                assignment[v as usize] = idx;
            }
            let parent = if level == 0 {
                None
            } else {
                Some(prev_assignment[verts[0] as usize])
            };
            nodes.push(ComponentNode {
                level,
                vertex_count: verts.len() as u32,
                stub_count,
                b1,
                new_cycles: 0,
                children: Vec::new(),
                representative: w.ids[verts[0] as usize].clone(),
            });
            if let Some(p) = parent {
                nodes[p].children.push(idx);
            }
        }
        prev_assignment = assignment;
    }

    for i in 0..nodes.len() {
        let inherited: u32 = nodes[i].children.iter().map(|&c| nodes[c].b1).sum();
        debug_assert!(nodes[i].b1 >= inherited, "children can only lose cycles");
        nodes[i].new_cycles = nodes[i].b1 - inherited;
    }

    Ok(ComponentTree {
        window_radius: radius,
        nodes,
    })
}

fn assignment_get(sorted_members: &[u32], v: u32) -> bool {
    sorted_members.binary_search(&v).is_ok()
}

/// Cycles certified inside the open ball of integer radius `r`: a lower
/// bound for the graph's first Betti number that only ever grows with `r`.
pub fn rank_lower_bound(g: &GraphInput, r: u32) -> Result<u32> {
    Ok(g.ball(Radius(2 * r))?.rank() as u32)
}

/// Verdict on whether the depth-`n` sphere is connected within the deep
/// part `{depth >= n}` of the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VnStatus {
    /// Connectivity is witnessed inside the window of this radius (and is
    /// then permanent: larger windows only add paths).
    Holds { witness_radius: u32 },
    /// Not witnessed up to the horizon. For a fully explored finite graph
    /// this is a definitive "no"; otherwise it is inconclusive.
    NotWitnessed { horizon: u32 },
}

/// Scans windows of radius `n..=horizon` for a connectivity witness.
pub fn sphere_connected(g: &GraphInput, n: u32, horizon: u32) -> Result<VnStatus> {
    for radius in n..=horizon.max(n) {
        let w = window(g, radius)?;
        let count = w.vertex_count();
        let mut uf = UnionFind::new(count);
        for &(u, v) in &w.edges {
            if w.depth[u as usize] >= n && w.depth[v as usize] >= n {
                uf.union(u, v);
            }
        }
        let sphere: Vec<u32> = (0..count as u32)
            .filter(|&v| w.depth[v as usize] == n)
            .collect();
        let connected = match sphere.split_first() {
            None => true, // empty sphere: vacuously connected
            Some((&first, rest)) => {
                let root = uf.find(first);
                rest.iter().all(|&v| uf.find(v) == root)
            }
        };
        if connected {
            return Ok(VnStatus::Holds {
                witness_radius: radius,
            });
        }
        if w.is_saturated() {
            // The graph is fully inside the window; no larger window can
            // change the verdict.
            return Ok(VnStatus::NotWitnessed { horizon: radius });
        }
    }
    Ok(VnStatus::NotWitnessed { horizon })
}
