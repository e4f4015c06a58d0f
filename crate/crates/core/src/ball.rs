//! Combinatorial balls around the basepoint.
//!
//! Radii live on the half-integer lattice and are measured in half-steps:
//! `half_steps = m` denotes radius `m/2`. The ball at radius `ρ` records
//! everything of the graph lying metrically inside the *open* ball of
//! radius `ρ` around the root, where every edge has length 1:
//!
//! * vertices at depth `< ρ`,
//! * an edge `uv` in full iff its farthest interior point is inside, i.e.
//!   `(depth(u) + depth(v) + 1)/2 < ρ`,
//! * one stub per remaining edge-end at every retained vertex (a retained
//!   self-loop that is not in full contributes two stubs at its vertex).
//!
//! Consequences worth remembering: the `1/2`-ball is the root plus one stub
//! per edge-end (so it sees exactly the basepoint degree, with a root
//! self-loop showing as two stubs), and a self-loop at the root becomes a
//! full edge exactly at radius 1. Stub lengths are implied by the radius and
//! the anchor depth and are never stored.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::multigraph::VertexId;
use crate::oracle::GraphOracle;

/// Radius on the half-integer lattice, counted in half-steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radius(pub u32);

impl Radius {
    pub fn half_steps(self) -> u32 {
        self.0
    }

    /// Rounds an arbitrary nonnegative radius up to the lattice. Ball
    /// contents are constant on the half-open intervals between lattice
    /// points, so this is the canonical representative.
    pub fn from_real(r: f64) -> Result<Radius> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!("bad radius {r}")));
        }
        Ok(Radius((2.0 * r).ceil() as u32))
    }

    pub fn integer(r: u32) -> Radius {
        Radius(2 * r)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Accepts `3`, `7/2`, or a decimal such as `3.5` (rounded up to the
/// lattice, matching [`Radius::from_real`]).
impl std::str::FromStr for Radius {
    type Err = Error;

    fn from_str(s: &str) -> Result<Radius> {
        let s = s.trim();
        if let Some(num) = s.strip_suffix("/2") {
            let n: u32 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad radius {s:?}")))?;
            return Ok(Radius(n));
        }
        if let Ok(n) = s.parse::<u32>() {
            return Ok(Radius::integer(n));
        }
        let r: f64 = s
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad radius {s:?}")))?;
        Radius::from_real(r)
    }
}

/// A ball extracted around the root. Vertex 0 is always the root; vertices
/// are listed in breadth-first discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub radius: Radius,
    /// Original vertex ids, for reporting; not part of the isomorphism type.
    pub ids: Vec<VertexId>,
    /// Distance from the root, per vertex.
    pub depth: Vec<u32>,
    /// Count of dangling edge-ends, per vertex.
    pub stubs: Vec<u32>,
    /// Count of full self-loops, per vertex.
    pub loops: Vec<u32>,
    /// Full non-loop edges as index pairs `(u, v)` with `u < v`, sorted,
    /// with multiplicity given by repetition.
    pub edges: Vec<(u32, u32)>,
}

impl Ball {
    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn full_edge_count(&self) -> usize {
        self.edges.len() + self.loops.iter().map(|&l| l as usize).sum::<usize>()
    }

    pub fn stub_count(&self) -> usize {
        self.stubs.iter().map(|&s| s as usize).sum()
    }

    /// True when the ball certifiably exhausts the whole graph: nothing
    /// dangles. A radius-0 ball records no incidences at all, so it can
    /// never certify completeness — not even of a one-point graph.
    pub fn is_saturated(&self) -> bool {
        self.radius.0 >= 1 && self.stub_count() == 0
    }

    /// First Betti number of the full-edge subgraph (stubs contribute no
    /// cycles; the ball is connected by construction).
    pub fn rank(&self) -> usize {
        self.edges.len() + self.loops.iter().map(|&l| l as usize).sum::<usize>() + 1
            - self.vertex_count()
    }

    /// Per-vertex degree inside the ball, counting stubs and loops twice.
    pub fn degree(&self, v: u32) -> u32 {
        let mut d = self.stubs[v as usize] + 2 * self.loops[v as usize];
        for &(a, b) in &self.edges {
            if a == v {
                d += 1;
            }
            if b == v {
                d += 1;
            }
        }
        d
    }

    /// Multiplicity-keyed adjacency (non-loop full edges only).
    pub fn adjacency(&self) -> Vec<BTreeMap<u32, u32>> {
        let mut adj = vec![BTreeMap::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            *adj[u as usize].entry(v).or_insert(0) += 1;
            *adj[v as usize].entry(u).or_insert(0) += 1;
        }
        adj
    }

    /// Restriction to a smaller radius. Dropping an edge leaves stubs at its
    /// retained endpoints, exactly as a direct extraction would produce.
    pub fn truncate(&self, radius: Radius) -> Result<Ball> {
        if radius.0 > self.radius.0 {
            return Err(Error::RadiusMismatch {
                left: radius.0,
                right: self.radius.0,
            });
        }
        let m = radius.0;
        if m == self.radius.0 {
            return Ok(self.clone());
        }
        if m == 0 {
            return Ok(Ball {
                radius,
                ids: vec![self.ids[0].clone()],
                depth: vec![0],
                stubs: vec![0],
                loops: vec![0],
                edges: vec![],
            });
        }
        let keep = |v: u32| 2 * self.depth[v as usize] <= m - 1;
        let mut remap: Vec<Option<u32>> = vec![None; self.vertex_count()];
        let mut ids = Vec::new();
        let mut depth = Vec::new();
        let mut stubs = Vec::new();
        let mut loops = Vec::new();
        for v in 0..self.vertex_count() as u32 {
            if keep(v) {
                remap[v as usize] = Some(ids.len() as u32);
                ids.push(self.ids[v as usize].clone());
                depth.push(self.depth[v as usize]);
                // Former stubs survive; loops and edges may demote below.
                stubs.push(self.stubs[v as usize]);
                loops.push(0);
            }
        }
        let mut edges = Vec::new();
        for v in 0..self.vertex_count() as u32 {
            if let Some(nv) = remap[v as usize] {
                let full = 2 * self.depth[v as usize] + 1 <= m - 1;
                let l = self.loops[v as usize];
                if full {
                    loops[nv as usize] = l;
                } else {
                    stubs[nv as usize] += 2 * l;
                }
            }
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (remap[u as usize], remap[v as usize]);
            let full = self.depth[u as usize] + self.depth[v as usize] + 1 <= m - 1;
            match (ru, rv) {
                (Some(nu), Some(nv)) if full => edges.push((nu.min(nv), nu.max(nv))),
                (Some(nu), Some(nv)) => {
                    stubs[nu as usize] += 1;
                    stubs[nv as usize] += 1;
                }
                (Some(nu), None) => stubs[nu as usize] += 1,
                (None, Some(nv)) => stubs[nv as usize] += 1,
                (None, None) => {}
            }
        }
        edges.sort_unstable();
        Ok(Ball {
            radius,
            ids,
            depth,
            stubs,
            loops,
            edges,
        })
    }

    /// Graphviz DOT rendering; stubs are drawn as dashed edges to point-shaped
    /// phantom nodes.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{name}\" {{\n"));
        for (i, id) in self.ids.iter().enumerate() {
            let shape = if i == 0 { "doublecircle" } else { "circle" };
            out.push_str(&format!(
                "  n{i} [label=\"{id}\\nd={}\", shape={shape}];\n",
                self.depth[i]
            ));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("  n{u} -- n{v};\n"));
        }
        let mut stub_idx = 0usize;
        for (i, &l) in self.loops.iter().enumerate() {
            for _ in 0..l {
                out.push_str(&format!("  n{i} -- n{i};\n"));
            }
            for _ in 0..self.stubs[i] {
                out.push_str(&format!(
                    "  s{stub_idx} [shape=point, width=0.04, label=\"\"];\n  n{i} -- s{stub_idx} [style=dashed];\n"
                ));
                stub_idx += 1;
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Extracts the ball of a given radius around an oracle's root.
pub fn ball_of(oracle: &dyn GraphOracle, radius: Radius) -> Ball {
    let m = radius.0;
    let root = oracle.root();
    if m == 0 {
        return Ball {
            radius,
            ids: vec![root],
            depth: vec![0],
            stubs: vec![0],
            loops: vec![0],
            edges: vec![],
        };
    }
    let max_depth = (m - 1) / 2;
    let max_edge_sum = m - 1; // full edge iff depth(u) + depth(v) + 1 <= m - 1

    let mut index: BTreeMap<VertexId, u32> = BTreeMap::new();
    let mut ids = vec![root.clone()];
    let mut depth = vec![0u32];
    index.insert(root.clone(), 0);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut incident_of: Vec<Vec<crate::oracle::OracleEdge>> = Vec::new();

    while let Some(v) = queue.pop_front() {
        let vi = index[&v];
        let d = depth[vi as usize];
        let inc = oracle.incident(&v);
        if d < max_depth {
            for e in &inc {
                if !e.is_loop && !index.contains_key(&e.other) {
                    index.insert(e.other.clone(), ids.len() as u32);
                    ids.push(e.other.clone());
                    depth.push(d + 1);
                    queue.push_back(e.other.clone());
                }
            }
        }
        incident_of.push(inc);
    }

    let n = ids.len();
    let mut stubs = vec![0u32; n];
    let mut loops = vec![0u32; n];
    let mut edges = Vec::new();
    let mut seen_edges: BTreeMap<crate::multigraph::EdgeId, ()> = BTreeMap::new();

    for vi in 0..n as u32 {
        let d = depth[vi as usize];
        for e in &incident_of[vi as usize] {
            if e.is_loop {
                if 2 * d + 1 <= max_edge_sum {
                    loops[vi as usize] += 1;
                } else {
                    stubs[vi as usize] += 2;
                }
                continue;
            }
            if seen_edges.insert(e.id.clone(), ()).is_some() {
                continue; // already handled from the other endpoint
            }
            match index.get(&e.other) {
                Some(&wi) => {
                    let dw = depth[wi as usize];
                    if d + dw + 1 <= max_edge_sum {
                        edges.push((vi.min(wi), vi.max(wi)));
                    } else {
                        stubs[vi as usize] += 1;
                        stubs[wi as usize] += 1;
                    }
                }
                None => {
                    stubs[vi as usize] += 1;
                }
            }
        }
    }
    edges.sort_unstable();

    Ball {
        radius,
        ids,
        depth,
        stubs,
        loops,
        edges,
    }
}

impl crate::oracle::GraphInput {
    /// The ball of the given radius around this input's root.
    pub fn ball(&self, radius: Radius) -> Result<Ball> {
        self.with_oracle(|o| ball_of(o, radius))
    }
}
