//! Finite multigraphs with explicit edge identities.
//!
//! Self-loops and parallel edges are first-class: an edge is a pair of
//! endpoints keyed by a stable [`EdgeId`], and a self-loop contributes two to
//! the degree of its vertex. Vertex and edge ids are free-form tokens so that
//! derived constructions (subdivisions, lollipops, doublings) can mint
//! reproducible ids that encode their provenance.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Identifier of a vertex. Ordered, cheap to clone, displayable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct VertexId(String);

/// Identifier of an edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct EdgeId(String);

impl VertexId {
    pub fn new(s: impl Into<String>) -> Self {
        VertexId(s.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl EdgeId {
    pub fn new(s: impl Into<String>) -> Self {
        EdgeId(s.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_owned())
    }
}

impl From<String> for EdgeId {
    fn from(s: String) -> Self {
        EdgeId(s)
    }
}

/// A finite undirected multigraph with optional basepoint.
///
/// Iteration order over vertices and edges is the id order, so every
/// derived artifact (printouts, DOT files, canonical forms) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMultigraph {
    name: String,
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    root: Option<VertexId>,
}

impl FiniteMultigraph {
    pub fn new(name: impl Into<String>) -> Self {
        FiniteMultigraph {
            name: name.into(),
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
            root: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        if !self.vertices.insert(v.clone()) {
            return Err(Error::DuplicateId(v.to_string()));
        }
        Ok(())
    }

    /// Adds a vertex, ignoring the call if it is already present.
    pub fn ensure_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        if !self.vertices.contains(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        self.edges.insert(id, (u, v));
        Ok(())
    }

    pub fn remove_edge(&mut self, id: &EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges.remove(id).ok_or_else(|| Error::UnknownEdge(id.clone()))
    }

    pub fn set_root(&mut self, v: VertexId) -> Result<()> {
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        self.root = Some(v);
        Ok(())
    }

    pub fn root(&self) -> Option<&VertexId> {
        self.root.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &(VertexId, VertexId))> {
        self.edges.iter()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn endpoints(&self, e: &EdgeId) -> Result<&(VertexId, VertexId)> {
        self.edges.get(e).ok_or_else(|| Error::UnknownEdge(e.clone()))
    }

    /// Degree of a vertex; a self-loop counts twice.
    pub fn degree(&self, v: &VertexId) -> Result<u32> {
        if !self.vertices.contains(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        let mut d = 0;
        for (u, w) in self.edges.values() {
            if u == v {
                d += 1;
            }
            if w == v {
                d += 1;
            }
        }
        Ok(d)
    }

    /// True when every vertex has degree exactly `k`.
    pub fn is_regular(&self, k: u32) -> bool {
        self.vertices
            .iter()
            .all(|v| self.degree(v).map(|d| d == k).unwrap_or(false))
    }

    /// Incidence lists: for each vertex, the (edge, opposite endpoint) pairs,
    /// with self-loops flagged and listed once. Deterministic order by edge id.
    pub fn incidence(&self) -> BTreeMap<VertexId, Vec<(EdgeId, VertexId, bool)>> {
        let mut map: BTreeMap<VertexId, Vec<(EdgeId, VertexId, bool)>> = BTreeMap::new();
        for v in &self.vertices {
            map.insert(v.clone(), Vec::new());
        }
        for (id, (u, w)) in &self.edges {
            if u == w {
                map.get_mut(u).unwrap().push((id.clone(), u.clone(), true));
            } else {
                map.get_mut(u).unwrap().push((id.clone(), w.clone(), false));
                map.get_mut(w).unwrap().push((id.clone(), u.clone(), false));
            }
        }
        map
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let incidence = self.incidence();
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut components = 0;
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                for (_, other, _) in &incidence[v] {
                    if seen.insert(other2(&self.vertices, other)) {
                        queue.push_back(other2(&self.vertices, other));
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.component_count() == 1
    }

    /// First Betti number: |E| - |V| + number of components.
    pub fn rank(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count()
    }

    /// Mints a vertex id starting from `base` that is not yet in use.
    pub fn fresh_vertex_id(&self, base: &str) -> VertexId {
        let cand = VertexId::new(base);
        if !self.vertices.contains(&cand) {
            return cand;
        }
        for i in 2.. {
            let cand = VertexId::new(format!("{base}~{i}"));
            if !self.vertices.contains(&cand) {
                return cand;
            }
        }
        unreachable!()
    }

    /// Mints an edge id starting from `base` that is not yet in use.
    pub fn fresh_edge_id(&self, base: &str) -> EdgeId {
        let cand = EdgeId::new(base);
        if !self.edges.contains_key(&cand) {
            return cand;
        }
        for i in 2.. {
            let cand = EdgeId::new(format!("{base}~{i}"));
            if !self.edges.contains_key(&cand) {
                return cand;
            }
        }
        unreachable!()
    }

    /// Renders the graph in the plain text interchange format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.root {
            Some(r) => out.push_str(&format!("graph {} root={}\n", self.name, r)),
            None => out.push_str(&format!("graph {}\n", self.name)),
        }
        for v in &self.vertices {
            out.push_str(&format!("v {v}\n"));
        }
        for (id, (u, w)) in &self.edges {
            out.push_str(&format!("e {id} {u} {w}\n"));
        }
        out
    }

    /// Renders the graph as Graphviz DOT. The root is drawn doubly circled;
    /// parallel edges and self-loops appear as separate strokes.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{}\" {{\n", self.name));
        for v in &self.vertices {
            if Some(v) == self.root.as_ref() {
                out.push_str(&format!("  \"{v}\" [shape=doublecircle];\n"));
            } else {
                out.push_str(&format!("  \"{v}\";\n"));
            }
        }
        for (id, (u, w)) in &self.edges {
            out.push_str(&format!("  \"{u}\" -- \"{w}\" [label=\"{id}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

// Helper resolving a borrowed id against the vertex set so BFS can hold
// references with the set's lifetime.
fn other2<'a>(set: &'a BTreeSet<VertexId>, v: &VertexId) -> &'a VertexId {
    set.get(v).expect("endpoint must be a known vertex")
}
