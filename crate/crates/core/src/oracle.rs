//! Lazy access to infinite (or just large) locally finite rooted graphs.
//!
//! An oracle answers one question: which edges are incident to a vertex.
//! Answers are deterministic and finite, so breadth-first exploration from
//! the root is reproducible and every derived object (balls, component
//! trees, distances) is a pure function of the oracle.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, FiniteMultigraph, VertexId};
use crate::phe::StandardGraphDescriptor;

/// One incidence record. A self-loop is reported once with `is_loop = true`
/// and counts two toward the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleEdge {
    pub id: EdgeId,
    pub other: VertexId,
    pub is_loop: bool,
}

impl OracleEdge {
    pub(crate) fn new(id: impl Into<String>, other: impl Into<String>) -> Self {
        OracleEdge {
            id: EdgeId::new(id),
            other: VertexId::new(other),
            is_loop: false,
        }
    }

    pub(crate) fn new_loop(id: impl Into<String>, at: impl Into<String>) -> Self {
        OracleEdge {
            id: EdgeId::new(id),
            other: VertexId::new(at),
            is_loop: true,
        }
    }
}

/// Deterministic incidence oracle for a connected, locally finite rooted
/// multigraph. Implementations must return the same list for the same
/// vertex on every call, in a fixed order.
pub trait GraphOracle: Send + Sync {
    /// The basepoint.
    fn root(&self) -> VertexId;

    /// All edges at `v`, each self-loop listed once.
    fn incident(&self, v: &VertexId) -> Vec<OracleEdge>;

    /// Short human-readable name used in diagnostics and DOT headers.
    fn label(&self) -> String;

    /// End-space descriptor, when the construction knows it.
    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        None
    }
}

pub type SharedOracle = Arc<dyn GraphOracle>;

/// Degree under an oracle: loops count twice.
pub fn oracle_degree(o: &dyn GraphOracle, v: &VertexId) -> u32 {
    o.incident(v)
        .iter()
        .map(|e| if e.is_loop { 2 } else { 1 })
        .sum()
}

/// A rooted finite multigraph or an oracle, used interchangeably as a point
/// of a graph space. Balls and distances only ever see the root component.
#[derive(Clone)]
pub enum GraphInput {
    Finite(FiniteMultigraph),
    Oracle(SharedOracle),
}

impl std::fmt::Debug for GraphInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GraphInput({})", self.label())
    }
}

impl GraphInput {
    pub fn finite(g: FiniteMultigraph) -> Self {
        GraphInput::Finite(g)
    }

    pub fn oracle(o: impl GraphOracle + 'static) -> Self {
        GraphInput::Oracle(Arc::new(o))
    }

    pub fn label(&self) -> String {
        match self {
            GraphInput::Finite(g) => g.name().to_owned(),
            GraphInput::Oracle(o) => o.label(),
        }
    }

    pub fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        match self {
            GraphInput::Finite(_) => None,
            GraphInput::Oracle(o) => o.descriptor(),
        }
    }

    /// Runs `f` with an oracle view of this input. Errors if a finite input
    /// has no root.
    pub fn with_oracle<T>(&self, f: impl FnOnce(&dyn GraphOracle) -> T) -> Result<T> {
        match self {
            GraphInput::Finite(g) => Ok(f(&FiniteOracle::new(g)?)),
            GraphInput::Oracle(o) => Ok(f(o.as_ref())),
        }
    }
}

/// Oracle view of a finite multigraph.
pub struct FiniteOracle {
    root: VertexId,
    label: String,
    incidence: BTreeMap<VertexId, Vec<OracleEdge>>,
}

impl FiniteOracle {
    pub fn new(g: &FiniteMultigraph) -> Result<Self> {
        let root = g.root().cloned().ok_or(Error::MissingRoot)?;
        let incidence = g
            .incidence()
            .into_iter()
            .map(|(v, list)| {
                let list = list
                    .into_iter()
                    .map(|(id, other, is_loop)| OracleEdge { id, other, is_loop })
                    .collect();
                (v, list)
            })
            .collect();
        Ok(FiniteOracle {
            root,
            label: g.name().to_owned(),
            incidence,
        })
    }
}

impl GraphOracle for FiniteOracle {
    fn root(&self) -> VertexId {
        self.root.clone()
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        self.incidence.get(v).cloned().unwrap_or_default()
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Breadth-first exploration to a depth bound. Returns vertices in
/// discovery order with their depths.
pub fn explore(o: &dyn GraphOracle, max_depth: u32) -> Vec<(VertexId, u32)> {
    let root = o.root();
    let mut depth: BTreeMap<VertexId, u32> = BTreeMap::new();
    depth.insert(root.clone(), 0);
    let mut order = vec![(root.clone(), 0)];
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = depth[&v];
        if d == max_depth {
            continue;
        }
        for e in o.incident(&v) {
            if e.is_loop {
                continue;
            }
            if !depth.contains_key(&e.other) {
                depth.insert(e.other.clone(), d + 1);
                order.push((e.other.clone(), d + 1));
                queue.push_back(e.other);
            }
        }
    }
    order
}

/// True iff every vertex at depth at most `r` has degree exactly `k`.
pub fn is_k_regular_within(o: &dyn GraphOracle, k: u32, r: u32) -> bool {
    explore(o, r)
        .iter()
        .all(|(v, _)| oracle_degree(o, v) == k)
}

// ---------------------------------------------------------------------------
// Builtin graphs
// ---------------------------------------------------------------------------

/// One-way infinite ray `x0 -- x1 -- x2 -- ...` rooted at `x0`.
pub struct RayOracle;

impl GraphOracle for RayOracle {
    fn root(&self) -> VertexId {
        VertexId::new("x0")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let i = parse_index(v, "x");
        let mut out = Vec::new();
        if i > 0 {
            out.push(OracleEdge::new(format!("r{}", i - 1), format!("x{}", i - 1)));
        }
        out.push(OracleEdge::new(format!("r{i}"), format!("x{}", i + 1)));
        out
    }

    fn label(&self) -> String {
        "ray".into()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        Some(StandardGraphDescriptor::finite_pair(0, 1, 0).expect("valid"))
    }
}

/// Two-way infinite line, rooted in the middle. The unique 2-regular point.
pub struct LineOracle;

impl GraphOracle for LineOracle {
    fn root(&self) -> VertexId {
        VertexId::new("x0")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let i = parse_signed_index(v, "x");
        vec![
            OracleEdge::new(format!("r{}", i - 1), format!("x{}", i - 1)),
            OracleEdge::new(format!("r{i}"), format!("x{}", i + 1)),
        ]
    }

    fn label(&self) -> String {
        "line".into()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        Some(StandardGraphDescriptor::finite_pair(0, 2, 0).expect("valid"))
    }
}

/// The 3-regular tree. The root has three children `t0,t1,t2`; every other
/// vertex has two children obtained by appending `0` or `1`.
pub struct Tree3Oracle;

impl GraphOracle for Tree3Oracle {
    fn root(&self) -> VertexId {
        VertexId::new("t")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let w = strip_prefix(v, "t");
        let mut out = Vec::new();
        if w.is_empty() {
            for c in ["0", "1", "2"] {
                out.push(OracleEdge::new(format!("et{c}"), format!("t{c}")));
            }
        } else {
            out.push(OracleEdge::new(
                format!("et{w}"),
                format!("t{}", &w[..w.len() - 1]),
            ));
            for c in ["0", "1"] {
                out.push(OracleEdge::new(format!("et{w}{c}"), format!("t{w}{c}")));
            }
        }
        out
    }

    fn label(&self) -> String {
        "tree3".into()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        Some(StandardGraphDescriptor::cantor(0, crate::phe::CantorLoops::Empty).expect("valid"))
    }
}

/// The 3-regular one-ended graph with infinitely many independent cycles:
/// a ray `x0 x1 x2 ...` with a self-loop at `x0` and, for every `i >= 1`,
/// a pendant vertex `yi` joined to `xi` and carrying a self-loop.
pub struct LochNessOracle;

impl GraphOracle for LochNessOracle {
    fn root(&self) -> VertexId {
        VertexId::new("x0")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let name = v.as_str();
        if let Some(rest) = name.strip_prefix('x') {
            let i: u64 = rest.parse().expect("spine index");
            let mut out = Vec::new();
            if i == 0 {
                out.push(OracleEdge::new_loop("l0", "x0"));
                out.push(OracleEdge::new("s0", "x1"));
            } else {
                out.push(OracleEdge::new(format!("s{}", i - 1), format!("x{}", i - 1)));
                out.push(OracleEdge::new(format!("s{i}"), format!("x{}", i + 1)));
                out.push(OracleEdge::new(format!("p{i}"), format!("y{i}")));
            }
            out
        } else if let Some(rest) = name.strip_prefix('y') {
            let i: u64 = rest.parse().expect("pendant index");
            vec![
                OracleEdge::new(format!("p{i}"), format!("x{i}")),
                OracleEdge::new_loop(format!("q{i}"), format!("y{i}")),
            ]
        } else {
            panic!("not a vertex of loch_ness: {name}");
        }
    }

    fn label(&self) -> String {
        "loch_ness".into()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        Some(StandardGraphDescriptor::finite_pair_infinite_rank(1, 1).expect("valid"))
    }
}

/// One end, first Betti number exactly 3: three self-loops at the root of a
/// ray. The end is not accumulated by loops.
pub struct OneEndRank3Oracle;

impl GraphOracle for OneEndRank3Oracle {
    fn root(&self) -> VertexId {
        VertexId::new("x0")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let i = parse_index(v, "x");
        let mut out = Vec::new();
        if i == 0 {
            for j in 0..3 {
                out.push(OracleEdge::new_loop(format!("l{j}"), "x0"));
            }
            out.push(OracleEdge::new("r0", "x1"));
        } else {
            out.push(OracleEdge::new(format!("r{}", i - 1), format!("x{}", i - 1)));
            out.push(OracleEdge::new(format!("r{i}"), format!("x{}", i + 1)));
        }
        out
    }

    fn label(&self) -> String {
        "one_end_rank3".into()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        Some(StandardGraphDescriptor::finite_pair(3, 1, 0).expect("valid"))
    }
}

/// End space homeomorphic to `{1/n} ∪ {0}`: a spine ray carrying a self-loop
/// at every vertex, with a pendant plain ray at each `xi`, `i >= 1`. The
/// spine end is the limit point and the only end accumulated by loops.
pub struct ConvergentEndsOracle;

impl GraphOracle for ConvergentEndsOracle {
    fn root(&self) -> VertexId {
        VertexId::new("x0")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let name = v.as_str();
        if let Some(rest) = name.strip_prefix('x') {
            let i: u64 = rest.parse().expect("spine index");
            let mut out = Vec::new();
            out.push(OracleEdge::new_loop(format!("l{i}"), format!("x{i}")));
            if i > 0 {
                out.push(OracleEdge::new(format!("s{}", i - 1), format!("x{}", i - 1)));
            }
            out.push(OracleEdge::new(format!("s{i}"), format!("x{}", i + 1)));
            if i > 0 {
                out.push(OracleEdge::new(format!("p{i}"), format!("b{i}_0")));
            }
            out
        } else if let Some(rest) = name.strip_prefix('b') {
            let (i, j) = parse_pair(rest);
            let mut out = Vec::new();
            if j == 0 {
                out.push(OracleEdge::new(format!("p{i}"), format!("x{i}")));
            } else {
                out.push(OracleEdge::new(
                    format!("c{i}_{}", j - 1),
                    format!("b{i}_{}", j - 1),
                ));
            }
            out.push(OracleEdge::new(format!("c{i}_{j}"), format!("b{i}_{}", j + 1)));
            out
        } else {
            panic!("not a vertex of sequence_ends: {name}");
        }
    }

    fn label(&self) -> String {
        "sequence_ends".into()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        Some(StandardGraphDescriptor::convergent(true).expect("valid"))
    }
}

/// A Cantor set of ends split into two clopen halves: the left half is
/// accumulated by loops, the right half is loop-free. 3-regular.
///
/// Layout: root `t` carries a lollipop and two subtree edges. The right
/// subtree is a plain binary tree `R<word>`. The left subtree is a binary
/// tree `L<word>` with every internal edge subdivided through `Lm<word>`,
/// and a lollipop at every midpoint.
pub struct SplitCantorOracle;

impl GraphOracle for SplitCantorOracle {
    fn root(&self) -> VertexId {
        VertexId::new("t")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let name = v.as_str();
        let mut out = Vec::new();
        if name == "t" {
            out.push(OracleEdge::new("eL", "L"));
            out.push(OracleEdge::new("eR", "R"));
            out.push(OracleEdge::new("ets", "ts"));
        } else if name == "ts" {
            out.push(OracleEdge::new("ets", "t"));
            out.push(OracleEdge::new_loop("lts", "ts"));
        } else if let Some(w) = name.strip_prefix("Lm") {
            // Midpoint of the subdivided edge parent(w) -- w; carries a stem.
            let parent = &w[..w.len() - 1];
            out.push(OracleEdge::new(format!("a{w}"), format!("L{parent}")));
            out.push(OracleEdge::new(format!("b{w}"), format!("L{w}")));
            out.push(OracleEdge::new(format!("c{w}"), format!("Ls{w}")));
        } else if let Some(w) = name.strip_prefix("Ls") {
            // Lollipop stem hanging off midpoint Lm<w>.
            out.push(OracleEdge::new(format!("c{w}"), format!("Lm{w}")));
            out.push(OracleEdge::new_loop(format!("d{w}"), format!("Ls{w}")));
        } else if let Some(w) = name.strip_prefix('L') {
            if w.is_empty() {
                out.push(OracleEdge::new("eL", "t"));
            } else {
                out.push(OracleEdge::new(format!("b{w}"), format!("Lm{w}")));
            }
            for c in ["0", "1"] {
                out.push(OracleEdge::new(format!("a{w}{c}"), format!("Lm{w}{c}")));
            }
        } else if let Some(w) = name.strip_prefix('R') {
            if w.is_empty() {
                out.push(OracleEdge::new("eR", "t"));
            } else {
                out.push(OracleEdge::new(
                    format!("er{w}"),
                    format!("R{}", &w[..w.len() - 1]),
                ));
            }
            for c in ["0", "1"] {
                out.push(OracleEdge::new(format!("er{w}{c}"), format!("R{w}{c}")));
            }
        } else {
            panic!("not a vertex of cantor_split: {name}");
        }
        out
    }

    fn label(&self) -> String {
        "cantor_split".into()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        Some(
            StandardGraphDescriptor::cantor_infinite_rank(crate::phe::CantorLoops::ProperClopen)
                .expect("valid"),
        )
    }
}

// ---------------------------------------------------------------------------
// Id parsing helpers for arithmetic oracles
// ---------------------------------------------------------------------------

fn strip_prefix<'a>(v: &'a VertexId, prefix: &str) -> &'a str {
    v.as_str()
        .strip_prefix(prefix)
        .unwrap_or_else(|| panic!("vertex {v} lacks prefix {prefix}"))
}

fn parse_index(v: &VertexId, prefix: &str) -> u64 {
    strip_prefix(v, prefix)
        .parse()
        .unwrap_or_else(|_| panic!("vertex {v} has no {prefix}<n> index"))
}

fn parse_signed_index(v: &VertexId, prefix: &str) -> i64 {
    strip_prefix(v, prefix)
        .parse()
        .unwrap_or_else(|_| panic!("vertex {v} has no signed {prefix}<n> index"))
}

fn parse_pair(rest: &str) -> (u64, u64) {
    let (a, b) = rest.split_once('_').expect("i_j index");
    (a.parse().expect("i"), b.parse().expect("j"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_of(o: &dyn GraphOracle, name: &str) -> u32 {
        oracle_degree(o, &VertexId::new(name))
    }

    #[test]
    fn ray_and_line_degrees() {
        assert_eq!(degree_of(&RayOracle, "x0"), 1);
        assert_eq!(degree_of(&RayOracle, "x5"), 2);
        assert_eq!(degree_of(&LineOracle, "x0"), 2);
        assert_eq!(degree_of(&LineOracle, "x-4"), 2);
    }

    #[test]
    fn tree3_is_cubic_to_depth_10() {
        assert!(is_k_regular_within(&Tree3Oracle, 3, 10));
    }

    #[test]
    fn loch_ness_is_cubic_to_depth_30() {
        assert!(is_k_regular_within(&LochNessOracle, 3, 30));
    }

    #[test]
    fn split_cantor_is_cubic_to_depth_12() {
        assert!(is_k_regular_within(&SplitCantorOracle, 3, 12));
    }

    #[test]
    fn incident_lists_are_symmetric_on_samples() {
        // Every reported edge must be reported identically from both ends.
        let oracles: Vec<Box<dyn GraphOracle>> = vec![
            Box::new(RayOracle),
            Box::new(LineOracle),
            Box::new(Tree3Oracle),
            Box::new(LochNessOracle),
            Box::new(OneEndRank3Oracle),
            Box::new(ConvergentEndsOracle),
            Box::new(SplitCantorOracle),
        ];
        for o in &oracles {
            for (v, _) in explore(o.as_ref(), 6) {
                for e in o.incident(&v) {
                    if e.is_loop {
                        assert_eq!(e.other, v, "loop endpoint mismatch in {}", o.label());
                        continue;
                    }
                    let back = o.incident(&e.other);
                    let matches = back
                        .iter()
                        .filter(|f| f.id == e.id && f.other == v && !f.is_loop)
                        .count();
                    assert_eq!(
                        matches, 1,
                        "{}: edge {} from {} not mirrored at {}",
                        o.label(),
                        e.id,
                        v,
                        e.other
                    );
                }
            }
        }
    }

    #[test]
    fn exploration_is_deterministic() {
        let a = explore(&LochNessOracle, 30);
        let b = explore(&LochNessOracle, 30);
        assert_eq!(a, b);
        let c = explore(&SplitCantorOracle, 10);
        let d = explore(&SplitCantorOracle, 10);
        assert_eq!(c, d);
    }

    #[test]
    fn finite_oracle_round_trip() {
        let mut g = FiniteMultigraph::new("g");
        for v in ["a", "b"] {
            g.add_vertex(v.into()).unwrap();
        }
        g.add_edge("ab".into(), "a".into(), "b".into()).unwrap();
        g.add_edge("loop".into(), "b".into(), "b".into()).unwrap();
        g.set_root("a".into()).unwrap();
        let o = FiniteOracle::new(&g).unwrap();
        assert_eq!(o.root(), VertexId::new("a"));
        assert_eq!(degree_of(&o, "a"), 1);
        assert_eq!(degree_of(&o, "b"), 3);
    }
}
