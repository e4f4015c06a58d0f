//! From closed sets of binary sequences to regular graphs.
//!
//! Stage one turns a validated presentation into its *prefix tree*: one
//! vertex per allowed finite word, edges from each word to its allowed
//! one-bit extensions. The tree's end space is the closed set itself.
//!
//! Stage two patches the tree into a `k`-regular graph without disturbing
//! the end space, by purely local surgery:
//!
//! * `k = 3`: subdivide every edge and hang a lollipop (stem plus loop) on
//!   every degree-2 vertex; a degree-1 root gets a self-loop instead.
//!   Distances double, so tree depth `j` appears at output depth `2j`.
//! * odd `k >= 5`: keep edges single; top up degree-3 vertices with
//!   `(k-3)/2` loops, give degree-2 vertices a barrel (a pendant vertex
//!   joined by `k-2` parallel edges, with a loop on the pendant), and give
//!   a degree-1 root `(k-1)/2` loops.
//! * even `k >= 6`: double every edge, then top up each vertex with loops,
//!   `(k - 2d)/2` of them for tree degree `d`.
//! * `k = 4`: double every edge; a doubled-degree-2 root gets one loop,
//!   and each doubled-degree-6 vertex splits into two degree-4 halves
//!   joined by an edge, the six edge-ends grouped three and three in a
//!   fixed order.
//!
//! Every construction is an incidence oracle: neighborhoods are computed on
//! demand from the word in the vertex id, so infinite sets cost nothing
//! until explored.

use crate::closed_set::{ClosedSetPresentation, SpaceKind};
use crate::error::{Error, Result};
use crate::multigraph::VertexId;
use crate::oracle::{GraphInput, GraphOracle, LochNessOracle, OracleEdge};
use crate::phe::StandardGraphDescriptor;

fn wstr(w: &[bool]) -> String {
    w.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_w(s: &str) -> Vec<bool> {
    s.chars()
        .map(|c| match c {
            '0' => false,
            '1' => true,
            other => panic!("foreign vertex id: unexpected {other:?}"),
        })
        .collect()
}

/// Shared tree-shape queries over a validated presentation.
#[derive(Clone)]
struct TreeView {
    set: ClosedSetPresentation,
}

impl TreeView {
    fn children(&self, w: &[bool]) -> Vec<Vec<bool>> {
        let (zero, one) = self.set.extensions(w);
        let mut out = Vec::new();
        if zero {
            let mut c = w.to_vec();
            c.push(false);
            out.push(c);
        }
        if one {
            let mut c = w.to_vec();
            c.push(true);
            out.push(c);
        }
        out
    }

    /// Degree in the prefix tree: children plus the parent edge.
    fn degree(&self, w: &[bool]) -> usize {
        self.children(w).len() + usize::from(!w.is_empty())
    }

    fn end_descriptor(&self, infinite_rank: bool) -> Option<StandardGraphDescriptor> {
        match (self.set.space_kind(), infinite_rank) {
            (SpaceKind::FinitePoints(n), false) => {
                Some(StandardGraphDescriptor::finite_pair(0, n, 0).expect("valid"))
            }
            (SpaceKind::FinitePoints(n), true) => {
                Some(StandardGraphDescriptor::finite_pair_infinite_rank(n, n).expect("valid"))
            }
            (SpaceKind::Cantor, false) => {
                Some(StandardGraphDescriptor::cantor(0, crate::phe::CantorLoops::Empty).expect("valid"))
            }
            (SpaceKind::Cantor, true) => Some(
                StandardGraphDescriptor::cantor_infinite_rank(crate::phe::CantorLoops::All)
                    .expect("valid"),
            ),
            (SpaceKind::Other, _) => None,
        }
    }
}

/// The tree of allowed prefixes. Vertex `n<w>`, edge `f<w>` to the parent.
pub struct PrefixTreeOracle {
    view: TreeView,
    label: String,
}

impl PrefixTreeOracle {
    pub fn new(set: ClosedSetPresentation) -> Result<Self> {
        set.validate()?;
        let label = format!("prefix-tree({set})");
        Ok(PrefixTreeOracle {
            view: TreeView { set },
            label,
        })
    }
}

impl GraphOracle for PrefixTreeOracle {
    fn root(&self) -> VertexId {
        VertexId::new("n")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let w = parse_w(v.as_str().strip_prefix('n').expect("foreign vertex id"));
        let mut out = Vec::new();
        if let Some((_, parent)) = w.split_last() {
            out.push(OracleEdge::new(
                format!("f{}", wstr(&w)),
                format!("n{}", wstr(parent)),
            ));
        }
        for c in self.view.children(&w) {
            out.push(OracleEdge::new(
                format!("f{}", wstr(&c)),
                format!("n{}", wstr(&c)),
            ));
        }
        out
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        self.view.end_descriptor(false)
    }
}

/// Prefix tree of the set, as a graph input.
pub fn tree_realization(set: ClosedSetPresentation) -> Result<GraphInput> {
    Ok(GraphInput::oracle(PrefixTreeOracle::new(set)?))
}

/// Cubic patch of the prefix tree (the `k = 3` construction).
///
/// Ids: `v<w>` originals, `m<w>` midpoints, `sv<w>`/`sm<w>` lollipop stems
/// at originals and midpoints; edges `a<w>`/`b<w>` are the two halves of
/// the subdivided tree edge, `tv`/`tm` the stems, `lv`/`lm` the loops, and
/// `rl` the root loop of a degree-1 root.
struct CubicPatchOracle {
    view: TreeView,
    label: String,
}

impl CubicPatchOracle {
    fn vid(w: &[bool]) -> String {
        format!("v{}", wstr(w))
    }

    fn mid(w: &[bool]) -> String {
        format!("m{}", wstr(w))
    }
}

impl GraphOracle for CubicPatchOracle {
    fn root(&self) -> VertexId {
        VertexId::new("v")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let s = v.as_str();
        let mut out = Vec::new();
        if let Some(rest) = s.strip_prefix("sv") {
            let w = parse_w(rest);
            out.push(OracleEdge::new(format!("tv{rest}"), Self::vid(&w)));
            out.push(OracleEdge::new_loop(format!("lv{rest}"), s));
        } else if let Some(rest) = s.strip_prefix("sm") {
            let w = parse_w(rest);
            out.push(OracleEdge::new(format!("tm{rest}"), Self::mid(&w)));
            out.push(OracleEdge::new_loop(format!("lm{rest}"), s));
        } else if let Some(rest) = s.strip_prefix('v') {
            let w = parse_w(rest);
            if !w.is_empty() {
                out.push(OracleEdge::new(format!("b{rest}"), Self::mid(&w)));
            }
            for c in self.view.children(&w) {
                out.push(OracleEdge::new(format!("a{}", wstr(&c)), Self::mid(&c)));
            }
            match self.view.degree(&w) {
                1 => out.push(OracleEdge::new_loop("rl", s)),
                2 => out.push(OracleEdge::new(format!("tv{rest}"), format!("sv{rest}"))),
                _ => {}
            }
        } else if let Some(rest) = s.strip_prefix('m') {
            let w = parse_w(rest);
            let (_, parent) = w.split_last().expect("midpoints carry nonempty words");
            out.push(OracleEdge::new(format!("a{rest}"), Self::vid(parent)));
            out.push(OracleEdge::new(format!("b{rest}"), Self::vid(&w)));
            out.push(OracleEdge::new(format!("tm{rest}"), format!("sm{rest}")));
        } else {
            panic!("foreign vertex id {s:?}");
        }
        out
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        self.view.end_descriptor(true)
    }
}

/// 3-regular realization of the set's end space.
pub fn cubic_realization(set: ClosedSetPresentation) -> Result<GraphInput> {
    set.validate()?;
    if set.is_singleton() {
        // The patched one-branch tree is exactly the standard one-ended
        // loop-accumulating graph, so reuse it wholesale.
        return Ok(GraphInput::oracle(LochNessOracle));
    }
    let label = format!("cubic({set})");
    Ok(GraphInput::oracle(CubicPatchOracle {
        view: TreeView { set },
        label,
    }))
}

/// `k`-regular realization for general `k >= 3`.
pub fn regular_realization(set: ClosedSetPresentation, k: u32) -> Result<GraphInput> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "regular realization needs k >= 3, got {k}"
        )));
    }
    if k == 3 {
        return cubic_realization(set);
    }
    set.validate()?;
    let label = format!("{k}-regular({set})");
    Ok(GraphInput::oracle(RegularPatchOracle {
        view: TreeView { set },
        k,
        label,
    }))
}

/// The `k >= 4` constructions. Ids: `v<w>` vertices (split halves carry a
/// `h0`/`h1` suffix), `p<w>` barrel pendants; edges `f<w>` (with `a`/`b`
/// suffixes when doubled), `g<w>x<j>` loops, `q<w>x<j>` barrel parallels,
/// `r<w>` pendant loops, `j<w>` the join edge of a split vertex.
struct RegularPatchOracle {
    view: TreeView,
    k: u32,
    label: String,
}

#[derive(Clone, Copy, PartialEq)]
enum Half {
    Zero,
    One,
}

impl RegularPatchOracle {
    fn doubled(&self) -> bool {
        self.k % 2 == 0
    }

    /// Only the `k = 4` construction splits: internal vertices with two
    /// children end up with doubled degree 6.
    fn is_split(&self, w: &[bool]) -> bool {
        self.k == 4 && !w.is_empty() && self.view.children(w).len() == 2
    }

    fn vid(&self, w: &[bool], half: Option<Half>) -> String {
        match half {
            None => format!("v{}", wstr(w)),
            Some(Half::Zero) => format!("v{}h0", wstr(w)),
            Some(Half::One) => format!("v{}h1", wstr(w)),
        }
    }

    /// Endpoint of tree edge `f<u>` (copy 0/1 when doubled) at the child
    /// vertex `u`. A split child hosts both parent-edge ends on half 0.
    fn child_endpoint(&self, u: &[bool]) -> String {
        if self.is_split(u) {
            self.vid(u, Some(Half::Zero))
        } else {
            self.vid(u, None)
        }
    }

    /// Endpoint of tree edge `f<u>` at the parent vertex. The six ends of a
    /// split parent are ordered parent-pair, first-child pair, second-child
    /// pair; the first three go to half 0.
    fn parent_endpoint(&self, u: &[bool], copy: u8) -> String {
        let (last, parent) = u.split_last().expect("tree edge into the root");
        if !self.is_split(parent) {
            return self.vid(parent, None);
        }
        let slot = 2 + 2 * u8::from(*last) + copy;
        if slot <= 2 {
            self.vid(parent, Some(Half::Zero))
        } else {
            self.vid(parent, Some(Half::One))
        }
    }

    fn tree_edges(&self, u: &[bool], at_child: bool, out: &mut Vec<OracleEdge>) {
        let base = format!("f{}", wstr(u));
        if self.doubled() {
            for (copy, suffix) in [(0u8, "a"), (1u8, "b")] {
                let other = if at_child {
                    self.parent_endpoint(u, copy)
                } else {
                    self.child_endpoint(u)
                };
                out.push(OracleEdge::new(format!("{base}{suffix}"), other));
            }
        } else {
            let other = if at_child {
                self.parent_endpoint(u, 0)
            } else {
                self.child_endpoint(u)
            };
            out.push(OracleEdge::new(base, other));
        }
    }

    fn loops(&self, w: &[bool], count: u32, at: &str, out: &mut Vec<OracleEdge>) {
        for j in 0..count {
            out.push(OracleEdge::new_loop(format!("g{}x{j}", wstr(w)), at));
        }
    }
}

impl GraphOracle for RegularPatchOracle {
    fn root(&self) -> VertexId {
        VertexId::new("v")
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        let s = v.as_str();
        let mut out = Vec::new();
        if let Some(rest) = s.strip_prefix('p') {
            // Barrel pendant (odd k): k-2 parallels back plus a loop.
            let w = parse_w(rest);
            for j in 0..self.k - 2 {
                out.push(OracleEdge::new(format!("q{rest}x{j}"), self.vid(&w, None)));
            }
            out.push(OracleEdge::new_loop(format!("r{rest}"), s));
            return out;
        }
        let rest = s.strip_prefix('v').expect("foreign vertex id");
        let (word_part, half) = if let Some(stripped) = rest.strip_suffix("h0") {
            (stripped, Some(Half::Zero))
        } else if let Some(stripped) = rest.strip_suffix("h1") {
            (stripped, Some(Half::One))
        } else {
            (rest, None)
        };
        let w = parse_w(word_part);
        let children = self.view.children(&w);
        match half {
            Some(h) => {
                assert!(self.is_split(&w), "foreign vertex id {s:?}");
                let join = OracleEdge::new(
                    format!("j{word_part}"),
                    self.vid(&w, Some(if h == Half::Zero { Half::One } else { Half::Zero })),
                );
                match h {
                    Half::Zero => {
                        // Parent pair and the first copy of the first child.
                        self.tree_edges(&w, true, &mut out);
                        let c0 = &children[0];
                        out.push(OracleEdge::new(
                            format!("f{}a", wstr(c0)),
                            self.child_endpoint(c0),
                        ));
                    }
                    Half::One => {
                        let c0 = &children[0];
                        let c1 = &children[1];
                        out.push(OracleEdge::new(
                            format!("f{}b", wstr(c0)),
                            self.child_endpoint(c0),
                        ));
                        out.push(OracleEdge::new(
                            format!("f{}a", wstr(c1)),
                            self.child_endpoint(c1),
                        ));
                        out.push(OracleEdge::new(
                            format!("f{}b", wstr(c1)),
                            self.child_endpoint(c1),
                        ));
                    }
                }
                out.push(join);
            }
            None => {
                assert!(!self.is_split(&w), "split vertex addressed without half");
                if !w.is_empty() {
                    self.tree_edges(&w, true, &mut out);
                }
                for c in &children {
                    self.tree_edges(c, false, &mut out);
                }
                let d = self.view.degree(&w) as u32;
                if self.doubled() {
                    // Doubled degree 2d, topped up with loops.
                    self.loops(&w, (self.k - 2 * d) / 2, s, &mut out);
                } else {
                    match d {
                        1 => self.loops(&w, (self.k - 1) / 2, s, &mut out),
                        2 => {
                            for j in 0..self.k - 2 {
                                out.push(OracleEdge::new(
                                    format!("q{word_part}x{j}"),
                                    format!("p{word_part}"),
                                ));
                            }
                        }
                        3 => self.loops(&w, (self.k - 3) / 2, s, &mut out),
                        _ => unreachable!("prefix trees have degree at most 3"),
                    }
                }
            }
        }
        out
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        self.view.end_descriptor(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_set::{
        five_cylinders, no_triple_ones_automaton, parse_closed_set, two_point_automaton,
    };
    use crate::ends::component_tree;
    use crate::metric::{distance, DyadicDistance};
    use crate::oracle::{explore, is_k_regular_within, oracle_degree, GraphInput, LineOracle, RayOracle};

    fn check_regular(g: &GraphInput, k: u32, radius: u32) -> bool {
        g.with_oracle(|o| is_k_regular_within(o, k, radius)).unwrap()
    }

    #[test]
    fn prefix_tree_degrees() {
        let t = tree_realization(ClosedSetPresentation::Full).unwrap();
        t.with_oracle(|o| {
            assert_eq!(oracle_degree(o, &o.root()), 2);
            for (v, depth) in explore(o, 4) {
                if depth > 0 {
                    assert_eq!(oracle_degree(o, &v), 3, "{v}");
                }
            }
        })
        .unwrap();
    }

    #[test]
    fn tree_of_two_point_set_is_the_line() {
        let t = tree_realization(two_point_automaton()).unwrap();
        let d = distance(&t, &GraphInput::oracle(LineOracle), 16).unwrap();
        assert_eq!(d, DyadicDistance::UpperBound { half_exponent: 16 });
    }

    #[test]
    fn tree_of_singleton_is_the_ray() {
        let set = parse_closed_set("singleton - 01").unwrap();
        let t = tree_realization(set).unwrap();
        let d = distance(&t, &GraphInput::oracle(RayOracle), 16).unwrap();
        assert_eq!(d, DyadicDistance::UpperBound { half_exponent: 16 });
    }

    #[test]
    fn cubic_patch_is_cubic() {
        for set in [
            ClosedSetPresentation::Full,
            two_point_automaton(),
            five_cylinders(),
            no_triple_ones_automaton(),
        ] {
            let g = cubic_realization(set).unwrap();
            assert!(check_regular(&g, 3, 14), "{}", g.label());
        }
    }

    #[test]
    fn cubic_singleton_reuses_the_standard_graph() {
        let set = parse_closed_set("singleton 1 10").unwrap();
        let g = cubic_realization(set).unwrap();
        assert_eq!(g.label(), "loch_ness");
        assert!(check_regular(&g, 3, 20));
    }

    #[test]
    fn higher_regular_patches() {
        let sets = [
            ClosedSetPresentation::Full,
            two_point_automaton(),
            five_cylinders(),
        ];
        for k in [4, 5, 6, 7, 8, 9] {
            for set in &sets {
                let g = regular_realization(set.clone(), k).unwrap();
                assert!(check_regular(&g, k, 8), "k={k} on {}", g.label());
            }
        }
        assert!(regular_realization(ClosedSetPresentation::Full, 2).is_err());
    }

    #[test]
    fn four_regular_exercises_splits() {
        // Branching internal vertices only exist in sets with adjacent
        // branch points; the full space has them at every vertex.
        let g = regular_realization(ClosedSetPresentation::Full, 4).unwrap();
        assert!(check_regular(&g, 4, 10));
        // Doubling preserves connectivity through the splits: the ball must
        // stay connected and see both halves of split vertices.
        let ball = g.ball(crate::ball::Radius(8)).unwrap();
        assert!(ball.ids.iter().any(|v| v.as_str().ends_with("h0")));
        assert!(ball.ids.iter().any(|v| v.as_str().ends_with("h1")));
    }

    #[test]
    fn realization_depth_doubling() {
        // Tree depth j shows up at output depth 2j: level 2d of the cubic
        // patch has exactly one persistent branch per allowed word of
        // length d.
        let set = five_cylinders();
        let words = set.allowed_words(5).len();
        let g = cubic_realization(set).unwrap();
        let tree = component_tree(&g, 10).unwrap();
        assert_eq!(tree.persistent_leaves().len(), words);
    }

    #[test]
    fn exploration_is_deterministic() {
        let g = regular_realization(five_cylinders(), 5).unwrap();
        let a = g.with_oracle(|o| explore(o, 8)).unwrap();
        let b = g.with_oracle(|o| explore(o, 8)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rank_grows_along_cubic_branches() {
        let g = cubic_realization(ClosedSetPresentation::Full).unwrap();
        let ranks: Vec<u32> = (0..=6)
            .map(|r| crate::ends::rank_lower_bound(&g, r).unwrap())
            .collect();
        assert!(ranks.windows(2).all(|p| p[0] <= p[1]));
        assert!(ranks[6] > ranks[2], "loops must accumulate: {ranks:?}");
    }
}
