//! Standard forms up to proper homotopy equivalence: descriptors pairing a
//! cycle rank with an end-pair shape, decision of equivalence between
//! descriptors, and constructions realizing each descriptor as a concrete
//! graph — either with maximum degree 3 or exactly 3-regular.
//!
//! A descriptor records the two proper-homotopy invariants of a locally
//! finite connected graph: the cycle rank (possibly infinite) and the pair
//! (end space, subspace of ends accumulating cycles). The catalog covers
//! the pairs arising from graphs of bounded degree that this crate builds:
//! finitely many ends, a convergent sequence of ends, or a Cantor set of
//! ends with an empty / proper clopen / full cycle part.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::closed_set::ClosedSetPresentation;
use crate::ends::rank_lower_bound;
use crate::error::{Error, Result};
use crate::multigraph::{FiniteMultigraph, VertexId};
use crate::oracle::{
    GraphInput, GraphOracle, LochNessOracle, OracleEdge, SplitCantorOracle, Tree3Oracle,
};
use crate::reductions::cubic_realization;
use crate::stone::{finite_pair_package, packages_isomorphic, StonePackage};
use crate::surgery::{attach_lollipop, subdivide_edge};

/// Cycle rank of a graph: total number of independent cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

/// Which part of a Cantor end space accumulates cycles. A nonempty proper
/// clopen subset of the Cantor set is unique up to homeomorphism of pairs,
/// so one variant covers all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CantorLoops {
    Empty,
    ProperClopen,
    All,
}

/// The end pair: the space of ends together with the closed subspace of
/// ends at which cycles accumulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EndPairDescriptor {
    /// Finitely many ends, the first `loop_ends` of them accumulating
    /// cycles. `ends = 0` describes a finite graph.
    FinitePair { ends: u32, loop_ends: u32 },
    /// A convergent sequence of ends; the cycle part is either empty or
    /// exactly the limit end.
    ConvergentSequence { limit_in_loops: bool },
    /// A Cantor set of ends with the given cycle part.
    CantorPair(CantorLoops),
}

/// A full standard form: cycle rank plus end pair. Constructors validate
/// the one coupling law — cycles accumulate at some end exactly when the
/// rank is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StandardGraphDescriptor {
    pub rank: Rank,
    pub ends: EndPairDescriptor,
}

impl StandardGraphDescriptor {
    pub fn new(rank: Rank, ends: EndPairDescriptor) -> Result<Self> {
        let cycle_part_nonempty = match ends {
            EndPairDescriptor::FinitePair { ends, loop_ends } => {
                if loop_ends > ends {
                    return Err(Error::InvalidDescriptor(format!(
                        "{loop_ends} cycle-accumulating ends among only {ends} ends"
                    )));
                }
                loop_ends > 0
            }
            EndPairDescriptor::ConvergentSequence { limit_in_loops } => limit_in_loops,
            EndPairDescriptor::CantorPair(part) => part != CantorLoops::Empty,
        };
        match (rank, cycle_part_nonempty) {
            (Rank::Infinite, false) => Err(Error::InvalidDescriptor(
                "infinite rank requires cycles to accumulate at some end".into(),
            )),
            (Rank::Finite(_), true) => Err(Error::InvalidDescriptor(
                "a nonempty cycle-accumulating end set forces infinite rank".into(),
            )),
            _ => Ok(StandardGraphDescriptor { rank, ends }),
        }
    }

    pub fn finite_pair(rank: u32, ends: u32, loop_ends: u32) -> Result<Self> {
        Self::new(
            Rank::Finite(rank),
            EndPairDescriptor::FinitePair { ends, loop_ends },
        )
    }

    pub fn finite_pair_infinite_rank(ends: u32, loop_ends: u32) -> Result<Self> {
        Self::new(
            Rank::Infinite,
            EndPairDescriptor::FinitePair { ends, loop_ends },
        )
    }

    pub fn cantor(rank: u32, loops: CantorLoops) -> Result<Self> {
        Self::new(Rank::Finite(rank), EndPairDescriptor::CantorPair(loops))
    }

    pub fn cantor_infinite_rank(loops: CantorLoops) -> Result<Self> {
        Self::new(Rank::Infinite, EndPairDescriptor::CantorPair(loops))
    }

    /// Convergent sequence of ends. With the limit in the cycle part the
    /// rank is infinite; otherwise this catalog pins the rank to zero.
    pub fn convergent(limit_in_loops: bool) -> Result<Self> {
        let rank = if limit_in_loops {
            Rank::Infinite
        } else {
            Rank::Finite(0)
        };
        Self::new(rank, EndPairDescriptor::ConvergentSequence { limit_in_loops })
    }

    /// The finite two-sorted structure coding this descriptor: clopen
    /// algebras of the end pair plus a rank tag. Only finite end spaces
    /// have one.
    pub fn stone_structure(&self) -> Option<StonePackage> {
        if let EndPairDescriptor::FinitePair { ends, loop_ends } = self.ends {
            let rank_tag = match self.rank {
                Rank::Finite(r) => r + 1,
                Rank::Infinite => 0,
            };
            Some(finite_pair_package(rank_tag, ends, loop_ends))
        } else {
            None
        }
    }
}

impl fmt::Display for StandardGraphDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank={} ", self.rank)?;
        match self.ends {
            EndPairDescriptor::FinitePair { ends, loop_ends } => {
                write!(f, "ends={ends} loops={loop_ends}")
            }
            EndPairDescriptor::ConvergentSequence { limit_in_loops } => {
                write!(
                    f,
                    "ends=seq loops={}",
                    if limit_in_loops { "limit" } else { "none" }
                )
            }
            EndPairDescriptor::CantorPair(part) => write!(
                f,
                "ends=cantor loops={}",
                match part {
                    CantorLoops::Empty => "none",
                    CantorLoops::ProperClopen => "clopen",
                    CantorLoops::All => "all",
                }
            ),
        }
    }
}

impl FromStr for StandardGraphDescriptor {
    type Err = Error;

    /// Parses the display form: `rank=<n|inf> ends=<n|seq|cantor>
    /// loops=<n|none|limit|clopen|all>`, keys in any order. `loopends=` is
    /// accepted as an alias for `loops=`, and the pair of end keys may be
    /// replaced by `endpair=cantor:<empty|all|clopen>` or
    /// `endpair=omega+1:<0|1>` (the `{1/n} ∪ {0}` space, flag = limit end
    /// accumulated by loops).
    fn from_str(s: &str) -> Result<Self> {
        let mut rank = None;
        let mut ends = None;
        let mut loops = None;
        let mut endpair = None;
        for token in s.split_whitespace() {
            let (key, value) = token.split_once('=').ok_or_else(|| {
                Error::InvalidDescriptor(format!("expected key=value, got `{token}`"))
            })?;
            let slot = match key {
                "rank" => &mut rank,
                "ends" => &mut ends,
                "loops" | "loopends" => &mut loops,
                "endpair" => &mut endpair,
                _ => {
                    return Err(Error::InvalidDescriptor(format!("unknown key `{key}`")));
                }
            };
            if slot.replace(value).is_some() {
                return Err(Error::InvalidDescriptor(format!("duplicate key `{key}`")));
            }
        }
        let (ends, loops) = match endpair {
            None => (ends, loops),
            Some(pair) => {
                if ends.is_some() || loops.is_some() {
                    return Err(Error::InvalidDescriptor(
                        "endpair= excludes ends= and loops=".into(),
                    ));
                }
                match pair.split_once(':') {
                    Some(("cantor", "empty")) => (Some("cantor"), Some("none")),
                    Some(("cantor", part @ ("all" | "clopen"))) => (Some("cantor"), Some(part)),
                    Some(("omega+1", "0")) => (Some("seq"), Some("none")),
                    Some(("omega+1", "1")) => (Some("seq"), Some("limit")),
                    _ => {
                        return Err(Error::InvalidDescriptor(format!(
                            "bad endpair `{pair}`: expected cantor:<empty|all|clopen> \
                             or omega+1:<0|1>"
                        )));
                    }
                }
            }
        };
        let (Some(rank), Some(ends), Some(loops)) = (rank, ends, loops) else {
            return Err(Error::InvalidDescriptor(
                "need rank=, ends= and loops=".into(),
            ));
        };
        let rank = if rank == "inf" {
            Rank::Infinite
        } else {
            Rank::Finite(rank.parse().map_err(|_| {
                Error::InvalidDescriptor(format!("bad rank `{rank}`"))
            })?)
        };
        let ends = match ends {
            "seq" => EndPairDescriptor::ConvergentSequence {
                limit_in_loops: match loops {
                    "limit" => true,
                    "none" => false,
                    other => {
                        return Err(Error::InvalidDescriptor(format!(
                            "sequence ends take loops=limit or loops=none, got `{other}`"
                        )));
                    }
                },
            },
            "cantor" => EndPairDescriptor::CantorPair(match loops {
                "none" => CantorLoops::Empty,
                "clopen" => CantorLoops::ProperClopen,
                "all" => CantorLoops::All,
                other => {
                    return Err(Error::InvalidDescriptor(format!(
                        "cantor ends take loops=none|clopen|all, got `{other}`"
                    )));
                }
            }),
            n => EndPairDescriptor::FinitePair {
                ends: n.parse().map_err(|_| {
                    Error::InvalidDescriptor(format!("bad end count `{n}`"))
                })?,
                loop_ends: loops.parse().map_err(|_| {
                    Error::InvalidDescriptor(format!("bad loop-end count `{loops}`"))
                })?,
            },
        };
        StandardGraphDescriptor::new(rank, ends)
    }
}

/// Are two standard forms properly homotopy equivalent? Finite end pairs
/// are compared through their coded finite structures; the rest by the
/// shape of the descriptor itself.
pub fn phe_equivalent(a: &StandardGraphDescriptor, b: &StandardGraphDescriptor) -> bool {
    match (a.stone_structure(), b.stone_structure()) {
        (Some(pa), Some(pb)) => packages_isomorphic(&pa, &pb),
        (None, None) => a == b,
        _ => false,
    }
}

/// Outcome of an equivalence test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PheVerdict {
    Equivalent,
    Distinguished { reason: String },
    Unknown,
}

pub fn phe_compare(a: &StandardGraphDescriptor, b: &StandardGraphDescriptor) -> PheVerdict {
    if phe_equivalent(a, b) {
        PheVerdict::Equivalent
    } else {
        PheVerdict::Distinguished {
            reason: format!("standard forms differ: [{a}] vs [{b}]"),
        }
    }
}

/// Tries to tell a graph apart from a target standard form. With a known
/// descriptor on the graph this is exact. Otherwise only a refutation is
/// attempted: a finite-rank target is contradicted once enough independent
/// cycles show up inside a ball, scanning radii up to `effort`.
pub fn phe_distinguish(
    g: &GraphInput,
    target: &StandardGraphDescriptor,
    effort: u32,
) -> Result<PheVerdict> {
    if let Some(d) = g.descriptor() {
        return Ok(phe_compare(&d, target));
    }
    if let Rank::Finite(r) = target.rank {
        for radius in 1..=effort {
            let low = rank_lower_bound(g, radius)?;
            if low > r {
                return Ok(PheVerdict::Distinguished {
                    reason: format!(
                        "at least {low} independent cycles within radius {radius}, \
                         but the target rank is {r}"
                    ),
                });
            }
        }
    }
    Ok(PheVerdict::Unknown)
}

// ---------------------------------------------------------------------------
// Realization: blueprint oracles gluing infinite tails onto a finite core.
// ---------------------------------------------------------------------------

/// Infinite tail shapes. Every shape keeps maximum degree 3; all except
/// `Ray` and `PendantSpine` are exactly 3-regular away from the attachment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// One-way path: a single end, no cycles.
    Ray,
    /// One-way path with a looped stem at every vertex: a single end
    /// accumulating cycles.
    LollipopRay,
    /// Full binary tree: a Cantor set of ends, no cycles.
    Binary,
    /// Binary tree with each edge subdivided and a looped stem at each
    /// midpoint: a Cantor set of ends, all accumulating cycles.
    LollipopBinary,
    /// Path carrying a pendant ray at every even vertex — a sequence of
    /// ends converging to the path's own end. With `loops`, every odd
    /// vertex carries a looped stem, putting cycles at the limit only.
    PendantSpine { loops: bool },
}

/// An infinite graph assembled from a finite core with tails hanging off
/// designated core vertices. Vertex and edge ids in tail number `i` at core
/// vertex `v` are prefixed `v!i!`.
pub struct TailOracle {
    incidence: BTreeMap<VertexId, Vec<OracleEdge>>,
    root: VertexId,
    tails: BTreeMap<VertexId, Vec<Tail>>,
    label: String,
    descriptor: StandardGraphDescriptor,
}

impl TailOracle {
    pub fn new(
        core: &FiniteMultigraph,
        tails: Vec<(VertexId, Tail)>,
        descriptor: StandardGraphDescriptor,
        label: impl Into<String>,
    ) -> Result<TailOracle> {
        let root = core.root().cloned().ok_or(Error::MissingRoot)?;
        let incidence: BTreeMap<VertexId, Vec<OracleEdge>> = core
            .incidence()
            .into_iter()
            .map(|(v, list)| {
                let list = list
                    .into_iter()
                    .map(|(id, other, is_loop)| {
                        if is_loop {
                            OracleEdge::new_loop(id.as_str(), other.as_str())
                        } else {
                            OracleEdge::new(id.as_str(), other.as_str())
                        }
                    })
                    .collect();
                (v, list)
            })
            .collect();
        for v in incidence.keys() {
            if v.as_str().contains('!') {
                return Err(Error::InvalidParameter(format!(
                    "core vertex id `{v}` may not contain `!`"
                )));
            }
        }
        let mut tail_map: BTreeMap<VertexId, Vec<Tail>> = BTreeMap::new();
        for (v, t) in tails {
            if !incidence.contains_key(&v) {
                return Err(Error::UnknownVertex(v));
            }
            tail_map.entry(v).or_default().push(t);
        }
        Ok(TailOracle {
            incidence,
            root,
            tails: tail_map,
            label: label.into(),
            descriptor,
        })
    }

    fn tail_entry_edge(prefix: &str, tail: Tail) -> OracleEdge {
        match tail {
            Tail::Ray | Tail::LollipopRay | Tail::PendantSpine { .. } => {
                OracleEdge::new(format!("{prefix}re0"), format!("{prefix}r0"))
            }
            Tail::Binary => OracleEdge::new(format!("{prefix}be"), format!("{prefix}b")),
            Tail::LollipopBinary => {
                OracleEdge::new(format!("{prefix}ma"), format!("{prefix}m"))
            }
        }
    }
}

/// Splits a tail vertex id `attach!index!rest`.
fn split_tail_id(name: &str) -> Option<(&str, usize, &str)> {
    let (attach, tail_part) = name.split_once('!')?;
    let (index, rest) = tail_part.split_once('!')?;
    Some((attach, index.parse().ok()?, rest))
}

fn binary_word(s: &str) -> Option<&str> {
    s.bytes().all(|b| b == b'0' || b == b'1').then_some(s)
}

fn spine_incidence(prefix: &str, attach: &str, k: u64) -> Vec<OracleEdge> {
    let prev = if k == 0 {
        OracleEdge::new(format!("{prefix}re0"), attach)
    } else {
        OracleEdge::new(format!("{prefix}re{k}"), format!("{prefix}r{}", k - 1))
    };
    let next = OracleEdge::new(format!("{prefix}re{}", k + 1), format!("{prefix}r{}", k + 1));
    vec![prev, next]
}

fn tail_incidence(kind: Tail, attach: &str, index: usize, rest: &str) -> Vec<OracleEdge> {
    let p = format!("{attach}!{index}!");
    match kind {
        Tail::Ray => match rest.strip_prefix('r').and_then(|k| k.parse::<u64>().ok()) {
            Some(k) => spine_incidence(&p, attach, k),
            None => Vec::new(),
        },
        Tail::LollipopRay => {
            if let Some(k) = rest.strip_prefix('r').and_then(|k| k.parse::<u64>().ok()) {
                let mut out = spine_incidence(&p, attach, k);
                out.push(OracleEdge::new(format!("{p}se{k}"), format!("{p}s{k}")));
                out
            } else if let Some(k) = rest.strip_prefix('s').and_then(|k| k.parse::<u64>().ok()) {
                vec![
                    OracleEdge::new(format!("{p}se{k}"), format!("{p}r{k}")),
                    OracleEdge::new_loop(format!("{p}sl{k}"), format!("{p}s{k}")),
                ]
            } else {
                Vec::new()
            }
        }
        Tail::Binary => match rest.strip_prefix('b').and_then(binary_word) {
            Some(w) => {
                let parent = if w.is_empty() {
                    OracleEdge::new(format!("{p}be"), attach)
                } else {
                    OracleEdge::new(
                        format!("{p}be{w}"),
                        format!("{p}b{}", &w[..w.len() - 1]),
                    )
                };
                vec![
                    parent,
                    OracleEdge::new(format!("{p}be{w}0"), format!("{p}b{w}0")),
                    OracleEdge::new(format!("{p}be{w}1"), format!("{p}b{w}1")),
                ]
            }
            None => Vec::new(),
        },
        Tail::LollipopBinary => {
            if let Some(w) = rest.strip_prefix('b').and_then(binary_word) {
                vec![
                    OracleEdge::new(format!("{p}mb{w}"), format!("{p}m{w}")),
                    OracleEdge::new(format!("{p}ma{w}0"), format!("{p}m{w}0")),
                    OracleEdge::new(format!("{p}ma{w}1"), format!("{p}m{w}1")),
                ]
            } else if let Some(w) = rest.strip_prefix('m').and_then(binary_word) {
                let parent = if w.is_empty() {
                    OracleEdge::new(format!("{p}ma"), attach)
                } else {
                    OracleEdge::new(
                        format!("{p}ma{w}"),
                        format!("{p}b{}", &w[..w.len() - 1]),
                    )
                };
                vec![
                    parent,
                    OracleEdge::new(format!("{p}mb{w}"), format!("{p}b{w}")),
                    OracleEdge::new(format!("{p}ts{w}"), format!("{p}t{w}")),
                ]
            } else if let Some(w) = rest.strip_prefix('t').and_then(binary_word) {
                vec![
                    OracleEdge::new(format!("{p}ts{w}"), format!("{p}m{w}")),
                    OracleEdge::new_loop(format!("{p}tl{w}"), format!("{p}t{w}")),
                ]
            } else {
                Vec::new()
            }
        }
        Tail::PendantSpine { loops } => {
            if let Some(k) = rest.strip_prefix('r').and_then(|k| k.parse::<u64>().ok()) {
                let mut out = spine_incidence(&p, attach, k);
                if k % 2 == 0 {
                    out.push(OracleEdge::new(
                        format!("{p}pe{k}x0"),
                        format!("{p}p{k}x0"),
                    ));
                } else if loops {
                    out.push(OracleEdge::new(format!("{p}se{k}"), format!("{p}s{k}")));
                }
                out
            } else if let Some(k) = rest.strip_prefix('s').and_then(|k| k.parse::<u64>().ok()) {
                if loops && k % 2 == 1 {
                    vec![
                        OracleEdge::new(format!("{p}se{k}"), format!("{p}r{k}")),
                        OracleEdge::new_loop(format!("{p}sl{k}"), format!("{p}s{k}")),
                    ]
                } else {
                    Vec::new()
                }
            } else if let Some((k, j)) = rest
                .strip_prefix('p')
                .and_then(|t| t.split_once('x'))
                .and_then(|(a, b)| Some((a.parse::<u64>().ok()?, b.parse::<u64>().ok()?)))
            {
                if k % 2 != 0 {
                    return Vec::new();
                }
                let prev = if j == 0 {
                    OracleEdge::new(format!("{p}pe{k}x0"), format!("{p}r{k}"))
                } else {
                    OracleEdge::new(
                        format!("{p}pe{k}x{j}"),
                        format!("{p}p{k}x{}", j - 1),
                    )
                };
                vec![
                    prev,
                    OracleEdge::new(
                        format!("{p}pe{k}x{}", j + 1),
                        format!("{p}p{k}x{}", j + 1),
                    ),
                ]
            } else {
                Vec::new()
            }
        }
    }
}

impl GraphOracle for TailOracle {
    fn root(&self) -> VertexId {
        self.root.clone()
    }

    fn incident(&self, v: &VertexId) -> Vec<OracleEdge> {
        if let Some(list) = self.incidence.get(v) {
            let mut out = list.clone();
            if let Some(tails) = self.tails.get(v) {
                for (i, t) in tails.iter().enumerate() {
                    out.push(TailOracle::tail_entry_edge(&format!("{v}!{i}!"), *t));
                }
            }
            return out;
        }
        let Some((attach, index, rest)) = split_tail_id(v.as_str()) else {
            return Vec::new();
        };
        let Some(kind) = self
            .tails
            .get(&VertexId::new(attach))
            .and_then(|ts| ts.get(index))
        else {
            return Vec::new();
        };
        tail_incidence(*kind, attach, index, rest)
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn descriptor(&self) -> Option<StandardGraphDescriptor> {
        Some(self.descriptor)
    }
}

/// Which degree regime a realization must live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationFamily {
    /// Maximum degree 3; interior vertices may have smaller degree.
    MaxDegreeThree,
    /// Exactly 3-regular everywhere, root included.
    CubicExact,
}

/// Builds a graph realizing the descriptor within the family after
/// checking feasibility; infeasible combinations report why.
pub fn realize(d: &StandardGraphDescriptor, family: RealizationFamily) -> Result<GraphInput> {
    match family {
        RealizationFamily::MaxDegreeThree => realize_max3(d),
        RealizationFamily::CubicExact => realize_cubic(d),
    }
}

fn finite_rank(d: &StandardGraphDescriptor) -> u32 {
    match d.rank {
        Rank::Finite(r) => r,
        Rank::Infinite => 0,
    }
}

/// Root `o` followed by a chain of `rank` looped stems: a finite core of
/// the requested cycle rank with every degree at most 3 and the chain tail
/// vertex left at degree 2 (degree 1 core when `rank` is 0).
fn chain_core(rank: u32) -> Result<(FiniteMultigraph, VertexId)> {
    let mut g = FiniteMultigraph::new("core");
    let root = VertexId::new("o");
    g.add_vertex(root.clone())?;
    g.set_root(root.clone())?;
    let mut prev = root;
    for i in 1..=rank {
        let v = VertexId::new(format!("c{i}"));
        g.add_vertex(v.clone())?;
        g.add_edge(format!("ce{i}").into(), prev.clone(), v.clone())?;
        attach_lollipop(&mut g, &v)?;
        prev = v;
    }
    Ok((g, prev))
}

fn realize_max3(d: &StandardGraphDescriptor) -> Result<GraphInput> {
    let label = format!("standard({d})");
    let r = finite_rank(d);
    let (mut core, _) = chain_core(r)?;
    let root = VertexId::new("o");
    let tails: Vec<(VertexId, Tail)> = match d.ends {
        EndPairDescriptor::FinitePair { ends, loop_ends } => {
            let mut tails = Vec::new();
            let mut prev = root;
            for i in 1..=ends {
                let v = VertexId::new(format!("j{i}"));
                core.add_vertex(v.clone())?;
                core.add_edge(format!("je{i}").into(), prev, v.clone())?;
                let kind = if i <= loop_ends {
                    Tail::LollipopRay
                } else {
                    Tail::Ray
                };
                tails.push((v.clone(), kind));
                prev = v;
            }
            tails
        }
        EndPairDescriptor::ConvergentSequence { limit_in_loops } => {
            vec![(root, Tail::PendantSpine { loops: limit_in_loops })]
        }
        EndPairDescriptor::CantorPair(part) => match part {
            CantorLoops::Empty => vec![(root, Tail::Binary)],
            CantorLoops::All => vec![(root, Tail::LollipopBinary)],
            CantorLoops::ProperClopen => {
                vec![(root.clone(), Tail::Binary), (root, Tail::LollipopBinary)]
            }
        },
    };
    Ok(GraphInput::oracle(TailOracle::new(&core, tails, *d, label)?))
}

fn unrealizable_cubic(d: &StandardGraphDescriptor, reason: &str) -> Error {
    Error::Unrealizable {
        space: format!("3-regular graphs (descriptor {d})"),
        reason: reason.into(),
    }
}

/// A finite 3-regular graph of rank `r >= 2`: a cycle on `2(r-1)` vertices
/// plus all long diagonals.
fn finite_cubic(rank: u32) -> Result<FiniteMultigraph> {
    let m = rank - 1;
    let n = 2 * m;
    let mut g = FiniteMultigraph::new("finite-cubic");
    for i in 0..n {
        g.add_vertex(format!("c{i}").into())?;
    }
    for i in 0..n {
        g.add_edge(
            format!("e{i}").into(),
            format!("c{i}").into(),
            format!("c{}", (i + 1) % n).into(),
        )?;
    }
    for i in 0..m {
        g.add_edge(
            format!("d{i}").into(),
            format!("c{i}").into(),
            format!("c{}", i + m).into(),
        )?;
    }
    g.set_root(VertexId::new("c0"))?;
    Ok(g)
}

fn realize_cubic(d: &StandardGraphDescriptor) -> Result<GraphInput> {
    let label = format!("cubic-standard({d})");
    match d.ends {
        EndPairDescriptor::FinitePair { ends: 0, .. } => {
            let r = finite_rank(d);
            if r < 2 {
                return Err(unrealizable_cubic(
                    d,
                    "a finite 3-regular graph has an even number of vertices 2m \
                     and cycle rank m+1, hence rank at least 2",
                ));
            }
            let core = finite_cubic(r)?;
            Ok(GraphInput::oracle(TailOracle::new(&core, Vec::new(), *d, label)?))
        }
        EndPairDescriptor::FinitePair { ends, loop_ends } if ends == loop_ends => {
            // All ends accumulate cycles; rank is infinite by validation.
            match ends {
                1 => Ok(GraphInput::oracle(LochNessOracle)),
                2 => {
                    let (mut core, _) = chain_core(0)?;
                    let root = VertexId::new("o");
                    attach_lollipop(&mut core, &root)?;
                    let tails = vec![
                        (root.clone(), Tail::LollipopRay),
                        (root, Tail::LollipopRay),
                    ];
                    Ok(GraphInput::oracle(TailOracle::new(&core, tails, *d, label)?))
                }
                n => {
                    let junctions = if n == 3 { 1 } else { n - 2 };
                    let mut core = FiniteMultigraph::new("core");
                    for i in 1..=junctions {
                        core.add_vertex(format!("j{i}").into())?;
                        if i > 1 {
                            core.add_edge(
                                format!("je{i}").into(),
                                format!("j{}", i - 1).into(),
                                format!("j{i}").into(),
                            )?;
                        }
                    }
                    core.set_root(VertexId::new("j1"))?;
                    let mut tails = Vec::new();
                    for i in 1..=junctions {
                        let slots = if junctions == 1 {
                            n
                        } else if i == 1 || i == junctions {
                            2
                        } else {
                            1
                        };
                        for _ in 0..slots {
                            tails.push((VertexId::new(format!("j{i}")), Tail::LollipopRay));
                        }
                    }
                    Ok(GraphInput::oracle(TailOracle::new(&core, tails, *d, label)?))
                }
            }
        }
        EndPairDescriptor::FinitePair { .. } => Err(unrealizable_cubic(
            d,
            "away from all cycles a 3-regular graph branches like a tree, \
             so every isolated end accumulates cycles",
        )),
        EndPairDescriptor::ConvergentSequence { .. } => Err(unrealizable_cubic(
            d,
            "the members of the sequence would be isolated cycle-free ends, \
             impossible in a 3-regular graph",
        )),
        EndPairDescriptor::CantorPair(CantorLoops::Empty) => {
            let r = finite_rank(d);
            if r == 0 {
                return Ok(GraphInput::oracle(Tree3Oracle));
            }
            // Cubic tree core deep enough to host r extra cycles, each an
            // edge subdivision carrying a looped stem.
            let mut depth = 1u32;
            while 3 * ((1u32 << depth) - 1) < r {
                depth += 1;
            }
            let mut core = FiniteMultigraph::new("core");
            core.add_vertex(VertexId::new("o"))?;
            core.set_root(VertexId::new("o"))?;
            let mut edges = Vec::new();
            let mut frontier = vec![String::new()];
            for level in 0..depth {
                let mut next = Vec::new();
                for w in frontier {
                    let children: &[&str] = if level == 0 {
                        &["0", "1", "2"]
                    } else {
                        &["0", "1"]
                    };
                    for c in children {
                        let cw = format!("{w}{c}");
                        let parent = if w.is_empty() {
                            VertexId::new("o")
                        } else {
                            VertexId::new(format!("n{w}"))
                        };
                        core.add_vertex(format!("n{cw}").into())?;
                        core.add_edge(format!("f{cw}").into(), parent, format!("n{cw}").into())?;
                        edges.push(format!("f{cw}"));
                        next.push(cw);
                    }
                }
                frontier = next;
            }
            for e in edges.iter().take(r as usize) {
                let mid = subdivide_edge(&mut core, &e.clone().into())?;
                attach_lollipop(&mut core, &mid)?;
            }
            let tails = frontier
                .iter()
                .flat_map(|w| {
                    let leaf = VertexId::new(format!("n{w}"));
                    [(leaf.clone(), Tail::Binary), (leaf, Tail::Binary)]
                })
                .collect();
            Ok(GraphInput::oracle(TailOracle::new(&core, tails, *d, label)?))
        }
        EndPairDescriptor::CantorPair(CantorLoops::All) => {
            cubic_realization(ClosedSetPresentation::Full)
        }
        EndPairDescriptor::CantorPair(CantorLoops::ProperClopen) => {
            Ok(GraphInput::oracle(SplitCantorOracle))
        }
    }
}
