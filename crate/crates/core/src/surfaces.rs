//! Combinatorial pants complexes and their associated graphs.
//!
//! A `d`-legged pants is an orientable genus-zero surface with `d + 1`
//! boundary circles (an annulus is 1-legged, a disk 0-legged). A pants
//! complex assembles finitely many pants by a perfect matching on all
//! boundary circles. The associated multigraph has one vertex per pants and
//! one edge per matched pair — a self-loop when both circles belong to the
//! same pants — so a `d`-legged pants becomes a vertex of degree `d + 1`.
//! The closed orientable surface built this way is classified by its genus,
//! which equals the first Betti number of the graph.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multigraph::FiniteMultigraph;
use crate::phe::{phe_equivalent, EndPairDescriptor, Rank, StandardGraphDescriptor};

/// A boundary circle, addressed as `(pants index, circle index)`; circle
/// indices are 1-based, running over `1..=legs+1`.
pub type Circle = (usize, u32);

/// Finitely many pants glued along a perfect matching of their boundary
/// circles. Always describes a closed connected orientable surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PantsComplex {
    legs: Vec<u32>,
    gluing: Vec<(Circle, Circle)>,
    basepoint: usize,
}

impl PantsComplex {
    /// Validates and normalizes: every circle matched exactly once, no
    /// circle matched to itself, and the induced graph connected. Pairs are
    /// stored sorted with the smaller circle first.
    pub fn new(
        legs: Vec<u32>,
        gluing: Vec<(Circle, Circle)>,
        basepoint: usize,
    ) -> Result<PantsComplex> {
        if legs.is_empty() {
            return Err(Error::InvalidPants("no pants".into()));
        }
        if basepoint >= legs.len() {
            return Err(Error::InvalidPants(format!(
                "basepoint {basepoint} out of range (have {} pants)",
                legs.len()
            )));
        }
        let mut gluing: Vec<(Circle, Circle)> = gluing
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        gluing.sort_unstable();
        let check = |c: Circle| -> Result<()> {
            let (p, i) = c;
            if p >= legs.len() {
                return Err(Error::InvalidPants(format!("unknown pants {p}")));
            }
            if i == 0 || i > legs[p] + 1 {
                return Err(Error::InvalidPants(format!(
                    "pants {p} has circles 1..={}, got {i}",
                    legs[p] + 1
                )));
            }
            Ok(())
        };
        let mut seen: Vec<Circle> = Vec::new();
        for &(a, b) in &gluing {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(Error::InvalidPants(format!(
                    "circle {}.{} glued to itself",
                    a.0, a.1
                )));
            }
            seen.push(a);
            seen.push(b);
        }
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPants(format!(
                "circle {}.{} matched twice",
                w[0].0, w[0].1
            )));
        }
        let circles: usize = legs.iter().map(|&d| d as usize + 1).sum();
        if seen.len() != circles {
            return Err(Error::InvalidPants(format!(
                "matching covers {} of {circles} boundary circles",
                seen.len()
            )));
        }
        let complex = PantsComplex {
            legs,
            gluing,
            basepoint,
        };
        if !complex.to_graph().is_connected() {
            return Err(Error::InvalidPants("induced graph is disconnected".into()));
        }
        Ok(complex)
    }

    pub fn pants_count(&self) -> usize {
        self.legs.len()
    }

    /// Legs of each pants (circle count minus one).
    pub fn legs(&self) -> &[u32] {
        &self.legs
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn gluing(&self) -> &[(Circle, Circle)] {
        &self.gluing
    }

    /// The associated multigraph: vertex `p{j}` per pants, edge `c{i}` per
    /// matched pair, rooted at the basepoint pants.
    pub fn to_graph(&self) -> FiniteMultigraph {
        let mut g = FiniteMultigraph::new("pants");
        for j in 0..self.legs.len() {
            g.add_vertex(format!("p{j}").into()).expect("fresh vertex");
        }
        for (i, &((pa, _), (pb, _))) in self.gluing.iter().enumerate() {
            g.add_edge(
                format!("c{i}").into(),
                format!("p{pa}").into(),
                format!("p{pb}").into(),
            )
            .expect("fresh edge");
        }
        g.set_root(format!("p{}", self.basepoint).into())
            .expect("basepoint exists");
        g
    }

    /// Euler characteristic of the glued surface: a `d`-legged pants is a
    /// sphere with `d + 1` holes (χ = 1 − d) and gluing circles (χ = 0)
    /// changes nothing.
    pub fn euler_characteristic(&self) -> i64 {
        self.legs.iter().map(|&d| 1 - i64::from(d)).sum()
    }

    /// Genus of the glued surface: the first Betti number of the associated
    /// graph, equivalently `(2 − χ)/2`.
    pub fn genus(&self) -> usize {
        self.to_graph().rank()
    }

    /// Canonical text form; parsing it back yields an equal complex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (j, &d) in self.legs.iter().enumerate() {
            out.push_str(&format!("pants {j} legs={d}\n"));
        }
        for &((pa, ia), (pb, ib)) in &self.gluing {
            out.push_str(&format!("glue {pa}.{ia} {pb}.{ib}\n"));
        }
        out.push_str(&format!("base {}\n", self.basepoint));
        out
    }

    /// Parses the text form: `pants <id> legs=<d>` lines, `glue
    /// <id>.<i> <id'>.<i'>` lines, and one `base <id>` line, in any order.
    /// Pants ids must form `0..n`.
    pub fn parse(text: &str) -> Result<PantsComplex> {
        let mut declared: Vec<(usize, u32)> = Vec::new();
        let mut gluing: Vec<(Circle, Circle)> = Vec::new();
        let mut base: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let mut words = s.split_whitespace();
            let head = words.next().expect("nonempty line");
            let rest: Vec<&str> = words.collect();
            match head {
                "pants" => {
                    let [id, legs] = rest[..] else {
                        return Err(Error::parse(line, 1, "expected `pants <id> legs=<d>`"));
                    };
                    let id: usize = id
                        .parse()
                        .map_err(|_| Error::parse(line, 7, format!("bad pants id `{id}`")))?;
                    let Some(d) = legs.strip_prefix("legs=") else {
                        return Err(Error::parse(line, 1, format!("expected legs=<d>, got `{legs}`")));
                    };
                    let d: u32 = d
                        .parse()
                        .map_err(|_| Error::parse(line, 1, format!("bad leg count `{d}`")))?;
                    declared.push((id, d));
                }
                "glue" => {
                    let [a, b] = rest[..] else {
                        return Err(Error::parse(line, 1, "expected `glue <p>.<i> <p'>.<i'>`"));
                    };
                    let circle = |tok: &str| -> Result<Circle> {
                        let Some((p, i)) = tok.split_once('.') else {
                            return Err(Error::parse(line, 1, format!("bad circle `{tok}`")));
                        };
                        let p = p
                            .parse()
                            .map_err(|_| Error::parse(line, 1, format!("bad pants id `{p}`")))?;
                        let i = i
                            .parse()
                            .map_err(|_| Error::parse(line, 1, format!("bad circle index `{i}`")))?;
                        Ok((p, i))
                    };
                    gluing.push((circle(a)?, circle(b)?));
                }
                "base" => {
                    let [id] = rest[..] else {
                        return Err(Error::parse(line, 1, "expected `base <id>`"));
                    };
                    let id: usize = id
                        .parse()
                        .map_err(|_| Error::parse(line, 6, format!("bad pants id `{id}`")))?;
                    if base.replace(id).is_some() {
                        return Err(Error::parse(line, 1, "duplicate base line"));
                    }
                }
                other => {
                    return Err(Error::parse(line, 1, format!("unknown directive `{other}`")));
                }
            }
        }
        declared.sort_unstable();
        if let Some(w) = declared.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidPants(format!("pants {} declared twice", w[0].0)));
        }
        if declared.iter().enumerate().any(|(j, &(id, _))| id != j) {
            return Err(Error::InvalidPants(
                "pants ids must form 0..n with no gaps".into(),
            ));
        }
        let legs: Vec<u32> = declared.into_iter().map(|(_, d)| d).collect();
        let base = base.ok_or_else(|| Error::InvalidPants("missing base line".into()))?;
        PantsComplex::new(legs, gluing, base)
    }
}

/// Homeomorphism class of a (possibly infinite-type) surface: genus plus
/// end data, with genus playing the role of graph rank. Closed finite
/// surfaces are handled directly by [`PantsComplex::genus`]; this type
/// covers the infinite catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceClass(StandardGraphDescriptor);

impl SurfaceClass {
    pub fn new(genus: Rank, ends: EndPairDescriptor) -> Result<SurfaceClass> {
        Ok(SurfaceClass(StandardGraphDescriptor::new(genus, ends)?))
    }

    pub fn from_descriptor(d: StandardGraphDescriptor) -> SurfaceClass {
        SurfaceClass(d)
    }

    pub fn descriptor(&self) -> &StandardGraphDescriptor {
        &self.0
    }

    pub fn genus(&self) -> Rank {
        self.0.rank
    }

    /// Surfaces are homeomorphic exactly when genus and end pair agree —
    /// the same invariant that classifies graphs up to proper homotopy
    /// equivalence.
    pub fn homeomorphic(&self, other: &SurfaceClass) -> bool {
        phe_equivalent(&self.0, &other.0)
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string().replacen("rank=", "genus=", 1))
    }
}

impl FromStr for SurfaceClass {
    type Err = Error;

    /// Accepts the descriptor syntax with `genus=` in place of `rank=`.
    fn from_str(s: &str) -> Result<SurfaceClass> {
        let graph_form = s.replacen("genus=", "rank=", 1);
        Ok(SurfaceClass(graph_form.parse()?))
    }
}

/// Genus comparison for closed surfaces presented as pants complexes. A
/// closed connected orientable surface is determined by its genus alone.
pub fn surfaces_homeomorphic(a: &PantsComplex, b: &PantsComplex) -> bool {
    a.genus() == b.genus()
}

/// Every valid pants complex with at most `max_pants` pants and at most
/// `max_legs` legs per pants, basepoint 0: all leg assignments crossed with
/// all perfect matchings of the boundary circles, keeping the connected
/// ones. Sizes grow fast; intended for small exhaustive checks.
pub fn enumerate_pants_complexes(max_pants: usize, max_legs: u32) -> Vec<PantsComplex> {
    fn matchings(circles: &[Circle]) -> Vec<Vec<(Circle, Circle)>> {
        fn go(rest: &mut Vec<Circle>, acc: &mut Vec<(Circle, Circle)>, out: &mut Vec<Vec<(Circle, Circle)>>) {
            if rest.is_empty() {
                out.push(acc.clone());
                return;
            }
            let first = rest.remove(0);
            for i in 0..rest.len() {
                let partner = rest.remove(i);
                acc.push((first, partner));
                go(rest, acc, out);
                acc.pop();
                rest.insert(i, partner);
            }
            rest.insert(0, first);
        }
        let mut out = Vec::new();
        go(&mut circles.to_vec(), &mut Vec::new(), &mut out);
        out
    }

    let mut out = Vec::new();
    for p in 1..=max_pants {
        let mut assignment = vec![0u32; p];
        loop {
            let circles: Vec<Circle> = (0..p)
                .flat_map(|j| (1..=assignment[j] + 1).map(move |i| (j, i)))
                .collect();
            if circles.len() % 2 == 0 {
                for m in matchings(&circles) {
                    if let Ok(c) = PantsComplex::new(assignment.clone(), m, 0) {
                        out.push(c);
                    }
                }
            }
            // Odometer over assignments in base (max_legs + 1).
            let mut j = 0;
            loop {
                if j == p {
                    break;
                }
                if assignment[j] < max_legs {
                    assignment[j] += 1;
                    break;
                }
                assignment[j] = 0;
                j += 1;
            }
            if j == p {
                break;
            }
        }
    }
    out
}
