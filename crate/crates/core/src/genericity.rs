//! Random regular graphs via the configuration model, together with the
//! deep-connectivity properties `U_n` / `V_n` and two ball-preserving
//! surgeries that force them.
//!
//! `U_n` asks that every component of the deep part `{depth >= n}` of the
//! rooted graph contains a cycle; `V_n` asks that the deep part is
//! connected. Both are determined by finite windows, so for the finite
//! samples produced here the verdicts are exact.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ends::{rank_lower_bound, sphere_connected, UnionFind, VnStatus};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, FiniteMultigraph, VertexId};
use crate::oracle::GraphInput;
use crate::surgery::{attach_barrel, subdivide_edge};

/// SplitMix64 output function: a cheap, well-mixed hash of a 64-bit state.
fn splitmix64(seed: u64) -> u64 {
    let mut x = seed.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Seed for one trial, derived so that trials are decorrelated while the
/// whole experiment stays reproducible from the experiment seed alone.
pub fn trial_seed(seed: u64, trial: u32) -> u64 {
    splitmix64(seed ^ (trial as u64).wrapping_mul(0x9E3779B97F4A7C15))
}

/// Builds the multigraph induced by a perfect matching on the
/// `degree * vertices` stubs: stub `s` belongs to vertex `v{s / degree}`,
/// and consecutive entries of `stubs` are matched into edges `m0, m1, ...`.
/// The root is `v0`.
fn graph_from_matching(degree: u32, vertices: u32, stubs: &[u32]) -> FiniteMultigraph {
    let mut g = FiniteMultigraph::new(format!("config-{degree}-{vertices}"));
    for v in 0..vertices {
        g.add_vertex(format!("v{v}").into()).expect("fresh vertex id");
    }
    for (i, pair) in stubs.chunks_exact(2).enumerate() {
        let u: VertexId = format!("v{}", pair[0] / degree).into();
        let w: VertexId = format!("v{}", pair[1] / degree).into();
        g.add_edge(format!("m{i}").into(), u, w).expect("fresh edge id");
    }
    g.set_root("v0".into()).expect("v0 exists");
    g
}

/// Samples the configuration model: a uniformly random perfect matching on
/// the stubs of `vertices` vertices with `degree` stubs each. The result is
/// `degree`-regular, may contain loops and parallel edges, and may be
/// disconnected; the root is `v0`.
pub fn sample_configuration(degree: u32, vertices: u32, seed: u64) -> Result<FiniteMultigraph> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    if vertices == 0 {
        return Err(Error::InvalidParameter("vertex count must be positive".into()));
    }
    let stub_count = degree as u64 * vertices as u64;
    if stub_count % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "degree * vertices = {stub_count} must be even to pair all stubs"
        )));
    }
    let mut stubs: Vec<u32> = (0..stub_count as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    stubs.shuffle(&mut rng);
    Ok(graph_from_matching(degree, vertices, &stubs))
}

/// Breadth-first depths from the root. Vertices in other components of a
/// disconnected graph are absent: the rooted graph does not see them.
fn depths(g: &FiniteMultigraph) -> Result<BTreeMap<VertexId, u32>> {
    let root = g.root().ok_or(Error::MissingRoot)?.clone();
    let incidence = g.incidence();
    let mut depth = BTreeMap::new();
    depth.insert(root.clone(), 0u32);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = depth[&v];
        for (_, other, _) in &incidence[&v] {
            if !depth.contains_key(other) {
                depth.insert(other.clone(), d + 1);
                queue.push_back(other.clone());
            }
        }
    }
    Ok(depth)
}

/// Deep vertices (depth >= n) in sorted id order, plus the union-find over
/// the edges internal to the deep part.
fn deep_components(
    g: &FiniteMultigraph,
    depth: &BTreeMap<VertexId, u32>,
    n: u32,
) -> (Vec<VertexId>, UnionFind) {
    let deep: Vec<VertexId> = depth
        .iter()
        .filter(|(_, &d)| d >= n)
        .map(|(v, _)| v.clone())
        .collect();
    let index: BTreeMap<&VertexId, u32> = deep
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i as u32))
        .collect();
    let mut uf = UnionFind::new(deep.len());
    for (u, w) in g.edges().map(|(_, pair)| pair) {
        if let (Some(&iu), Some(&iw)) = (index.get(u), index.get(w)) {
            uf.union(iu, iw);
        }
    }
    (deep, uf)
}

/// Does the graph satisfy `U_n`: does every component of the deep part
/// `{depth >= n}` contain a cycle? Vacuously true when the deep part is
/// empty.
pub fn in_un(g: &FiniteMultigraph, n: u32) -> Result<bool> {
    let depth = depths(g)?;
    let (deep, mut uf) = deep_components(g, &depth, n);
    let index: BTreeMap<&VertexId, u32> = deep
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i as u32))
        .collect();
    // Per component, a cycle exists iff internal edges >= vertices (loops
    // count once, exactly as in the first Betti number).
    let mut tally: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for i in 0..deep.len() as u32 {
        tally.entry(uf.find(i)).or_default().0 += 1;
    }
    for (u, w) in g.edges().map(|(_, pair)| pair) {
        if let (Some(&iu), Some(&iw)) = (index.get(u), index.get(w)) {
            debug_assert_eq!(uf.find(iu), uf.find(iw));
            tally.entry(uf.find(iu)).or_default().1 += 1;
        }
    }
    Ok(tally.values().all(|&(vertices, edges)| edges >= vertices))
}

/// Does the graph satisfy `V_n`: is the deep part `{depth >= n}` connected?
/// Exact for finite graphs: the scan horizon is generous enough for the
/// window to saturate, at which point `NotWitnessed` is definitive.
pub fn in_vn(g: &FiniteMultigraph, n: u32) -> Result<VnStatus> {
    let horizon = n + g.vertex_count() as u32 + 2;
    sphere_connected(&GraphInput::finite(g.clone()), n, horizon)
}

/// Forces `U_radius` by surgery on `count` edges lying fully outside the
/// ball: each edge with both endpoints at depth `> radius` is subdivided
/// and the midpoint receives a barrel of `k - 2` parallel edges capped by a
/// loop. The first Betti number grows by `k - 2` per treated edge, a
/// `k`-regular graph stays `k`-regular, and the ball of radius
/// `radius + 1` around the root is untouched. Returns the barrel vertices.
pub fn delta_u(
    g: &mut FiniteMultigraph,
    radius: u32,
    count: usize,
    k: u32,
) -> Result<Vec<VertexId>> {
    if k < 3 {
        return Err(Error::InvalidParameter(
            "barrel surgery needs degree k >= 3".into(),
        ));
    }
    let depth = depths(g)?;
    let eligible: Vec<EdgeId> = g
        .edges()
        .filter(|(_, (u, w))| {
            depth.get(u).is_some_and(|&d| d >= radius + 1)
                && depth.get(w).is_some_and(|&d| d >= radius + 1)
        })
        .map(|(e, _)| e.clone())
        .collect();
    if eligible.len() < count {
        return Err(Error::NotEnoughEdgesOutside {
            needed: count,
            available: eligible.len(),
            radius,
        });
    }
    let mut barrels = Vec::with_capacity(count);
    for e in eligible.into_iter().take(count) {
        let mid = subdivide_edge(g, &e)?;
        barrels.push(attach_barrel(g, &mid, k - 2)?);
    }
    Ok(barrels)
}

/// Outcome of a [`delta_v`] pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaVReport {
    /// Edge-bearing deep components chained together (trivially 1 when
    /// there was nothing to join).
    pub joined: usize,
    /// Deep components with no internal edge. Joining those would change
    /// degrees inside the sphere, so they are left alone.
    pub skipped: usize,
}

/// Subdivides the first (by edge id) edge with both endpoints in `members`
/// and adds the midpoint to `members`.
fn carve_midpoint(g: &mut FiniteMultigraph, members: &mut BTreeSet<VertexId>) -> Result<VertexId> {
    let pick = g
        .edges()
        .find(|(_, (u, w))| members.contains(u) && members.contains(w))
        .map(|(e, _)| e.clone())
        .ok_or_else(|| Error::InvalidSurgery("deep component has no internal edge".into()))?;
    let mid = subdivide_edge(g, &pick)?;
    members.insert(mid.clone());
    Ok(mid)
}

/// Forces `V_n` where surgery can: the components of the deep part
/// `{depth >= n}` that carry at least one internal edge are chained in
/// order of their smallest member, joining subdivision midpoints of
/// consecutive components with `k - 2` parallel edges. Every new vertex
/// ends at degree `k` and lies at depth `> n`, so the ball of radius `n`
/// around the root is untouched and a `k`-regular graph stays `k`-regular.
pub fn delta_v(g: &mut FiniteMultigraph, n: u32, k: u32) -> Result<DeltaVReport> {
    if k < 3 {
        return Err(Error::InvalidParameter(
            "link surgery needs degree k >= 3".into(),
        ));
    }
    let depth = depths(g)?;
    let (deep, mut uf) = deep_components(g, &depth, n);
    let index: BTreeMap<&VertexId, u32> = deep
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i as u32))
        .collect();
    let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for i in 0..deep.len() as u32 {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut has_edge: BTreeSet<u32> = BTreeSet::new();
    for (u, w) in g.edges().map(|(_, pair)| pair) {
        if let (Some(&iu), Some(&_iw)) = (index.get(u), index.get(w)) {
            has_edge.insert(uf.find(iu));
        }
    }
    // Union-find roots are the minimal member index, and `deep` is sorted,
    // so iterating `groups` visits components by smallest member id.
    let chained: Vec<u32> = groups
        .keys()
        .filter(|r| has_edge.contains(r))
        .copied()
        .collect();
    let skipped = groups.len() - chained.len();
    let mut members: Vec<BTreeSet<VertexId>> = chained
        .iter()
        .map(|r| groups[r].iter().map(|&i| deep[i as usize].clone()).collect())
        .collect();
    for i in 0..members.len().saturating_sub(1) {
        let (left, right) = members.split_at_mut(i + 1);
        let left_mid = carve_midpoint(g, &mut left[i])?;
        let right_mid = carve_midpoint(g, &mut right[0])?;
        for j in 0..k - 2 {
            let id = g.fresh_edge_id(&format!("vlink{i}x{j}"));
            g.add_edge(id, left_mid.clone(), right_mid.clone())?;
        }
    }
    Ok(DeltaVReport {
        joined: chained.len(),
        skipped,
    })
}

/// Parameters of a configuration-model genericity experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExperimentParams {
    pub degree: u32,
    pub vertices: u32,
    pub trials: u32,
    pub seed: u64,
    /// Depth `n` at which `U_n` and `V_n` are tested.
    pub depth: u32,
    /// Integer radius of the ball whose certified cycle rank is recorded.
    pub ball_radius: u32,
}

/// Measurements for a single sampled graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u32,
    pub seed: u64,
    pub rank_ball: u32,
    pub in_un: bool,
    /// Window radius that witnessed `V_n` connectivity, if any.
    pub vn_witness: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub params: ExperimentParams,
    pub records: Vec<TrialRecord>,
    pub un_fraction: f64,
    pub vn_fraction: f64,
}

impl ExperimentReport {
    /// Byte-stable CSV rendering of the per-trial records; a missing `V_n`
    /// witness is written as `-1`.
    pub fn to_csv(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from("trial,seed,rank_ball_R,in_Un,in_Vn_witness_radius\n");
        for r in &self.records {
            let witness = r.vn_witness.map(|w| w as i64).unwrap_or(-1);
            writeln!(
                out,
                "{},{},{},{},{}",
                r.trial, r.seed, r.rank_ball, r.in_un, witness
            )
            .expect("string write");
        }
        out
    }
}

/// Runs the experiment: per trial, sample one configuration-model graph and
/// record the certified ball rank plus the `U_n` / `V_n` verdicts.
pub fn run_experiment(params: &ExperimentParams) -> Result<ExperimentReport> {
    if params.trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let mut records = Vec::with_capacity(params.trials as usize);
    for trial in 0..params.trials {
        let seed = trial_seed(params.seed, trial);
        let g = sample_configuration(params.degree, params.vertices, seed)?;
        let rank_ball = rank_lower_bound(&GraphInput::finite(g.clone()), params.ball_radius)?;
        let un = in_un(&g, params.depth)?;
        let vn_witness = match in_vn(&g, params.depth)? {
            VnStatus::Holds { witness_radius } => Some(witness_radius),
            VnStatus::NotWitnessed { .. } => None,
        };
        records.push(TrialRecord {
            trial,
            seed,
            rank_ball,
            in_un: un,
            vn_witness,
        });
    }
    let trials = params.trials as f64;
    let un_fraction = records.iter().filter(|r| r.in_un).count() as f64 / trials;
    let vn_fraction = records.iter().filter(|r| r.vn_witness.is_some()).count() as f64 / trials;
    Ok(ExperimentReport {
        params: *params,
        records,
        un_fraction,
        vn_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::Radius;
    use crate::iso::{balls_equivalent, canonical_code};

    /// All ways to pair up `0..n`, as flat `[a0, b0, a1, b1, ...]` vectors.
    fn matchings(n: u32) -> Vec<Vec<u32>> {
        fn go(rest: &mut Vec<u32>, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rest.is_empty() {
                out.push(acc.clone());
                return;
            }
            let first = rest.remove(0);
            for i in 0..rest.len() {
                let partner = rest.remove(i);
                acc.push(first);
                acc.push(partner);
                go(rest, acc, out);
                acc.pop();
                acc.pop();
                rest.insert(i, partner);
            }
            rest.insert(0, first);
        }
        let mut rest: Vec<u32> = (0..n).collect();
        let mut out = Vec::new();
        go(&mut rest, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn two_cubic_vertices_have_two_shapes_in_ratio_six_to_nine() {
        let all = matchings(6);
        assert_eq!(all.len(), 15);
        let mut by_code: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        let mut loop_counts = Vec::new();
        for m in &all {
            let g = graph_from_matching(3, 2, m);
            assert!(g.is_regular(3));
            let ball = GraphInput::finite(g.clone()).ball(Radius(8)).unwrap();
            assert!(ball.is_saturated());
            *by_code.entry(canonical_code(&ball)).or_default() += 1;
            loop_counts.push(g.edges().filter(|(_, (u, w))| u == w).count());
        }
        let mut counts: Vec<usize> = by_code.values().copied().collect();
        counts.sort();
        // Exactly two shapes: the triple edge (6 matchings, no loops) and
        // one edge with a loop at each endpoint (9 matchings).
        assert_eq!(counts, vec![6, 9]);
        assert_eq!(loop_counts.iter().filter(|&&c| c == 0).count(), 6);
        assert_eq!(loop_counts.iter().filter(|&&c| c == 2).count(), 9);
    }

    #[test]
    fn sampling_is_deterministic_in_the_seed() {
        let a = sample_configuration(3, 8, 42).unwrap();
        let b = sample_configuration(3, 8, 42).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        let c = sample_configuration(3, 8, 43).unwrap();
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn samples_are_k_regular() {
        for seed in 0..20 {
            assert!(sample_configuration(3, 4, seed).unwrap().is_regular(3));
        }
        for seed in 0..10 {
            assert!(sample_configuration(4, 9, seed).unwrap().is_regular(4));
        }
    }

    #[test]
    fn odd_stub_total_is_rejected() {
        match sample_configuration(3, 9, 1) {
            Err(Error::InvalidParameter(_)) => {}
            other => panic!("expected parameter error, got {other:?}"),
        }
    }

    #[test]
    fn loop_frequency_matches_the_exact_census() {
        // Of the 15 matchings on two cubic vertices, 9 produce loops.
        let trials = 600u32;
        let mut looped = 0;
        for t in 0..trials {
            let g = sample_configuration(3, 2, trial_seed(99, t)).unwrap();
            if g.edges().any(|(_, (u, w))| u == w) {
                looped += 1;
            }
        }
        let fraction = f64::from(looped) / f64::from(trials);
        assert!((fraction - 0.6).abs() < 0.07, "loop fraction {fraction}");
    }

    /// Root joined to two disjoint triangles: the deep part at depth 1 has
    /// two components, each with a cycle.
    fn dumbbell() -> FiniteMultigraph {
        let mut g = FiniteMultigraph::new("dumbbell");
        for v in ["r", "a1", "a2", "a3", "b1", "b2", "b3"] {
            g.add_vertex(v.into()).unwrap();
        }
        let edges = [
            ("ra", "r", "a1"),
            ("rb", "r", "b1"),
            ("a12", "a1", "a2"),
            ("a23", "a2", "a3"),
            ("a31", "a3", "a1"),
            ("b12", "b1", "b2"),
            ("b23", "b2", "b3"),
            ("b31", "b3", "b1"),
        ];
        for (e, u, v) in edges {
            g.add_edge(e.into(), u.into(), v.into()).unwrap();
        }
        g.set_root("r".into()).unwrap();
        g
    }

    #[test]
    fn un_and_vn_verdicts_on_handcrafted_graphs() {
        let g = dumbbell();
        assert!(in_un(&g, 1).unwrap());
        assert!(matches!(
            in_vn(&g, 1).unwrap(),
            VnStatus::NotWitnessed { .. }
        ));

        // A six-cycle: the deep part at depth 1 is a path, connected but
        // cycle-free.
        let mut c6 = FiniteMultigraph::new("c6");
        for i in 0..6 {
            c6.add_vertex(format!("c{i}").into()).unwrap();
        }
        for i in 0..6 {
            c6.add_edge(
                format!("e{i}").into(),
                format!("c{i}").into(),
                format!("c{}", (i + 1) % 6).into(),
            )
            .unwrap();
        }
        c6.set_root("c0".into()).unwrap();
        assert!(!in_un(&c6, 1).unwrap());
        assert!(matches!(in_vn(&c6, 1).unwrap(), VnStatus::Holds { .. }));
    }

    #[test]
    fn delta_u_adds_certified_rank_outside_the_ball() {
        let g0 = sample_configuration(3, 20, 7).unwrap();
        let mut g = g0.clone();
        let rank_before = g.rank();
        let barrels = delta_u(&mut g, 1, 2, 3).unwrap();
        assert_eq!(barrels.len(), 2);
        assert_eq!(g.rank(), rank_before + 2);
        assert!(g.is_regular(3));
        let before = GraphInput::finite(g0).ball(Radius(4)).unwrap();
        let after = GraphInput::finite(g.clone()).ball(Radius(4)).unwrap();
        assert!(balls_equivalent(&before, &after));

        let h0 = sample_configuration(4, 10, 3).unwrap();
        let mut h = h0.clone();
        let rank_before = h.rank();
        delta_u(&mut h, 0, 3, 4).unwrap();
        assert_eq!(h.rank(), rank_before + 6);
        assert!(h.is_regular(4));
        let before = GraphInput::finite(h0).ball(Radius(2)).unwrap();
        let after = GraphInput::finite(h).ball(Radius(2)).unwrap();
        assert!(balls_equivalent(&before, &after));
    }

    #[test]
    fn delta_u_reports_missing_capacity() {
        let mut g = dumbbell();
        // Only a23 and b23 have both endpoints at depth >= 2.
        match delta_u(&mut g, 1, 5, 3) {
            Err(Error::NotEnoughEdgesOutside {
                needed,
                available,
                radius,
            }) => assert_eq!((needed, available, radius), (5, 2, 1)),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn delta_v_chains_the_deep_components() {
        let mut g = dumbbell();
        let before = GraphInput::finite(g.clone()).ball(Radius(2)).unwrap();
        let rank_before = g.rank();
        let report = delta_v(&mut g, 1, 3).unwrap();
        assert_eq!(
            report,
            DeltaVReport {
                joined: 2,
                skipped: 0
            }
        );
        assert!(matches!(in_vn(&g, 1).unwrap(), VnStatus::Holds { .. }));
        assert!(in_un(&g, 1).unwrap());
        assert_eq!(g.rank(), rank_before + 1);
        let after = GraphInput::finite(g.clone()).ball(Radius(2)).unwrap();
        assert!(balls_equivalent(&before, &after));
    }

    #[test]
    fn delta_v_skips_edgeless_deep_components() {
        let mut g = FiniteMultigraph::new("star");
        for v in ["r", "x", "y", "z"] {
            g.add_vertex(v.into()).unwrap();
        }
        for (e, v) in [("ex", "x"), ("ey", "y"), ("ez", "z")] {
            g.add_edge(e.into(), "r".into(), v.into()).unwrap();
        }
        g.set_root("r".into()).unwrap();
        let text = g.to_text();
        let report = delta_v(&mut g, 1, 3).unwrap();
        assert_eq!(
            report,
            DeltaVReport {
                joined: 0,
                skipped: 3
            }
        );
        assert_eq!(g.to_text(), text);
    }

    #[test]
    fn experiments_are_reproducible_and_csv_is_stable() {
        let params = ExperimentParams {
            degree: 3,
            vertices: 20,
            trials: 10,
            seed: 7,
            depth: 2,
            ball_radius: 3,
        };
        let a = run_experiment(&params).unwrap();
        let b = run_experiment(&params).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records.len(), 10);
        for (t, r) in a.records.iter().enumerate() {
            assert_eq!(r.trial, t as u32);
            assert_eq!(r.seed, trial_seed(7, t as u32));
        }
        let csv = a.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("trial,seed,rank_ball_R,in_Un,in_Vn_witness_radius")
        );
        for line in lines {
            assert_eq!(line.split(',').count(), 5);
        }
        assert_eq!(csv.lines().count(), 11);
        assert!((0.0..=1.0).contains(&a.un_fraction));
        assert!((0.0..=1.0).contains(&a.vn_fraction));
    }

    #[test]
    fn deep_cycles_are_common_in_larger_samples() {
        let params = ExperimentParams {
            degree: 3,
            vertices: 200,
            trials: 30,
            seed: 11,
            depth: 2,
            ball_radius: 4,
        };
        let report = run_experiment(&params).unwrap();
        assert!(
            report.un_fraction >= 0.6,
            "un fraction {}",
            report.un_fraction
        );
        assert!(
            report.vn_fraction >= 0.6,
            "vn fraction {}",
            report.vn_fraction
        );
    }
}
