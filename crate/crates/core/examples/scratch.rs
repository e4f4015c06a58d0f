//! Temporary pre-verification harness (deleted before delivery).

use endgraph::{
    delta_u, delta_v, in_basic_open, in_un, in_vn, run_experiment, sample_configuration,
    trial_seed, ExperimentParams, FiniteMultigraph, GraphInput, Radius, VnStatus,
};

fn full_rank(g: &FiniteMultigraph) -> usize {
    let big = g.vertex_count() as u32 + 5;
    GraphInput::finite(g.clone())
        .ball(Radius::integer(big))
        .unwrap()
        .rank()
}

/// Returns Err(reason) if the case fails any C6 requirement.
fn c6_case(k: u32, seed: u64) -> Result<(), String> {
    let n = 2u32;
    let r = 2u32;
    let mut g = sample_configuration(k, 60, seed).map_err(|e| format!("sample: {e}"))?;
    let g0 = g.clone();
    let before = full_rank(&g);
    delta_u(&mut g, r, n as usize, k).map_err(|e| format!("delta_u: {e}"))?;
    let mid = full_rank(&g);
    if mid - before != (n * (k - 2)) as usize {
        return Err(format!("delta_u gain {} != {}", mid - before, n * (k - 2)));
    }
    if !in_basic_open(
        &GraphInput::finite(g0.clone()),
        &GraphInput::finite(g.clone()),
        Radius(2 * (r + 1) + 1),
    )
    .unwrap()
    {
        return Err("delta_u moved the closed (r+1)-ball".into());
    }
    let rep = delta_v(&mut g, n, k).map_err(|e| format!("delta_v: {e}"))?;
    if rep.skipped != 0 {
        return Err(format!("delta_v skipped {}", rep.skipped));
    }
    if !in_basic_open(
        &GraphInput::finite(g0.clone()),
        &GraphInput::finite(g.clone()),
        Radius(2 * n + 1),
    )
    .unwrap()
    {
        return Err("delta_v moved the closed n-ball".into());
    }
    let after = full_rank(&g);
    if after - before < n as usize {
        return Err(format!("total gain {} < {}", after - before, n));
    }
    if !g.is_regular(k) {
        return Err("not regular".into());
    }
    match in_vn(&g, n).map_err(|e| format!("in_vn: {e}"))? {
        VnStatus::Holds { .. } => {}
        VnStatus::NotWitnessed { .. } => return Err("V_n not witnessed".into()),
    }
    if !in_un(&g, n).map_err(|e| format!("in_un: {e}"))? {
        return Err("U_n fails".into());
    }
    Ok(())
}

fn pin_checks() {
    use endgraph::closed_set::{no_triple_ones_automaton, two_point_automaton};
    use endgraph::oracle::{is_k_regular_within, oracle_degree};
    use endgraph::{
        component_tree, cubic_realization, distance, enumerate_pants_complexes,
        regular_realization, resolve_graph_spec, ClosedSetPresentation, PantsComplex, Rank,
        StandardGraphDescriptor,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;
    use std::time::Instant;

    // C4: profiles strictly increasing at every step, for full + random subsets.
    let mut sets: Vec<Vec<Vec<bool>>> = vec![
        (0..8)
            .map(|i: u32| (0..3).map(|b| (i >> b) & 1 == 1).collect())
            .collect(),
        vec![vec![false, false, false]],
        vec![vec![true, false, true], vec![false, true, true]],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..6 {
        let mask: u16 = rng.random_range(1..=u16::MAX);
        sets.push(
            (0..16u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| (0..4).map(|b| (i >> b) & 1 == 1).collect())
                .collect(),
        );
    }
    for s in &sets {
        let d = s[0].len();
        let words: BTreeSet<Vec<bool>> = s.iter().cloned().collect();
        let set = ClosedSetPresentation::CylinderUnion {
            words: s.clone(),
        };
        let g = cubic_realization(set).unwrap();
        let ct = component_tree(&g, 8).unwrap();
        for level in 0..=8u32 {
            let n = (level as usize).div_ceil(2);
            let expect = if n <= d {
                words
                    .iter()
                    .map(|w| w[..n].to_vec())
                    .collect::<BTreeSet<_>>()
                    .len()
            } else {
                words.len() << (n - d)
            };
            assert_eq!(
                ct.branch_count(level),
                expect,
                "branch count at level {level} for |S|={} d={d}",
                words.len()
            );
        }
        for p in ct.branch_profiles() {
            assert!(
                p.windows(2).all(|w| w[0] < w[1]),
                "non-increasing step in {p:?} for |S|={}",
                words.len()
            );
        }
    }
    println!("C4 pin ok ({} sets)", sets.len());

    // C5 grid size with ends=0 included.
    let mut grid = Vec::new();
    for n in 0..=4u32 {
        for l in 0..=n {
            for r in 0..=5u32 {
                if let Ok(d) = StandardGraphDescriptor::finite_pair(r, n, l) {
                    grid.push(d);
                }
            }
            if let Ok(d) = StandardGraphDescriptor::finite_pair_infinite_rank(n, l) {
                grid.push(d);
            }
        }
    }
    println!("C5 grid size {}", grid.len());

    // C1: the degree-2 vs degree-3 pinned distance.
    let line = resolve_graph_spec("line").unwrap();
    let tree3 = resolve_graph_spec("tree3").unwrap();
    println!("C1 line/tree3 {:?}", distance(&line, &tree3, 12).unwrap());

    // C8: enumeration size + timing, degree law, named complexes.
    let t0 = Instant::now();
    let pool = enumerate_pants_complexes(4, 2);
    println!("C8 enumerate(4,2): {} complexes in {:?}", pool.len(), t0.elapsed());
    for c in &pool {
        let g = c.to_graph();
        for (j, &d) in c.legs().iter().enumerate() {
            assert_eq!(
                g.degree(&format!("p{j}").into()).unwrap(),
                d + 1,
                "degree law"
            );
        }
        assert_eq!(
            c.euler_characteristic(),
            2 - 2 * c.genus() as i64,
            "euler law"
        );
    }
    let sphere = PantsComplex::new(vec![0, 0], vec![((0, 1), (1, 1))], 0).unwrap();
    let torus = PantsComplex::new(vec![1], vec![((0, 1), (0, 2))], 0).unwrap();
    let genus2 = PantsComplex::new(
        vec![2, 2],
        vec![((0, 1), (1, 1)), ((0, 2), (1, 2)), ((0, 3), (1, 3))],
        0,
    )
    .unwrap();
    println!(
        "C8 genus sphere={} torus={} genus2={} torus-graph {}v/{}e",
        sphere.genus(),
        torus.genus(),
        genus2.genus(),
        torus.to_graph().vertex_count(),
        torus.to_graph().edge_count()
    );
    assert_eq!(
        format!("{}", endgraph::SurfaceClass::new(Rank::Finite(2), endgraph::EndPairDescriptor::FinitePair { ends: 0, loop_ends: 0 }).unwrap()),
        "genus=2 ends=0 loops=0"
    );

    // C2: spellings and half-ball stubs.
    for k in 3..=9u32 {
        let spec = if k == 3 {
            "cubic(full)".to_string()
        } else {
            format!("regular{k}(full)")
        };
        let g = resolve_graph_spec(&spec).unwrap();
        let b = g.ball(endgraph::Radius(1)).unwrap();
        assert_eq!((b.ids.len(), b.stubs[0]), (1, k), "{spec}");
    }
    println!("C2 pin ok");

    // C3: regularity timing at candidate radii + walk smoke test.
    let five_cyl = || ClosedSetPresentation::CylinderUnion {
        words: vec![
            vec![false, false],
            vec![false, true, false],
            vec![false, true, true],
            vec![true, false],
            vec![true, true],
        ],
    };
    let sets3: Vec<(&str, ClosedSetPresentation)> = vec![
        ("full", ClosedSetPresentation::Full),
        ("two_point", two_point_automaton()),
        ("5cyl", five_cyl()),
        ("auto4", no_triple_ones_automaton()),
    ];
    for k in 3..=9u32 {
        for (name, set) in &sets3 {
            let g = if k == 3 {
                cubic_realization(set.clone()).unwrap()
            } else {
                regular_realization(set.clone(), k).unwrap()
            };
            let deep = k == 3 || k == 6 || k == 8 || *name == "two_point";
            let r = if deep { 30 } else { 15 };
            let t0 = Instant::now();
            let ok = g.with_oracle(|o| is_k_regular_within(o, k, r)).unwrap();
            assert!(ok, "k={k} {name} regular to {r}");
            let el = t0.elapsed();
            if el.as_millis() > 300 {
                println!("C3 k={k} {name} r={r}: {el:?}");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
            g.with_oracle(|o| {
                for _walk in 0..10 {
                    let mut v = o.root();
                    let mut prev: Option<endgraph::EdgeId> = None;
                    let mut visited: BTreeSet<endgraph::VertexId> = BTreeSet::new();
                    for _step in 0..60 {
                        assert_eq!(oracle_degree(o, &v), k, "walk degree k={k} {name}");
                        visited.insert(v.clone());
                        let inc = o.incident(&v);
                        let fresh: Vec<usize> = (0..inc.len())
                            .filter(|&i| {
                                !inc[i].is_loop
                                    && !visited.contains(&inc[i].other)
                                    && Some(&inc[i].id) != prev.as_ref()
                            })
                            .collect();
                        let pool: Vec<usize> = if fresh.is_empty() {
                            let back: Vec<usize> = (0..inc.len())
                                .filter(|&i| !inc[i].is_loop && Some(&inc[i].id) != prev.as_ref())
                                .collect();
                            if back.is_empty() {
                                (0..inc.len()).collect()
                            } else {
                                back
                            }
                        } else {
                            fresh
                        };
                        let pick = pool[rng.random_range(0..pool.len())];
                        prev = Some(inc[pick].id.clone());
                        v = inc[pick].other.clone();
                    }
                }
            })
            .unwrap();
        }
    }
    println!("C3 pin ok");
}

fn main() {
    let mode = std::env::args().nth(1).unwrap_or_default();
    if mode == "pin" {
        pin_checks();
    } else if mode == "c6" {
        'base: for base in 1u64..=60 {
            let mut failures = 0u32;
            let mut first_fail = String::new();
            for k in [3u32, 4, 5] {
                for t in 0..20u32 {
                    let seed = trial_seed(base ^ (k as u64) << 32, t);
                    if let Err(why) = c6_case(k, seed) {
                        failures += 1;
                        if first_fail.is_empty() {
                            first_fail = format!("k={k} t={t}: {why}");
                        }
                        if failures > 3 {
                            println!("base {base}: >{failures} failures ({first_fail})");
                            continue 'base;
                        }
                    }
                }
            }
            if failures == 0 {
                println!("base {base}: ALL 60 PASS");
                return;
            }
            println!("base {base}: {failures} failures ({first_fail})");
        }
        println!("no clean base found");
    } else if mode == "c7" {
        for seed in [1u64, 2, 3] {
            for vertices in [100u32, 300, 1000] {
                let params = ExperimentParams {
                    degree: 3,
                    vertices,
                    trials: 200,
                    seed,
                    depth: 3,
                    ball_radius: 8,
                };
                let start = std::time::Instant::now();
                let rep = run_experiment(&params).unwrap();
                println!(
                    "seed {seed} N {vertices}: un {:.3} vn {:.3} ({:?})",
                    rep.un_fraction,
                    rep.vn_fraction,
                    start.elapsed()
                );
            }
        }
    } else {
        eprintln!("usage: scratch c6|c7");
    }
}
