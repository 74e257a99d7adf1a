//! Named verification procedures: each id runs an exhaustive or sampled
//! sweep of one claim the library implements and reports pass/fail counts
//! with replayable failures.

use crate::coloring::{
    agrees, avoids, is_proper, standard_coloring, Color, PartialColoring,
};
use crate::constructive::{
    avoid_block_decomposition, avoid_proper_partition, avoid_rebalance, avoid_single_per_color,
    avoid_subcube, avoid_three_colors, classify_extend_avoid, classify_extension, extend_avoiding,
    BlockMode, RebalanceParams, RebalanceVariant,
};
use crate::enumeration::verify_claim_table;
use crate::error::{Error, Result};
use crate::generators::{
    counterexample_graph, near_vertex_unavoidable, random_instance, random_list_instance, Family,
    InstanceSpec,
};
use crate::host::Host;
use crate::hypercube::{havel_moravek_check, Hypercube};
use crate::json::cube_coloring_to_json;
use crate::solver::{avoid_exact, extend_avoid_exact, extend_exact, relabel_avoid, SolveStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Verification ids accepted by [`run_verification`].
pub const KNOWN_IDS: [&str; 20] = [
    "prop1", "lem4", "lem7", "th8i", "th8ii", "prop9", "prop10", "lem11", "lem12", "th13",
    "claim1", "lem14", "th15", "th16", "cor1", "cor2", "cor3", "cor4", "prop3", "prop4",
];

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Dimension override where meaningful.
    pub d: Option<u32>,
    /// Sample count override for sampled sweeps.
    pub samples: Option<u64>,
    pub seed: u64,
    /// Node budget for the solver-heavy sweeps.
    pub budget: Option<u64>,
}

/// Outcome of one verification run. `failures == 0` iff the run passed;
/// every failure carries a replayable serialized instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: String,
    pub instances: u64,
    pub failures: u64,
    pub failing: Vec<String>,
    pub wall_ms: u128,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    instances: u64,
    failing: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            instances: 0,
            failing: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failing.len() < 32 {
            self.failing.push(describe());
        } else if !ok {
            self.failing.push("(truncated)".into());
            self.failing.truncate(33);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.failing.extend(other.failing);
    }

    fn into_report(self, id: &str, params: String, start: Instant) -> VerificationReport {
        VerificationReport {
            id: id.into(),
            params,
            failures: self.failing.len() as u64,
            instances: self.instances,
            failing: self.failing,
            wall_ms: start.elapsed().as_millis(),
        }
    }
}

fn describe_cube_instance(cube: &Hypercube, pc: &PartialColoring) -> String {
    serde_json::to_string(&cube_coloring_to_json(cube, pc)).unwrap_or_default()
}

/// Run one named verification procedure.
pub fn run_verification(id: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    match id {
        "prop1" => prop1(opts, start),
        "lem4" => lem4(opts, start),
        "lem7" => lem7(opts, start),
        "th8i" => th8(opts, start, RebalanceVariant::PartI, "th8i"),
        "th8ii" => th8(opts, start, RebalanceVariant::PartII, "th8ii"),
        "prop9" => prop9(opts, start),
        "prop10" => prop10(opts, start),
        "lem11" => lem11(opts, start),
        "lem12" => lem12(opts, start),
        "th13" => th13(opts, start),
        "claim1" => claim1(opts, start),
        "lem14" => lem14(opts, start),
        "th15" => th15(opts, start),
        "th16" => th16(opts, start),
        "cor1" => block_mode_sweep(opts, start, "cor1", BlockMode::Matching3k, Family::Matching),
        "cor2" => block_mode_sweep(opts, start, "cor2", BlockMode::FewMatchings, Family::FewMatchings),
        "cor3" => block_mode_sweep(
            opts,
            start,
            "cor3",
            BlockMode::ProperTwoFloor,
            Family::ProperTwoFloor,
        ),
        "cor4" => block_mode_sweep(opts, start, "cor4", BlockMode::Induced3k, Family::InducedClasses),
        "prop3" => prop3(opts, start),
        "prop4" => prop4(opts, start),
        _ => Err(Error::Unsupported(format!("unknown verification id {id}"))),
    }
}

/// Structural subcube criterion on fixed instances.
fn prop1(_opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    use crate::generators::GeneralGraph;
    let mut tally = Tally::new();

    for d in 2..=3u32 {
        let cube = Hypercube::new(d)?;
        let coloring: Vec<Color> = (0..cube.edge_count())
            .map(|e| cube.edge_at(e).dim() + 1)
            .collect();
        tally.check(havel_moravek_check(&cube, &coloring)?, || {
            format!("standard coloring of Q_{d} rejected")
        });
    }

    // no proper 3-edge coloring certifies the triangle
    let k3 = GeneralGraph::new(3, vec![(0, 1), (1, 2), (0, 2)])?;
    let mut any = false;
    for colors in [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]] {
        if havel_moravek_check(&k3, &colors)? {
            any = true;
        }
    }
    tally.check(!any, || "triangle accepted".into());

    // paths and cycles with known answers
    let p3 = GeneralGraph::new(4, vec![(0, 1), (1, 2), (2, 3)])?;
    tally.check(havel_moravek_check(&p3, &[1, 2, 1])?, || {
        "path 1,2,1 rejected".into()
    });
    let c6 = GeneralGraph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])?;
    tally.check(havel_moravek_check(&c6, &[1, 2, 3, 1, 2, 3])?, || {
        "tricolored hexagon rejected".into()
    });
    tally.check(!havel_moravek_check(&c6, &[1, 2, 1, 2, 1, 2])?, || {
        "bicolored hexagon accepted".into()
    });

    Ok(tally.into_report("prop1", "fixed instances".into(), start))
}

/// Every edge sits in `d - 1` bicolored 4-cycles and has `d - 1` parallels.
fn lem4(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let dmax = opts.d.unwrap_or(10);
    let mut tally = Tally::new();
    for d in 2..=dmax {
        let cube = Hypercube::new(d)?;
        let f = standard_coloring(&cube);
        for e in cube.edges() {
            let cycles = cube.four_cycles_through(e)?;
            let bicolored = cycles.iter().all(|cyc| {
                let mut colors: Vec<Color> = cyc
                    .edges()
                    .iter()
                    .map(|&x| f.color(cube.edge_index(x)))
                    .collect();
                colors.sort_unstable();
                colors.dedup();
                colors.len() == 2
            });
            let ok = cycles.len() == (d - 1) as usize
                && bicolored
                && cube.parallel_edges(e)?.len() == (d - 1) as usize;
            tally.check(ok, || format!("edge {e} of Q_{d}"));
        }
    }
    Ok(tally.into_report("lem4", format!("d = 2..={dmax}"), start))
}

/// Single-per-color avoidance sweep.
fn lem7(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let samples = opts.samples.unwrap_or(1000);
    let mut tally = Tally::new();
    for d in 3..=6u32 {
        let cube = Hypercube::new(d)?;
        let sub: Tally = (0..samples)
            .into_par_iter()
            .map(|i| -> Result<Tally> {
                let mut t = Tally::new();
                let spec = InstanceSpec {
                    family: Family::SinglePerColor,
                    d,
                    seed: opts.seed ^ (u64::from(d) << 40) ^ i,
                    target_edges: None,
                };
                let (_, pc) = random_instance(&spec)?;
                let ok = match avoid_single_per_color(&cube, &pc) {
                    Ok(g) => avoids(&g, &pc)?,
                    Err(_) => false,
                };
                // cross-check avoidability with the exact solver on Q4
                let ok = ok && (d != 4 || avoid_exact(&cube, &pc, d, opts.budget)?.found());
                t.check(ok, || describe_cube_instance(&cube, &pc));
                Ok(t)
            })
            .try_reduce(Tally::new, |mut a, b| {
                a.merge(b);
                Ok(a)
            })?;
        tally.merge(sub);
    }
    Ok(tally.into_report("lem7", format!("d = 3..=6, {samples} samples each"), start))
}

/// Rebalancing sweep: seeded sparse instances at the stated caps.
fn th8(
    opts: &VerifyOptions,
    start: Instant,
    variant: RebalanceVariant,
    id: &str,
) -> Result<VerificationReport> {
    let samples = opts.samples.unwrap_or(100);
    let mut tally = Tally::new();
    for d in [8u32, 10, 12] {
        let cube = Hypercube::new(d)?;
        let cap = (d / 8) as usize;
        let ab = (117 * d as usize) / 100;
        let params = RebalanceParams::part_i(d, ab, ab);
        let sub: Tally = (0..samples)
            .into_par_iter()
            .map(|i| -> Result<Tally> {
                let mut t = Tally::new();
                let spec = InstanceSpec {
                    family: Family::Sparse {
                        per_color_cap: cap,
                        matching_cap: ab,
                        parallel_cap: ab,
                    },
                    d,
                    seed: opts.seed ^ (u64::from(d) << 32) ^ i,
                    target_edges: None,
                };
                let (_, pc) = random_instance(&spec)?;
                let out = avoid_rebalance(&cube, &pc, &params, variant)?;
                let ok = match &out.coloring {
                    Some(g) => {
                        // trace validity: disjoint cycles, net movement,
                        // interchange count within the quadratic budget
                        let mut seen = std::collections::HashSet::new();
                        let disjoint = out.trace.used_edges.iter().all(|e| seen.insert(*e));
                        let moves_ok =
                            out.trace.steps.iter().all(|s| s.moved >= 1 && s.moved <= 2);
                        let count_ok =
                            out.trace.interchange_count() <= (d as usize * d as usize) / 8;
                        avoids(g, &pc)? && disjoint && moves_ok && count_ok
                    }
                    None => false,
                };
                t.check(ok, || describe_cube_instance(&cube, &pc));
                Ok(t)
            })
            .try_reduce(Tally::new, |mut a, b| {
                a.merge(b);
                Ok(a)
            })?;
        tally.merge(sub);
    }
    Ok(tally.into_report(
        id,
        format!("d = 8,10,12, cap d/8, a = b = 1.17d, {samples} samples each"),
        start,
    ))
}

/// Three-color avoidance sweep.
fn prop9(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let samples = opts.samples.unwrap_or(1000);
    let mut tally = Tally::new();
    for d in 3..=6u32 {
        let cube = Hypercube::new(d)?;
        let sub: Tally = (0..samples)
            .into_par_iter()
            .map(|i| -> Result<Tally> {
                let mut t = Tally::new();
                let spec = InstanceSpec {
                    family: Family::ThreeColors,
                    d,
                    seed: opts.seed ^ (u64::from(d) << 36) ^ i,
                    target_edges: None,
                };
                let (_, pc) = random_instance(&spec)?;
                let ok = match avoid_three_colors(&cube, &pc) {
                    Ok(g) => avoids(&g, &pc)?,
                    Err(_) => false,
                };
                t.check(ok, || describe_cube_instance(&cube, &pc));
                Ok(t)
            })
            .try_reduce(Tally::new, |mut a, b| {
                a.merge(b);
                Ok(a)
            })?;
        tally.merge(sub);
    }
    Ok(tally.into_report("prop9", format!("d = 3..=6, {samples} samples each"), start))
}

/// Half-cube avoidance sweep.
fn prop10(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let samples = opts.samples.unwrap_or(500);
    let mut tally = Tally::new();
    for d in 3..=6u32 {
        let cube = Hypercube::new(d)?;
        let sub: Tally = (0..samples)
            .into_par_iter()
            .map(|i| -> Result<Tally> {
                let mut t = Tally::new();
                let split = (i % u64::from(d)) as u32;
                let spec = InstanceSpec {
                    family: Family::Halfcube { split_dim: split },
                    d,
                    seed: opts.seed ^ (u64::from(d) << 44) ^ i,
                    target_edges: None,
                };
                let (_, pc) = random_instance(&spec)?;
                let ok = match avoid_subcube(&cube, &pc, split) {
                    Ok(g) => avoids(&g, &pc)?,
                    Err(_) => false,
                };
                t.check(ok, || describe_cube_instance(&cube, &pc));
                Ok(t)
            })
            .try_reduce(Tally::new, |mut a, b| {
                a.merge(b);
                Ok(a)
            })?;
        tally.merge(sub);
    }
    Ok(tally.into_report("prop10", format!("d = 3..=6, {samples} samples each"), start))
}

fn all_matchings(cube: &Hypercube) -> Vec<Vec<usize>> {
    // all nonempty matchings of the cube, by backtracking over edges
    fn rec(
        cube: &Hypercube,
        from: usize,
        covered: &mut Vec<bool>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for e in from..cube.edge_count() {
            let (u, v) = cube.endpoints(e);
            if covered[u] || covered[v] {
                continue;
            }
            covered[u] = true;
            covered[v] = true;
            current.push(e);
            out.push(current.clone());
            rec(cube, e + 1, covered, current, out);
            current.pop();
            covered[u] = false;
            covered[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(
        cube,
        0,
        &mut vec![false; cube.vertex_count()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Every 3-edge coloring of `Q_3` inside a matching is avoidable.
fn lem11(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let cube = Hypercube::new(3)?;
    let mut tally = Tally::new();
    let matchings = all_matchings(&cube);
    let results: Vec<Tally> = matchings
        .par_iter()
        .map(|edges| -> Result<Tally> {
            let mut t = Tally::new();
            let k = edges.len();
            let mut assignment = vec![1u32; k];
            loop {
                let mut pc = PartialColoring::empty(cube.edge_count(), 3)?;
                for (pos, &e) in edges.iter().enumerate() {
                    pc.set(e, assignment[pos])?;
                }
                let solver_ok = avoid_exact(&cube, &pc, 3, opts.budget)?.found();
                let construct_ok = match avoid_block_decomposition(&cube, &pc, BlockMode::Matching3k)
                {
                    Ok(g) => avoids(&g, &pc)?,
                    Err(_) => false,
                };
                t.check(solver_ok && construct_ok, || {
                    describe_cube_instance(&cube, &pc)
                });
                // next assignment
                let mut pos = 0;
                loop {
                    if pos == k {
                        return Ok(t);
                    }
                    if assignment[pos] < 3 {
                        assignment[pos] += 1;
                        break;
                    }
                    assignment[pos] = 1;
                    pos += 1;
                }
            }
        })
        .collect::<Result<_>>()?;
    for t in results {
        tally.merge(t);
    }
    Ok(tally.into_report("lem11", "exhaustive over matchings of Q_3".into(), start))
}

/// Every proper 3-edge coloring of `Q_3` inside two dimensional matchings
/// is avoidable.
fn lem12(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let cube = Hypercube::new(3)?;
    let mut tally = Tally::new();
    for i in 0..3u32 {
        for j in (i + 1)..3 {
            let edges: Vec<usize> = cube
                .dimensional_matching(i)?
                .into_iter()
                .chain(cube.dimensional_matching(j)?)
                .map(|e| cube.edge_index(e))
                .collect();
            // all assignments of {none, 1, 2, 3} over eight edges
            let sub: Tally = (0..4u32.pow(8))
                .into_par_iter()
                .map(|code| -> Result<Tally> {
                    let mut t = Tally::new();
                    let mut pc = PartialColoring::empty(cube.edge_count(), 3)?;
                    let mut x = code;
                    for &e in &edges {
                        let c = x % 4;
                        x /= 4;
                        if c > 0 {
                            pc.set(e, c)?;
                        }
                    }
                    if !is_proper(&cube, &pc) {
                        return Ok(t);
                    }
                    t.check(avoid_exact(&cube, &pc, 3, opts.budget)?.found(), || {
                        describe_cube_instance(&cube, &pc)
                    });
                    Ok(t)
                })
                .try_reduce(Tally::new, |mut a, b| {
                    a.merge(b);
                    Ok(a)
                })?;
            tally.merge(sub);
        }
    }
    Ok(tally.into_report(
        "lem12",
        "exhaustive over proper colorings of two matchings of Q_3".into(),
        start,
    ))
}

/// Proper partition sweep.
fn th13(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let samples = opts.samples.unwrap_or(1000);
    let mut tally = Tally::new();
    for d in 3..=6u32 {
        let cube = Hypercube::new(d)?;
        let sub: Tally = (0..samples)
            .into_par_iter()
            .map(|i| -> Result<Tally> {
                let mut t = Tally::new();
                let spec = InstanceSpec {
                    family: Family::ProperCapped {
                        per_color_cap: (d - 2).max(1) as usize,
                    },
                    d,
                    seed: opts.seed ^ (u64::from(d) << 48) ^ i,
                    target_edges: None,
                };
                let (_, pc) = random_instance(&spec)?;
                let ok = match avoid_proper_partition(&cube, &pc) {
                    Ok(g) => avoids(&g, &pc)?,
                    Err(_) => false,
                };
                t.check(ok, || describe_cube_instance(&cube, &pc));
                Ok(t)
            })
            .try_reduce(Tally::new, |mut a, b| {
                a.merge(b);
                Ok(a)
            })?;
        tally.merge(sub);
    }
    Ok(tally.into_report("th13", format!("d = 3..=6, {samples} samples each"), start))
}

/// Forbidden-triple table.
fn claim1(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let samples = opts.samples.unwrap_or(10_000);
    let report = verify_claim_table(samples, opts.seed)?;
    let mut tally = Tally::new();
    for row in &report.rows {
        tally.check(row.pass(), || {
            format!(
                "row a = {}: observed {} > bound {}",
                row.colored_edges, row.observed_max, row.bound
            )
        });
    }
    Ok(tally.into_report(
        "claim1",
        format!("rows 6..=8 enumerated, 9..=12 sampled at {samples}"),
        start,
    ))
}

/// The two-dimensional characterization: a proper coloring of `Q_2` is
/// unavoidable iff two non-adjacent edges carry different colors.
fn lem14(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let cube = Hypercube::new(2)?;
    let mut tally = Tally::new();
    for code in 0..3u32.pow(4) {
        let mut pc = PartialColoring::empty(cube.edge_count(), 2)?;
        let mut x = code;
        for e in 0..4 {
            let c = x % 3;
            x /= 3;
            if c > 0 {
                pc.set(e, c)?;
            }
        }
        if !is_proper(&cube, &pc) {
            continue;
        }
        let unavoidable = !avoid_exact(&cube, &pc, 2, opts.budget)?.found();
        let pattern = {
            let mut hit = false;
            let colored: Vec<(usize, Color)> = pc.colored().collect();
            for (i, &(e1, c1)) in colored.iter().enumerate() {
                for &(e2, c2) in &colored[i + 1..] {
                    if crate::coloring::edge_distance(&cube, e1, e2) != Some(0) && c1 != c2 {
                        hit = true;
                    }
                }
            }
            hit
        };
        tally.check(unavoidable == pattern, || describe_cube_instance(&cube, &pc));
    }
    Ok(tally.into_report("lem14", "exhaustive over proper colorings of Q_2".into(), start))
}

fn random_proper_at_most(
    cube: &Hypercube,
    max_edges: usize,
    rng: &mut impl Rng,
) -> Result<PartialColoring> {
    let d = cube.dimension();
    let target = rng.gen_range(0..=max_edges);
    let mut pc = PartialColoring::empty(cube.edge_count(), d)?;
    let mut tries = 0;
    while pc.colored_count() < target && tries < 200 {
        tries += 1;
        let e = rng.gen_range(0..cube.edge_count());
        if pc.color(e).is_some() {
            continue;
        }
        let c = rng.gen_range(1..=d);
        pc.set(e, c)?;
        if !is_proper(cube, &pc) {
            pc.clear(e);
        }
    }
    Ok(pc)
}

/// Extendability classifier against the exact solver: exhaustive on `Q_3`
/// (up to 3 colored edges), sampled on `Q_4`.
fn th15(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let mut tally = Tally::new();
    let q3 = Hypercube::new(3)?;

    // exhaustive: all proper colorings with at most 3 colored edges
    let m = q3.edge_count();
    let mut stack: Vec<Vec<(usize, Color)>> = vec![Vec::new()];
    let mut all: Vec<Vec<(usize, Color)>> = vec![Vec::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for partial in &stack {
            let from = partial.last().map_or(0, |&(e, _)| e + 1);
            for e in from..m {
                for c in 1..=3u32 {
                    let mut ext = partial.clone();
                    ext.push((e, c));
                    next.push(ext);
                }
            }
        }
        all.extend(next.iter().cloned());
        stack = next;
    }
    let sub: Tally = all
        .par_iter()
        .map(|pairs| -> Result<Tally> {
            let mut t = Tally::new();
            let mut pc = PartialColoring::empty(m, 3)?;
            for &(e, c) in pairs {
                pc.set(e, c)?;
            }
            if !is_proper(&q3, &pc) {
                return Ok(t);
            }
            let classified_clear = classify_extension(&q3, &pc)?.is_none();
            let solvable = extend_exact(&q3, &pc, 3, opts.budget)?.found();
            t.check(classified_clear == solvable, || {
                describe_cube_instance(&q3, &pc)
            });
            Ok(t)
        })
        .try_reduce(Tally::new, |mut a, b| {
            a.merge(b);
            Ok(a)
        })?;
    tally.merge(sub);

    // sampled on Q4
    let samples = opts.samples.unwrap_or(100_000);
    let q4 = Hypercube::new(4)?;
    let sub: Tally = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Tally> {
            let mut t = Tally::new();
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7515 ^ i);
            let pc = random_proper_at_most(&q4, 4, &mut rng)?;
            let classified_clear = classify_extension(&q4, &pc)?.is_none();
            let solvable = extend_exact(&q4, &pc, 4, opts.budget)?.found();
            t.check(classified_clear == solvable, || {
                describe_cube_instance(&q4, &pc)
            });
            Ok(t)
        })
        .try_reduce(Tally::new, |mut a, b| {
            a.merge(b);
            Ok(a)
        })?;
    tally.merge(sub);

    Ok(tally.into_report(
        "th15",
        format!("Q_3 exhaustive (<= 3 edges), Q_4 sampled at {samples}"),
        start,
    ))
}

/// Extend-while-avoid classifier against the exact solver, with witness
/// production whenever the classifier sees no obstruction.
fn th16(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let mut tally = Tally::new();
    let q3 = Hypercube::new(3)?;
    let m = q3.edge_count();

    // exhaustive on Q_3: |phi| + |psi| = 3, phi proper
    let mut cases: Vec<(Vec<(usize, Color)>, Vec<(usize, Color)>)> = Vec::new();
    for k in 1..=3usize {
        let phi_size = 3 - k;
        // enumerate phi supports and colors
        let mut phis: Vec<Vec<(usize, Color)>> = vec![Vec::new()];
        for _ in 0..phi_size {
            let mut next = Vec::new();
            for partial in &phis {
                let from = partial.last().map_or(0, |&(e, _)| e + 1);
                for e in from..m {
                    for c in 1..=3u32 {
                        let mut ext = partial.clone();
                        ext.push((e, c));
                        next.push(ext);
                    }
                }
            }
            phis = next;
        }
        let mut psis: Vec<Vec<(usize, Color)>> = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for partial in &psis {
                let from = partial.last().map_or(0, |&(e, _)| e + 1);
                for e in from..m {
                    for c in 1..=3u32 {
                        let mut ext = partial.clone();
                        ext.push((e, c));
                        next.push(ext);
                    }
                }
            }
            psis = next;
        }
        for phi in &phis {
            for psi in &psis {
                cases.push((phi.clone(), psi.clone()));
            }
        }
    }
    let sub: Tally = cases
        .par_iter()
        .map(|(phi_pairs, psi_pairs)| -> Result<Tally> {
            let mut t = Tally::new();
            let mut phi = PartialColoring::empty(m, 3)?;
            for &(e, c) in phi_pairs {
                phi.set(e, c)?;
            }
            let mut psi = PartialColoring::empty(m, 3)?;
            for &(e, c) in psi_pairs {
                psi.set(e, c)?;
            }
            if !is_proper(&q3, &phi) {
                return Ok(t);
            }
            let classified_clear = classify_extend_avoid(&q3, &phi, &psi)?.is_none();
            let solvable = extend_avoid_exact(&q3, &phi, &psi, 3, opts.budget)?.found();
            let mut ok = classified_clear == solvable;
            if ok && classified_clear {
                ok = match extend_avoiding(&q3, &phi, &psi)? {
                    Some(w) => agrees(&w, &phi)? && avoids(&w, &psi)?,
                    None => false,
                };
            }
            t.check(ok, || {
                format!(
                    "phi={} psi={}",
                    describe_cube_instance(&q3, &phi),
                    describe_cube_instance(&q3, &psi)
                )
            });
            Ok(t)
        })
        .try_reduce(Tally::new, |mut a, b| {
            a.merge(b);
            Ok(a)
        })?;
    tally.merge(sub);

    // sampled on Q_4: |phi| + |psi| = 4
    let samples = opts.samples.unwrap_or(100_000);
    let q4 = Hypercube::new(4)?;
    let sub: Tally = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Tally> {
            let mut t = Tally::new();
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7616 ^ i);
            let k = rng.gen_range(1..=4usize);
            let mut phi = PartialColoring::empty(q4.edge_count(), 4)?;
            let mut tries = 0;
            while phi.colored_count() < 4 - k && tries < 200 {
                tries += 1;
                let e = rng.gen_range(0..q4.edge_count());
                if phi.color(e).is_some() {
                    continue;
                }
                phi.set(e, rng.gen_range(1..=4))?;
                if !is_proper(&q4, &phi) {
                    phi.clear(e);
                }
            }
            let mut psi = PartialColoring::empty(q4.edge_count(), 4)?;
            let mut tries = 0;
            while psi.colored_count() < k && tries < 200 {
                tries += 1;
                let e = rng.gen_range(0..q4.edge_count());
                if psi.color(e).is_none() {
                    psi.set(e, rng.gen_range(1..=4))?;
                }
            }
            if phi.colored_count() + psi.colored_count() != 4 {
                return Ok(t);
            }
            let classified_clear = classify_extend_avoid(&q4, &phi, &psi)?.is_none();
            let solvable = extend_avoid_exact(&q4, &phi, &psi, 4, opts.budget)?.found();
            let mut ok = classified_clear == solvable;
            if ok && classified_clear {
                ok = match extend_avoiding(&q4, &phi, &psi)? {
                    Some(w) => agrees(&w, &phi)? && avoids(&w, &psi)?,
                    None => false,
                };
            }
            t.check(ok, || {
                format!(
                    "phi={} psi={}",
                    describe_cube_instance(&q4, &phi),
                    describe_cube_instance(&q4, &psi)
                )
            });
            Ok(t)
        })
        .try_reduce(Tally::new, |mut a, b| {
            a.merge(b);
            Ok(a)
        })?;
    tally.merge(sub);

    Ok(tally.into_report(
        "th16",
        format!("Q_3 exhaustive (|phi|+|psi| = 3), Q_4 sampled at {samples}"),
        start,
    ))
}

/// Block decomposition sweeps for the four hypothesis modes.
fn block_mode_sweep(
    opts: &VerifyOptions,
    start: Instant,
    id: &str,
    mode: BlockMode,
    family: Family,
) -> Result<VerificationReport> {
    let samples = opts.samples.unwrap_or(1000);
    let needs_3k = matches!(mode, BlockMode::Matching3k | BlockMode::Induced3k);
    let dims: Vec<u32> = if needs_3k {
        vec![3, 6]
    } else {
        vec![3, 4, 5, 6]
    };
    let mut tally = Tally::new();
    for d in dims {
        let cube = Hypercube::new(d)?;
        let sub: Tally = (0..samples)
            .into_par_iter()
            .map(|i| -> Result<Tally> {
                let mut t = Tally::new();
                let spec = InstanceSpec {
                    family: family.clone(),
                    d,
                    seed: opts.seed ^ (u64::from(d) << 52) ^ i,
                    target_edges: None,
                };
                let (_, pc) = random_instance(&spec)?;
                let ok = match avoid_block_decomposition(&cube, &pc, mode) {
                    Ok(g) => avoids(&g, &pc)?,
                    Err(_) => false,
                };
                t.check(ok, || describe_cube_instance(&cube, &pc));
                Ok(t)
            })
            .try_reduce(Tally::new, |mut a, b| {
                a.merge(b);
                Ok(a)
            })?;
        tally.merge(sub);
    }
    Ok(tally.into_report(id, format!("{samples} samples per dimension"), start))
}

/// Unavoidable counterexample families.
fn prop3(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let mut tally = Tally::new();
    for d in 2..=4u32 {
        let (graph, pc) = counterexample_graph(d)?;
        let r = avoid_exact(&graph, &pc, d, opts.budget)?;
        tally.check(r.status == SolveStatus::None, || {
            format!("chained-blocks instance d = {d}: {:?}", r.status)
        });
    }
    for d in 3..=4u32 {
        let (cube, pc) = near_vertex_unavoidable(d)?;
        let r = avoid_exact(&cube, &pc, d, opts.budget)?;
        tally.check(r.status == SolveStatus::None, || {
            format!("near-vertex instance d = {d}: {:?}", r.status)
        });
    }
    Ok(tally.into_report("prop3", "d = 2..=4 chained blocks, d = 3..=4 near-vertex".into(), start))
}

/// Hall relabeling over list instances.
fn prop4(opts: &VerifyOptions, start: Instant) -> Result<VerificationReport> {
    let samples = opts.samples.unwrap_or(1000);
    let mut tally = Tally::new();
    for d in 2..=8u32 {
        let cube = Hypercube::new(d)?;
        let f = standard_coloring(&cube);
        for k in 1..d {
            let sub: Tally = (0..samples)
                .into_par_iter()
                .map(|i| -> Result<Tally> {
                    let mut t = Tally::new();
                    let seed = opts.seed ^ (u64::from(d) << 56) ^ (u64::from(k) << 16) ^ i;
                    let (_, lists) =
                        random_list_instance(d, k as usize, (d - k) as usize, seed)?;
                    let ok = match relabel_avoid(&cube, &f, &lists)? {
                        Some(g) => (0..g.edge_count()).all(|e| !lists.contains(e, g.color(e))),
                        None => false,
                    };
                    t.check(ok, || format!("list instance d = {d}, k = {k}, seed = {seed}"));
                    Ok(t)
                })
                .try_reduce(Tally::new, |mut a, b| {
                    a.merge(b);
                    Ok(a)
                })?;
            tally.merge(sub);
        }
    }
    Ok(tally.into_report(
        "prop4",
        format!("d = 2..=8, k = 1..d, {samples} list instances each"),
        start,
    ))
}

/// Exhaustive record of a solver-against-enumeration cross-check, used by
/// the acceptance suite.
pub fn solver_completeness_check(
    d: u32,
    samples: u64,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let cube = Hypercube::new(d)?;
    let palette = d;
    // every proper total coloring, once
    let mut proper: Vec<Vec<Color>> = Vec::new();
    let m = cube.edge_count();
    let mut assignment = vec![1u32; m];
    loop {
        let pc = {
            let mut pc = PartialColoring::empty(m, palette)?;
            for (e, &c) in assignment.iter().enumerate() {
                pc.set(e, c)?;
            }
            pc
        };
        if is_proper(&cube, &pc) {
            proper.push(assignment.clone());
        }
        let mut pos = 0;
        loop {
            if pos == m {
                break;
            }
            if assignment[pos] < palette {
                assignment[pos] += 1;
                break;
            }
            assignment[pos] = 1;
            pos += 1;
        }
        if pos == m {
            break;
        }
    }

    let tally_result: Tally = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Tally> {
            let mut t = Tally::new();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(d) << 8) ^ i);
            let mut pc = PartialColoring::empty(m, palette)?;
            for e in 0..m {
                if rng.gen_bool(0.4) {
                    pc.set(e, rng.gen_range(1..=palette))?;
                }
            }
            // avoid
            let solver = avoid_exact(&cube, &pc, palette, None)?.found();
            let naive = proper
                .iter()
                .any(|f| pc.colored().all(|(e, c)| f[e] != c));
            t.check(solver == naive, || describe_cube_instance(&cube, &pc));
            // extend, on the properized version
            let mut phi = pc.clone();
            loop {
                if is_proper(&cube, &phi) {
                    break;
                }
                let (e, _) = phi.colored().last().unwrap();
                phi.clear(e);
            }
            let solver = extend_exact(&cube, &phi, palette, None)?.found();
            let naive = proper
                .iter()
                .any(|f| phi.colored().all(|(e, c)| f[e] == c));
            t.check(solver == naive, || describe_cube_instance(&cube, &phi));
            Ok(t)
        })
        .try_reduce(Tally::new, |mut a, b| {
            a.merge(b);
            Ok(a)
        })?;

    let mut tally = Tally::new();
    tally.merge(tally_result);
    Ok(tally.into_report(
        "solver-completeness",
        format!("Q_{d}, {samples} random colorings, {} proper totals", proper.len()),
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(
            run_verification("nope", &VerifyOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn prop1_and_lem4_pass() {
        let opts = VerifyOptions {
            d: Some(6),
            ..Default::default()
        };
        let r = run_verification("prop1", &opts).unwrap();
        assert!(r.pass(), "{:?}", r.failing);
        let r = run_verification("lem4", &opts).unwrap();
        assert!(r.pass(), "{:?}", r.failing);
    }

    #[test]
    fn lem14_passes() {
        let r = run_verification("lem14", &VerifyOptions::default()).unwrap();
        assert!(r.pass(), "{:?}", r.failing);
    }

    #[test]
    fn small_sweeps_pass() {
        let opts = VerifyOptions {
            samples: Some(25),
            seed: 7,
            ..Default::default()
        };
        for id in ["lem7", "prop9", "prop10", "th13", "cor1", "cor2", "cor3", "cor4", "prop4"] {
            let r = run_verification(id, &opts).unwrap();
            assert!(r.pass(), "{id}: {:?}", r.failing);
        }
    }

    #[test]
    fn solver_completeness_small() {
        let r = solver_completeness_check(2, 50, 3).unwrap();
        assert!(r.pass(), "{:?}", r.failing);
    }
}
