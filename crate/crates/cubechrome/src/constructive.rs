//! Constructive avoidance algorithms and obstruction classifiers.
//!
//! Each `avoid_*` entry point builds a proper `d`-edge coloring that avoids
//! the given partial coloring under its hypothesis class, using matchings in
//! the class-color conflict graph, interchanges on bicolored 4-cycles, and
//! per-block exact solves on small sub-hypercubes. Every returned coloring
//! is re-checked for properness and avoidance before it leaves the module,
//! so soundness does not depend on the hypotheses.
//!
//! The classifiers decide extendability and extend-while-avoid by scanning
//! for the known obstruction conditions; `None` means no obstruction.

use crate::coloring::{
    avoids, color_bit, full_palette, is_proper, standard_coloring, Color, ColorSet,
    ListAssignment, PartialColoring, ProperColoring,
};
use crate::error::{Error, Result};
use crate::host::{incidence, Host};
use crate::hypercube::{Edge, FourCycle, Hypercube, SubcubeComponent};
use crate::solver::{avoid_exact, extend_exact, list_color_exact, relabel_avoid, RelabelGraph};

fn finish(cube: &Hypercube, pc: &PartialColoring, f: ProperColoring) -> Result<ProperColoring> {
    if !is_proper(cube, &f.to_partial()) {
        return Err(Error::Internal("construction produced an improper coloring".into()));
    }
    if !avoids(&f, pc)? {
        return Err(Error::Internal("construction failed to avoid the input".into()));
    }
    Ok(f)
}

fn hypothesis(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(msg.into()))
    }
}

/// Avoid a coloring in which every color appears on at most one edge
/// (`d >= 3`). Standard coloring plus a class-color matching; if Hall fails,
/// one dimensional matching holds all colored edges and a single 4-cycle
/// interchange repairs it.
pub fn avoid_single_per_color(cube: &Hypercube, pc: &PartialColoring) -> Result<ProperColoring> {
    let d = cube.dimension();
    hypothesis(d >= 3, "needs d >= 3")?;
    hypothesis(
        pc.per_color_counts().iter().all(|&c| c <= 1),
        "every color may appear on at most one edge",
    )?;
    let f = standard_coloring(cube);
    let forbidden = ListAssignment::from_partial(pc);
    if let Some(g) = relabel_avoid(cube, &f, &forbidden)? {
        return finish(cube, pc, g);
    }
    // Hall failure here means one class carries every colored edge.
    let full_class = (1..=d)
        .find(|&a| {
            pc.colored()
                .all(|(e, _)| f.color(e) == a)
        })
        .ok_or_else(|| Error::Internal("matching failed without a saturated class".into()))?;
    let other = (1..=d).find(|&b| b != full_class).unwrap();
    let cycle = cube
        .four_cycles_spanned(full_class - 1, other - 1)
        .into_iter()
        .find(|cyc| {
            cyc.edges()
                .iter()
                .any(|e| pc.color(cube.edge_index(*e)).is_some())
        })
        .ok_or_else(|| Error::Internal("no 4-cycle touches the colored edges".into()))?;
    let component: Vec<usize> = cycle
        .edges()
        .iter()
        .map(|e| cube.edge_index(*e))
        .collect();
    let f = crate::coloring::interchange(cube, &f, full_class, other, &component)?;
    let g = relabel_avoid(cube, &f, &forbidden)?
        .ok_or_else(|| Error::Internal("matching still blocked after interchange".into()))?;
    finish(cube, pc, g)
}

/// Caps and constants for the rebalancing construction.
#[derive(Clone, Copy, Debug)]
pub struct RebalanceParams {
    /// Per-color cap on the coloring to avoid.
    pub per_color_cap: usize,
    /// Cap on colored edges per dimensional matching (`a_d`).
    pub matching_cap: usize,
    /// Cap on colored parallel edges per edge (`b_d`).
    pub parallel_cap: usize,
    /// Constant for the parallel-sparsity variant; `c2 = 2 c1 (c1 + 2) 34^2`.
    pub c1: u32,
}

impl RebalanceParams {
    pub fn part_i(d: u32, matching_cap: usize, parallel_cap: usize) -> RebalanceParams {
        RebalanceParams {
            per_color_cap: (d / 8) as usize,
            matching_cap,
            parallel_cap,
            c1: 1,
        }
    }

    pub fn part_ii(d: u32, c1: u32) -> RebalanceParams {
        let c2 = RebalanceParams::c2_of(c1);
        RebalanceParams {
            per_color_cap: (d as u64 / c2) as usize,
            matching_cap: (c1 as usize) * d as usize,
            parallel_cap: (d / (34 * c1)) as usize,
            c1,
        }
    }

    pub fn c2_of(c1: u32) -> u64 {
        2 * c1 as u64 * (c1 as u64 + 2) * 34 * 34
    }

    pub fn c2(&self) -> u64 {
        RebalanceParams::c2_of(self.c1)
    }

    /// `(109/1776) d^2 - 2 b (a - 7d/8) >= 0` and `a >= b`, in exact
    /// integer arithmetic.
    pub fn feasible(&self, d: u32) -> bool {
        let d = d as i128;
        let a = self.matching_cap as i128;
        let b = self.parallel_cap as i128;
        436 * d * d >= 1776 * b * (8 * a - 7 * d) && a >= b
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RebalanceVariant {
    /// Plain cycle selection.
    PartI,
    /// Additionally requires both heavy-class edges of the chosen cycle to
    /// have at most `d / (34 c1)` unused colored parallel edges.
    PartII,
}

/// One interchange performed by the rebalancer.
#[derive(Clone, Debug)]
pub struct InterchangeStep {
    /// Edge indices of the 4-cycle, walking around it.
    pub cycle: [usize; 4],
    pub heavy_class: Color,
    pub light_class: Color,
    /// Colored edges moved out of the heavy class (1 or 2).
    pub moved: usize,
}

/// What the rebalancer did: the interchanged cycles in order, per-class
/// colored-edge counts before and after, the edges it consumed, and any
/// hypothesis warnings. Warnings do not stop the run.
#[derive(Clone, Debug, Default)]
pub struct RebalanceTrace {
    pub steps: Vec<InterchangeStep>,
    pub counts_before: Vec<usize>,
    pub counts_after: Vec<usize>,
    pub used_edges: Vec<usize>,
    pub warnings: Vec<String>,
}

impl RebalanceTrace {
    pub fn interchange_count(&self) -> usize {
        self.steps.len()
    }
}

#[derive(Clone, Debug)]
pub struct RebalanceOutcome {
    /// Present iff the run ended in a verified avoiding coloring. Absent
    /// results carry a diagnostic trace; they are not unavoidability
    /// certificates.
    pub coloring: Option<ProperColoring>,
    pub trace: RebalanceTrace,
}

fn heavy_threshold_met(count: usize, d: u32) -> bool {
    8 * count >= 7 * d as usize + 8
}

fn light_threshold_met(count: usize, d: u32) -> bool {
    8 * count + 16 <= 7 * d as usize
}

/// Rebalance the standard coloring by interchanging unused bicolored
/// 4-cycles until no class is heavy, then relabel classes along a perfect
/// matching. Sound unconditionally; guaranteed to succeed under the
/// hypothesis caps.
pub fn avoid_rebalance(
    cube: &Hypercube,
    pc: &PartialColoring,
    params: &RebalanceParams,
    variant: RebalanceVariant,
) -> Result<RebalanceOutcome> {
    let d = cube.dimension();
    let mut trace = RebalanceTrace::default();

    let counts = pc.per_color_counts();
    if counts.iter().any(|&c| c > params.per_color_cap) {
        trace
            .warnings
            .push(format!("per-color cap {} exceeded", params.per_color_cap));
    }
    for i in 0..d {
        let in_matching = cube
            .dimensional_matching(i)?
            .iter()
            .filter(|e| pc.color(cube.edge_index(**e)).is_some())
            .count();
        if in_matching > params.matching_cap {
            trace
                .warnings
                .push(format!("matching {i} holds {in_matching} colored edges"));
            break;
        }
    }
    if variant == RebalanceVariant::PartI {
        let parallel_bound_ok = pc.colored().all(|(e, _)| {
            cube.parallel_edges(cube.edge_at(e))
                .unwrap()
                .iter()
                .filter(|p| pc.color(cube.edge_index(**p)).is_some())
                .count()
                <= params.parallel_cap
        });
        if !parallel_bound_ok {
            trace.warnings.push("parallel cap exceeded".into());
        }
    }
    if !params.feasible(d) {
        trace.warnings.push("cap inequality infeasible".into());
    }

    let mut f = standard_coloring(cube);
    let mut used = vec![false; cube.edge_count()];
    // colored-edge count per class of the working coloring
    let mut class_counts = vec![0usize; d as usize];
    for (e, _) in pc.colored() {
        class_counts[(f.color(e) - 1) as usize] += 1;
    }
    trace.counts_before = class_counts.clone();

    // unused colored parallels for the part-ii selection rule; the cycle's
    // own edges are about to be consumed, so they do not count
    let unused_colored_parallels =
        |cube: &Hypercube, used: &[bool], e: Edge, cycle: &[usize]| -> usize {
            cube.parallel_edges(e)
                .unwrap()
                .iter()
                .filter(|p| {
                    let idx = cube.edge_index(**p);
                    !used[idx] && !cycle.contains(&idx) && pc.color(idx).is_some()
                })
                .count()
        };

    loop {
        let Some(heavy) = (1..=d).find(|&a| heavy_threshold_met(class_counts[(a - 1) as usize], d))
        else {
            break;
        };
        // light classes, fewest colored edges first
        let mut lights: Vec<Color> = (1..=d)
            .filter(|&b| b != heavy && light_threshold_met(class_counts[(b - 1) as usize], d))
            .collect();
        lights.sort_by_key(|&b| (class_counts[(b - 1) as usize], b));

        let mut chosen: Option<(Color, FourCycle, usize)> = None;
        'light: for &light in &lights {
            for cyc in cube.four_cycles_spanned(heavy - 1, light - 1) {
                let idx: Vec<usize> = cyc.edges().iter().map(|e| cube.edge_index(*e)).collect();
                if idx.iter().any(|&e| used[e]) {
                    continue;
                }
                let heavy_edges = cyc.edges_in_dim(heavy - 1);
                let light_edges = cyc.edges_in_dim(light - 1);
                let moved = heavy_edges
                    .iter()
                    .filter(|e| pc.color(cube.edge_index(**e)).is_some())
                    .count();
                if moved == 0 {
                    continue;
                }
                if light_edges
                    .iter()
                    .any(|e| pc.color(cube.edge_index(*e)).is_some())
                {
                    continue;
                }
                if variant == RebalanceVariant::PartII {
                    let cap = (d / (34 * params.c1)) as usize;
                    if heavy_edges
                        .iter()
                        .any(|&e| unused_colored_parallels(cube, &used, e, &idx) > cap)
                    {
                        continue;
                    }
                }
                chosen = Some((light, cyc, moved));
                break 'light;
            }
        }

        let Some((light, cyc, moved)) = chosen else {
            trace.counts_after = class_counts;
            trace
                .warnings
                .push(format!("no admissible 4-cycle for heavy class {heavy}"));
            return Ok(RebalanceOutcome {
                coloring: None,
                trace,
            });
        };

        let component: Vec<usize> = cyc.edges().iter().map(|e| cube.edge_index(*e)).collect();
        f = crate::coloring::interchange(cube, &f, heavy, light, &component)?;
        for &e in &component {
            used[e] = true;
            trace.used_edges.push(e);
        }
        class_counts[(heavy - 1) as usize] -= moved;
        class_counts[(light - 1) as usize] += moved;
        trace.steps.push(InterchangeStep {
            cycle: [component[0], component[1], component[2], component[3]],
            heavy_class: heavy,
            light_class: light,
            moved,
        });
    }

    trace.counts_after = class_counts;
    let forbidden = ListAssignment::from_partial(pc);
    match relabel_avoid(cube, &f, &forbidden)? {
        Some(g) => {
            let g = finish(cube, pc, g)?;
            Ok(RebalanceOutcome {
                coloring: Some(g),
                trace,
            })
        }
        None => {
            trace
                .warnings
                .push("class-color matching blocked after rebalancing".into());
            Ok(RebalanceOutcome {
                coloring: None,
                trace,
            })
        }
    }
}

/// Avoid a coloring with at most three colors, each on at most `d - 2`
/// edges. Class-color matching with an interchange repair for `d >= 5`, a
/// split into two exactly-solved `Q_3` halves for `d = 4`, and a direct
/// exact solve for `d <= 3`.
pub fn avoid_three_colors(cube: &Hypercube, pc: &PartialColoring) -> Result<ProperColoring> {
    let d = cube.dimension();
    let counts = pc.per_color_counts();
    hypothesis(
        pc.colors_used().count_ones() <= 3,
        "at most three colors may appear",
    )?;
    hypothesis(
        counts.iter().all(|&c| c == 0 || c + 2 <= d as usize),
        "every color may appear on at most d - 2 edges",
    )?;

    if d <= 3 {
        let r = avoid_exact(cube, pc, d, None)?;
        let w = r
            .witness
            .ok_or_else(|| Error::Internal("small case must be avoidable".into()))?;
        return finish(cube, pc, w);
    }

    let f = standard_coloring(cube);
    let forbidden = ListAssignment::from_partial(pc);
    let graph = RelabelGraph::new(&f, &forbidden)?;
    let violator = match graph.perfect_matching_or_violator() {
        Ok(_) => {
            let g = relabel_avoid(cube, &f, &forbidden)?
                .ok_or_else(|| Error::Internal("matching vanished".into()))?;
            return finish(cube, pc, g);
        }
        Err(v) => v,
    };

    if d == 4 {
        // one matching of the violator holds one edge of each color; peel it
        // off, solve the two Q3 halves with the used colors, and give the
        // matching the free color
        let class = violator[0];
        let used: Vec<Color> = (1..=d)
            .filter(|&c| color_bit(c) & pc.colors_used() != 0)
            .collect();
        let free = (1..=d)
            .find(|&c| !used.contains(&c))
            .ok_or_else(|| Error::Internal("no free color in the 4-dimensional case".into()))?;
        let dims: Vec<u32> = (0..d).filter(|&i| i != class - 1).collect();
        let mut colors = vec![0 as Color; cube.edge_count()];
        for e in cube.dimensional_matching(class - 1)? {
            colors[cube.edge_index(e)] = free;
        }
        for comp in cube.induced_by_matchings(&dims)? {
            solve_component_avoiding(cube, pc, &comp, &used, &mut colors)?;
        }
        let g = ProperColoring::new(cube, d, colors)?;
        return finish(cube, pc, g);
    }

    // d >= 5: some class outside the violator holds no colored edges;
    // interchanging one 4-cycle with a colored edge unblocks the matching
    let in_violator = |c: Color| violator.contains(&c);
    let blocked = violator[0];
    let candidates: Vec<Color> = (1..=d)
        .filter(|&c| {
            !in_violator(c)
                && pc
                    .colored()
                    .all(|(e, _)| f.color(e) != c)
        })
        .collect();
    for &spare in &candidates {
        for cyc in cube.four_cycles_spanned(blocked - 1, spare - 1) {
            let has_colored = cyc
                .edges()
                .iter()
                .any(|e| pc.color(cube.edge_index(*e)).is_some());
            if !has_colored {
                continue;
            }
            let component: Vec<usize> = cyc.edges().iter().map(|e| cube.edge_index(*e)).collect();
            let f2 = crate::coloring::interchange(cube, &f, blocked, spare, &component)?;
            if let Some(g) = relabel_avoid(cube, &f2, &forbidden)? {
                return finish(cube, pc, g);
            }
        }
    }
    Err(Error::Internal(
        "no interchange unblocked the class-color matching".into(),
    ))
}

/// Solve one induced sub-hypercube component exactly, avoiding the
/// restriction of `pc`, writing the block colors into `out`. `block_colors`
/// are the host colors granted to this component.
fn solve_component_avoiding(
    cube: &Hypercube,
    pc: &PartialColoring,
    comp: &SubcubeComponent,
    block_colors: &[Color],
    out: &mut [Color],
) -> Result<()> {
    let sub = comp.sub();
    let palette = block_colors.len() as u32;
    debug_assert_eq!(palette, sub.dimension());
    let mut sub_pc = PartialColoring::empty(sub.edge_count(), palette)?;
    for sub_e in sub.edges() {
        let host_idx = cube.edge_index(comp.edge_in_host(sub_e));
        if let Some(c) = pc.color(host_idx) {
            if let Some(pos) = block_colors.iter().position(|&bc| bc == c) {
                sub_pc.set(sub.edge_index(sub_e), pos as Color + 1)?;
            }
            // colors outside the block are avoided for free
        }
    }
    let r = avoid_exact(&sub, &sub_pc, palette, None)?;
    let w = r.witness.ok_or_else(|| {
        Error::Internal("block instance unexpectedly unavoidable; hypothesis check is wrong".into())
    })?;
    for sub_e in sub.edges() {
        let host_idx = cube.edge_index(comp.edge_in_host(sub_e));
        out[host_idx] = block_colors[(w.color(sub.edge_index(sub_e)) - 1) as usize];
    }
    Ok(())
}

/// Hypothesis modes for the block decomposition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockMode {
    /// `d = 3k`, colored edges form a matching.
    Matching3k,
    /// Colored edges confined to `floor(d/3)` dimensional matchings.
    FewMatchings,
    /// Proper, confined to `2 floor(d/3)` dimensional matchings.
    ProperTwoFloor,
    /// `d = 3k`, proper, every colored edge at distance 1 from at most one
    /// other edge of its color.
    Induced3k,
}

/// Partition the dimensions into triples (plus a small remainder where
/// allowed), route the colored dimensional matchings into distinct triples,
/// solve every `Q_3`/`Q_2`/`Q_1` component exactly with its three (or fewer)
/// block colors, and concatenate.
pub fn avoid_block_decomposition(
    cube: &Hypercube,
    pc: &PartialColoring,
    mode: BlockMode,
) -> Result<ProperColoring> {
    let d = cube.dimension();
    let colored_dims: Vec<u32> = {
        let mut dims: Vec<u32> = pc.colored().map(|(e, _)| cube.edge_at(e).dim()).collect();
        dims.sort_unstable();
        dims.dedup();
        dims
    };

    match mode {
        BlockMode::Matching3k => {
            hypothesis(d % 3 == 0, "needs d divisible by 3")?;
            let mut covered = std::collections::HashSet::new();
            hypothesis(
                pc.colored().all(|(e, _)| {
                    let (u, v) = cube.endpoints(e);
                    covered.insert(u) && covered.insert(v)
                }),
                "colored edges must form a matching",
            )?;
        }
        BlockMode::FewMatchings => {
            hypothesis(
                colored_dims.len() <= (d / 3) as usize,
                "colored edges must lie in floor(d/3) dimensional matchings",
            )?;
        }
        BlockMode::ProperTwoFloor => {
            hypothesis(is_proper(cube, pc), "coloring must be proper")?;
            hypothesis(
                colored_dims.len() <= 2 * (d / 3) as usize,
                "colored edges must lie in 2 floor(d/3) dimensional matchings",
            )?;
        }
        BlockMode::Induced3k => {
            hypothesis(d % 3 == 0, "needs d divisible by 3")?;
            hypothesis(is_proper(cube, pc), "coloring must be proper")?;
            let colored: Vec<(usize, Color)> = pc.colored().collect();
            for &(e, c) in &colored {
                let close = colored
                    .iter()
                    .filter(|&&(e2, c2)| {
                        e2 != e
                            && c2 == c
                            && crate::coloring::edge_distance(cube, e, e2) == Some(1)
                    })
                    .count();
                hypothesis(
                    close <= 1,
                    "each colored edge may sit at distance 1 from at most one same-colored edge",
                )?;
            }
        }
    }

    let triple_count = (d / 3) as usize;
    let remainder = (d % 3) as usize;
    let blocks: Vec<Vec<u32>> = match mode {
        // consecutive triples: the hypothesis survives restriction to any
        // triple, so no routing is needed (and d is divisible by 3)
        BlockMode::Matching3k | BlockMode::Induced3k => (0..triple_count)
            .map(|i| vec![3 * i as u32, 3 * i as u32 + 1, 3 * i as u32 + 2])
            .collect(),
        // route the colored matchings into distinct triples (two per triple
        // in the proper mode) and keep the remainder block colorless
        BlockMode::FewMatchings | BlockMode::ProperTwoFloor => {
            let per_triple = if mode == BlockMode::ProperTwoFloor { 2 } else { 1 };
            if colored_dims.len() > per_triple * triple_count {
                return Err(Error::HypothesisViolated(
                    "more colored matchings than triple slots".into(),
                ));
            }
            let mut blocks: Vec<Vec<u32>> =
                vec![Vec::new(); triple_count + usize::from(remainder > 0)];
            for (i, &dim) in colored_dims.iter().enumerate() {
                blocks[i / per_triple].push(dim);
            }
            let mut rest: Vec<u32> = (0..d).filter(|i| !colored_dims.contains(i)).collect();
            rest.reverse(); // pop() yields ascending order
            for block in blocks.iter_mut().take(triple_count) {
                while block.len() < 3 {
                    block.push(
                        rest.pop()
                            .ok_or_else(|| Error::Internal("dims exhausted".into()))?,
                    );
                }
            }
            if remainder > 0 {
                let tail = blocks.last_mut().unwrap();
                while let Some(dim) = rest.pop() {
                    tail.push(dim);
                }
                debug_assert_eq!(tail.len(), remainder);
            }
            blocks
        }
    };

    let mut colors = vec![0 as Color; cube.edge_count()];
    let mut next_color: Color = 1;
    for block in &blocks {
        let block_colors: Vec<Color> = (0..block.len() as u32).map(|i| next_color + i).collect();
        next_color += block.len() as Color;
        for comp in cube.induced_by_matchings(block)? {
            solve_component_avoiding(cube, pc, &comp, &block_colors, &mut colors)?;
        }
    }
    let g = ProperColoring::new(cube, d, colors)?;
    finish(cube, pc, g)
}

/// Avoid a proper coloring with per-color cap `d - 2` by partitioning the
/// colors into pairs (plus one triple when `d` is odd) over pairs (triples)
/// of dimensional matchings, solving each small component exactly. Direct
/// reductions handle `d <= 4`.
pub fn avoid_proper_partition(cube: &Hypercube, pc: &PartialColoring) -> Result<ProperColoring> {
    let d = cube.dimension();
    hypothesis(is_proper(cube, pc), "coloring must be proper")?;
    hypothesis(
        pc.per_color_counts()
            .iter()
            .all(|&c| c == 0 || c + 2 <= d as usize),
        "every color may appear on at most d - 2 edges",
    )?;

    if d <= 3 {
        let r = avoid_exact(cube, pc, d, None)?;
        let w = r
            .witness
            .ok_or_else(|| Error::Internal("small proper case must be avoidable".into()))?;
        return finish(cube, pc, w);
    }

    if d == 4 {
        // a dimensional matching missing some color exists; peel it off
        for i in 0..d {
            let matching = cube.dimensional_matching(i)?;
            let mut present: ColorSet = 0;
            for e in &matching {
                if let Some(c) = pc.color(cube.edge_index(*e)) {
                    present |= color_bit(c);
                }
            }
            if present == full_palette(d) {
                continue;
            }
            let free = (1..=d).find(|&c| present & color_bit(c) == 0).unwrap();
            let used: Vec<Color> = (1..=d).filter(|&c| c != free).collect();
            let dims: Vec<u32> = (0..d).filter(|&j| j != i).collect();
            let mut colors = vec![0 as Color; cube.edge_count()];
            for e in matching {
                colors[cube.edge_index(e)] = free;
            }
            for comp in cube.induced_by_matchings(&dims)? {
                solve_component_avoiding(cube, pc, &comp, &used, &mut colors)?;
            }
            let g = ProperColoring::new(cube, d, colors)?;
            return finish(cube, pc, g);
        }
        return Err(Error::Internal(
            "no dimensional matching misses a color despite the cap".into(),
        ));
    }

    // d >= 5: fixed pairing of dimensions, with the most loaded pair pulled
    // forward when d = 5 so the triple block stays sparse
    let mut dims: Vec<u32> = (0..d).collect();
    if d == 5 {
        let mut load = vec![0usize; d as usize];
        for (e, _) in pc.colored() {
            load[cube.edge_at(e).dim() as usize] += 1;
        }
        dims.sort_by_key(|&i| (std::cmp::Reverse(load[i as usize]), i));
    }
    let (pair_blocks, triple_block): (Vec<[u32; 2]>, Option<[u32; 3]>) = if d % 2 == 0 {
        (
            (0..(d / 2) as usize)
                .map(|i| [dims[2 * i], dims[2 * i + 1]])
                .collect(),
            None,
        )
    } else {
        let k = ((d - 1) / 2) as usize; // k - 1 pair blocks and one triple
        (
            (0..k - 1).map(|i| [dims[2 * i], dims[2 * i + 1]]).collect(),
            Some([dims[d as usize - 3], dims[d as usize - 2], dims[d as usize - 1]]),
        )
    };

    // per pair block: the 4-cycle components and, per component, which of
    // the two alternating colorings conflict with which colors
    struct PairBlock {
        comps: Vec<SubcubeComponent>,
    }
    let pair_data: Vec<PairBlock> = pair_blocks
        .iter()
        .map(|pb| {
            Ok(PairBlock {
                comps: cube.induced_by_matchings(pb)?,
            })
        })
        .collect::<Result<_>>()?;

    // a pair {x, y} fits a block iff every component admits one of its two
    // alternating colorings avoiding the restriction
    let pair_feasible = |block: &PairBlock, x: Color, y: Color| -> bool {
        block.comps.iter().all(|comp| {
            let sub = comp.sub();
            // edges around the 4-cycle: dims alternate 0,1,0,1
            let cyc = sub.four_cycle(0, 1, 0);
            let host: Vec<Option<Color>> = cyc
                .edges()
                .iter()
                .map(|e| pc.color(cube.edge_index(comp.edge_in_host(*e))))
                .collect();
            // coloring A gives dim-0 edges x, dim-1 edges y; B swaps
            let fits = |c0: Color, c1: Color| {
                host[0] != Some(c0)
                    && host[2] != Some(c0)
                    && host[1] != Some(c1)
                    && host[3] != Some(c1)
            };
            fits(x, y) || fits(y, x)
        })
    };

    let triple_comps: Option<Vec<SubcubeComponent>> = triple_block
        .as_ref()
        .map(|tb| cube.induced_by_matchings(tb))
        .transpose()?;
    let triple_feasible = |colors: [Color; 3]| -> Result<bool> {
        let comps = triple_comps.as_ref().unwrap();
        for comp in comps {
            let sub = comp.sub();
            let mut sub_pc = PartialColoring::empty(sub.edge_count(), 3)?;
            for sub_e in sub.edges() {
                if let Some(c) = pc.color(cube.edge_index(comp.edge_in_host(sub_e))) {
                    if let Some(pos) = colors.iter().position(|&bc| bc == c) {
                        sub_pc.set(sub.edge_index(sub_e), pos as Color + 1)?;
                    }
                }
            }
            if !avoid_exact(&sub, &sub_pc, 3, None)?.found() {
                return Ok(false);
            }
        }
        Ok(true)
    };

    // depth-first search over ordered partitions in lexicographic order,
    // pruning any block choice that is already infeasible
    fn assign(
        slot: usize,
        pair_data: &[PairBlock],
        remaining: &mut Vec<Color>,
        chosen: &mut Vec<(Color, Color)>,
        pair_feasible: &dyn Fn(&PairBlock, Color, Color) -> bool,
        triple_feasible: &dyn Fn([Color; 3]) -> Result<bool>,
        has_triple: bool,
    ) -> Result<Option<[Color; 3]>> {
        if slot == pair_data.len() {
            if !has_triple {
                return Ok(Some([0, 0, 0]));
            }
            debug_assert_eq!(remaining.len(), 3);
            let t = [remaining[0], remaining[1], remaining[2]];
            return Ok(triple_feasible(t)?.then_some(t));
        }
        let first = remaining[0];
        for i in 1..remaining.len() {
            let second = remaining[i];
            if !pair_feasible(&pair_data[slot], first, second) {
                continue;
            }
            let mut rest: Vec<Color> = remaining.clone();
            rest.retain(|&c| c != first && c != second);
            chosen.push((first, second));
            let mut rest2 = rest;
            if let Some(t) = assign(
                slot + 1,
                pair_data,
                &mut rest2,
                chosen,
                pair_feasible,
                triple_feasible,
                has_triple,
            )? {
                return Ok(Some(t));
            }
            chosen.pop();
        }
        Ok(None)
    }

    let mut remaining: Vec<Color> = (1..=d).collect();
    let mut chosen: Vec<(Color, Color)> = Vec::new();
    let triple_colors = assign(
        0,
        &pair_data,
        &mut remaining,
        &mut chosen,
        &pair_feasible,
        &triple_feasible,
        triple_block.is_some(),
    )?
    .ok_or_else(|| Error::Internal("no admissible color partition found".into()))?;

    let mut colors = vec![0 as Color; cube.edge_count()];
    for (block, &(x, y)) in pair_data.iter().zip(chosen.iter()) {
        for comp in &block.comps {
            let sub = comp.sub();
            let cyc = sub.four_cycle(0, 1, 0);
            let host: Vec<Option<Color>> = cyc
                .edges()
                .iter()
                .map(|e| pc.color(cube.edge_index(comp.edge_in_host(*e))))
                .collect();
            let fits = |c0: Color, c1: Color| {
                host[0] != Some(c0)
                    && host[2] != Some(c0)
                    && host[1] != Some(c1)
                    && host[3] != Some(c1)
            };
            let (c0, c1) = if fits(x, y) { (x, y) } else { (y, x) };
            for sub_e in sub.edges() {
                let host_idx = cube.edge_index(comp.edge_in_host(sub_e));
                colors[host_idx] = if sub_e.dim() == 0 { c0 } else { c1 };
            }
        }
    }
    if triple_block.is_some() {
        let block_colors = triple_colors.to_vec();
        for comp in triple_comps.as_ref().unwrap() {
            solve_component_avoiding(cube, pc, comp, &block_colors, &mut colors)?;
        }
    }
    let g = ProperColoring::new(cube, d, colors)?;
    finish(cube, pc, g)
}

/// Avoid a coloring confined to one half of the cube: list-color the
/// colored half exactly, mirror the result to the other half through the
/// splitting matching, and give every matching edge the unique color missing
/// at its endpoints.
pub fn avoid_subcube(
    cube: &Hypercube,
    pc: &PartialColoring,
    split_dim: u32,
) -> Result<ProperColoring> {
    let d = cube.dimension();
    if split_dim >= d {
        return Err(Error::BadDimensionIndex {
            index: split_dim,
            d,
        });
    }
    hypothesis(d >= 2, "needs d >= 2")?;

    // all colored edges must sit in one half and off the split matching
    let mut side: Option<u32> = None;
    for (e, _) in pc.colored() {
        let edge = cube.edge_at(e);
        if edge.dim() == split_dim {
            return Err(Error::HypothesisViolated(
                "a colored edge lies on the splitting matching".into(),
            ));
        }
        let s = (edge.base() >> split_dim) & 1;
        match side {
            None => side = Some(s),
            Some(prev) if prev != s => {
                return Err(Error::HypothesisViolated(
                    "colored edges occupy both halves".into(),
                ))
            }
            _ => {}
        }
    }
    let side = side.unwrap_or(0);

    let dims: Vec<u32> = (0..d).filter(|&i| i != split_dim).collect();
    let comps = cube.induced_by_matchings(&dims)?;
    let (h1, h2) = {
        let mut h1 = None;
        let mut h2 = None;
        for comp in comps {
            if (comp.anchor() >> split_dim) & 1 == side {
                h1 = Some(comp);
            } else {
                h2 = Some(comp);
            }
        }
        (h1.unwrap(), h2.unwrap())
    };

    let sub = h1.sub();
    let mut lists = ListAssignment::empty(sub.edge_count());
    let all = full_palette(d);
    for sub_e in sub.edges() {
        let host_idx = cube.edge_index(h1.edge_in_host(sub_e));
        let banned = pc.color(host_idx).map_or(0, color_bit);
        lists.set(sub.edge_index(sub_e), all & !banned);
    }
    let r = list_color_exact(&sub, &lists, None)?;
    let w = r
        .witness
        .ok_or_else(|| Error::Internal("half-cube list instance must be colorable".into()))?;

    let mut colors = vec![0 as Color; cube.edge_count()];
    for sub_e in sub.edges() {
        let c = w.color(sub.edge_index(sub_e));
        colors[cube.edge_index(h1.edge_in_host(sub_e))] = c;
        colors[cube.edge_index(h2.edge_in_host(sub_e))] = c;
    }
    // matching edges take the color missing at their endpoints; the two
    // endpoint deficits agree by the mirror construction
    let inc = incidence(cube);
    for e in cube.dimensional_matching(split_dim)? {
        let (u, v) = e.endpoints();
        let missing_at = |x: usize| -> ColorSet {
            let mut seen = 0;
            for &g in &inc[x] {
                if colors[g] != 0 {
                    seen |= color_bit(colors[g]);
                }
            }
            all & !seen
        };
        let mu = missing_at(u as usize);
        let mv = missing_at(v as usize);
        if mu != mv || mu.count_ones() != 1 {
            return Err(Error::Internal(
                "mirrored halves disagree on the missing color".into(),
            ));
        }
        colors[cube.edge_index(e)] = mu.trailing_zeros() + 1;
    }
    let g = ProperColoring::new(cube, d, colors)?;
    finish(cube, pc, g)
}

/// Why a proper precoloring of at most `d` edges fails to extend.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtensionObstruction {
    /// An uncolored edge already sees all `d` colors across its endpoints.
    C1 { edge: usize },
    /// `vertex` has a colored edge, no edge of `color`, and every uncolored
    /// edge at it is blocked from `color` at the far end.
    C2 { vertex: usize, color: Color },
    /// Every edge at `vertex` is uncolored and blocked from `color` at the
    /// far end.
    C3 { vertex: usize, color: Color },
    /// `d = 3` and the three colored edges use three colors inside one
    /// dimensional matching.
    C4 { dim: u32 },
}

impl ExtensionObstruction {
    pub fn kind(&self) -> &'static str {
        match self {
            ExtensionObstruction::C1 { .. } => "C1",
            ExtensionObstruction::C2 { .. } => "C2",
            ExtensionObstruction::C3 { .. } => "C3",
            ExtensionObstruction::C4 { .. } => "C4",
        }
    }
}

/// Classify extendability of a proper coloring of at most `d` edges.
/// Returns the first matching obstruction in the order C1, C2, C3, C4;
/// `None` means extendable.
pub fn classify_extension(
    cube: &Hypercube,
    pc: &PartialColoring,
) -> Result<Option<ExtensionObstruction>> {
    let d = cube.dimension();
    if !is_proper(cube, pc) {
        return Err(Error::NotProper);
    }
    if pc.colored_count() > d as usize {
        return Err(Error::HypothesisViolated(format!(
            "classifier covers at most {d} colored edges"
        )));
    }
    let inc = incidence(cube);
    let colors_at = |v: usize| -> ColorSet {
        inc[v]
            .iter()
            .filter_map(|&e| pc.color(e))
            .fold(0, |acc, c| acc | color_bit(c))
    };
    let vertex_colors: Vec<ColorSet> = (0..cube.vertex_count()).map(colors_at).collect();

    // C1: an uncolored edge whose endpoints see all d colors
    for e in 0..cube.edge_count() {
        if pc.color(e).is_some() {
            continue;
        }
        let (u, v) = cube.endpoints(e);
        if (vertex_colors[u] | vertex_colors[v]) == full_palette(d) {
            return Ok(Some(ExtensionObstruction::C1 { edge: e }));
        }
    }

    // C2 and C3: a vertex and color such that every uncolored incident edge
    // meets `color` at its other endpoint
    let blocked_everywhere = |v: usize, c: Color| -> bool {
        inc[v].iter().all(|&e| {
            if pc.color(e).is_some() {
                return true;
            }
            let (a, b) = cube.endpoints(e);
            let w = if a == v { b } else { a };
            vertex_colors[w] & color_bit(c) != 0
        })
    };
    for v in 0..cube.vertex_count() {
        let at_v = vertex_colors[v];
        let any_colored = inc[v].iter().any(|&e| pc.color(e).is_some());
        if !any_colored {
            continue;
        }
        for c in 1..=d {
            if at_v & color_bit(c) != 0 {
                continue;
            }
            if blocked_everywhere(v, c) {
                return Ok(Some(ExtensionObstruction::C2 { vertex: v, color: c }));
            }
        }
    }
    for v in 0..cube.vertex_count() {
        let any_colored = inc[v].iter().any(|&e| pc.color(e).is_some());
        if any_colored {
            continue;
        }
        for c in 1..=d {
            if blocked_everywhere(v, c) {
                return Ok(Some(ExtensionObstruction::C3 { vertex: v, color: c }));
            }
        }
    }

    // C4: three colors on a subset of one dimensional matching, d = 3
    if d == 3 && pc.colored_count() == 3 {
        let colored: Vec<(usize, Color)> = pc.colored().collect();
        let dims: Vec<u32> = colored.iter().map(|&(e, _)| cube.edge_at(e).dim()).collect();
        let mut cs: Vec<Color> = colored.iter().map(|&(_, c)| c).collect();
        cs.sort_unstable();
        cs.dedup();
        if cs.len() == 3 && dims.iter().all(|&x| x == dims[0]) {
            return Ok(Some(ExtensionObstruction::C4 { dim: dims[0] }));
        }
    }

    Ok(None)
}

/// Why no extension of `phi` avoids `psi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtendAvoidObstruction {
    /// Some edge carries the same color under both colorings.
    Overlap { edge: usize },
    /// At `vertex`, no edge can receive `color`.
    D1 { vertex: usize, color: Color },
    /// The single `psi`-edge sees every other color at its endpoints.
    D2 { edge: usize },
    /// `d = 2` blocking pattern.
    D3 { edges: (usize, usize) },
}

impl ExtendAvoidObstruction {
    pub fn kind(&self) -> &'static str {
        match self {
            ExtendAvoidObstruction::Overlap { .. } => "OVERLAP",
            ExtendAvoidObstruction::D1 { .. } => "D1",
            ExtendAvoidObstruction::D2 { .. } => "D2",
            ExtendAvoidObstruction::D3 { .. } => "D3",
        }
    }
}

fn check_extend_avoid_sizes(
    cube: &Hypercube,
    phi: &PartialColoring,
    psi: &PartialColoring,
) -> Result<()> {
    let d = cube.dimension() as usize;
    if !is_proper(cube, phi) {
        return Err(Error::NotProper);
    }
    let k = psi.colored_count();
    if k < 1 || k > d {
        return Err(Error::HypothesisViolated(format!(
            "need 1..={d} colored edges in the coloring to avoid, got {k}"
        )));
    }
    if phi.colored_count() + k > d {
        return Err(Error::HypothesisViolated(format!(
            "at most {d} colored edges in total, got {}",
            phi.colored_count() + k
        )));
    }
    Ok(())
}

/// Classify extend-while-avoid for a proper `phi` and a partial `psi` with
/// `1 <= |psi| <= d` and `|phi| + |psi| <= d`. Priority: overlap, then D1,
/// D2, D3. `None` means an extension of `phi` avoiding `psi` exists.
pub fn classify_extend_avoid(
    cube: &Hypercube,
    phi: &PartialColoring,
    psi: &PartialColoring,
) -> Result<Option<ExtendAvoidObstruction>> {
    check_extend_avoid_sizes(cube, phi, psi)?;
    let d = cube.dimension();

    for e in 0..cube.edge_count() {
        if let (Some(a), Some(b)) = (phi.color(e), psi.color(e)) {
            if a == b {
                return Ok(Some(ExtendAvoidObstruction::Overlap { edge: e }));
            }
        }
    }

    let inc = incidence(cube);
    let phi_colors_at = |v: usize| -> ColorSet {
        inc[v]
            .iter()
            .filter_map(|&e| phi.color(e))
            .fold(0, |acc, c| acc | color_bit(c))
    };

    // D1: a vertex v and color c such that every incident edge is psi-colored
    // c, phi-colored differently, or uncolored but adjacent to a phi-edge
    // colored c
    for v in 0..cube.vertex_count() {
        'color: for c in 1..=d {
            for &e in &inc[v] {
                if psi.color(e) == Some(c) {
                    continue;
                }
                if let Some(pc) = phi.color(e) {
                    if pc != c {
                        continue;
                    }
                    continue 'color; // a phi-edge already carries c here
                }
                if psi.color(e).is_some() {
                    continue 'color; // psi-colored with another color: free to take c
                }
                let (a, b) = cube.endpoints(e);
                let w = if a == v { b } else { a };
                if (phi_colors_at(w) | phi_colors_at(v)) & color_bit(c) != 0 {
                    // blocked by an adjacent phi-edge of color c
                    continue;
                }
                continue 'color;
            }
            return Ok(Some(ExtendAvoidObstruction::D1 { vertex: v, color: c }));
        }
    }

    // D2: exactly one psi-edge, every other color pinned at its endpoints
    if psi.colored_count() == 1 {
        let (e, c) = psi.colored().next().unwrap();
        let (u, v) = cube.endpoints(e);
        let seen = phi_colors_at(u) | phi_colors_at(v);
        let others = full_palette(d) & !color_bit(c);
        if seen & others == others {
            return Ok(Some(ExtendAvoidObstruction::D2 { edge: e }));
        }
    }

    // D3: the two-dimensional special cases
    if d == 2 {
        let psi_edges: Vec<(usize, Color)> = psi.colored().collect();
        for (i, &(e1, c1)) in psi_edges.iter().enumerate() {
            for &(e2, c2) in &psi_edges[i + 1..] {
                let adjacent = crate::coloring::edge_distance(cube, e1, e2) == Some(0);
                if !adjacent && c1 != c2 {
                    return Ok(Some(ExtendAvoidObstruction::D3 { edges: (e1, e2) }));
                }
            }
        }
        for (e1, c1) in phi.colored() {
            for (e2, c2) in psi.colored() {
                if e1 == e2 {
                    continue;
                }
                let adjacent = crate::coloring::edge_distance(cube, e1, e2) == Some(0);
                if (adjacent && c1 != c2) || (!adjacent && c1 == c2) {
                    return Ok(Some(ExtendAvoidObstruction::D3 { edges: (e1, e2) }));
                }
            }
        }
    }

    Ok(None)
}

/// Construct an extension of `phi` avoiding `psi`, or `None` exactly when
/// the classifier reports an obstruction. The witness comes from recoloring
/// the `psi`-edges (lexicographically first assignment that stays proper,
/// dodges `psi`, and leaves an extendable precoloring) and extending.
pub fn extend_avoiding(
    cube: &Hypercube,
    phi: &PartialColoring,
    psi: &PartialColoring,
) -> Result<Option<ProperColoring>> {
    if classify_extend_avoid(cube, phi, psi)?.is_some() {
        return Ok(None);
    }
    let d = cube.dimension();
    let targets: Vec<usize> = psi
        .colored()
        .filter(|&(e, _)| phi.color(e).is_none())
        .map(|(e, _)| e)
        .collect();

    fn dfs(
        cube: &Hypercube,
        phi: &mut PartialColoring,
        psi: &PartialColoring,
        targets: &[usize],
        d: u32,
    ) -> Result<Option<ProperColoring>> {
        let Some((&e, rest)) = targets.split_first() else {
            if classify_extension(cube, phi)?.is_none() {
                let r = extend_exact(cube, phi, d, None)?;
                let w = r.witness.ok_or_else(|| {
                    Error::Internal("classifier said extendable but the solver disagreed".into())
                })?;
                return Ok(Some(w));
            }
            return Ok(None);
        };
        for c in 1..=d {
            if psi.color(e) == Some(c) {
                continue;
            }
            phi.set(e, c)?;
            if is_proper(cube, phi) {
                if let Some(w) = dfs(cube, phi, psi, rest, d)? {
                    phi.clear(e);
                    return Ok(Some(w));
                }
            }
            phi.clear(e);
        }
        Ok(None)
    }

    let mut working = phi.clone();
    let w = dfs(cube, &mut working, psi, &targets, d)?.ok_or_else(|| {
        Error::Internal("no recoloring of the avoid-edges was extendable".into())
    })?;
    if !(agrees_with(&w, phi) && avoids(&w, psi)?) {
        return Err(Error::Internal("extend-avoid witness failed verification".into()));
    }
    Ok(Some(w))
}

fn agrees_with(f: &ProperColoring, pc: &PartialColoring) -> bool {
    pc.colored().all(|(e, c)| f.color(e) == c)
}
