//! Named instance families and seeded random generators for every
//! hypothesis class used by the constructions and verification sweeps.

use crate::coloring::{Color, ListAssignment, PartialColoring};
use crate::coloring::{classes_are_induced_matchings, is_proper};
use crate::error::{Error, Result};
use crate::host::Host;
use crate::hypercube::{Edge, Hypercube};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A simple undirected graph with an optional bipartition, edges addressed
/// by their position in the edge list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneralGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    bipartition: Option<[Vec<usize>; 2]>,
}

impl GeneralGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<GeneralGraph> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::BadVertex(u.max(v) as u64));
            }
            if u == v {
                return Err(Error::MalformedInput(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::MalformedInput(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(GeneralGraph {
            n,
            edges,
            bipartition: None,
        })
    }

    pub fn with_bipartition(mut self, sides: [Vec<usize>; 2]) -> Result<GeneralGraph> {
        let side_of = |v: usize| -> Option<usize> {
            if sides[0].contains(&v) {
                Some(0)
            } else if sides[1].contains(&v) {
                Some(1)
            } else {
                None
            }
        };
        for &(u, v) in &self.edges {
            match (side_of(u), side_of(v)) {
                (Some(a), Some(b)) if a != b => {}
                _ => {
                    return Err(Error::MalformedInput(format!(
                        "edge {u}-{v} is not across the bipartition"
                    )))
                }
            }
        }
        self.bipartition = Some(sides);
        Ok(self)
    }

    pub fn bipartition(&self) -> Option<&[Vec<usize>; 2]> {
        self.bipartition.as_ref()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index_of(&self, u: usize, v: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }
}

impl Host for GeneralGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }
}

/// A `d`-regular bipartite graph with `d` precolored edges that no proper
/// `d`-edge coloring can avoid: `d` copies of `K_{d,d}` minus an edge,
/// chained by connector edges `a_i b_{i+1}` colored `i`. Any proper
/// `d`-edge coloring gives all connectors one common color.
///
/// Copy `i` occupies vertices `[2d*i, 2d*(i+1))`, a-side first; `a_i` and
/// `b_i` are the first vertex of each side.
pub fn counterexample_graph(d: u32) -> Result<(GeneralGraph, PartialColoring)> {
    if d < 2 {
        return Err(Error::Unsupported(
            "counterexample family needs d >= 2".into(),
        ));
    }
    let d = d as usize;
    let block = 2 * d;
    let a = |i: usize| block * i; // a_i, first of the a-side of copy i
    let b = |i: usize| block * i + d; // b_i, first of the b-side
    let mut edges = Vec::new();
    for i in 0..d {
        for x in 0..d {
            for y in 0..d {
                if x == 0 && y == 0 {
                    continue; // the removed edge a_i b_i
                }
                edges.push((a(i) + x, b(i) + y));
            }
        }
    }
    let mut connectors = Vec::new();
    for i in 0..d {
        let j = (i + 1) % d;
        connectors.push(edges.len());
        edges.push((a(i), b(j)));
    }
    let mut aside = Vec::new();
    let mut bside = Vec::new();
    for i in 0..d {
        aside.extend(a(i)..a(i) + d);
        bside.extend(b(i)..b(i) + d);
    }
    let graph = GeneralGraph::new(block * d, edges)?.with_bipartition([aside, bside])?;
    let mut pc = PartialColoring::empty(graph.edge_count(), d as u32)?;
    for (i, &e) in connectors.iter().enumerate() {
        pc.set(e, i as Color + 1)?;
    }
    debug_assert!(graph.is_regular(d));
    debug_assert!(is_proper(&graph, &pc));
    Ok((graph, pc))
}

/// The sharpness configuration on `Q_d`: `d-1` edges at vertex 0 colored 1,
/// `d-1` edges at vertex 1 colored 2, and the edge between them uncolored.
/// Unavoidable for every `d >= 2`.
pub fn near_vertex_unavoidable(d: u32) -> Result<(Hypercube, PartialColoring)> {
    let cube = Hypercube::new(d)?;
    if d < 2 {
        return Err(Error::Unsupported("need d >= 2".into()));
    }
    let mut pc = PartialColoring::empty(cube.edge_count(), d)?;
    for i in 1..d {
        pc.set(cube.edge_index(Edge::new(0, i)), 1)?;
        pc.set(cube.edge_index(Edge::new(1, i)), 2)?;
    }
    Ok((cube, pc))
}

/// Hypothesis families for seeded random instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    /// Every color on at most one edge.
    SinglePerColor,
    /// Per-color cap plus per-matching and per-edge-parallel caps.
    Sparse {
        per_color_cap: usize,
        matching_cap: usize,
        parallel_cap: usize,
    },
    /// At most three colors, each on at most `d - 2` edges.
    ThreeColors,
    /// Proper with a per-color cap.
    ProperCapped { per_color_cap: usize },
    /// Colored edges form a matching.
    Matching,
    /// Colored edges confined to `floor(d/3)` dimensional matchings.
    FewMatchings,
    /// Proper, confined to `2 * floor(d/3)` dimensional matchings.
    ProperTwoFloor,
    /// Every color class is an induced matching.
    InducedClasses,
    /// All colored edges in one half along `split_dim`.
    Halfcube { split_dim: u32 },
    /// A vertex cover of `cover_size` vertices meets every colored edge;
    /// per-color cap `d - cover_size`.
    VertexCover { cover_size: usize },
}

/// Everything needed to reproduce an instance byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub family: Family,
    pub d: u32,
    pub seed: u64,
    /// Colored-edge target; family-specific default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_edges: Option<usize>,
}

const RETRY_CAP: usize = 10_000;

fn retry_exhausted() -> Error {
    Error::HypothesisViolated("generator retries exhausted; parameters look infeasible".into())
}

/// Does the coloring satisfy the family's hypothesis class?
pub fn hypothesis_holds(family: &Family, cube: &Hypercube, pc: &PartialColoring) -> bool {
    let d = cube.dimension();
    let counts = pc.per_color_counts();
    match family {
        Family::SinglePerColor => counts.iter().all(|&c| c <= 1),
        Family::Sparse {
            per_color_cap,
            matching_cap,
            parallel_cap,
        } => {
            counts.iter().all(|c| c <= per_color_cap)
                && (0..d).all(|i| {
                    cube.dimensional_matching(i)
                        .unwrap()
                        .iter()
                        .filter(|e| pc.color(cube.edge_index(**e)).is_some())
                        .count()
                        <= *matching_cap
                })
                && pc.colored().all(|(e, _)| {
                    cube.parallel_edges(cube.edge_at(e))
                        .unwrap()
                        .iter()
                        .filter(|p| pc.color(cube.edge_index(**p)).is_some())
                        .count()
                        <= *parallel_cap
                })
        }
        Family::ThreeColors => {
            pc.colors_used().count_ones() <= 3
                && counts.iter().all(|&c| c == 0 || c + 2 <= d as usize)
        }
        Family::ProperCapped { per_color_cap } => {
            is_proper(cube, pc) && counts.iter().all(|c| c <= per_color_cap)
        }
        Family::Matching => {
            let mut covered = std::collections::HashSet::new();
            pc.colored().all(|(e, _)| {
                let (u, v) = cube.endpoints(e);
                covered.insert(u) && covered.insert(v)
            })
        }
        Family::FewMatchings => {
            let dims: std::collections::HashSet<u32> = pc
                .colored()
                .map(|(e, _)| cube.edge_at(e).dim())
                .collect();
            dims.len() <= (d / 3) as usize
        }
        Family::ProperTwoFloor => {
            let dims: std::collections::HashSet<u32> = pc
                .colored()
                .map(|(e, _)| cube.edge_at(e).dim())
                .collect();
            is_proper(cube, pc) && dims.len() <= 2 * (d / 3) as usize
        }
        Family::InducedClasses => classes_are_induced_matchings(cube, pc),
        Family::Halfcube { split_dim } => pc.colored().all(|(e, _)| {
            let edge = cube.edge_at(e);
            edge.dim() != *split_dim && edge.base() & (1 << split_dim) == 0
        }),
        Family::VertexCover { cover_size } => {
            let cap = (d as usize).saturating_sub(*cover_size);
            if counts.iter().any(|&c| c > cap) {
                return false;
            }
            cover_exists(cube, pc, *cover_size)
        }
    }
}

/// Greedy check that some `k`-vertex cover meets every colored edge; exact
/// via branch and bound on the small colored subgraph.
fn cover_exists(cube: &Hypercube, pc: &PartialColoring, k: usize) -> bool {
    fn rec(edges: &[(usize, usize)], k: usize, chosen: &mut Vec<usize>) -> bool {
        let uncovered = edges
            .iter()
            .find(|&&(u, v)| !chosen.contains(&u) && !chosen.contains(&v));
        match uncovered {
            None => true,
            Some(&(u, v)) => {
                if chosen.len() == k {
                    return false;
                }
                for cand in [u, v] {
                    chosen.push(cand);
                    if rec(edges, k, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
                false
            }
        }
    }
    let edges: Vec<(usize, usize)> = pc.colored().map(|(e, _)| cube.endpoints(e)).collect();
    rec(&edges, k, &mut Vec::new())
}

/// Draw one instance of the family. Same spec, same bytes.
pub fn random_instance(spec: &InstanceSpec) -> Result<(Hypercube, PartialColoring)> {
    let cube = Hypercube::new(spec.d)?;
    let d = spec.d;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let m = cube.edge_count();
    let mut pc = PartialColoring::empty(m, d)?;

    let place =
        |pc: &mut PartialColoring, rng: &mut ChaCha8Rng, target: usize, ok: &dyn Fn(&PartialColoring) -> bool| -> Result<()> {
            let mut tries = 0;
            while pc.colored_count() < target {
                tries += 1;
                if tries > RETRY_CAP {
                    return Err(retry_exhausted());
                }
                let e = rng.gen_range(0..m);
                if pc.color(e).is_some() {
                    continue;
                }
                let c = rng.gen_range(1..=d);
                pc.set(e, c).unwrap();
                if !ok(pc) {
                    pc.clear(e);
                }
            }
            Ok(())
        };

    match &spec.family {
        Family::SinglePerColor => {
            let target = spec
                .target_edges
                .unwrap_or_else(|| rng.gen_range(1..=d as usize));
            if target > d as usize {
                return Err(Error::HypothesisViolated(format!(
                    "single-per-color admits at most {d} edges"
                )));
            }
            let fam = spec.family.clone();
            let cube2 = cube;
            place(&mut pc, &mut rng, target, &move |p| {
                hypothesis_holds(&fam, &cube2, p)
            })?;
        }
        Family::Sparse {
            per_color_cap,
            matching_cap,
            parallel_cap,
        } => {
            let max = per_color_cap * d as usize;
            let target = spec.target_edges.unwrap_or(max).min(max);
            let fam = Family::Sparse {
                per_color_cap: *per_color_cap,
                matching_cap: *matching_cap,
                parallel_cap: *parallel_cap,
            };
            let cube2 = cube;
            place(&mut pc, &mut rng, target, &move |p| {
                hypothesis_holds(&fam, &cube2, p)
            })?;
        }
        Family::ThreeColors => {
            if d < 2 {
                return Err(Error::Unsupported("three-color family needs d >= 2".into()));
            }
            let cap = d as usize - 2;
            let mut palette: Vec<Color> = Vec::new();
            while palette.len() < 3.min(d as usize) {
                let c = rng.gen_range(1..=d);
                if !palette.contains(&c) {
                    palette.push(c);
                }
            }
            let target = spec
                .target_edges
                .unwrap_or(3 * cap)
                .min(3 * cap);
            let mut tries = 0;
            while pc.colored_count() < target {
                tries += 1;
                if tries > RETRY_CAP {
                    break; // dense targets can saturate; caps still hold
                }
                let e = rng.gen_range(0..m);
                if pc.color(e).is_some() {
                    continue;
                }
                let c = palette[rng.gen_range(0..palette.len())];
                pc.set(e, c).unwrap();
                if pc.per_color_counts()[(c - 1) as usize] > cap {
                    pc.clear(e);
                }
            }
        }
        Family::ProperCapped { per_color_cap } => {
            let target = spec
                .target_edges
                .unwrap_or(per_color_cap * d as usize)
                .min(per_color_cap * d as usize);
            let mut tries = 0;
            while pc.colored_count() < target && tries < RETRY_CAP {
                tries += 1;
                let e = rng.gen_range(0..m);
                if pc.color(e).is_some() {
                    continue;
                }
                let c = rng.gen_range(1..=d);
                pc.set(e, c).unwrap();
                if !is_proper(&cube, &pc) || pc.per_color_counts()[(c - 1) as usize] > *per_color_cap
                {
                    pc.clear(e);
                }
            }
        }
        Family::Matching => {
            let target = spec
                .target_edges
                .unwrap_or_else(|| rng.gen_range(1..=(1usize << (d - 1))));
            let mut tries = 0;
            while pc.colored_count() < target && tries < RETRY_CAP {
                tries += 1;
                let e = rng.gen_range(0..m);
                if pc.color(e).is_some() {
                    continue;
                }
                let c = rng.gen_range(1..=d);
                pc.set(e, c).unwrap();
                if !hypothesis_holds(&Family::Matching, &cube, &pc) {
                    pc.clear(e);
                }
            }
        }
        Family::FewMatchings => {
            let k = (d / 3) as usize;
            if k == 0 {
                return Ok((cube, pc)); // nothing may be colored
            }
            let mut dims: Vec<u32> = (0..d).collect();
            for i in (1..dims.len()).rev() {
                dims.swap(i, rng.gen_range(0..=i));
            }
            dims.truncate(k);
            let per = 1usize << (d - 1);
            let target = spec
                .target_edges
                .unwrap_or(k * per / 2)
                .min(k * per);
            let mut tries = 0;
            while pc.colored_count() < target && tries < RETRY_CAP {
                tries += 1;
                let dim = dims[rng.gen_range(0..dims.len())];
                let matching = cube.dimensional_matching(dim).unwrap();
                let e = cube.edge_index(matching[rng.gen_range(0..matching.len())]);
                if pc.color(e).is_none() {
                    pc.set(e, rng.gen_range(1..=d)).unwrap();
                }
            }
        }
        Family::ProperTwoFloor => {
            let k = 2 * (d / 3) as usize;
            if k == 0 {
                return Ok((cube, pc));
            }
            let mut dims: Vec<u32> = (0..d).collect();
            for i in (1..dims.len()).rev() {
                dims.swap(i, rng.gen_range(0..=i));
            }
            dims.truncate(k);
            let per = 1usize << (d - 1);
            let target = spec.target_edges.unwrap_or(k * per / 2).min(k * per);
            let mut tries = 0;
            while pc.colored_count() < target && tries < RETRY_CAP {
                tries += 1;
                let dim = dims[rng.gen_range(0..dims.len())];
                let matching = cube.dimensional_matching(dim).unwrap();
                let e = cube.edge_index(matching[rng.gen_range(0..matching.len())]);
                if pc.color(e).is_some() {
                    continue;
                }
                let c = rng.gen_range(1..=d);
                pc.set(e, c).unwrap();
                if !is_proper(&cube, &pc) {
                    pc.clear(e);
                }
            }
        }
        Family::InducedClasses => {
            let target = spec.target_edges.unwrap_or(m / 4);
            let mut tries = 0;
            while pc.colored_count() < target && tries < RETRY_CAP {
                tries += 1;
                let e = rng.gen_range(0..m);
                if pc.color(e).is_some() {
                    continue;
                }
                let c = rng.gen_range(1..=d);
                pc.set(e, c).unwrap();
                if !classes_are_induced_matchings(&cube, &pc) {
                    pc.clear(e);
                }
            }
        }
        Family::Halfcube { split_dim } => {
            if *split_dim >= d {
                return Err(Error::BadDimensionIndex {
                    index: *split_dim,
                    d,
                });
            }
            let half_edges: Vec<usize> = (0..m)
                .filter(|&e| {
                    let edge = cube.edge_at(e);
                    edge.dim() != *split_dim && edge.base() & (1 << *split_dim) == 0
                })
                .collect();
            let target = spec
                .target_edges
                .unwrap_or(half_edges.len() / 3)
                .min(half_edges.len());
            let mut tries = 0;
            while pc.colored_count() < target && tries < RETRY_CAP {
                tries += 1;
                let e = half_edges[rng.gen_range(0..half_edges.len())];
                if pc.color(e).is_none() {
                    pc.set(e, rng.gen_range(1..=d)).unwrap();
                }
            }
        }
        Family::VertexCover { cover_size } => {
            let cap = (d as usize).saturating_sub(*cover_size);
            if cap == 0 {
                return Ok((cube, pc));
            }
            let mut cover = Vec::new();
            while cover.len() < *cover_size {
                let v = rng.gen_range(0..cube.vertex_count());
                if !cover.contains(&v) {
                    cover.push(v);
                }
            }
            let incident: Vec<usize> = (0..m)
                .filter(|&e| {
                    let (u, v) = cube.endpoints(e);
                    cover.contains(&u) || cover.contains(&v)
                })
                .collect();
            let target = spec
                .target_edges
                .unwrap_or(cap * 3 / 2 + 1)
                .min(incident.len());
            let mut tries = 0;
            while pc.colored_count() < target && tries < RETRY_CAP {
                tries += 1;
                let e = incident[rng.gen_range(0..incident.len())];
                if pc.color(e).is_some() {
                    continue;
                }
                let c = rng.gen_range(1..=d);
                pc.set(e, c).unwrap();
                if pc.per_color_counts()[(c - 1) as usize] > cap {
                    pc.clear(e);
                }
            }
        }
    }

    if !hypothesis_holds(&spec.family, &cube, &pc) {
        return Err(Error::Internal(
            "generated instance violates its hypothesis class".into(),
        ));
    }
    Ok((cube, pc))
}

/// A list instance for the multi-color relabeling construction: at most
/// `colors` colors overall, each appearing on at most `per_color_cap` edges
/// (an edge may carry several colors).
pub fn random_list_instance(
    d: u32,
    colors: usize,
    per_color_cap: usize,
    seed: u64,
) -> Result<(Hypercube, ListAssignment)> {
    let cube = Hypercube::new(d)?;
    if colors > d as usize {
        return Err(Error::HypothesisViolated(format!(
            "at most {d} colors available"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = ListAssignment::empty(cube.edge_count());
    let mut chosen: Vec<Color> = Vec::new();
    while chosen.len() < colors {
        let c = rng.gen_range(1..=d);
        if !chosen.contains(&c) {
            chosen.push(c);
        }
    }
    for &c in &chosen {
        let placed = rng.gen_range(0..=per_color_cap);
        let mut edges_with_c = 0;
        let mut tries = 0;
        while edges_with_c < placed && tries < RETRY_CAP {
            tries += 1;
            let e = rng.gen_range(0..cube.edge_count());
            if !lists.contains(e, c) {
                lists.add(e, c);
                edges_with_c += 1;
            }
        }
    }
    Ok((cube, lists))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{avoid_exact, SolveStatus};

    #[test]
    fn counterexample_structure() {
        for d in 2..=6u32 {
            let (g, pc) = counterexample_graph(d).unwrap();
            assert_eq!(g.vertex_count(), 2 * (d as usize) * (d as usize));
            assert!(g.is_regular(d as usize));
            assert!(g.bipartition().is_some());
            assert_eq!(pc.colored_count(), d as usize);
            assert!(is_proper(&g, &pc));
            // one connector per color
            let mut colors: Vec<Color> = pc.colored().map(|(_, c)| c).collect();
            colors.sort_unstable();
            assert_eq!(colors, (1..=d).collect::<Vec<Color>>());
        }
        assert!(counterexample_graph(1).is_err());
    }

    #[test]
    fn counterexample_is_unavoidable_for_small_d() {
        for d in 2..=3u32 {
            let (g, pc) = counterexample_graph(d).unwrap();
            let r = avoid_exact(&g, &pc, d, None).unwrap();
            assert_eq!(r.status, SolveStatus::None, "d = {d}");
        }
    }

    #[test]
    fn near_vertex_shape() {
        for d in 2..=6u32 {
            let (cube, pc) = near_vertex_unavoidable(d).unwrap();
            assert_eq!(pc.colored_count(), 2 * (d as usize - 1));
            let counts = pc.per_color_counts();
            assert_eq!(counts[0], d as usize - 1);
            assert_eq!(counts[1], d as usize - 1);
            // the joining edge stays uncolored
            assert!(pc.color(cube.edge_index(Edge::new(0, 0))).is_none());
        }
        let (q3, pc) = near_vertex_unavoidable(3).unwrap();
        assert_eq!(pc.colored_count(), 4);
        let r = avoid_exact(&q3, &pc, 3, None).unwrap();
        assert_eq!(r.status, SolveStatus::None);
    }

    #[test]
    fn families_satisfy_their_hypotheses() {
        let specs = vec![
            InstanceSpec {
                family: Family::SinglePerColor,
                d: 8,
                seed: 1,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::Sparse {
                    per_color_cap: 1,
                    matching_cap: 9,
                    parallel_cap: 9,
                },
                d: 8,
                seed: 2,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::ThreeColors,
                d: 6,
                seed: 3,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::ProperCapped { per_color_cap: 3 },
                d: 5,
                seed: 4,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::Matching,
                d: 6,
                seed: 5,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::FewMatchings,
                d: 6,
                seed: 6,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::ProperTwoFloor,
                d: 6,
                seed: 7,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::InducedClasses,
                d: 6,
                seed: 8,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::Halfcube { split_dim: 2 },
                d: 5,
                seed: 9,
                target_edges: None,
            },
            InstanceSpec {
                family: Family::VertexCover { cover_size: 2 },
                d: 6,
                seed: 10,
                target_edges: None,
            },
        ];
        for spec in specs {
            let (cube, pc) = random_instance(&spec).unwrap();
            assert!(
                hypothesis_holds(&spec.family, &cube, &pc),
                "family {:?}",
                spec.family
            );
        }
    }

    #[test]
    fn proper_capped_example() {
        let spec = InstanceSpec {
            family: Family::ProperCapped { per_color_cap: 3 },
            d: 5,
            seed: 42,
            target_edges: None,
        };
        let (cube, pc) = random_instance(&spec).unwrap();
        assert!(is_proper(&cube, &pc));
        assert!(pc.per_color_counts().iter().all(|&c| c <= 3));
    }

    #[test]
    fn induced_example() {
        let spec = InstanceSpec {
            family: Family::InducedClasses,
            d: 6,
            seed: 11,
            target_edges: None,
        };
        let (cube, pc) = random_instance(&spec).unwrap();
        assert!(classes_are_induced_matchings(&cube, &pc));
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let spec = InstanceSpec {
            family: Family::Sparse {
                per_color_cap: 1,
                matching_cap: 9,
                parallel_cap: 9,
            },
            d: 8,
            seed: 7,
            target_edges: None,
        };
        let (_, a) = random_instance(&spec).unwrap();
        let (_, b) = random_instance(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn list_instance_caps() {
        for seed in 0..20 {
            let (_, lists) = random_list_instance(6, 2, 4, seed).unwrap();
            let counts = lists.per_color_counts(6);
            assert!(counts.iter().all(|&c| c <= 4));
            let used = (1..=6u32)
                .filter(|&c| counts[(c - 1) as usize] > 0)
                .count();
            assert!(used <= 2);
        }
    }
}
