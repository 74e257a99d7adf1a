//! Canonical forms under the automorphism group (optionally together with
//! color permutations) and exhaustive, symmetry-reduced enumeration of
//! minimal unavoidable configurations.
//!
//! Colorings travel through this module in packed form: one byte per edge
//! in canonical edge order, `0` meaning uncolored. The canonical
//! representative of an orbit is the lexicographically smallest packed
//! image over all automorphisms, after first-occurrence color relabeling
//! when colors are quotiented too.

use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::host::Host;
use crate::hypercube::{Edge, Hypercube};
use crate::solver::avoid_exact;
use rayon::prelude::*;
use std::collections::HashSet;

/// Byte string identifying an orbit. Equal keys mean equal orbits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Precomputed group action on edge indices, plus the parameters of the
/// quotient.
pub struct OrbitContext {
    cube: Hypercube,
    palette: u32,
    mod_colors: bool,
    /// `edge_perms[g][e]` is the index of edge `e`'s image under group
    /// element `g`.
    edge_perms: Vec<Vec<u32>>,
    /// adjacent edge indices per edge, for incremental properness checks
    adjacent: Vec<Vec<u32>>,
}

impl OrbitContext {
    pub fn new(cube: Hypercube, palette: u32, mod_colors: bool) -> OrbitContext {
        let m = cube.edge_count();
        let edge_perms: Vec<Vec<u32>> = cube
            .automorphisms()
            .map(|a| {
                (0..m)
                    .map(|e| cube.edge_index(a.apply_edge(cube.edge_at(e))) as u32)
                    .collect()
            })
            .collect();
        let inc = crate::host::incidence(&cube);
        let adjacent: Vec<Vec<u32>> = (0..m)
            .map(|e| {
                let (u, v) = cube.endpoints(e);
                inc[u]
                    .iter()
                    .chain(inc[v].iter())
                    .copied()
                    .filter(|&f| f != e)
                    .map(|f| f as u32)
                    .collect()
            })
            .collect();
        OrbitContext {
            cube,
            palette,
            mod_colors,
            edge_perms,
            adjacent,
        }
    }

    pub fn cube(&self) -> Hypercube {
        self.cube
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    fn relabel_first_occurrence(cells: &mut [u8]) {
        let mut map = [0u8; 64];
        let mut next = 1u8;
        for c in cells.iter_mut() {
            if *c == 0 {
                continue;
            }
            if map[*c as usize] == 0 {
                map[*c as usize] = next;
                next += 1;
            }
            *c = map[*c as usize];
        }
    }

    /// Lexicographically smallest image of `cells` over the group.
    pub fn canonical(&self, cells: &[u8]) -> Vec<u8> {
        let m = cells.len();
        let mut best: Option<Vec<u8>> = None;
        let mut img = vec![0u8; m];
        for perm in &self.edge_perms {
            for e in 0..m {
                img[perm[e] as usize] = cells[e];
            }
            if self.mod_colors {
                Self::relabel_first_occurrence(&mut img);
            }
            match &best {
                Some(b) if img.as_slice() >= b.as_slice() => {}
                _ => best = Some(img.clone()),
            }
        }
        best.unwrap_or_default()
    }

    /// True iff coloring `cells` stays proper after edge `e` received its
    /// color (only `e`'s neighborhood is checked).
    pub fn proper_at(&self, cells: &[u8], e: usize) -> bool {
        let c = cells[e];
        self.adjacent[e].iter().all(|&f| cells[f as usize] != c)
    }
}

pub fn packed_from_partial(pc: &PartialColoring) -> Vec<u8> {
    (0..pc.edge_count())
        .map(|e| pc.color(e).map_or(0, |c| c as u8))
        .collect()
}

pub fn packed_to_partial(palette: u32, cells: &[u8]) -> Result<PartialColoring> {
    let mut pc = PartialColoring::empty(cells.len(), palette)?;
    for (e, &c) in cells.iter().enumerate() {
        if c != 0 {
            pc.set(e, c as Color)?;
        }
    }
    Ok(pc)
}

/// Canonical key of a hypercube coloring: the minimal packed image over all
/// automorphisms, and over all color permutations when `mod_colors` is set.
pub fn canonical_key(cube: &Hypercube, pc: &PartialColoring, mod_colors: bool) -> CanonicalKey {
    let ctx = OrbitContext::new(*cube, pc.palette(), mod_colors);
    let cells = ctx.canonical(&packed_from_partial(pc));
    CanonicalKey(encode_key(cube.dimension(), pc.palette(), mod_colors, &cells))
}

fn encode_key(d: u32, palette: u32, mod_colors: bool, cells: &[u8]) -> Vec<u8> {
    let mut bytes = vec![d as u8, palette as u8, mod_colors as u8];
    for (e, &c) in cells.iter().enumerate() {
        if c != 0 {
            bytes.extend_from_slice(&(e as u32).to_be_bytes());
            bytes.push(c);
        }
    }
    bytes
}

/// Unique canonical children of `parents` obtained by coloring one more
/// edge, optionally restricted to proper colorings. Deterministic: the
/// result is sorted.
pub fn expand_level(ctx: &OrbitContext, parents: &[Vec<u8>], proper_only: bool) -> Vec<Vec<u8>> {
    let palette = ctx.palette as u8;
    let chunk = (parents.len() / (8 * rayon::current_num_threads().max(1))).max(1);
    let mut children: Vec<Vec<u8>> = parents
        .par_chunks(chunk)
        .map(|chunk| {
            let mut local: HashSet<Vec<u8>> = HashSet::new();
            let mut scratch: Vec<u8> = Vec::new();
            for parent in chunk {
                for e in 0..parent.len() {
                    if parent[e] != 0 {
                        continue;
                    }
                    for c in 1..=palette {
                        scratch.clear();
                        scratch.extend_from_slice(parent);
                        scratch[e] = c;
                        if proper_only && !ctx.proper_at(&scratch, e) {
                            continue;
                        }
                        local.insert(ctx.canonical(&scratch));
                    }
                }
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect();
    children.sort_unstable();
    children
}

/// Outcome of testing one BFS level: which canonical colorings stay
/// avoidable (the next frontier) and which are minimal unavoidable.
pub struct LevelOutcome {
    pub avoidable: Vec<Vec<u8>>,
    pub minimal: Vec<Vec<u8>>,
}

/// Split a level of canonical colorings into avoidable ones and minimal
/// unavoidable ones. Unavoidable colorings with an unavoidable sub-coloring
/// are dropped: they cannot be minimal.
pub fn sift_level(ctx: &OrbitContext, children: &[Vec<u8>]) -> Result<LevelOutcome> {
    let cube = ctx.cube;
    let palette = ctx.palette;
    let results: Vec<(bool, bool)> = children
        .par_iter()
        .map(|cells| -> Result<(bool, bool)> {
            let pc = packed_to_partial(palette, cells)?;
            if avoid_exact(&cube, &pc, palette, None)?.found() {
                return Ok((true, false));
            }
            // minimal iff every single-edge-uncolored sub-coloring avoids
            for e in 0..cells.len() {
                if cells[e] == 0 {
                    continue;
                }
                let mut sub = pc.clone();
                sub.clear(e);
                if !avoid_exact(&cube, &sub, palette, None)?.found() {
                    return Ok((false, false));
                }
            }
            Ok((false, true))
        })
        .collect::<Result<_>>()?;
    let mut avoidable = Vec::new();
    let mut minimal = Vec::new();
    for (cells, (avoid, min)) in children.iter().zip(results) {
        if avoid {
            avoidable.push(cells.clone());
        } else if min {
            minimal.push(cells.clone());
        }
    }
    Ok(LevelOutcome { avoidable, minimal })
}

/// One catalog member: a canonical representative plus its metadata.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: CanonicalKey,
    pub cells: Vec<u8>,
    pub edge_count: usize,
    pub color_counts: Vec<usize>,
    pub proper: bool,
}

impl CatalogEntry {
    pub(crate) fn new(ctx: &OrbitContext, cells: Vec<u8>) -> Result<CatalogEntry> {
        let cube = ctx.cube;
        let pc = packed_to_partial(ctx.palette, &cells)?;
        Ok(CatalogEntry {
            key: CanonicalKey(encode_key(
                cube.dimension(),
                ctx.palette,
                ctx.mod_colors,
                &cells,
            )),
            edge_count: pc.colored_count(),
            color_counts: pc.per_color_counts(),
            proper: crate::coloring::is_proper(&cube, &pc),
            cells,
        })
    }

    pub fn to_partial(&self, palette: u32) -> Result<PartialColoring> {
        packed_to_partial(palette, &self.cells)
    }
}

/// All minimal unavoidable configurations of `Q_d` up to automorphism and
/// color permutation, sorted by key. `complete` is false when the search
/// was cut off by an edge-count budget.
#[derive(Clone, Debug)]
pub struct ConfigurationCatalog {
    pub d: u32,
    pub palette: u32,
    pub proper_only: bool,
    pub complete: bool,
    pub entries: Vec<CatalogEntry>,
}

impl ConfigurationCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> Vec<CanonicalKey> {
        self.entries.iter().map(|e| e.key.clone()).collect()
    }
}

/// Exhaustive catalog for `d <= 3`; `d = 4` runs with a default edge budget
/// of 6 and is flagged partial. Larger dimensions are refused.
pub fn enumerate_minimal_unavoidable(d: u32, proper_only: bool) -> Result<ConfigurationCatalog> {
    match d {
        1..=3 => enumerate_minimal_unavoidable_with(d, proper_only, None),
        4 => enumerate_minimal_unavoidable_with(d, proper_only, Some(6)),
        _ => Err(Error::Unsupported(format!(
            "exhaustive enumeration supports d <= 4, got {d}"
        ))),
    }
}

/// Level-by-level search: the frontier holds canonical avoidable colorings;
/// children of avoidable parents cover every candidate whose sub-colorings
/// are all avoidable, which includes every minimal unavoidable coloring.
pub fn enumerate_minimal_unavoidable_with(
    d: u32,
    proper_only: bool,
    max_edges: Option<usize>,
) -> Result<ConfigurationCatalog> {
    let cube = Hypercube::new(d)?;
    let ctx = OrbitContext::new(cube, d, true);
    let m = cube.edge_count();
    let cap = max_edges.unwrap_or(m).min(m);
    let mut frontier: Vec<Vec<u8>> = vec![vec![0u8; m]];
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for _level in 1..=cap {
        let children = expand_level(&ctx, &frontier, proper_only);
        let outcome = sift_level(&ctx, &children)?;
        for cells in outcome.minimal {
            entries.push(CatalogEntry::new(&ctx, cells)?);
        }
        frontier = outcome.avoidable;
        if frontier.is_empty() {
            break;
        }
    }
    let complete = frontier.is_empty() || cap == m;
    entries.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(ConfigurationCatalog {
        d,
        palette: d,
        proper_only,
        complete,
        entries,
    })
}

/// True iff the coloring is unavoidable and uncoloring any single edge
/// makes it avoidable. Exact back-end, so `d <= 4`.
pub fn is_minimal_unavoidable(
    cube: &Hypercube,
    pc: &PartialColoring,
    proper_only: bool,
) -> Result<bool> {
    if cube.dimension() > 4 {
        return Err(Error::Unsupported(
            "minimality testing supports d <= 4".into(),
        ));
    }
    if proper_only && !crate::coloring::is_proper(cube, pc) {
        return Ok(false);
    }
    let palette = cube.dimension();
    if avoid_exact(cube, pc, palette, None)?.found() {
        return Ok(false);
    }
    for (e, _) in pc.colored() {
        let mut sub = pc.clone();
        sub.clear(e);
        if !avoid_exact(cube, &sub, palette, None)?.found() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The six minimal unavoidable proper 3-edge colorings of `Q_3`, up to
/// symmetry, as `(base, dim, color)` triples. Shipped as fixed data and
/// cross-checked against the enumerator.
pub const Q3_MINIMAL_PROPER: [[(u32, u32, Color); 7]; 6] = [
    [
        (0, 0, 1),
        (0, 1, 2),
        (0, 2, 3),
        (1, 1, 3),
        (1, 2, 2),
        (4, 1, 1),
        (5, 1, 1),
    ],
    [
        (0, 2, 1),
        (1, 1, 3),
        (1, 2, 2),
        (2, 0, 1),
        (4, 1, 2),
        (5, 1, 1),
        (4, 0, 3),
    ],
    [
        (0, 1, 2),
        (0, 2, 3),
        (1, 1, 3),
        (1, 2, 2),
        (2, 0, 1),
        (4, 1, 1),
        (5, 1, 1),
    ],
    [
        (0, 1, 1),
        (1, 1, 2),
        (1, 2, 1),
        (2, 0, 3),
        (4, 1, 1),
        (5, 1, 3),
        (4, 0, 2),
    ],
    [
        (0, 0, 1),
        (0, 2, 2),
        (1, 1, 3),
        (2, 0, 2),
        (2, 2, 1),
        (5, 1, 1),
        (4, 0, 3),
    ],
    [
        (0, 0, 1),
        (0, 1, 3),
        (1, 2, 2),
        (2, 0, 2),
        (2, 2, 1),
        (5, 1, 1),
        (4, 0, 3),
    ],
];

/// The reference configurations as colorings of `Q_3`.
pub fn q3_minimal_proper_references() -> Result<Vec<PartialColoring>> {
    let cube = Hypercube::new(3)?;
    Q3_MINIMAL_PROPER
        .iter()
        .map(|cfg| {
            let pairs: Vec<(Edge, Color)> = cfg
                .iter()
                .map(|&(base, dim, color)| (Edge::new(base, dim), color))
                .collect();
            PartialColoring::from_pairs(&cube, 3, &pairs)
        })
        .collect()
}

/// Number of 3-subsets `S` of `{1..=palette_size}` such that no proper
/// edge coloring of `Q_3` with exactly the colors of `S` avoids the
/// restriction of `pc` to `S`-colored edges.
pub fn forbidden_triple_count(
    cube: &Hypercube,
    pc: &PartialColoring,
    palette_size: u32,
) -> Result<usize> {
    if cube.dimension() != 3 {
        return Err(Error::Unsupported(
            "forbidden-triple counting is defined on Q_3".into(),
        ));
    }
    let mut count = 0;
    for a in 1..=palette_size {
        for b in (a + 1)..=palette_size {
            for c in (b + 1)..=palette_size {
                if triple_is_forbidden(cube, pc, [a, b, c])? {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn triple_is_forbidden(cube: &Hypercube, pc: &PartialColoring, s: [Color; 3]) -> Result<bool> {
    let mut mapped = PartialColoring::empty(cube.edge_count(), 3)?;
    for (e, c) in pc.colored() {
        if let Some(pos) = s.iter().position(|&x| x == c) {
            mapped.set(e, pos as Color + 1)?;
        }
    }
    Ok(!avoid_exact(cube, &mapped, 3, None)?.found())
}

/// One row of the forbidden-triple report.
#[derive(Clone, Debug)]
pub struct ClaimRow {
    pub colored_edges: usize,
    /// Exhaustive up to symmetry, as opposed to sampled.
    pub enumerated: bool,
    pub instances: u64,
    pub observed_max: usize,
    pub bound: usize,
}

impl ClaimRow {
    pub fn pass(&self) -> bool {
        self.observed_max <= self.bound
    }
}

#[derive(Clone, Debug)]
pub struct ForbiddenCountReport {
    pub rows: Vec<ClaimRow>,
}

impl ForbiddenCountReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass())
    }
}

/// Maximum forbidden-triple counts of proper colorings of `Q_3`, by
/// colored-edge count: rows 6..=8 enumerated exhaustively up to symmetry,
/// rows 9..=12 sampled (`samples_per_row` colorings each; 0 skips them).
/// Bounds per row: 0, 1, 1, 3, 4, 6, 9.
///
/// A forbidden triple restricts to an unavoidable proper coloring of `Q_3`,
/// and every unavoidable coloring contains a minimal one; the smallest
/// catalog member has 7 colored edges with color counts (3, 2, 2). Two
/// consequences keep this computation exact while staying fast: colorings
/// with fewer than 7 edges inside a triple cannot forbid it, and at most 8
/// colored edges leave room for at most `3 + (8 - 7) = 4` distinct colors
/// when some triple is forbidden, so the enumerated rows only need
/// colorings over 4 colors up to relabeling.
pub fn verify_claim_table(samples_per_row: u64, seed: u64) -> Result<ForbiddenCountReport> {
    let cube = Hypercube::new(3)?;
    // establish the 7-edge minimum from the enumerated proper catalog
    let catalog = enumerate_minimal_unavoidable(3, true)?;
    let min_edges = catalog
        .entries
        .iter()
        .map(|e| e.edge_count)
        .min()
        .ok_or_else(|| Error::Internal("empty proper catalog".into()))?;
    if min_edges != 7 {
        return Err(Error::Internal(format!(
            "expected a 7-edge catalog minimum, found {min_edges}"
        )));
    }

    let bound_for = |a: usize| -> usize {
        match a {
            0..=6 => 0,
            7 | 8 => 1,
            9 => 3,
            10 => 4,
            11 => 6,
            12 => 9,
            _ => unreachable!(),
        }
    };

    // the triple precheck justified above: solver calls only for triples
    // with at least 7 colored edges in a (3,2,2)-compatible shape
    let fast_count = |pc: &PartialColoring, m: u32| -> Result<usize> {
        let mut count = 0;
        for a in 1..=m {
            for b in (a + 1)..=m {
                for c in (b + 1)..=m {
                    let mut per = [0usize; 3];
                    for (_, col) in pc.colored() {
                        if let Some(pos) = [a, b, c].iter().position(|&x| x == col) {
                            per[pos] += 1;
                        }
                    }
                    if per.iter().sum::<usize>() < 7 {
                        continue;
                    }
                    let mut sorted = per;
                    sorted.sort_unstable();
                    if sorted[0] < 2 || sorted[2] < 3 {
                        continue;
                    }
                    if triple_is_forbidden(&cube, pc, [a, b, c])? {
                        count += 1;
                    }
                }
            }
        }
        Ok(count)
    };

    let mut rows = Vec::new();

    // enumerated rows: all proper colorings over at most 4 colors, up to
    // automorphism and color permutation, by level
    let ctx = OrbitContext::new(cube, 4, true);
    let mut frontier: Vec<Vec<u8>> = vec![vec![0u8; cube.edge_count()]];
    for level in 1..=8usize {
        frontier = expand_level(&ctx, &frontier, true);
        if level < 6 {
            continue;
        }
        let max = frontier
            .par_iter()
            .map(|cells| {
                let pc = packed_to_partial(7, cells)?;
                fast_count(&pc, 7)
            })
            .try_reduce(|| 0, |a, b| Ok(a.max(b)))?;
        rows.push(ClaimRow {
            colored_edges: level,
            enumerated: true,
            instances: frontier.len() as u64,
            observed_max: max,
            bound: bound_for(level),
        });
    }

    // sampled rows
    if samples_per_row > 0 {
        use rand::SeedableRng;
        for a in 9..=12usize {
            let max = (0..samples_per_row)
                .into_par_iter()
                .map(|i| {
                    let mut rng =
                        rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ ((a as u64) << 32) ^ i);
                    let pc = random_proper_q3(&cube, a, 7, &mut rng)?;
                    fast_count(&pc, 7)
                })
                .try_reduce(|| 0, |x, y| Ok(x.max(y)))?;
            rows.push(ClaimRow {
                colored_edges: a,
                enumerated: false,
                instances: samples_per_row,
                observed_max: max,
                bound: bound_for(a),
            });
        }
    }

    Ok(ForbiddenCountReport { rows })
}

/// A proper coloring of `a` random edges of `Q_3` with colors from
/// `1..=palette`: random edge subset, random greedy assignment, resampled
/// until it works.
pub(crate) fn random_proper_q3(
    cube: &Hypercube,
    a: usize,
    palette: u32,
    rng: &mut impl rand::Rng,
) -> Result<PartialColoring> {
    let m = cube.edge_count();
    'outer: loop {
        let mut edges: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            edges.swap(i, rng.gen_range(0..=i));
        }
        edges.truncate(a);
        let mut pc = PartialColoring::empty(m, palette)?;
        for &e in &edges {
            let mut colors: Vec<Color> = (1..=palette).collect();
            for i in (1..colors.len()).rev() {
                colors.swap(i, rng.gen_range(0..=i));
            }
            let mut placed = false;
            for &c in &colors {
                pc.set(e, c)?;
                if crate::coloring::is_proper(cube, &pc) {
                    placed = true;
                    break;
                }
                pc.clear(e);
            }
            if !placed {
                continue 'outer;
            }
        }
        return Ok(pc);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q3() -> Hypercube {
        Hypercube::new(3).unwrap()
    }

    #[test]
    fn canonical_key_is_orbit_invariant() {
        let cube = q3();
        let pc = PartialColoring::from_pairs(
            &cube,
            3,
            &[(Edge::new(0, 0), 1), (Edge::new(0, 1), 2)],
        )
        .unwrap();
        for a in cube.automorphisms().take(12) {
            let mapped: Vec<(Edge, Color)> = pc
                .colored()
                .map(|(e, c)| (a.apply_edge(cube.edge_at(e)), c))
                .collect();
            let image = PartialColoring::from_pairs(&cube, 3, &mapped).unwrap();
            assert_eq!(
                canonical_key(&cube, &pc, false),
                canonical_key(&cube, &image, false)
            );
        }
        // color swap matches only under the color quotient
        let swapped = PartialColoring::from_pairs(
            &cube,
            3,
            &[(Edge::new(0, 0), 2), (Edge::new(0, 1), 1)],
        )
        .unwrap();
        assert_eq!(
            canonical_key(&cube, &pc, true),
            canonical_key(&cube, &swapped, true)
        );
    }

    #[test]
    fn canonical_key_separates_orbits_on_q2() {
        // exhaustive: key equality iff a group element maps one to the other
        let cube = Hypercube::new(2).unwrap();
        let m = cube.edge_count();
        let all: Vec<Vec<u8>> = (0..81u32)
            .map(|code| {
                let mut cells = vec![0u8; m];
                let mut x = code;
                for e in 0..m {
                    cells[e] = (x % 3) as u8;
                    x /= 3;
                }
                cells
            })
            .collect();
        let ctx = OrbitContext::new(cube, 2, false);
        for x in all.iter().take(40) {
            for y in all.iter().take(40) {
                let same_key = ctx.canonical(x) == ctx.canonical(y);
                let in_orbit = cube.automorphisms().any(|a| {
                    let mut img = vec![0u8; m];
                    for e in 0..m {
                        let ie = cube.edge_index(a.apply_edge(cube.edge_at(e)));
                        img[ie] = x[e];
                    }
                    img == *y
                });
                assert_eq!(same_key, in_orbit);
            }
        }
    }

    #[test]
    fn reference_configurations_are_proper_and_shaped() {
        let cube = q3();
        let refs = q3_minimal_proper_references().unwrap();
        assert_eq!(refs.len(), 6);
        let mut keys = HashSet::new();
        for pc in &refs {
            assert!(is_proper(&cube, pc));
            assert_eq!(pc.colored_count(), 7);
            let mut counts = pc.per_color_counts();
            counts.sort_unstable();
            assert_eq!(counts, vec![2, 2, 3]);
            assert!(keys.insert(canonical_key(&cube, pc, true)));
        }
        assert_eq!(keys.len(), 6);
    }

    #[test]
    fn reference_configurations_are_minimal_unavoidable() {
        let cube = q3();
        for pc in q3_minimal_proper_references().unwrap() {
            assert!(is_minimal_unavoidable(&cube, &pc, true).unwrap());
        }
    }

    #[test]
    fn minimality_examples() {
        let cube = q3();
        let empty = PartialColoring::empty(cube.edge_count(), 3).unwrap();
        assert!(!is_minimal_unavoidable(&cube, &empty, false).unwrap());

        // a reference configuration plus one compatible extra edge is
        // unavoidable but not minimal
        let refs = q3_minimal_proper_references().unwrap();
        let mut extended = refs[0].clone();
        let free = (0..cube.edge_count())
            .find(|&e| extended.color(e).is_none())
            .unwrap();
        for c in 1..=3 {
            extended.set(free, c).unwrap();
            if is_proper(&cube, &extended) {
                break;
            }
        }
        assert!(!is_minimal_unavoidable(&cube, &extended, false).unwrap());
    }

    #[test]
    fn q2_proper_catalog_is_the_two_apart_pair() {
        let catalog = enumerate_minimal_unavoidable(2, true).unwrap();
        assert!(catalog.complete);
        assert_eq!(catalog.len(), 1);
        let entry = &catalog.entries[0];
        assert_eq!(entry.edge_count, 2);
        let mut counts = entry.color_counts.clone();
        counts.retain(|&c| c > 0);
        assert_eq!(counts, vec![1, 1]);
        // matches the known pattern: two non-adjacent edges, different colors
        let cube = Hypercube::new(2).unwrap();
        let known = PartialColoring::from_pairs(
            &cube,
            2,
            &[(Edge::new(0, 0), 1), (Edge::new(2, 0), 2)],
        )
        .unwrap();
        assert_eq!(canonical_key(&cube, &known, true), entry.key);
    }

    #[test]
    fn forbidden_triple_examples() {
        let cube = q3();
        // few colored edges never forbid a triple
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let pc = random_proper_q3(&cube, 6, 7, &mut rng).unwrap();
            assert_eq!(forbidden_triple_count(&cube, &pc, 7).unwrap(), 0);
        }
        // a reference configuration forbids exactly its own triple
        let refs = q3_minimal_proper_references().unwrap();
        let mut as7 = PartialColoring::empty(cube.edge_count(), 7).unwrap();
        for (e, c) in refs[0].colored() {
            as7.set(e, c).unwrap();
        }
        assert_eq!(forbidden_triple_count(&cube, &as7, 5).unwrap(), 1);
        // the empty coloring forbids nothing
        let empty = PartialColoring::empty(cube.edge_count(), 7).unwrap();
        assert_eq!(forbidden_triple_count(&cube, &empty, 7).unwrap(), 0);
    }

    #[test]
    fn claim_report_without_samples_has_enumerated_rows_only() {
        let report = verify_claim_table(0, 0).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(report.rows.iter().all(|r| r.enumerated));
        assert!(report.pass());
    }

    #[test]
    fn orbit_bfs_counts_all_colorings_of_q2() {
        // level sets over all (not only avoidable) colorings must add up to
        // the direct orbit count; checked on Q2 with 2 colors
        let cube = Hypercube::new(2).unwrap();
        let ctx = OrbitContext::new(cube, 2, false);
        let mut frontier: Vec<Vec<u8>> = vec![vec![0u8; 4]];
        let mut classes = 1usize;
        for _ in 1..=4 {
            frontier = expand_level(&ctx, &frontier, false);
            classes += frontier.len();
        }
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        for code in 0..81u32 {
            let mut cells = vec![0u8; 4];
            let mut x = code;
            for e in 0..4 {
                cells[e] = (x % 3) as u8;
                x /= 3;
            }
            seen.insert(ctx.canonical(&cells));
        }
        assert_eq!(classes, seen.len());
    }
}
