//! Partial and total edge colorings, properness, Kempe interchanges,
//! distance predicates and class profiles.
//!
//! Colorings are stored by the host's edge index. A [`PartialColoring`] is
//! not required to be proper: properness is a separate predicate, checked at
//! the operations that need it. Colors are 1-based.

use crate::error::{Error, Result};
use crate::host::{self, Host};
use crate::hypercube::{Edge, Hypercube};
use std::collections::VecDeque;

pub type Color = u32;

/// Set of colors as a bitmask; color `c` occupies bit `c - 1`.
pub type ColorSet = u64;

pub fn color_bit(c: Color) -> ColorSet {
    1u64 << (c - 1)
}

pub fn full_palette(palette: u32) -> ColorSet {
    (1u64 << palette) - 1
}

fn check_palette(palette: u32) -> Result<()> {
    if palette == 0 || palette > 63 {
        return Err(Error::BadPalette(palette));
    }
    Ok(())
}

/// A partial edge coloring: some edges carry a color in `1..=palette`,
/// the rest are uncolored. Not necessarily proper.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialColoring {
    palette: u32,
    slots: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn empty(edge_count: usize, palette: u32) -> Result<PartialColoring> {
        check_palette(palette)?;
        Ok(PartialColoring {
            palette,
            slots: vec![None; edge_count],
        })
    }

    /// Build a coloring of a hypercube from `(edge, color)` pairs.
    pub fn from_pairs(
        cube: &Hypercube,
        palette: u32,
        pairs: &[(Edge, Color)],
    ) -> Result<PartialColoring> {
        let mut pc = PartialColoring::empty(cube.edge_count(), palette)?;
        for &(e, c) in pairs {
            if !cube.contains_edge(e) {
                return Err(Error::EdgeNotInHost {
                    base: e.base() as u64,
                    dim: e.dim(),
                });
            }
            pc.set(cube.edge_index(e), c)?;
        }
        Ok(pc)
    }

    pub fn set(&mut self, edge: usize, color: Color) -> Result<()> {
        if color == 0 || color > self.palette {
            return Err(Error::ColorOutOfPalette {
                color,
                palette: self.palette,
            });
        }
        self.slots[edge] = Some(color);
        Ok(())
    }

    pub fn clear(&mut self, edge: usize) {
        self.slots[edge] = None;
    }

    pub fn color(&self, edge: usize) -> Option<Color> {
        self.slots[edge]
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn edge_count(&self) -> usize {
        self.slots.len()
    }

    pub fn colored_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    /// Colored edges as `(edge index, color)`, ascending.
    pub fn colored(&self) -> impl Iterator<Item = (usize, Color)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|c| (i, c)))
    }

    /// Number of edges per color, indexed by `color - 1`.
    pub fn per_color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.palette as usize];
        for (_, c) in self.colored() {
            counts[(c - 1) as usize] += 1;
        }
        counts
    }

    pub fn colors_used(&self) -> ColorSet {
        self.colored().fold(0, |acc, (_, c)| acc | color_bit(c))
    }

    pub fn is_empty(&self) -> bool {
        self.slots.iter().all(|s| s.is_none())
    }
}

/// A total proper edge coloring. Construction validates totality and
/// properness against the host.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProperColoring {
    palette: u32,
    colors: Vec<Color>,
}

impl ProperColoring {
    pub fn new(host: &impl Host, palette: u32, colors: Vec<Color>) -> Result<ProperColoring> {
        check_palette(palette)?;
        if colors.len() != host.edge_count() {
            return Err(Error::HostMismatch(colors.len(), host.edge_count()));
        }
        for &c in &colors {
            if c == 0 || c > palette {
                return Err(Error::ColorOutOfPalette { color: c, palette });
            }
        }
        let pc = ProperColoring { palette, colors };
        if !pc.is_proper_on(host) {
            return Err(Error::NotProper);
        }
        Ok(pc)
    }

    fn is_proper_on(&self, host: &impl Host) -> bool {
        let mut used = vec![0u64; host.vertex_count()];
        for (e, &c) in self.colors.iter().enumerate() {
            let (u, v) = host.endpoints(e);
            let bit = color_bit(c);
            if used[u] & bit != 0 || used[v] & bit != 0 {
                return false;
            }
            used[u] |= bit;
            used[v] |= bit;
        }
        true
    }

    /// Crate-internal constructor for callers that guarantee properness
    /// structurally (the solver kernel, class renamings). Public entry
    /// points re-verify before handing witnesses out.
    pub(crate) fn assemble(palette: u32, colors: Vec<Color>) -> ProperColoring {
        ProperColoring { palette, colors }
    }

    pub fn color(&self, edge: usize) -> Color {
        self.colors[edge]
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    /// Edge indices of the class colored `c`.
    pub fn class(&self, c: Color) -> Vec<usize> {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| (x == c).then_some(i))
            .collect()
    }

    /// Restriction to a subset of edges, as a partial coloring.
    pub fn restrict(&self, edges: &[usize]) -> PartialColoring {
        let mut pc = PartialColoring::empty(self.colors.len(), self.palette).unwrap();
        for &e in edges {
            pc.slots[e] = Some(self.colors[e]);
        }
        pc
    }

    pub fn to_partial(&self) -> PartialColoring {
        PartialColoring {
            palette: self.palette,
            slots: self.colors.iter().map(|&c| Some(c)).collect(),
        }
    }
}

/// A set of admissible (or forbidden) colors per edge. Lists may be empty;
/// an edge may carry several colors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
}

impl ListAssignment {
    pub fn empty(edge_count: usize) -> ListAssignment {
        ListAssignment {
            lists: vec![0; edge_count],
        }
    }

    pub fn from_sets(lists: Vec<ColorSet>) -> ListAssignment {
        ListAssignment { lists }
    }

    /// Singleton lists holding each colored edge's color.
    pub fn from_partial(pc: &PartialColoring) -> ListAssignment {
        ListAssignment {
            lists: pc
                .slots
                .iter()
                .map(|s| s.map_or(0, color_bit))
                .collect(),
        }
    }

    pub fn set(&mut self, edge: usize, colors: ColorSet) {
        self.lists[edge] = colors;
    }

    pub fn add(&mut self, edge: usize, color: Color) {
        self.lists[edge] |= color_bit(color);
    }

    pub fn get(&self, edge: usize) -> ColorSet {
        self.lists[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.lists.len()
    }

    pub fn contains(&self, edge: usize, color: Color) -> bool {
        self.lists[edge] & color_bit(color) != 0
    }

    /// Number of edges whose list contains `c`, per color `1..=palette`.
    pub fn per_color_counts(&self, palette: u32) -> Vec<usize> {
        let mut counts = vec![0usize; palette as usize];
        for &l in &self.lists {
            for c in 1..=palette {
                if l & color_bit(c) != 0 {
                    counts[(c - 1) as usize] += 1;
                }
            }
        }
        counts
    }
}

/// The proper coloring assigning color `i + 1` to dimensional matching `i`.
pub fn standard_coloring(cube: &Hypercube) -> ProperColoring {
    let colors = (0..cube.edge_count())
        .map(|e| cube.edge_at(e).dim() + 1)
        .collect();
    ProperColoring {
        palette: cube.dimension(),
        colors,
    }
}

/// True iff no two adjacent colored edges share a color.
pub fn is_proper(host: &impl Host, pc: &PartialColoring) -> bool {
    let mut used = vec![0u64; host.vertex_count()];
    for (e, c) in pc.colored() {
        let (u, v) = host.endpoints(e);
        let bit = color_bit(c);
        if used[u] & bit != 0 || used[v] & bit != 0 {
            return false;
        }
        used[u] |= bit;
        used[v] |= bit;
    }
    true
}

fn check_compatible(f: &ProperColoring, pc: &PartialColoring) -> Result<()> {
    if f.edge_count() != pc.edge_count() {
        return Err(Error::HostMismatch(f.edge_count(), pc.edge_count()));
    }
    Ok(())
}

/// True iff `f` differs from `pc` on every colored edge.
pub fn avoids(f: &ProperColoring, pc: &PartialColoring) -> Result<bool> {
    check_compatible(f, pc)?;
    Ok(pc.colored().all(|(e, c)| f.colors[e] != c))
}

/// True iff `f` agrees with `pc` on every colored edge.
pub fn agrees(f: &ProperColoring, pc: &PartialColoring) -> Result<bool> {
    check_compatible(f, pc)?;
    Ok(pc.colored().all(|(e, c)| f.colors[e] == c))
}

/// A maximal connected piece of the subgraph spanned by two color classes:
/// an alternating path or cycle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BicoloredComponent {
    pub edges: Vec<usize>,
    pub closed: bool,
}

/// Connected components of the subgraph of edges colored `a` or `b`,
/// ordered by smallest edge index. Each vertex meets at most one edge of
/// each color, so every component is a path or an even cycle.
pub fn bicolored_components(
    host: &impl Host,
    f: &ProperColoring,
    a: Color,
    b: Color,
) -> Result<Vec<BicoloredComponent>> {
    if a == b {
        return Err(Error::EqualInterchangeColors);
    }
    if f.edge_count() != host.edge_count() {
        return Err(Error::HostMismatch(f.edge_count(), host.edge_count()));
    }
    let member: Vec<usize> = (0..f.edge_count())
        .filter(|&e| f.colors[e] == a || f.colors[e] == b)
        .collect();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); host.vertex_count()];
    for &e in &member {
        let (u, v) = host.endpoints(e);
        inc[u].push(e);
        inc[v].push(e);
    }
    let mut seen = vec![false; f.edge_count()];
    let mut components = Vec::new();
    for &start in &member {
        if seen[start] {
            continue;
        }
        // walk to one extreme (or detect a cycle), then collect in order
        let (su, _) = host.endpoints(start);
        let mut tail = su;
        let mut tail_edge = start;
        let mut steps = 0;
        loop {
            let next = inc[tail].iter().find(|&&e| e != tail_edge).copied();
            match next {
                Some(e) => {
                    let (u, v) = host.endpoints(e);
                    tail = if u == tail { v } else { u };
                    tail_edge = e;
                    steps += 1;
                    if e == start || steps > member.len() {
                        break; // cycle
                    }
                }
                None => break, // path end
            }
        }
        let mut edges = Vec::new();
        let mut v = tail;
        let mut prev = usize::MAX;
        loop {
            let next = inc[v].iter().find(|&&e| e != prev && !seen[e]).copied();
            match next {
                Some(e) => {
                    seen[e] = true;
                    edges.push(e);
                    let (x, y) = host.endpoints(e);
                    v = if x == v { y } else { x };
                    prev = e;
                }
                None => break,
            }
        }
        let closed = v == tail && edges.len() >= 2;
        components.push(BicoloredComponent { edges, closed });
    }
    components.sort_by_key(|c| c.edges.iter().min().copied());
    Ok(components)
}

/// Swap colors `a` and `b` on a maximal bicolored path or cycle. The
/// component must be exactly a connected component of the `(a, b)`-subgraph;
/// the result is again proper.
pub fn interchange(
    host: &impl Host,
    f: &ProperColoring,
    a: Color,
    b: Color,
    component: &[usize],
) -> Result<ProperColoring> {
    if a == b {
        return Err(Error::EqualInterchangeColors);
    }
    for &e in component {
        if e >= f.edge_count() || (f.colors[e] != a && f.colors[e] != b) {
            return Err(Error::NotABicoloredComponent);
        }
    }
    // must be maximal: no a/b-colored edge adjacent to the component is
    // outside it, and the component must be connected
    let comps = bicolored_components(host, f, a, b)?;
    let mut sorted: Vec<usize> = component.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let matched = comps.iter().any(|c| {
        let mut ce = c.edges.clone();
        ce.sort_unstable();
        ce == sorted
    });
    if !matched {
        return Err(Error::NotABicoloredComponent);
    }
    let mut colors = f.colors.clone();
    for &e in &sorted {
        colors[e] = if colors[e] == a { b } else { a };
    }
    Ok(ProperColoring {
        palette: f.palette,
        colors,
    })
}

/// Minimum number of edges on a shortest path between an endpoint of `e1`
/// and an endpoint of `e2`. Adjacent edges are at distance 0; `None` means
/// the edges lie in different components.
pub fn edge_distance(host: &impl Host, e1: usize, e2: usize) -> Option<usize> {
    let (u1, v1) = host.endpoints(e1);
    let (u2, v2) = host.endpoints(e2);
    if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
        return Some(0);
    }
    let adj = host::vertex_adjacency(host);
    let mut dist = vec![usize::MAX; host.vertex_count()];
    let mut queue = VecDeque::new();
    dist[u1] = 0;
    dist[v1] = 0;
    queue.push_back(u1);
    queue.push_back(v1);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let d = dist[u2].min(dist[v2]);
    (d != usize::MAX).then_some(d)
}

/// True iff every color class is an induced matching: distinct edges of the
/// same color are pairwise at distance at least 2.
pub fn classes_are_induced_matchings(host: &impl Host, pc: &PartialColoring) -> bool {
    let mut by_color: Vec<Vec<usize>> = vec![Vec::new(); pc.palette as usize];
    for (e, c) in pc.colored() {
        by_color[(c - 1) as usize].push(e);
    }
    for class in &by_color {
        for (i, &e1) in class.iter().enumerate() {
            for &e2 in &class[i + 1..] {
                match edge_distance(host, e1, e2) {
                    Some(d) if d >= 2 => {}
                    Some(_) => return false,
                    None => {}
                }
            }
        }
    }
    true
}

/// Per-class statistics of a total coloring `f` against a partial coloring:
/// how many colored edges land in each class, how many distinct colors, and
/// which classes count as heavy or light at the `7d/8` threshold.
#[derive(Clone, Debug)]
pub struct ColorClassProfile {
    /// Colored edges per class, indexed by `class color - 1`.
    pub counts: Vec<usize>,
    /// Distinct colors per class.
    pub distinct: Vec<usize>,
    /// `count >= 7d/8 + 1`.
    pub heavy: Vec<bool>,
    /// `count <= 7d/8 - 2`.
    pub light: Vec<bool>,
}

impl ColorClassProfile {
    pub fn heavy_classes(&self) -> Vec<Color> {
        self.heavy
            .iter()
            .enumerate()
            .filter_map(|(i, &h)| h.then_some(i as Color + 1))
            .collect()
    }

    pub fn light_classes(&self) -> Vec<Color> {
        self.light
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| l.then_some(i as Color + 1))
            .collect()
    }
}

/// Heavy iff `8 * count >= 7d + 8`; light iff `8 * count <= 7d - 16`.
/// Exact integer thresholds for `count >= 7d/8 + 1` and `count <= 7d/8 - 2`.
pub fn profile(
    cube: &Hypercube,
    f: &ProperColoring,
    pc: &PartialColoring,
) -> Result<ColorClassProfile> {
    check_compatible(f, pc)?;
    if f.edge_count() != cube.edge_count() {
        return Err(Error::HostMismatch(f.edge_count(), cube.edge_count()));
    }
    let d = cube.dimension() as usize;
    let t = f.palette as usize;
    let mut counts = vec![0usize; t];
    let mut colors_seen = vec![0u64; t];
    for (e, c) in pc.colored() {
        let class = (f.colors[e] - 1) as usize;
        counts[class] += 1;
        colors_seen[class] |= color_bit(c);
    }
    let distinct = colors_seen.iter().map(|s| s.count_ones() as usize).collect();
    let heavy = counts.iter().map(|&c| 8 * c >= 7 * d + 8).collect();
    let light = counts.iter().map(|&c| 8 * c + 16 <= 7 * d).collect();
    Ok(ColorClassProfile {
        counts,
        distinct,
        heavy,
        light,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(d: u32) -> Hypercube {
        Hypercube::new(d).unwrap()
    }

    #[test]
    fn standard_coloring_classes_are_matchings() {
        for d in 1..=10u32 {
            let cube = q(d);
            let f = standard_coloring(&cube);
            assert_eq!(f.palette(), d);
            // proper by construction; recheck via the public constructor
            assert!(ProperColoring::new(&cube, d, f.as_slice().to_vec()).is_ok());
            for c in 1..=d {
                assert_eq!(f.class(c).len(), 1usize << (d - 1));
            }
        }
        let q3 = q(3);
        let f = standard_coloring(&q3);
        let sizes: Vec<usize> = (1..=3).map(|c| f.class(c).len()).collect();
        assert_eq!(sizes, vec![4, 4, 4]);
    }

    #[test]
    fn standard_coloring_bicolored_cycles() {
        // every edge lies in d-1 bicolored 4-cycles under the standard coloring
        for d in 2..=6u32 {
            let cube = q(d);
            let f = standard_coloring(&cube);
            for e in cube.edges() {
                let cycles = cube.four_cycles_through(e).unwrap();
                assert_eq!(cycles.len(), d as usize - 1);
                for cyc in cycles {
                    let mut colors: Vec<Color> = cyc
                        .edges()
                        .iter()
                        .map(|&x| f.color(cube.edge_index(x)))
                        .collect();
                    colors.sort_unstable();
                    colors.dedup();
                    assert_eq!(colors.len(), 2);
                }
            }
        }
    }

    #[test]
    fn properness_predicate() {
        let q3 = q(3);
        let empty = PartialColoring::empty(q3.edge_count(), 3).unwrap();
        assert!(is_proper(&q3, &empty));

        let mut two_at_zero = empty.clone();
        two_at_zero
            .set(q3.edge_index(Edge::new(0, 0)), 1)
            .unwrap();
        two_at_zero
            .set(q3.edge_index(Edge::new(0, 1)), 1)
            .unwrap();
        assert!(!is_proper(&q3, &two_at_zero));
    }

    #[test]
    fn avoids_and_agrees() {
        let q3 = q(3);
        let f = standard_coloring(&q3);
        let mut phi = PartialColoring::empty(q3.edge_count(), 3).unwrap();
        assert!(avoids(&f, &phi).unwrap());
        assert!(agrees(&f, &phi).unwrap());

        let e00 = q3.edge_index(Edge::new(0, 0));
        phi.set(e00, 2).unwrap();
        assert!(avoids(&f, &phi).unwrap());
        assert!(!agrees(&f, &phi).unwrap());

        phi.set(e00, 1).unwrap();
        assert!(!avoids(&f, &phi).unwrap());
        assert!(agrees(&f, &phi).unwrap());

        // the standard coloring agrees with its own restriction
        let sub = f.restrict(&[0, 3, 7]);
        assert!(agrees(&f, &sub).unwrap());

        let other = PartialColoring::empty(4, 3).unwrap();
        assert!(avoids(&f, &other).is_err());
    }

    #[test]
    fn bicolored_components_on_standard() {
        let q3 = q(3);
        let f = standard_coloring(&q3);
        let comps = bicolored_components(&q3, &f, 1, 2).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert!(c.closed);
            assert_eq!(c.edges.len(), 4);
        }
        // component edge sets partition the (1,2)-edges
        let mut all: Vec<usize> = comps.iter().flat_map(|c| c.edges.clone()).collect();
        all.sort_unstable();
        let expect: Vec<usize> = (0..q3.edge_count())
            .filter(|&e| f.color(e) <= 2)
            .collect();
        assert_eq!(all, expect);

        assert!(bicolored_components(&q3, &f, 1, 1).is_err());
    }

    #[test]
    fn interchange_swaps_q2() {
        let q2 = q(2);
        let f = standard_coloring(&q2);
        let comps = bicolored_components(&q2, &f, 1, 2).unwrap();
        assert_eq!(comps.len(), 1);
        let g = interchange(&q2, &f, 1, 2, &comps[0].edges).unwrap();
        // the unique other proper 2-edge coloring
        assert_ne!(g.as_slice(), f.as_slice());
        for e in 0..q2.edge_count() {
            assert_ne!(g.color(e), f.color(e));
        }
        // involution
        let back = interchange(&q2, &g, 1, 2, &comps[0].edges).unwrap();
        assert_eq!(back.as_slice(), f.as_slice());
    }

    #[test]
    fn interchange_rejects_partial_component() {
        let q3 = q(3);
        let f = standard_coloring(&q3);
        let comps = bicolored_components(&q3, &f, 1, 2).unwrap();
        let mut partial = comps[0].edges.clone();
        partial.pop();
        assert!(matches!(
            interchange(&q3, &f, 1, 2, &partial),
            Err(Error::NotABicoloredComponent)
        ));
    }

    #[test]
    fn interchange_preserves_properness_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q4 = q(4);
        let mut f = standard_coloring(&q4);
        for _ in 0..10_000 {
            let a = rng.gen_range(1..=4);
            let mut b = rng.gen_range(1..=4);
            while b == a {
                b = rng.gen_range(1..=4);
            }
            let comps = bicolored_components(&q4, &f, a, b).unwrap();
            let pick = rng.gen_range(0..comps.len());
            let g = interchange(&q4, &f, a, b, &comps[pick].edges).unwrap();
            assert!(ProperColoring::new(&q4, 4, g.as_slice().to_vec()).is_ok());
            f = g;
        }
    }

    // tiny BFS oracle, independent of edge_distance
    fn oracle_distance(cube: &Hypercube, e1: Edge, e2: Edge) -> usize {
        let n = crate::host::Host::vertex_count(cube);
        let mut dist = vec![vec![usize::MAX; n]; n];
        for s in 0..n {
            let mut dq = VecDeque::new();
            dist[s][s] = 0;
            dq.push_back(s);
            while let Some(x) = dq.pop_front() {
                for j in 0..cube.dimension() {
                    let y = x ^ (1 << j);
                    if dist[s][y] == usize::MAX {
                        dist[s][y] = dist[s][x] + 1;
                        dq.push_back(y);
                    }
                }
            }
        }
        let (a, b) = e1.endpoints();
        let (c, d) = e2.endpoints();
        [(a, c), (a, d), (b, c), (b, d)]
            .into_iter()
            .map(|(x, y)| dist[x as usize][y as usize])
            .min()
            .unwrap()
    }

    #[test]
    fn edge_distance_examples() {
        let q3 = q(3);
        let e01 = Edge::new(0, 0); // {0,1}
        let e23 = Edge::new(2, 0); // {2,3}
        let e67 = Edge::new(6, 0); // {6,7}
        let i = |e: Edge| q3.edge_index(e);
        assert_eq!(edge_distance(&q3, i(e01), i(e23)), Some(1));
        assert_eq!(oracle_distance(&q3, e01, e23), 1);
        assert_eq!(edge_distance(&q3, i(e01), i(e67)), Some(2));
        assert_eq!(oracle_distance(&q3, e01, e67), 2);
        // adjacent edges
        assert_eq!(edge_distance(&q3, i(e01), i(Edge::new(0, 1))), Some(0));
        // full agreement with the oracle
        for a in 0..q3.edge_count() {
            for b in 0..q3.edge_count() {
                assert_eq!(
                    edge_distance(&q3, a, b),
                    Some(oracle_distance(&q3, q3.edge_at(a), q3.edge_at(b)))
                );
            }
        }
    }

    #[test]
    fn induced_matching_predicate() {
        let q3 = q(3);
        let i = |e: Edge| q3.edge_index(e);
        let mut pc = PartialColoring::empty(q3.edge_count(), 3).unwrap();
        pc.set(i(Edge::new(0, 0)), 1).unwrap();
        pc.set(i(Edge::new(2, 0)), 2).unwrap();
        assert!(classes_are_induced_matchings(&q3, &pc));

        let mut shared = PartialColoring::empty(q3.edge_count(), 3).unwrap();
        shared.set(i(Edge::new(0, 0)), 1).unwrap();
        shared.set(i(Edge::new(2, 0)), 1).unwrap();
        assert!(!classes_are_induced_matchings(&q3, &shared));

        let mut far = PartialColoring::empty(q3.edge_count(), 3).unwrap();
        far.set(i(Edge::new(0, 0)), 1).unwrap();
        far.set(i(Edge::new(6, 0)), 1).unwrap();
        assert!(classes_are_induced_matchings(&q3, &far));
    }

    #[test]
    fn induced_matching_monotone_under_removal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q4 = q(4);
        for _ in 0..200 {
            let mut pc = PartialColoring::empty(q4.edge_count(), 4).unwrap();
            for e in 0..q4.edge_count() {
                if rng.gen_bool(0.3) {
                    pc.set(e, rng.gen_range(1..=4)).unwrap();
                }
            }
            if classes_are_induced_matchings(&q4, &pc) {
                let colored: Vec<usize> = pc.colored().map(|(e, _)| e).collect();
                for &e in &colored {
                    let mut sub = pc.clone();
                    sub.clear(e);
                    assert!(classes_are_induced_matchings(&q4, &sub));
                }
            }
        }
    }

    #[test]
    fn profile_thresholds() {
        let q8 = q(8);
        let f = standard_coloring(&q8);
        let empty = PartialColoring::empty(q8.edge_count(), 8).unwrap();
        let p = profile(&q8, &f, &empty).unwrap();
        assert!(p.heavy.iter().all(|&h| !h));
        assert!(p.light.iter().all(|&l| l));
        assert!(p.counts.iter().all(|&c| c == 0));

        // eight colored edges in class 1 make it heavy: 8 >= 7*8/8 + 1
        let mut phi = PartialColoring::empty(q8.edge_count(), 8).unwrap();
        let m0 = q8.dimensional_matching(0).unwrap();
        for (k, e) in m0.iter().take(8).enumerate() {
            phi.set(q8.edge_index(*e), (k % 8 + 1) as Color).unwrap();
        }
        let p = profile(&q8, &f, &phi).unwrap();
        assert_eq!(p.counts[0], 8);
        assert!(p.heavy[0]);
        assert!(!p.light[0]);
        // counts sum to |phi|
        assert_eq!(p.counts.iter().sum::<usize>(), phi.colored_count());
    }
}
