//! Topology of the `d`-dimensional hypercube `Q_d`.
//!
//! Vertices are bit vectors in `0..2^d`; two vertices are adjacent iff they
//! differ in exactly one bit. An edge is identified by its lower endpoint
//! (the one with the spanned bit clear) together with the spanned dimension,
//! which makes dimensional-matching membership an `O(1)` lookup and gives a
//! stable total order on edges.

use crate::error::{Error, Result};
use crate::host::Host;
use std::fmt;

/// Vertex of `Q_d`: a `d`-bit vector stored in a `u32`.
pub type Vertex = u32;

/// Largest supported dimension. Vertex ids must fit in a `u32` and group
/// enumeration stays sane.
pub const MAX_DIMENSION: u32 = 24;

/// An edge of `Q_d`. Invariant: bit `dim` of `base` is clear; the endpoints
/// are `base` and `base ^ (1 << dim)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Edge {
    base: Vertex,
    dim: u32,
}

impl Edge {
    /// Edge through `vertex` along dimension `dim`. Either endpoint works.
    pub fn new(vertex: Vertex, dim: u32) -> Edge {
        Edge {
            base: vertex & !(1 << dim),
            dim,
        }
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.base, self.base | (1 << self.dim))
    }

    pub fn is_incident(&self, v: Vertex) -> bool {
        let (a, b) = self.endpoints();
        a == v || b == v
    }

    /// The endpoint other than `v`. Panics if `v` is not an endpoint.
    pub fn other_endpoint(&self, v: Vertex) -> Vertex {
        debug_assert!(self.is_incident(v));
        v ^ (1 << self.dim)
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Edge) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical edge order: by dimension, then by base vertex.
impl Ord for Edge {
    fn cmp(&self, other: &Edge) -> std::cmp::Ordering {
        (self.dim, self.base).cmp(&(other.dim, other.base))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, d{})", self.base, self.dim)
    }
}

/// Remove bit `bit` from `v`, shifting higher bits down.
fn drop_bit(v: u32, bit: u32) -> u32 {
    (v & ((1 << bit) - 1)) | ((v >> (bit + 1)) << bit)
}

/// Insert a zero bit at position `bit`, shifting higher bits up.
fn insert_zero_bit(v: u32, bit: u32) -> u32 {
    let low = v & ((1 << bit) - 1);
    let high = v >> bit;
    low | (high << (bit + 1))
}

/// The hypercube `Q_d`: `2^d` vertices, `d * 2^(d-1)` edges, `d`-regular.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Hypercube {
    d: u32,
}

impl Hypercube {
    pub fn new(d: u32) -> Result<Hypercube> {
        if d < 1 || d > MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange(d, MAX_DIMENSION));
        }
        Ok(Hypercube { d })
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..(1u32 << self.d)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v < (1 << self.d)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        e.dim < self.d && e.base < (1 << self.d) && e.base & (1 << e.dim) == 0
    }

    /// Position of `e` in the canonical order sorted by `(dim, base)`.
    pub fn edge_index(&self, e: Edge) -> usize {
        debug_assert!(self.contains_edge(e));
        let half = 1usize << (self.d - 1);
        e.dim as usize * half + drop_bit(e.base, e.dim) as usize
    }

    pub fn edge_at(&self, index: usize) -> Edge {
        debug_assert!(index < Host::edge_count(self));
        let half = 1usize << (self.d - 1);
        let dim = (index / half) as u32;
        Edge {
            base: insert_zero_bit((index % half) as u32, dim),
            dim,
        }
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let cube = *self;
        (0..Host::edge_count(self)).map(move |i| cube.edge_at(i))
    }

    /// The perfect matching of all edges spanned along dimension `i`.
    /// Deleting it leaves two disjoint copies of `Q_{d-1}`.
    pub fn dimensional_matching(&self, i: u32) -> Result<Vec<Edge>> {
        if i >= self.d {
            return Err(Error::BadDimensionIndex { index: i, d: self.d });
        }
        let half = 1usize << (self.d - 1);
        Ok((0..half)
            .map(|k| Edge {
                base: insert_zero_bit(k as u32, i),
                dim: i,
            })
            .collect())
    }

    fn check_edge(&self, e: Edge) -> Result<()> {
        if self.contains_edge(e) {
            Ok(())
        } else {
            Err(Error::EdgeNotInHost {
                base: e.base as u64,
                dim: e.dim,
            })
        }
    }

    /// Edges parallel to `e`: non-adjacent to `e` and sharing a 4-cycle with
    /// it. These are the `d-1` edges of the same dimension whose base differs
    /// from `e.base` in exactly one other bit.
    pub fn parallel_edges(&self, e: Edge) -> Result<Vec<Edge>> {
        self.check_edge(e)?;
        Ok((0..self.d)
            .filter(|&j| j != e.dim)
            .map(|j| Edge {
                base: e.base ^ (1 << j),
                dim: e.dim,
            })
            .collect())
    }

    /// The `d-1` four-cycles containing `e`, one per companion dimension.
    pub fn four_cycles_through(&self, e: Edge) -> Result<Vec<FourCycle>> {
        self.check_edge(e)?;
        Ok((0..self.d)
            .filter(|&j| j != e.dim)
            .map(|j| self.four_cycle(e.dim, j, e.base))
            .collect())
    }

    /// The 4-cycle spanned by dimensions `i != j` through `anchor` (the
    /// anchor's bits `i` and `j` are cleared first).
    pub fn four_cycle(&self, i: u32, j: u32, anchor: Vertex) -> FourCycle {
        debug_assert!(i != j && i < self.d && j < self.d);
        let a = anchor & !(1 << i) & !(1 << j);
        FourCycle {
            edges: [
                Edge { base: a, dim: i },
                Edge::new(a ^ (1 << i), j),
                Edge {
                    base: a ^ (1 << j),
                    dim: i,
                },
                Edge { base: a, dim: j },
            ],
            dims: (i, j),
        }
    }

    /// All 4-cycles spanned by dimensions `i != j`, in ascending anchor
    /// order. There are `2^(d-2)` of them.
    pub fn four_cycles_spanned(&self, i: u32, j: u32) -> Vec<FourCycle> {
        debug_assert!(i != j && i < self.d && j < self.d);
        let (lo, hi) = (i.min(j), i.max(j));
        (0..(1u32 << (self.d - 2)))
            .map(|k| {
                let anchor = insert_zero_bit(insert_zero_bit(k, lo), hi);
                self.four_cycle(i, j, anchor)
            })
            .collect()
    }

    /// Components of the subgraph induced by the dimensional matchings in
    /// `dims`: `2^(d-r)` disjoint copies of `Q_r` with explicit coordinate
    /// correspondences, ordered by anchor.
    pub fn induced_by_matchings(&self, dims: &[u32]) -> Result<Vec<SubcubeComponent>> {
        let mut dims: Vec<u32> = dims.to_vec();
        dims.sort_unstable();
        dims.dedup();
        if dims.is_empty() {
            return Err(Error::MalformedInput("empty dimension set".into()));
        }
        if let Some(&bad) = dims.iter().find(|&&i| i >= self.d) {
            return Err(Error::BadDimensionIndex { index: bad, d: self.d });
        }
        let r = dims.len() as u32;
        let sub = Hypercube::new(r)?;
        let rest: Vec<u32> = (0..self.d).filter(|i| !dims.contains(i)).collect();
        let mut components = Vec::with_capacity(1 << rest.len());
        for k in 0..(1u32 << rest.len()) {
            let mut anchor = 0u32;
            for (pos, &bit) in rest.iter().enumerate() {
                if k & (1 << pos) != 0 {
                    anchor |= 1 << bit;
                }
            }
            components.push(SubcubeComponent {
                sub,
                dims: dims.clone(),
                anchor,
            });
        }
        Ok(components)
    }

    /// All `2^d * d!` automorphisms, lazily, in lexicographic
    /// `(perm, flips)` order.
    pub fn automorphisms(&self) -> Automorphisms {
        Automorphisms::new(self.d)
    }
}

impl Host for Hypercube {
    fn vertex_count(&self) -> usize {
        1usize << self.d
    }

    fn edge_count(&self) -> usize {
        (self.d as usize) << (self.d - 1)
    }

    fn endpoints(&self, edge: usize) -> (usize, usize) {
        let e = self.edge_at(edge);
        let (u, v) = e.endpoints();
        (u as usize, v as usize)
    }
}

/// A 4-cycle of `Q_d`. The edge list walks around the cycle, so opposite
/// entries (0,2) and (1,3) share a dimension; `dims` are the two spanned
/// dimensions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FourCycle {
    edges: [Edge; 4],
    dims: (u32, u32),
}

impl FourCycle {
    pub fn edges(&self) -> [Edge; 4] {
        self.edges
    }

    pub fn dims(&self) -> (u32, u32) {
        self.dims
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// The two edges lying in dimension `dim` (must be one of `dims`).
    pub fn edges_in_dim(&self, dim: u32) -> [Edge; 2] {
        debug_assert!(dim == self.dims.0 || dim == self.dims.1);
        if dim == self.dims.0 {
            [self.edges[0], self.edges[2]]
        } else {
            [self.edges[1], self.edges[3]]
        }
    }
}

/// A signed coordinate permutation: vertex `v` maps to
/// `permute-bits(v, perm) ^ flips`. These are exactly the automorphisms of
/// `Q_d`; the group has order `2^d * d!`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism {
    perm: Vec<u32>,
    flips: u32,
}

impl Automorphism {
    pub fn new(perm: Vec<u32>, flips: u32) -> Result<Automorphism> {
        let d = perm.len() as u32;
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= d || seen[p as usize] {
                return Err(Error::MalformedInput("not a permutation".into()));
            }
            seen[p as usize] = true;
        }
        if d < 32 && flips >= (1 << d) {
            return Err(Error::MalformedInput("flip mask out of range".into()));
        }
        Ok(Automorphism { perm, flips })
    }

    pub fn identity(d: u32) -> Automorphism {
        Automorphism {
            perm: (0..d).collect(),
            flips: 0,
        }
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn flips(&self) -> u32 {
        self.flips
    }

    fn permute_bits(&self, v: Vertex) -> Vertex {
        let mut w = 0;
        for (i, &p) in self.perm.iter().enumerate() {
            if v & (1 << i) != 0 {
                w |= 1 << p;
            }
        }
        w
    }

    pub fn apply_vertex(&self, v: Vertex) -> Vertex {
        self.permute_bits(v) ^ self.flips
    }

    pub fn apply_edge(&self, e: Edge) -> Edge {
        Edge::new(self.apply_vertex(e.base), self.perm[e.dim as usize])
    }

    /// `self` after `other`: `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        debug_assert_eq!(self.perm.len(), other.perm.len());
        let perm: Vec<u32> = other.perm.iter().map(|&p| self.perm[p as usize]).collect();
        let flips = self.permute_bits(other.flips) ^ self.flips;
        Automorphism { perm, flips }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0u32; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u32;
        }
        let inv = Automorphism { perm, flips: 0 };
        let flips = inv.permute_bits(self.flips);
        Automorphism {
            perm: inv.perm,
            flips,
        }
    }
}

/// Lazy enumeration of the automorphism group in lexicographic
/// `(perm, flips)` order.
pub struct Automorphisms {
    perm: Option<Vec<u32>>,
    flips: u32,
    flip_count: u32,
}

impl Automorphisms {
    fn new(d: u32) -> Automorphisms {
        Automorphisms {
            perm: Some((0..d).collect()),
            flips: 0,
            flip_count: 1 << d,
        }
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Iterator for Automorphisms {
    type Item = Automorphism;

    fn next(&mut self) -> Option<Automorphism> {
        let perm = self.perm.as_mut()?;
        let item = Automorphism {
            perm: perm.clone(),
            flips: self.flips,
        };
        self.flips += 1;
        if self.flips == self.flip_count {
            self.flips = 0;
            if !next_permutation(perm) {
                self.perm = None;
            }
        }
        Some(item)
    }
}

/// One component of the subgraph induced by a set of dimensional matchings:
/// a copy of `Q_r` embedded in the host cube. `dims[i]` is the host
/// dimension carrying sub-dimension `i`; `anchor` fixes the remaining
/// coordinates.
#[derive(Clone, Debug)]
pub struct SubcubeComponent {
    sub: Hypercube,
    dims: Vec<u32>,
    anchor: Vertex,
}

impl SubcubeComponent {
    pub fn sub(&self) -> Hypercube {
        self.sub
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn anchor(&self) -> Vertex {
        self.anchor
    }

    pub fn vertex_in_host(&self, sub_v: Vertex) -> Vertex {
        let mut v = self.anchor;
        for (pos, &bit) in self.dims.iter().enumerate() {
            if sub_v & (1 << pos) != 0 {
                v |= 1 << bit;
            }
        }
        v
    }

    pub fn edge_in_host(&self, sub_e: Edge) -> Edge {
        Edge::new(
            self.vertex_in_host(sub_e.base()),
            self.dims[sub_e.dim() as usize],
        )
    }

    /// Inverse of `edge_in_host`, when the host edge belongs to this
    /// component.
    pub fn edge_from_host(&self, host_e: Edge) -> Option<Edge> {
        let pos = self.dims.iter().position(|&b| b == host_e.dim())?;
        let mut sub_v = 0u32;
        for (p, &bit) in self.dims.iter().enumerate() {
            if host_e.base() & (1 << bit) != 0 {
                sub_v |= 1 << p;
            }
        }
        let outside = {
            let mut mask = !0u32;
            for &bit in &self.dims {
                mask &= !(1 << bit);
            }
            mask
        };
        if host_e.base() & outside != self.anchor & outside {
            return None;
        }
        Some(Edge::new(sub_v, pos as u32))
    }

    pub fn contains_host_vertex(&self, v: Vertex) -> bool {
        let mut outside = !0u32;
        for &bit in &self.dims {
            outside &= !(1 << bit);
        }
        // only meaningful within the host's vertex range
        v & outside == self.anchor & outside
    }
}

/// Checks the structural criterion for a properly edge-colored graph to
/// embed in a hypercube with its colors as dimensions: every path must carry
/// some color an odd number of times, and every cycle must carry every color
/// an even number of times.
///
/// Exhaustive over all simple paths and cycles, so the host is capped at 20
/// edges. The coloring must be proper and total.
pub fn havel_moravek_check<H: Host>(host: &H, coloring: &[u32]) -> Result<bool> {
    let m = host.edge_count();
    if m > 20 {
        return Err(Error::TooLarge(format!(
            "havel_moravek_check supports at most 20 edges, got {m}"
        )));
    }
    if coloring.len() != m {
        return Err(Error::HostMismatch(coloring.len(), m));
    }
    let inc = crate::host::incidence(host);
    for v in 0..host.vertex_count() {
        let mut seen = 0u64;
        for &e in &inc[v] {
            let c = coloring[e];
            if c == 0 || c > 63 {
                return Err(Error::ColorOutOfPalette {
                    color: c,
                    palette: 63,
                });
            }
            if seen & (1 << (c - 1)) != 0 {
                return Err(Error::NotProper);
            }
            seen |= 1 << (c - 1);
        }
    }

    // DFS over simple paths from each start vertex. Each path is visited
    // once from its smaller endpoint; every prefix with the end vertex
    // larger than the start is itself a path to test. Cycles close back at
    // the start and are canonicalized by direction.
    struct Walk<'a> {
        inc: &'a [Vec<usize>],
        endpoints: Vec<(usize, usize)>,
        coloring: &'a [u32],
        counts: Vec<u32>,
        on_path: Vec<bool>,
        edge_used: Vec<bool>,
    }

    impl Walk<'_> {
        fn path_ok(&self) -> bool {
            self.counts.iter().any(|&c| c % 2 == 1)
        }

        fn cycle_ok(&self) -> bool {
            self.counts.iter().all(|&c| c % 2 == 0)
        }

        fn dfs(&mut self, start: usize, v: usize, first_edge: usize, len: usize) -> bool {
            for &e in &self.inc[v] {
                if self.edge_used[e] {
                    continue;
                }
                let (a, b) = self.endpoints[e];
                let w = if a == v { b } else { a };
                let c = (self.coloring[e] - 1) as usize;
                if w == start && len >= 2 {
                    // cycle; count each undirected cycle once
                    if e > first_edge {
                        self.counts[c] += 1;
                        if !self.cycle_ok() {
                            self.counts[c] -= 1;
                            return false;
                        }
                        self.counts[c] -= 1;
                    }
                    continue;
                }
                if w == start || self.on_path[w] {
                    continue;
                }
                self.counts[c] += 1;
                self.on_path[w] = true;
                self.edge_used[e] = true;
                let fe = if len == 0 { e } else { first_edge };
                let ok = (w <= start || self.path_ok()) && self.dfs(start, w, fe, len + 1);
                self.edge_used[e] = false;
                self.on_path[w] = false;
                self.counts[c] -= 1;
                if !ok {
                    return false;
                }
            }
            true
        }
    }

    let endpoints: Vec<(usize, usize)> = (0..m).map(|e| host.endpoints(e)).collect();
    let palette = *coloring.iter().max().unwrap_or(&0) as usize;
    let mut walk = Walk {
        inc: &inc,
        endpoints,
        coloring,
        counts: vec![0; palette],
        on_path: vec![false; host.vertex_count()],
        edge_used: vec![false; m],
    };
    for start in 0..host.vertex_count() {
        walk.on_path[start] = true;
        let ok = walk.dfs(start, start, usize::MAX, 0);
        walk.on_path[start] = false;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::GeneralGraph;
    use std::collections::HashSet;

    #[test]
    fn build_counts() {
        let q3 = Hypercube::new(3).unwrap();
        assert_eq!(Host::vertex_count(&q3), 8);
        assert_eq!(Host::edge_count(&q3), 12);
        let q1 = Hypercube::new(1).unwrap();
        assert_eq!(Host::vertex_count(&q1), 2);
        assert_eq!(Host::edge_count(&q1), 1);
        let q4 = Hypercube::new(4).unwrap();
        assert_eq!(Host::vertex_count(&q4), 16);
        assert_eq!(Host::edge_count(&q4), 32);
        assert!(Hypercube::new(0).is_err());
        assert!(Hypercube::new(25).is_err());
    }

    #[test]
    fn edge_indexing_roundtrip() {
        for d in 1..=6 {
            let cube = Hypercube::new(d).unwrap();
            for i in 0..Host::edge_count(&cube) {
                let e = cube.edge_at(i);
                assert!(cube.contains_edge(e));
                assert_eq!(cube.edge_index(e), i);
            }
            // canonical order is sorted by (dim, base)
            let edges: Vec<Edge> = cube.edges().collect();
            let mut sorted = edges.clone();
            sorted.sort();
            assert_eq!(edges, sorted);
        }
    }

    #[test]
    fn dimensional_matchings_partition_edges() {
        for d in 1..=10 {
            let cube = Hypercube::new(d).unwrap();
            let mut seen = HashSet::new();
            for i in 0..d {
                let m = cube.dimensional_matching(i).unwrap();
                assert_eq!(m.len(), 1 << (d - 1));
                // it is a matching
                let mut verts = HashSet::new();
                for e in &m {
                    let (u, v) = e.endpoints();
                    assert!(verts.insert(u));
                    assert!(verts.insert(v));
                    assert!(seen.insert(*e));
                }
            }
            assert_eq!(seen.len(), Host::edge_count(&cube));
        }
    }

    #[test]
    fn dimensional_matching_examples() {
        let q3 = Hypercube::new(3).unwrap();
        let m0: HashSet<Edge> = q3.dimensional_matching(0).unwrap().into_iter().collect();
        let expect: HashSet<Edge> = [0u32, 2, 4, 6].iter().map(|&b| Edge::new(b, 0)).collect();
        assert_eq!(m0, expect);

        let q2 = Hypercube::new(2).unwrap();
        let m1: HashSet<Edge> = q2.dimensional_matching(1).unwrap().into_iter().collect();
        let expect: HashSet<Edge> = [0u32, 1].iter().map(|&b| Edge::new(b, 1)).collect();
        assert_eq!(m1, expect);

        assert!(q3.dimensional_matching(3).is_err());
    }

    #[test]
    fn deleting_a_matching_leaves_two_subcubes() {
        // components induced by the other dimensions
        let q3 = Hypercube::new(3).unwrap();
        let comps = q3.induced_by_matchings(&[0, 1]).unwrap();
        assert_eq!(comps.len(), 2);
        for comp in &comps {
            assert_eq!(Host::vertex_count(&comp.sub()), 4);
            assert_eq!(Host::edge_count(&comp.sub()), 4);
        }
    }

    // brute-force 4-cycle oracle: all quadruples of vertices
    fn brute_four_cycles_through(cube: &Hypercube, e: Edge) -> Vec<HashSet<Edge>> {
        let n = Host::vertex_count(cube) as u32;
        let adjacent = |a: u32, b: u32| (a ^ b).count_ones() == 1;
        let mut cycles = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in 0..n {
                    for d in 0..n {
                        if c == a || c == b || d == a || d == b || c >= d {
                            continue;
                        }
                        // cycle a-b-?-? with both orders
                        for (x, y) in [(c, d), (d, c)] {
                            if adjacent(a, b) && adjacent(b, x) && adjacent(x, y) && adjacent(y, a)
                            {
                                let cyc: HashSet<Edge> = [
                                    Edge::new(a, (a ^ b).trailing_zeros()),
                                    Edge::new(b, (b ^ x).trailing_zeros()),
                                    Edge::new(x, (x ^ y).trailing_zeros()),
                                    Edge::new(y, (y ^ a).trailing_zeros()),
                                ]
                                .into_iter()
                                .collect();
                                if cyc.len() == 4 && cyc.contains(&e) && !cycles.contains(&cyc) {
                                    cycles.push(cyc);
                                }
                            }
                        }
                    }
                }
            }
        }
        cycles
    }

    #[test]
    fn parallel_edges_match_four_cycle_oracle() {
        let q3 = Hypercube::new(3).unwrap();
        let e = Edge::new(0, 0);
        // oracle: opposite edges over all 4-cycles through e
        let mut expected = HashSet::new();
        for cyc in brute_four_cycles_through(&q3, e) {
            for f in cyc {
                if f != e && f.dim() == e.dim() {
                    expected.insert(f);
                }
            }
        }
        let got: HashSet<Edge> = q3.parallel_edges(e).unwrap().into_iter().collect();
        assert_eq!(got, expected);
        assert_eq!(
            got,
            [Edge::new(2, 0), Edge::new(4, 0)].into_iter().collect()
        );
    }

    #[test]
    fn parallel_edge_and_cycle_counts() {
        for d in 2..=8 {
            let cube = Hypercube::new(d).unwrap();
            for e in cube.edges() {
                assert_eq!(cube.parallel_edges(e).unwrap().len(), d as usize - 1);
                assert_eq!(cube.four_cycles_through(e).unwrap().len(), d as usize - 1);
            }
        }
        let q1 = Hypercube::new(1).unwrap();
        assert!(q1.parallel_edges(Edge::new(0, 0)).unwrap().is_empty());
    }

    #[test]
    fn four_cycles_shape() {
        let q3 = Hypercube::new(3).unwrap();
        let cycles = q3.four_cycles_through(Edge::new(0, 0)).unwrap();
        assert_eq!(cycles.len(), 2);
        let dims: HashSet<(u32, u32)> = cycles.iter().map(|c| c.dims()).collect();
        assert_eq!(dims, [(0, 1), (0, 2)].into_iter().collect());
        for cyc in &cycles {
            // opposite edges share a dimension, consecutive ones do not
            let e = cyc.edges();
            assert_eq!(e[0].dim(), e[2].dim());
            assert_eq!(e[1].dim(), e[3].dim());
            assert_ne!(e[0].dim(), e[1].dim());
            // and it is a closed walk
            for k in 0..4 {
                let (_, _) = e[k].endpoints();
                let shared = [e[k].endpoints().0, e[k].endpoints().1]
                    .into_iter()
                    .filter(|&v| e[(k + 1) % 4].is_incident(v))
                    .count();
                assert_eq!(shared, 1);
            }
        }

        let q2 = Hypercube::new(2).unwrap();
        for e in q2.edges() {
            assert_eq!(q2.four_cycles_through(e).unwrap().len(), 1);
        }
    }

    #[test]
    fn induced_components() {
        let q3 = Hypercube::new(3).unwrap();
        let comps = q3.induced_by_matchings(&[0, 1, 2]).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(Host::edge_count(&comps[0].sub()), 12);

        let q4 = Hypercube::new(4).unwrap();
        let comps = q4.induced_by_matchings(&[2]).unwrap();
        assert_eq!(comps.len(), 8);
        for c in &comps {
            assert_eq!(Host::edge_count(&c.sub()), 1);
        }

        assert!(q3.induced_by_matchings(&[]).is_err());
    }

    #[test]
    fn induced_component_edge_maps_are_consistent() {
        for d in 3..=6u32 {
            let cube = Hypercube::new(d).unwrap();
            for r in 1..=3u32 {
                let dims: Vec<u32> = (0..r).map(|i| (i * 2 + 1) % d).collect();
                let mut dims = dims;
                dims.sort_unstable();
                dims.dedup();
                let comps = cube.induced_by_matchings(&dims).unwrap();
                assert_eq!(comps.len(), 1 << (d - dims.len() as u32));
                let mut seen = HashSet::new();
                for comp in &comps {
                    assert_eq!(
                        Host::edge_count(&comp.sub()),
                        dims.len() << (dims.len() - 1)
                    );
                    for sub_e in comp.sub().edges() {
                        let host_e = comp.edge_in_host(sub_e);
                        assert!(cube.contains_edge(host_e));
                        assert!(seen.insert(host_e));
                        assert_eq!(comp.edge_from_host(host_e), Some(sub_e));
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_group_order_and_action() {
        let q3 = Hypercube::new(3).unwrap();
        let all: Vec<Automorphism> = q3.automorphisms().collect();
        assert_eq!(all.len(), 48);

        let id = Automorphism::identity(3);
        for e in q3.edges() {
            assert_eq!(id.apply_edge(e), e);
        }

        // every element permutes the edge set and preserves dimension counts
        for a in &all {
            let mut image = HashSet::new();
            let mut dim_counts = vec![0usize; 3];
            for e in q3.edges() {
                let f = a.apply_edge(e);
                assert!(q3.contains_edge(f));
                assert!(image.insert(f));
                dim_counts[f.dim() as usize] += 1;
            }
            assert_eq!(image.len(), 12);
            assert_eq!(dim_counts, vec![4, 4, 4]);
        }
    }

    #[test]
    fn automorphism_group_closure() {
        for d in 2..=4u32 {
            let cube = Hypercube::new(d).unwrap();
            let all: HashSet<Automorphism> = cube.automorphisms().collect();
            assert_eq!(
                all.len(),
                (1usize << d) * (1..=d as usize).product::<usize>()
            );
            let list: Vec<Automorphism> = all.iter().cloned().collect();
            for a in &list {
                assert!(all.contains(&a.inverse()));
                let id = a.compose(&a.inverse());
                assert_eq!(id, Automorphism::identity(d));
            }
            // spot check composition closure (full product for small d)
            if d <= 3 {
                for a in &list {
                    for b in &list {
                        assert!(all.contains(&a.compose(b)));
                    }
                }
            }
            // action is a homomorphism
            let v = 1 % (1 << d);
            for a in list.iter().take(10) {
                for b in list.iter().take(10) {
                    assert_eq!(
                        a.compose(b).apply_vertex(v),
                        a.apply_vertex(b.apply_vertex(v))
                    );
                }
            }
        }
    }

    #[test]
    fn havel_moravek_accepts_standard_coloring() {
        let q3 = Hypercube::new(3).unwrap();
        let coloring: Vec<u32> = (0..Host::edge_count(&q3))
            .map(|e| q3.edge_at(e).dim() + 1)
            .collect();
        assert!(havel_moravek_check(&q3, &coloring).unwrap());
    }

    #[test]
    fn havel_moravek_rejects_triangle() {
        let g = GeneralGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!havel_moravek_check(&g, &[1, 2, 3]).unwrap());
    }

    #[test]
    fn havel_moravek_path_conditions() {
        // path of 3 edges colored 1,2,1: every subpath has an odd color
        let g = GeneralGraph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(havel_moravek_check(&g, &[1, 2, 1]).unwrap());
        // colored 1,2,3 it embeds too
        assert!(havel_moravek_check(&g, &[1, 2, 3]).unwrap());
        // six-cycle colored with three colors twice each embeds in Q3
        let c6 = GeneralGraph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        assert!(havel_moravek_check(&c6, &[1, 2, 3, 1, 2, 3]).unwrap());
        // bicolored six-cycle has a color appearing three times on the cycle
        assert!(!havel_moravek_check(&c6, &[1, 2, 1, 2, 1, 2]).unwrap());
    }

    #[test]
    fn havel_moravek_guards() {
        let g = GeneralGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        // improper input is rejected
        assert!(matches!(
            havel_moravek_check(&g, &[1, 1]),
            Err(Error::NotProper)
        ));
        let q5 = Hypercube::new(5).unwrap();
        let coloring: Vec<u32> = (0..Host::edge_count(&q5))
            .map(|e| q5.edge_at(e).dim() + 1)
            .collect();
        assert!(matches!(
            havel_moravek_check(&q5, &coloring),
            Err(Error::TooLarge(_))
        ));
    }
}
