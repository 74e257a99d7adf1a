//! Edge-indexed graph access shared by the hypercube and general graphs.

/// A graph whose edges are addressed by indices `0..edge_count()` and whose
/// vertices are `0..vertex_count()`. Colorings are stored per edge index, so
/// everything downstream (solvers, predicates, constructions) works against
/// this trait.
pub trait Host {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn endpoints(&self, edge: usize) -> (usize, usize);
}

/// Incident edge indices per vertex.
pub fn incidence(host: &impl Host) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); host.vertex_count()];
    for e in 0..host.edge_count() {
        let (u, v) = host.endpoints(e);
        inc[u].push(e);
        inc[v].push(e);
    }
    inc
}

/// Neighbor lists per vertex.
pub fn vertex_adjacency(host: &impl Host) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); host.vertex_count()];
    for e in 0..host.edge_count() {
        let (u, v) = host.endpoints(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

pub fn max_degree(host: &impl Host) -> usize {
    let mut deg = vec![0usize; host.vertex_count()];
    for e in 0..host.edge_count() {
        let (u, v) = host.endpoints(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.into_iter().max().unwrap_or(0)
}
