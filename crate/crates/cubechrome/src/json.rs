//! Wire formats. Everything the CLI reads or writes round-trips through
//! these types; conversions validate against the host.
//!
//! Hypercube colorings: `{"d": 3, "palette": 3, "edges": [{"base": 0,
//! "dim": 0, "color": 1}, ...]}`. General graphs: `{"n": 6, "edges":
//! [[0, 3], ...], "precoloring": [{"edge": [0, 3], "color": 1}, ...]}`
//! with optional `bipartition` and `lists`.

use crate::coloring::{Color, ListAssignment, PartialColoring, ProperColoring};
use crate::error::{Error, Result};
use crate::generators::GeneralGraph;
use crate::host::Host;
use crate::hypercube::{Edge, Hypercube};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ColoredEdgeJson {
    pub base: u64,
    pub dim: u32,
    pub color: Color,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CubeColoringJson {
    pub d: u32,
    pub palette: u32,
    pub edges: Vec<ColoredEdgeJson>,
}

/// A pair of colorings sharing one host cube: one to extend, one to avoid.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CubePairJson {
    pub d: u32,
    pub palette: u32,
    pub phi: Vec<ColoredEdgeJson>,
    pub psi: Vec<ColoredEdgeJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphEdgeColorJson {
    pub edge: [usize; 2],
    pub color: Color,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphEdgeListJson {
    pub edge: [usize; 2],
    pub colors: Vec<Color>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<[Vec<usize>; 2]>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub precoloring: Vec<GraphEdgeColorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub palette: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<Vec<GraphEdgeListJson>>,
}

/// One catalog line: a canonical configuration with its metadata.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogLineJson {
    pub key: String,
    pub d: u32,
    pub palette: u32,
    pub edge_count: usize,
    pub proper: bool,
    pub edges: Vec<ColoredEdgeJson>,
}

pub fn cube_coloring_to_json(cube: &Hypercube, pc: &PartialColoring) -> CubeColoringJson {
    CubeColoringJson {
        d: cube.dimension(),
        palette: pc.palette(),
        edges: pc
            .colored()
            .map(|(e, color)| {
                let edge = cube.edge_at(e);
                ColoredEdgeJson {
                    base: edge.base() as u64,
                    dim: edge.dim(),
                    color,
                }
            })
            .collect(),
    }
}

pub fn cube_coloring_from_json(json: &CubeColoringJson) -> Result<(Hypercube, PartialColoring)> {
    let cube = Hypercube::new(json.d)?;
    let mut pc = PartialColoring::empty(cube.edge_count(), json.palette)?;
    for entry in &json.edges {
        if entry.base >= (1u64 << json.d) || entry.dim >= json.d {
            return Err(Error::EdgeNotInHost {
                base: entry.base,
                dim: entry.dim,
            });
        }
        let edge = Edge::new(entry.base as u32, entry.dim);
        if edge.base() as u64 != entry.base {
            // the stated base had the spanned bit set
            return Err(Error::EdgeNotInHost {
                base: entry.base,
                dim: entry.dim,
            });
        }
        pc.set(cube.edge_index(edge), entry.color)?;
    }
    Ok((cube, pc))
}

pub fn proper_coloring_to_json(cube: &Hypercube, f: &ProperColoring) -> CubeColoringJson {
    cube_coloring_to_json(cube, &f.to_partial())
}

pub fn cube_pair_from_json(
    json: &CubePairJson,
) -> Result<(Hypercube, PartialColoring, PartialColoring)> {
    let (cube, phi) = cube_coloring_from_json(&CubeColoringJson {
        d: json.d,
        palette: json.palette,
        edges: json.phi.clone(),
    })?;
    let (_, psi) = cube_coloring_from_json(&CubeColoringJson {
        d: json.d,
        palette: json.palette,
        edges: json.psi.clone(),
    })?;
    Ok((cube, phi, psi))
}

pub fn graph_to_json(graph: &GeneralGraph, pc: Option<&PartialColoring>) -> GraphJson {
    GraphJson {
        n: graph.vertex_count(),
        bipartition: graph.bipartition().cloned(),
        edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        precoloring: pc
            .map(|pc| {
                pc.colored()
                    .map(|(e, color)| {
                        let (u, v) = graph.endpoints(e);
                        GraphEdgeColorJson {
                            edge: [u, v],
                            color,
                        }
                    })
                    .collect()
            })
            .unwrap_or_default(),
        palette: pc.map(|pc| pc.palette()),
        lists: None,
    }
}

pub fn graph_from_json(json: &GraphJson) -> Result<(GeneralGraph, PartialColoring)> {
    let edges: Vec<(usize, usize)> = json.edges.iter().map(|&[u, v]| (u, v)).collect();
    let mut graph = GeneralGraph::new(json.n, edges)?;
    if let Some(sides) = &json.bipartition {
        graph = graph.with_bipartition(sides.clone())?;
    }
    let palette = json.palette.unwrap_or_else(|| {
        json.precoloring
            .iter()
            .map(|e| e.color)
            .max()
            .unwrap_or(1)
            .max(crate::host::max_degree(&graph) as u32)
    });
    let mut pc = PartialColoring::empty(graph.edge_count(), palette)?;
    for entry in &json.precoloring {
        let idx = graph
            .edge_index_of(entry.edge[0], entry.edge[1])
            .ok_or_else(|| {
                Error::MalformedInput(format!(
                    "precolored edge {}-{} not in the graph",
                    entry.edge[0], entry.edge[1]
                ))
            })?;
        pc.set(idx, entry.color)?;
    }
    Ok((graph, pc))
}

pub fn lists_from_json(graph: &GeneralGraph, json: &GraphJson) -> Result<ListAssignment> {
    let entries = json
        .lists
        .as_ref()
        .ok_or_else(|| Error::MalformedInput("missing \"lists\"".into()))?;
    let mut lists = ListAssignment::empty(graph.edge_count());
    for entry in entries {
        let idx = graph
            .edge_index_of(entry.edge[0], entry.edge[1])
            .ok_or_else(|| {
                Error::MalformedInput(format!(
                    "listed edge {}-{} not in the graph",
                    entry.edge[0], entry.edge[1]
                ))
            })?;
        for &c in &entry.colors {
            if c == 0 || c > 63 {
                return Err(Error::ColorOutOfPalette {
                    color: c,
                    palette: 63,
                });
            }
            lists.add(idx, c);
        }
    }
    Ok(lists)
}

pub fn catalog_line(
    cube: &Hypercube,
    entry: &crate::enumeration::CatalogEntry,
    palette: u32,
) -> Result<CatalogLineJson> {
    let pc = entry.to_partial(palette)?;
    Ok(CatalogLineJson {
        key: entry.key.hex(),
        d: cube.dimension(),
        palette,
        edge_count: entry.edge_count,
        proper: entry.proper,
        edges: cube_coloring_to_json(cube, &pc).edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_coloring_roundtrip() {
        let cube = Hypercube::new(3).unwrap();
        let pc = PartialColoring::from_pairs(
            &cube,
            3,
            &[(Edge::new(0, 0), 1), (Edge::new(2, 2), 3)],
        )
        .unwrap();
        let json = cube_coloring_to_json(&cube, &pc);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: CubeColoringJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, json);
        let (cube2, pc2) = cube_coloring_from_json(&parsed).unwrap();
        assert_eq!(cube2, cube);
        assert_eq!(pc2, pc);
    }

    #[test]
    fn graph_roundtrip() {
        let (graph, pc) = crate::generators::counterexample_graph(3).unwrap();
        let json = graph_to_json(&graph, Some(&pc));
        let text = serde_json::to_string(&json).unwrap();
        let parsed: GraphJson = serde_json::from_str(&text).unwrap();
        let (graph2, pc2) = graph_from_json(&parsed).unwrap();
        assert_eq!(graph2, graph);
        assert_eq!(pc2, pc);
    }

    #[test]
    fn bad_edges_are_rejected() {
        let json = CubeColoringJson {
            d: 3,
            palette: 3,
            edges: vec![ColoredEdgeJson {
                base: 9,
                dim: 0,
                color: 1,
            }],
        };
        // base 9 has bit 0 set, so (9, 0) is not a canonical edge key
        assert!(cube_coloring_from_json(&json).is_err());

        let json = CubeColoringJson {
            d: 2,
            palette: 2,
            edges: vec![ColoredEdgeJson {
                base: 0,
                dim: 5,
                color: 1,
            }],
        };
        assert!(cube_coloring_from_json(&json).is_err());
    }
}
