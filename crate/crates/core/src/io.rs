//! JSON graph documents:
//! `{"vertices": 3, "edges": [{"u": 0, "v": 1, "w": "1/2"}, ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedMultigraph;
use crate::rational::Rational;

#[derive(Debug, Serialize, Deserialize)]
struct GraphDocument {
    vertices: usize,
    edges: Vec<EdgeDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeDocument {
    u: usize,
    v: usize,
    w: String,
}

pub fn parse_graph(text: &str) -> Result<WeightedMultigraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let mut g = WeightedMultigraph::new(doc.vertices)?;
    for edge in doc.edges {
        let w: Rational = edge.w.parse()?;
        g.add_edge(edge.u, edge.v, w)?;
    }
    Ok(g)
}

/// Compact single-line document; weights in lowest-terms `num/den` form.
pub fn serialize_graph(g: &WeightedMultigraph) -> String {
    let doc = GraphDocument {
        vertices: g.vertex_count(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDocument {
                u: e.u,
                v: e.v,
                w: e.weight.to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("graph document serializes")
}
