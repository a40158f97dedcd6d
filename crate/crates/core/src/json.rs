//! JSON serialization of graphs, partitions, cut vectors, and verification
//! reports.
//!
//! Graph schema:
//!
//! ```json
//! {
//!   "vertices": ["a", "b"],
//!   "terminals": ["a", "b"],
//!   "edges": [{"u": "a", "v": "b", "cap": "5"}]
//! }
//! ```
//!
//! Capacities are strings: a base-10 integer or `"p/q"`. Vertex and terminal
//! order are significant (the last terminal canonicalizes bipartitions) and
//! survive a round trip exactly. Partition schema:
//! `{"clusters": [{"id": ..., "members": [...]}]}`.

use crate::builder::VerificationReport;
use crate::cuts::TerminalCutVector;
use crate::graph::{CapGraph, VertexPartition};
use crate::rational::{format_rational, parse_rational};
use crate::{Rational, Result};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    terminals: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    u: String,
    v: String,
    cap: String,
}

/// Parse a graph document; parallel edges merge by capacity summation.
pub fn parse_graph(text: &str) -> Result<CapGraph<Rational>> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in doc.edges {
        let cap = parse_rational(&e.cap)?;
        edges.push((e.u, e.v, cap));
    }
    CapGraph::new(doc.vertices, doc.terminals, edges)
}

/// Serialize a graph; `parse_graph` of the output reproduces the input exactly.
pub fn serialize_graph(g: &CapGraph<Rational>) -> String {
    let doc = GraphDoc {
        vertices: g.vertex_names().to_vec(),
        terminals: g.terminal_names().iter().map(|s| s.to_string()).collect(),
        edges: g
            .edges_named()
            .map(|(u, v, cap)| EdgeDoc {
                u: u.to_string(),
                v: v.to_string(),
                cap: format_rational(cap),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph document serializes")
}

pub fn parse_partition(text: &str) -> Result<VertexPartition> {
    Ok(serde_json::from_str(text)?)
}

pub fn serialize_partition(partition: &VertexPartition) -> String {
    serde_json::to_string_pretty(partition).expect("partition serializes")
}

/// JSON array of capacity strings in canonical cut-index order.
pub fn serialize_cut_vector(vector: &TerminalCutVector<Rational>) -> String {
    let values: Vec<String> = vector.values.iter().map(format_rational).collect();
    serde_json::to_string(&values).expect("cut vector serializes")
}

#[derive(Serialize, Deserialize)]
struct ReportDoc {
    per_index: Vec<ReportEntryDoc>,
    quality: String,
    pass: bool,
}

#[derive(Serialize, Deserialize)]
struct ReportEntryDoc {
    subset: Vec<String>,
    g_value: String,
    h_value: String,
}

/// Verification report as JSON: per-index values, worst quality ratio, pass flag.
pub fn serialize_report(report: &VerificationReport<Rational>) -> String {
    let doc = ReportDoc {
        per_index: report
            .per_index
            .iter()
            .map(|entry| ReportEntryDoc {
                subset: entry.subset.iter().cloned().collect(),
                g_value: format_rational(&entry.g_value),
                h_value: format_rational(&entry.h_value),
            })
            .collect(),
        quality: match &report.quality {
            Some(q) => format_rational(q),
            None => "inf".to_string(),
        },
        pass: report.pass,
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}
