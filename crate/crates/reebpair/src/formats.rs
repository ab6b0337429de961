//! On-disk formats.
//!
//! Graphs are JSON:
//!
//! ```json
//! {"format":"reeb-graph","version":1,
//!  "nodes":[{"id":"A","f":0.0},{"id":"B","f":1.0}],
//!  "edges":[["A","B"]]}
//! ```
//!
//! Ties in `f` are broken by position in `nodes`. Nodes inserted by
//! conditioning carry `"synthetic": true`. Parallel edges are repeated
//! entries. Graphs are written with nodes in total order, so a write/read
//! round trip yields [`ReebGraph::canonicalized`].
//!
//! Diagrams are CSV with header
//! `class,birth_id,death_id,birth_f,death_f,synthetic,global`, one row per
//! pair in canonical order. Values use the shortest representation that
//! round-trips.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use reebpair_core::conditioning::ConditioningReport;
use reebpair_core::diagram::{PairClass, PersistenceDiagram, PersistencePair};
use reebpair_core::model::GraphBuilder;
use reebpair_core::ReebGraph;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const GRAPH_FORMAT: &str = "reeb-graph";
pub const GRAPH_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub format: String,
    pub version: u32,
    pub nodes: Vec<NodeEntry>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeEntry {
    pub id: String,
    pub f: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub synthetic: bool,
}

impl GraphFile {
    pub fn from_graph(graph: &ReebGraph) -> Self {
        GraphFile {
            format: GRAPH_FORMAT.into(),
            version: GRAPH_VERSION,
            nodes: graph
                .order()
                .iter()
                .map(|&v| NodeEntry {
                    id: graph.name(v).into(),
                    f: graph.value(v),
                    synthetic: graph.is_synthetic(v),
                })
                .collect(),
            edges: graph
                .edges()
                .iter()
                .map(|&[a, b]| [graph.name(a).into(), graph.name(b).into()])
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<ReebGraph> {
        if self.format != GRAPH_FORMAT {
            return Err(CliError::Format(format!(
                "expected format \"{GRAPH_FORMAT}\", found \"{}\"",
                self.format
            )));
        }
        if self.version != GRAPH_VERSION {
            return Err(CliError::Format(format!("unsupported version {}", self.version)));
        }
        let mut b = GraphBuilder::new();
        for n in &self.nodes {
            if n.synthetic {
                b.add_synthetic_node(n.id.clone(), n.f)?;
            } else {
                b.add_node(n.id.clone(), n.f)?;
            }
        }
        for [x, y] in &self.edges {
            b.add_edge_by_name(x, y)?;
        }
        Ok(b.build())
    }
}

pub fn parse_graph(text: &str) -> Result<ReebGraph> {
    serde_json::from_str::<GraphFile>(text)?.to_graph()
}

pub fn read_graph(reader: impl Read) -> Result<ReebGraph> {
    serde_json::from_reader::<_, GraphFile>(reader)?.to_graph()
}

pub fn write_graph(graph: &ReebGraph, mut writer: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, &GraphFile::from_graph(graph))?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub fn graph_to_string(graph: &ReebGraph) -> String {
    let mut buf = Vec::new();
    write_graph(graph, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

pub fn load_graph(path: &Path) -> Result<ReebGraph> {
    let text = fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.into(),
        source,
    })?;
    parse_graph(&text)
}

pub fn save_graph(graph: &ReebGraph, path: &Path) -> Result<()> {
    save_text(path, &graph_to_string(graph))
}

pub fn save_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::File {
        path: path.into(),
        source,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct DiagramRow {
    class: String,
    birth_id: String,
    death_id: String,
    birth_f: f64,
    death_f: f64,
    synthetic: bool,
    global: bool,
}

pub fn write_diagram(diagram: &PersistenceDiagram, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut pairs: Vec<&PersistencePair> = diagram.pairs.iter().collect();
    pairs.sort_by(|a, b| a.canonical_cmp(b));
    if pairs.is_empty() {
        w.write_record(["class", "birth_id", "death_id", "birth_f", "death_f", "synthetic", "global"])?;
    }
    for p in pairs {
        w.serialize(DiagramRow {
            class: p.class.as_str().into(),
            birth_id: p.birth.clone(),
            death_id: p.death.clone(),
            birth_f: p.birth_value,
            death_f: p.death_value,
            synthetic: p.synthetic,
            global: p.global,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn diagram_to_string(diagram: &PersistenceDiagram) -> String {
    let mut buf = Vec::new();
    write_diagram(diagram, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

pub fn read_diagram(reader: impl Read) -> Result<PersistenceDiagram> {
    let mut r = csv::Reader::from_reader(reader);
    let mut pairs = Vec::new();
    for row in r.deserialize::<DiagramRow>() {
        let row = row?;
        let class: PairClass = row
            .class
            .parse()
            .map_err(|_| CliError::Format(format!("unknown pair class \"{}\"", row.class)))?;
        pairs.push(PersistencePair {
            class,
            birth: row.birth_id,
            death: row.death_id,
            birth_value: row.birth_f,
            death_value: row.death_f,
            synthetic: row.synthetic,
            global: row.global,
        });
    }
    Ok(PersistenceDiagram::new(pairs, "file", ""))
}

pub fn load_diagram(path: &Path) -> Result<PersistenceDiagram> {
    let file = fs::File::open(path).map_err(|source| CliError::File {
        path: path.into(),
        source,
    })?;
    read_diagram(file)
}

/// Conditioning report with node names instead of ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub inserted: Vec<String>,
    pub removed: Vec<String>,
    /// Input node to surviving output node.
    pub mapping: std::collections::BTreeMap<String, Option<String>>,
}

impl ReportFile {
    pub fn new(input: &ReebGraph, output: &ReebGraph, report: &ConditioningReport) -> Self {
        ReportFile {
            inserted: report.inserted.iter().map(|&v| output.name(v).to_string()).collect(),
            removed: report.removed.iter().map(|&v| input.name(v).to_string()).collect(),
            mapping: input
                .nodes()
                .map(|v| {
                    (
                        input.name(v).to_string(),
                        report.mapping[v.index()].map(|w| output.name(w).to_string()),
                    )
                })
                .collect(),
        }
    }
}
