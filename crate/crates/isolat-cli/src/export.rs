//! DOT and JSON renderings of leveled graphs and going-up reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use isolat::goingup::ReachabilityReport;
use isolat::graph::{Edge, EdgeLabel, LeveledGraph, Vertex, VertexOrder};
use isolat::{OrderDescriptor, RealIdeal};
use serde::{Deserialize, Serialize};

use crate::CliError;

fn levels_attr(levels: &[u32]) -> String {
    levels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

/// Vertices `v<id>` with a `level` attribute; an edge of multiplicity `m` is
/// drawn `m` times.
pub fn to_dot(g: &LeveledGraph) -> String {
    let mut s = String::from("digraph G {\n");
    for v in g.vertices() {
        write!(s, "  v{} [level=\"{}\"", v.id, levels_attr(&v.levels)).unwrap();
        if let Some(c) = &v.class_label {
            write!(s, ", class=\"{c}\"").unwrap();
        }
        s.push_str("];\n");
    }
    for e in g.edges() {
        for _ in 0..e.mult {
            writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, e.label).unwrap();
        }
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonOrder {
    Known {
        real_level: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        conductor: Option<Vec<u32>>,
    },
    Abstract(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonVertex {
    id: usize,
    levels: Vec<u32>,
    order: JsonOrder,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonEdge {
    from: usize,
    to: usize,
    label: String,
    mult: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    edges: Vec<JsonEdge>,
}

fn json_order(o: &VertexOrder) -> JsonOrder {
    match o {
        VertexOrder::Abstract => JsonOrder::Abstract("abstract".into()),
        VertexOrder::Descriptor(d) => JsonOrder::Known {
            real_level: d.real_level,
            conductor: d.conductor.as_ref().map(|c| c.exponents.clone()),
        },
    }
}

fn pretty<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

pub fn to_json(g: &LeveledGraph) -> String {
    let jg = JsonGraph {
        vertices: g
            .vertices()
            .iter()
            .map(|v| JsonVertex {
                id: v.id,
                levels: v.levels.clone(),
                order: json_order(&v.order),
                class: v.class_label.clone(),
            })
            .collect(),
        edges: g
            .edges()
            .into_iter()
            .map(|e| JsonEdge { from: e.from, to: e.to, label: e.label.name().into(), mult: e.mult })
            .collect(),
    };
    pretty(&jg)
}

pub fn from_json(text: &str) -> Result<LeveledGraph, CliError> {
    let jg: JsonGraph = serde_json::from_str(text).map_err(|e| CliError::config(format!("graph file: {e}")))?;
    let mut vertices = Vec::with_capacity(jg.vertices.len());
    for v in jg.vertices {
        let order = match v.order {
            JsonOrder::Abstract(s) if s == "abstract" => VertexOrder::Abstract,
            JsonOrder::Abstract(s) => return Err(CliError::config(format!("unknown order {s:?}"))),
            JsonOrder::Known { real_level, conductor } => VertexOrder::Descriptor(OrderDescriptor {
                real_level,
                conductor: conductor.map(RealIdeal::new),
            }),
        };
        vertices.push(Vertex { id: v.id, levels: v.levels, order, class_label: v.class });
    }
    let edges = jg
        .edges
        .into_iter()
        .map(|e| Ok(Edge { from: e.from, to: e.to, label: EdgeLabel::parse(&e.label)?, mult: e.mult }))
        .collect::<isolat::Result<Vec<_>>>()?;
    Ok(LeveledGraph::from_parts(vertices, edges)?)
}

#[derive(Debug, Serialize)]
struct JsonOrderDescriptor {
    real_level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    conductor: Option<Vec<u32>>,
}

#[derive(Debug, Serialize)]
struct JsonStep {
    step: &'static str,
    plane: Vec<Vec<u64>>,
    n0: u32,
    nl: BTreeMap<String, u32>,
}

#[derive(Debug, Serialize)]
struct JsonReport {
    reachable_max: bool,
    exceptional: Option<&'static str>,
    largest_orders: Vec<JsonOrderDescriptor>,
    path: Vec<JsonStep>,
}

fn descriptor(d: &OrderDescriptor) -> JsonOrderDescriptor {
    JsonOrderDescriptor { real_level: d.real_level, conductor: d.conductor.as_ref().map(|c| c.exponents.clone()) }
}

pub fn report_json(r: &ReachabilityReport) -> String {
    let jr = JsonReport {
        reachable_max: r.reachable_max,
        exceptional: r.exceptional.map(|c| c.name()),
        largest_orders: r.largest_orders.iter().map(descriptor).collect(),
        path: r
            .path
            .iter()
            .map(|s| JsonStep {
                step: s.step.name(),
                plane: s.plane.clone(),
                n0: s.n0,
                nl: s.nl.iter().enumerate().map(|(i, &n)| (format!("l{}", i + 1), n)).collect(),
            })
            .collect(),
    };
    pretty(&jr)
}
