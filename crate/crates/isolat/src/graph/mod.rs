//! Leveled multigraphs: explored from lattices, or synthesized from parameters
//! and then checked clause by clause.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::OrderDescriptor;
use crate::error::{Error, Result};

mod bileveled;
mod explore;
mod paste;
mod polarized;
mod volcano;

pub use bileveled::{synth_bileveled, validate_bileveled, BiLeveledParams};
pub use explore::{explore, validate_explored, ExploreKind, Explored};
pub use paste::{paste_cross_check, paste_ll_graph, validate_pasted};
pub use polarized::{synth_polarized, validate_polarized, PolarizedGraph, PolarizedParams};
pub use volcano::{synth_l_volcano, validate_volcano, VolcanoParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    L1,
    L2,
    LL,
    Beta,
}

impl EdgeLabel {
    pub fn name(self) -> &'static str {
        match self {
            EdgeLabel::L1 => "l1",
            EdgeLabel::L2 => "l2",
            EdgeLabel::LL => "ll",
            EdgeLabel::Beta => "beta",
        }
    }

    pub fn parse(s: &str) -> Result<EdgeLabel> {
        match s {
            "l1" => Ok(EdgeLabel::L1),
            "l2" => Ok(EdgeLabel::L2),
            "ll" => Ok(EdgeLabel::LL),
            "beta" => Ok(EdgeLabel::Beta),
            _ => Err(Error::InvalidParams(format!("unknown edge label {s:?}"))),
        }
    }

    /// Label of the i-th real prime.
    pub fn prime(i: usize) -> EdgeLabel {
        if i == 0 {
            EdgeLabel::L1
        } else {
            EdgeLabel::L2
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexOrder {
    Descriptor(OrderDescriptor),
    Abstract,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: usize,
    pub levels: Vec<u32>,
    pub order: VertexOrder,
    pub class_label: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
    pub mult: u32,
}

/// Directed multigraph. Parallel edges with the same label are merged and
/// their multiplicities added.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeveledGraph {
    vertices: Vec<Vertex>,
    edges: BTreeMap<(usize, usize, EdgeLabel), u32>,
}

impl LeveledGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, levels: Vec<u32>, order: VertexOrder, class_label: Option<String>) -> usize {
        let id = self.vertices.len();
        self.vertices.push(Vertex { id, levels, order, class_label });
        id
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: EdgeLabel, mult: u32) {
        assert!(from < self.vertices.len() && to < self.vertices.len(), "edge endpoint out of range");
        if mult == 0 {
            return;
        }
        *self.edges.entry((from, to, label)).or_insert(0) += mult;
    }

    pub fn remove_edge(&mut self, from: usize, to: usize, label: EdgeLabel) -> Option<u32> {
        self.edges.remove(&(from, to, label))
    }

    /// Overwrites a multiplicity; zero removes the edge.
    pub fn set_mult(&mut self, from: usize, to: usize, label: EdgeLabel, mult: u32) {
        if mult == 0 {
            self.edges.remove(&(from, to, label));
        } else {
            self.edges.insert((from, to, label), mult);
        }
    }

    pub fn mult(&self, from: usize, to: usize, label: EdgeLabel) -> u32 {
        self.edges.get(&(from, to, label)).copied().unwrap_or(0)
    }

    /// Builds a graph from explicit parts, checking ids.
    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let mut g = LeveledGraph::new();
        for (i, v) in vertices.into_iter().enumerate() {
            if v.id != i {
                return Err(Error::InvalidParams(format!("vertex ids must be 0..n, found {} at {i}", v.id)));
            }
            g.vertices.push(v);
        }
        for e in edges {
            if e.from >= g.vertices.len() || e.to >= g.vertices.len() || e.mult == 0 {
                return Err(Error::InvalidParams(format!("bad edge {} -> {}", e.from, e.to)));
            }
            g.add_edge(e.from, e.to, e.label, e.mult);
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// All edges, sorted by `(from, to, label)`.
    pub fn edges(&self) -> Vec<Edge> {
        self.edges.iter().map(|(&(from, to, label), &mult)| Edge { from, to, label, mult }).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_edges(&self, v: usize) -> Vec<Edge> {
        self.edges
            .range((v, 0, EdgeLabel::L1)..(v + 1, 0, EdgeLabel::L1))
            .map(|(&(from, to, label), &mult)| Edge { from, to, label, mult })
            .collect()
    }

    /// Incoming edges of every vertex.
    pub fn in_adjacency(&self) -> Vec<Vec<Edge>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for e in self.edges() {
            inc[e.to].push(e);
        }
        inc
    }

    /// Vertex counts per value of the given level coordinate.
    pub fn level_sizes(&self, axis: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for v in &self.vertices {
            let l = v.levels.get(axis).copied().unwrap_or(0) as usize;
            if out.len() <= l {
                out.resize(l + 1, 0);
            }
            out[l] += 1;
        }
        out
    }

    pub fn level(&self, v: usize, axis: usize) -> u32 {
        self.vertices[v].levels.get(axis).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Outcome of checking a graph against its characterizing clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub clauses: Vec<Clause>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| !c.pass).collect()
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    /// Records a clause; `witness` is the first counterexample, if any.
    pub fn push(&mut self, name: &str, witness: Option<String>) {
        self.clauses.push(Clause { name: name.into(), pass: witness.is_none(), witness });
    }

    pub fn into_result(self) -> Result<Self> {
        if let Some(c) = self.failures().first() {
            return Err(Error::ValidationFailed(format!(
                "{}: {}",
                c.name,
                c.witness.clone().unwrap_or_default()
            )));
        }
        Ok(self)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            write!(f, "{verdict} {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
