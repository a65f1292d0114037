//! Temporal multigraphs.
//!
//! Raw data arrives as an [`InputTemporalGraph`] with three edge families:
//! edges carrying an explicit `[start, end]` interval, edges carrying a single
//! time point, and persistent edges with no time information at all.
//! [`transform_graph`] widens every interval by a symmetric window `lambda`
//! and produces the uniform [`TemporalGraph`] that the walker consumes.

mod edgelist;
mod interval;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexSet;
use serde::Serialize;
use thiserror::Error;

pub use edgelist::{parse_input, write_edge_list, ParseError, ParseErrorKind};
pub use interval::TimeInterval;

/// Dense node index in `0..node_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Dense edge index into [`TemporalGraph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("interval [{start}, {end}] must be finite with start < end")]
    InvalidInterval { start: f64, end: f64 },
    #[error("time point {0} must be finite")]
    NonFiniteTime(f64),
    #[error("window extension must be a finite non-negative number, got {0}")]
    InvalidLambda(f64),
    #[error("too many nodes or edges for 32-bit indices")]
    Overflow,
}

/// Bidirectional mapping between external labels and dense [`NodeId`]s.
/// Ids are assigned in first-seen order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SymbolTable {
    labels: IndexSet<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `"0"`, `"1"`, ... for graphs built directly in code.
    pub fn numbered(n: usize) -> Self {
        SymbolTable {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(i) = self.labels.get_index_of(label) {
            return NodeId(i as u32);
        }
        let (i, _) = self.labels.insert_full(label.to_owned());
        NodeId(i as u32)
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.labels.get_index_of(label).map(|i| NodeId(i as u32))
    }

    pub fn label(&self, id: NodeId) -> Option<&str> {
        self.labels.get_index(id.index()).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &str)> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, s)| (NodeId(i as u32), s.as_str()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub interval: TimeInterval,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PersistEdge {
    pub u: NodeId,
    pub v: NodeId,
}

/// Heterogeneous temporal input: interval, time-point and persistent edges.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InputTemporalGraph {
    symbols: SymbolTable,
    interval_edges: Vec<IntervalEdge>,
    point_edges: Vec<PointEdge>,
    persist_edges: Vec<PersistEdge>,
}

impl InputTemporalGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_symbols(symbols: SymbolTable) -> Self {
        InputTemporalGraph {
            symbols,
            ..Self::default()
        }
    }

    pub fn add_node(&mut self, label: &str) -> NodeId {
        self.symbols.intern(label)
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn node_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn edge_count(&self) -> usize {
        self.interval_edges.len() + self.point_edges.len() + self.persist_edges.len()
    }

    pub fn interval_edges(&self) -> &[IntervalEdge] {
        &self.interval_edges
    }

    pub fn point_edges(&self) -> &[PointEdge] {
        &self.point_edges
    }

    pub fn persist_edges(&self) -> &[PersistEdge] {
        &self.persist_edges
    }

    fn check_node(&self, n: NodeId) -> Result<(), GraphError> {
        if n.index() < self.symbols.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(n))
        }
    }

    pub fn add_interval_edge(
        &mut self,
        u: NodeId,
        v: NodeId,
        start: f64,
        end: f64,
    ) -> Result<(), GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(GraphError::InvalidInterval { start, end });
        }
        let interval = TimeInterval::new(start, end).ok_or(GraphError::InvalidInterval { start, end })?;
        self.interval_edges.push(IntervalEdge { u, v, interval });
        Ok(())
    }

    pub fn add_point_edge(&mut self, u: NodeId, v: NodeId, t: f64) -> Result<(), GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if !t.is_finite() {
            return Err(GraphError::NonFiniteTime(t));
        }
        self.point_edges.push(PointEdge { u, v, t });
        Ok(())
    }

    pub fn add_persist_edge(&mut self, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        self.persist_edges.push(PersistEdge { u, v });
        Ok(())
    }
}

/// An undirected multi-edge labeled with a closed time interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemporalEdge {
    pub id: EdgeId,
    pub u: NodeId,
    pub v: NodeId,
    pub interval: TimeInterval,
}

impl TemporalEdge {
    #[inline]
    pub fn is_incident(&self, n: NodeId) -> bool {
        self.u == n || self.v == n
    }

    /// Endpoint set equals `{a, b}`.
    #[inline]
    pub fn joins(&self, a: NodeId, b: NodeId) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }

    /// The far endpoint when standing on `n`; `n` itself for a self-loop.
    #[inline]
    pub fn opposite(&self, n: NodeId) -> Option<NodeId> {
        if self.u == n {
            Some(self.v)
        } else if self.v == n {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.u == self.v
    }
}

#[inline]
fn pair_key(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Uniform interval-labeled multigraph. Immutable once built.
#[derive(Debug, Clone)]
pub struct TemporalGraph {
    symbols: SymbolTable,
    edges: Vec<TemporalEdge>,
    /// Incident edge ids per node, sorted by interval start.
    adjacency: Vec<Vec<EdgeId>>,
    pairs: HashMap<(NodeId, NodeId), Vec<EdgeId>>,
}

impl TemporalGraph {
    /// Builds the graph and its indices. Edge ids follow iteration order.
    pub fn from_parts<I>(symbols: SymbolTable, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, TimeInterval)>,
    {
        let n = symbols.len();
        let mut out = Vec::new();
        for (u, v, interval) in edges {
            for x in [u, v] {
                if x.index() >= n {
                    return Err(GraphError::UnknownNode(x));
                }
            }
            let id = u32::try_from(out.len()).map_err(|_| GraphError::Overflow)?;
            out.push(TemporalEdge {
                id: EdgeId(id),
                u,
                v,
                interval,
            });
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut pairs: HashMap<_, Vec<EdgeId>> = HashMap::new();
        for e in &out {
            adjacency[e.u.index()].push(e.id);
            if !e.is_self_loop() {
                adjacency[e.v.index()].push(e.id);
            }
            pairs.entry(pair_key(e.u, e.v)).or_default().push(e.id);
        }
        for list in &mut adjacency {
            list.sort_by(|a, b| {
                let (ia, ib) = (out[a.index()].interval, out[b.index()].interval);
                ia.start().total_cmp(&ib.start()).then(a.cmp(b))
            });
        }

        Ok(TemporalGraph {
            symbols,
            edges: out,
            adjacency,
            pairs,
        })
    }

    /// Convenience for code-built graphs with labels `"0".."n-1"`.
    pub fn with_nodes<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, TimeInterval)>,
    {
        Self::from_parts(SymbolTable::numbered(n), edges)
    }

    pub fn node_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.symbols.len() as u32).map(NodeId)
    }

    pub fn contains_node(&self, n: NodeId) -> bool {
        n.index() < self.symbols.len()
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn label(&self, n: NodeId) -> &str {
        self.symbols.label(n).unwrap_or("?")
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &TemporalEdge {
        &self.edges[id.index()]
    }

    /// `E ↾ v` over the whole graph, sorted by interval start.
    #[inline]
    pub fn incident(&self, v: NodeId) -> &[EdgeId] {
        self.adjacency.get(v.index()).map_or(&[], Vec::as_slice)
    }

    /// `E ↾ (a, b)` over the whole graph.
    #[inline]
    pub fn edges_between(&self, a: NodeId, b: NodeId) -> &[EdgeId] {
        self.pairs.get(&pair_key(a, b)).map_or(&[], Vec::as_slice)
    }
}

/// Widens every edge by `lambda` on both sides; persistent edges become
/// `(-inf, inf)`. Ids are assigned interval edges first, then time points,
/// then persistent edges, each in input order.
pub fn transform_graph(g: &InputTemporalGraph, lambda: f64) -> Result<TemporalGraph, GraphError> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(GraphError::InvalidLambda(lambda));
    }
    let intervals = g
        .interval_edges
        .iter()
        .map(|e| (e.u, e.v, e.interval.widen(lambda)));
    let points = g.point_edges.iter().map(|e| {
        let iv = TimeInterval::new(e.t - lambda, e.t + lambda).expect("finite point edge");
        (e.u, e.v, iv)
    });
    let persist = g
        .persist_edges
        .iter()
        .map(|e| (e.u, e.v, TimeInterval::ALWAYS));
    TemporalGraph::from_parts(g.symbols.clone(), intervals.chain(points).chain(persist))
}

/// Edges of `edges` incident on `v`.
pub fn restrict_node(edges: &[TemporalEdge], v: NodeId) -> Vec<TemporalEdge> {
    edges.iter().filter(|e| e.is_incident(v)).copied().collect()
}

/// Edges of `edges` whose unordered endpoint pair is `{v, u}`. Only
/// self-loops survive when `v == u`.
pub fn restrict_pair(edges: &[TemporalEdge], v: NodeId, u: NodeId) -> Vec<TemporalEdge> {
    edges.iter().filter(|e| e.joins(v, u)).copied().collect()
}

/// Simple graph with one edge per connected node pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticGraph {
    pub node_count: usize,
    pub edges: BTreeSet<(NodeId, NodeId)>,
}

impl StaticGraph {
    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.edges.contains(&pair_key(a, b))
    }

    /// True if every consecutive pair of `walk` is joined by an edge.
    pub fn admits_walk(&self, walk: &[NodeId]) -> bool {
        walk.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

pub fn static_union(g: &TemporalGraph) -> StaticGraph {
    StaticGraph {
        node_count: g.node_count(),
        edges: g.edges.iter().map(|e| pair_key(e.u, e.v)).collect(),
    }
}
