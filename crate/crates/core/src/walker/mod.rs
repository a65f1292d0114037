//! Time-respecting biased random walks.
//!
//! A walk carries a set of *active edges*. It starts with every edge incident
//! on the start node. Stepping from `u_i` to `u_{i+1}` requires an active edge
//! joining the two; afterwards the active set becomes every edge incident on
//! `u_{i+1}` whose interval intersects some previously active edge incident on
//! `u_{i+1}`. Candidates are then weighted node2vec-style: `1/p` for returning
//! to `u_{i-1}`, `1` for nodes temporally adjacent to `u_{i-1}`, `1/q` for the
//! rest.

mod sample;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, NodeId, TemporalGraph, TimeInterval};

pub use sample::{
    sample_corpus, sample_corpus_with_threads, sample_step_exact, sample_step_rejection, sample_walk,
    walk_rng, Walk, WalkCorpus,
};
pub use validate::validate_walk;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("no active edge joins {from} and {to}")]
    InvalidStep { from: NodeId, to: NodeId },
    #[error("invalid walk configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// Draw from the normalized transition distribution.
    Exact,
    /// Visit candidates in random order, keeping each with a retention
    /// probability; fall back to an alias draw after a full rejected pass.
    Rejection,
}

impl FromStr for SamplingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(SamplingMode::Exact),
            "rejection" => Ok(SamplingMode::Rejection),
            _ => Err(format!("unknown sampling mode {s:?} (expected exact or rejection)")),
        }
    }
}

impl fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplingMode::Exact => "exact",
            SamplingMode::Rejection => "rejection",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WalkConfig {
    pub lambda: f64,
    /// Steps per walk; a full walk has `walk_length + 1` nodes.
    pub walk_length: usize,
    pub walks_per_node: usize,
    pub p: f64,
    pub q: f64,
    pub seed: u64,
    pub mode: SamplingMode,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            lambda: 0.0,
            walk_length: 80,
            walks_per_node: 10,
            p: 1.0,
            q: 1.0,
            seed: 0,
            mode: SamplingMode::Rejection,
        }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<(), WalkError> {
        let bad = |m: &str| Err(WalkError::Config(m.to_owned()));
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return bad("lambda must be finite and >= 0");
        }
        if !(self.p.is_finite() && self.p > 0.0) {
            return bad("p must be finite and > 0");
        }
        if !(self.q.is_finite() && self.q > 0.0) {
            return bad("q must be finite and > 0");
        }
        if self.walk_length == 0 {
            return bad("walk length must be >= 1");
        }
        if self.walks_per_node == 0 || self.walks_per_node > u32::MAX as usize {
            return bad("walks per node must be in 1..=2^32-1");
        }
        Ok(())
    }
}

/// `A_E(i)`: the edges usable at step `i`, all incident on [`Self::node`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveEdgeSet {
    step: usize,
    node: NodeId,
    /// Sorted by id.
    edges: Vec<EdgeId>,
}

impl ActiveEdgeSet {
    pub fn step(&self) -> usize {
        self.step
    }

    /// The walk's current node `u_i`.
    pub fn node(&self) -> NodeId {
        self.node
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// `A_E(0) = E ↾ u0`.
pub fn initial_active(g: &TemporalGraph, u0: NodeId) -> Result<ActiveEdgeSet, WalkError> {
    if !g.contains_node(u0) {
        return Err(WalkError::UnknownNode(u0));
    }
    let mut edges = g.incident(u0).to_vec();
    edges.sort_unstable();
    Ok(ActiveEdgeSet {
        step: 0,
        node: u0,
        edges,
    })
}

/// Active edges grouped by the endpoint opposite the current node, in node order.
pub(crate) fn group_by_neighbor(g: &TemporalGraph, active: &ActiveEdgeSet) -> Vec<(NodeId, Vec<EdgeId>)> {
    let mut pairs: Vec<(NodeId, EdgeId)> = active
        .edges
        .iter()
        .filter_map(|&id| g.edge(id).opposite(active.node).map(|w| (w, id)))
        .collect();
    pairs.sort_unstable();
    let mut out: Vec<(NodeId, Vec<EdgeId>)> = Vec::new();
    for (w, id) in pairs {
        match out.last_mut() {
            Some((last, ids)) if *last == w => ids.push(id),
            _ => out.push((w, vec![id])),
        }
    }
    out
}

/// `𝒰_{i+1}`: nodes joined to the current node by an active edge, sorted.
pub fn step_candidates(g: &TemporalGraph, active: &ActiveEdgeSet) -> Vec<NodeId> {
    group_by_neighbor(g, active).into_iter().map(|(w, _)| w).collect()
}

/// Sorted disjoint closed intervals covering the union of `intervals`.
fn merged_cover(mut intervals: Vec<TimeInterval>) -> Vec<(f64, f64)> {
    intervals.sort_by(|a, b| a.start().total_cmp(&b.start()));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        match out.last_mut() {
            Some((_, end)) if iv.start() <= *end => *end = end.max(iv.end()),
            _ => out.push((iv.start(), iv.end())),
        }
    }
    out
}

fn cover_intersects(cover: &[(f64, f64)], iv: &TimeInterval) -> bool {
    let k = cover.partition_point(|&(_, end)| end < iv.start());
    cover.get(k).is_some_and(|&(start, _)| start <= iv.end())
}

/// Moves the walk to `u_next` and computes `A_E(i+1)`.
pub fn advance_active(
    g: &TemporalGraph,
    active: &ActiveEdgeSet,
    u_next: NodeId,
) -> Result<ActiveEdgeSet, WalkError> {
    let invalid = WalkError::InvalidStep {
        from: active.node,
        to: u_next,
    };
    if !g.contains_node(u_next) {
        return Err(invalid);
    }
    let mut joined = false;
    let mut bridge = Vec::new();
    for &id in &active.edges {
        let e = g.edge(id);
        if e.is_incident(u_next) {
            bridge.push(e.interval);
            joined |= e.joins(active.node, u_next);
        }
    }
    if !joined {
        return Err(invalid);
    }

    let cover = merged_cover(bridge);
    let reach = cover.last().map_or(f64::NEG_INFINITY, |&(_, end)| end);
    let mut edges: Vec<EdgeId> = Vec::new();
    for &id in g.incident(u_next) {
        let iv = g.edge(id).interval;
        // Incidence lists are sorted by start.
        if iv.start() > reach {
            break;
        }
        if cover_intersects(&cover, &iv) {
            edges.push(id);
        }
    }
    edges.sort_unstable();
    Ok(ActiveEdgeSet {
        step: active.step + 1,
        node: u_next,
        edges,
    })
}

/// How a candidate relates to the previous node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// No previous node (first step).
    First,
    /// The candidate is `u_{i-1}`.
    Return,
    /// Some edge joins the candidate and `u_{i-1}` whose interval intersects
    /// an active edge between the current node and the candidate.
    Near,
    Far,
}

impl StepKind {
    pub fn weight(self, p: f64, q: f64) -> f64 {
        match self {
            StepKind::First | StepKind::Near => 1.0,
            StepKind::Return => 1.0 / p,
            StepKind::Far => 1.0 / q,
        }
    }

    /// Keep-probability used by the rejection sampler.
    pub fn retention(self, p: f64, q: f64) -> f64 {
        match self {
            StepKind::First | StepKind::Near => 1.0,
            StepKind::Return => (1.0 / p).min(1.0),
            StepKind::Far => (1.0 / q).min(1.0),
        }
    }
}

pub(crate) fn classify(
    g: &TemporalGraph,
    prev: Option<NodeId>,
    candidate: NodeId,
    via: &[EdgeId],
) -> StepKind {
    let Some(prev) = prev else {
        return StepKind::First;
    };
    if candidate == prev {
        return StepKind::Return;
    }
    let near = g.edges_between(candidate, prev).iter().any(|&e| {
        let iv = g.edge(e).interval;
        via.iter().any(|&a| g.edge(a).interval.intersects(&iv))
    });
    if near {
        StepKind::Near
    } else {
        StepKind::Far
    }
}

/// Normalized step distribution over the candidates of an active set.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionDistribution {
    pub candidates: Vec<NodeId>,
    pub kinds: Vec<StepKind>,
    /// Unnormalized.
    pub weights: Vec<f64>,
}

impl TransitionDistribution {
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let total = self.total_weight();
        self.weights.iter().map(|w| w / total).collect()
    }

    pub fn probability(&self, n: NodeId) -> f64 {
        match self.candidates.binary_search(&n) {
            Ok(i) => self.weights[i] / self.total_weight(),
            Err(_) => 0.0,
        }
    }
}

/// `None` signals a dead end (no candidates). With `prev == None` the
/// distribution is uniform.
pub fn transition_distribution(
    g: &TemporalGraph,
    active: &ActiveEdgeSet,
    prev: Option<NodeId>,
    p: f64,
    q: f64,
) -> Option<TransitionDistribution> {
    let groups = group_by_neighbor(g, active);
    if groups.is_empty() {
        return None;
    }
    let mut dist = TransitionDistribution {
        candidates: Vec::with_capacity(groups.len()),
        kinds: Vec::with_capacity(groups.len()),
        weights: Vec::with_capacity(groups.len()),
    };
    for (w, via) in &groups {
        let kind = classify(g, prev, *w, via);
        dist.candidates.push(*w);
        dist.kinds.push(kind);
        dist.weights.push(kind.weight(p, q));
    }
    Some(dist)
}
