//! Brute-force reference implementations used by the integration tests.
//! They read only the raw edge list of a `TemporalGraph`.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::Rng;
use walkingtime::graph::{InputTemporalGraph, NodeId, SymbolTable, TemporalEdge, TemporalGraph};

/// Random graph on `n` nodes with `m` edges drawn from all three families.
/// Times are small integers and halves so that touching intervals are common.
pub fn random_input<R: Rng>(rng: &mut R, n: usize, m: usize) -> InputTemporalGraph {
    let mut g = InputTemporalGraph::with_symbols(SymbolTable::numbered(n));
    for _ in 0..m {
        let u = NodeId(rng.gen_range(0..n as u32));
        let v = if rng.gen_bool(0.08) { u } else { NodeId(rng.gen_range(0..n as u32)) };
        let t = rng.gen_range(0..16) as f64 / 2.0;
        match rng.gen_range(0..10) {
            0..=3 => {
                let len = rng.gen_range(1..6) as f64 / 2.0;
                g.add_interval_edge(u, v, t, t + len).unwrap();
            }
            4..=8 => g.add_point_edge(u, v, t).unwrap(),
            _ => g.add_persist_edge(u, v).unwrap(),
        }
    }
    g
}

fn touches(e: &TemporalEdge, x: NodeId) -> bool {
    e.u == x || e.v == x
}

fn links(e: &TemporalEdge, a: NodeId, b: NodeId) -> bool {
    (e.u == a && e.v == b) || (e.u == b && e.v == a)
}

fn meet(a: &TemporalEdge, b: &TemporalEdge) -> bool {
    a.interval.start() <= b.interval.end() && b.interval.start() <= a.interval.end()
}

/// Active edge indices after following `prefix`, or `None` if some step of
/// the prefix is not admissible.
pub fn brute_active(g: &TemporalGraph, prefix: &[NodeId]) -> Option<Vec<usize>> {
    let edges = g.edges();
    let first = *prefix.first()?;
    let mut active: Vec<usize> = (0..edges.len()).filter(|&i| touches(&edges[i], first)).collect();
    for w in prefix.windows(2) {
        let (cur, next) = (w[0], w[1]);
        if !active.iter().any(|&i| links(&edges[i], cur, next)) {
            return None;
        }
        let bridge: Vec<usize> = active.iter().copied().filter(|&i| touches(&edges[i], next)).collect();
        active = (0..edges.len())
            .filter(|&i| touches(&edges[i], next) && bridge.iter().any(|&b| meet(&edges[b], &edges[i])))
            .collect();
    }
    Some(active)
}

/// Step distribution after `prefix`, computed straight from the three
/// weighting rules. Empty map at a dead end.
pub fn brute_distribution(g: &TemporalGraph, prefix: &[NodeId], p: f64, q: f64) -> BTreeMap<NodeId, f64> {
    let edges = g.edges();
    let active = brute_active(g, prefix).expect("admissible prefix");
    let cur = *prefix.last().unwrap();
    let prev = if prefix.len() >= 2 { Some(prefix[prefix.len() - 2]) } else { None };

    let mut weights = BTreeMap::new();
    for w in 0..g.node_count() as u32 {
        let w = NodeId(w);
        let via: Vec<&TemporalEdge> = active.iter().map(|&i| &edges[i]).filter(|e| links(e, cur, w)).collect();
        if via.is_empty() {
            continue;
        }
        let weight = match prev {
            None => 1.0,
            Some(prev) if w == prev => 1.0 / p,
            Some(prev) => {
                let near = edges
                    .iter()
                    .filter(|e| links(e, w, prev))
                    .any(|e| via.iter().any(|a| meet(a, e)));
                if near {
                    1.0
                } else {
                    1.0 / q
                }
            }
        };
        weights.insert(w, weight);
    }
    let total: f64 = weights.values().sum();
    weights.values_mut().for_each(|x| *x /= total);
    weights
}

/// Every node reachable from `start` by an admissible walk of at most
/// `bound` steps (the start itself included). Breadth-first over
/// (node, active set) states.
pub fn reachable(g: &TemporalGraph, start: NodeId, bound: usize) -> BTreeSet<NodeId> {
    let edges = g.edges();
    let mut seen_nodes = BTreeSet::from([start]);
    let init: Vec<usize> = (0..edges.len()).filter(|&i| touches(&edges[i], start)).collect();
    let mut frontier: HashSet<(NodeId, Vec<usize>)> = HashSet::from([(start, init)]);
    let mut visited = frontier.clone();
    for _ in 0..bound {
        let mut next_frontier = HashSet::new();
        for (cur, active) in &frontier {
            let targets: BTreeSet<NodeId> = active
                .iter()
                .map(|&i| {
                    let e = &edges[i];
                    if e.u == *cur {
                        e.v
                    } else {
                        e.u
                    }
                })
                .collect();
            for next in targets {
                let bridge: Vec<usize> = active.iter().copied().filter(|&i| touches(&edges[i], next)).collect();
                let na: Vec<usize> = (0..edges.len())
                    .filter(|&i| touches(&edges[i], next) && bridge.iter().any(|&b| meet(&edges[b], &edges[i])))
                    .collect();
                seen_nodes.insert(next);
                let state = (next, na);
                if visited.insert(state.clone()) {
                    next_frontier.insert(state);
                }
            }
        }
        frontier = next_frontier;
    }
    seen_nodes
}

/// All admissible walks from `start` with 1..=`bound` steps.
pub fn admissible_walks(g: &TemporalGraph, start: NodeId, bound: usize) -> Vec<Vec<NodeId>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![start]];
    while let Some(w) = stack.pop() {
        if w.len() > 1 {
            out.push(w.clone());
        }
        if w.len() > bound {
            continue;
        }
        let active = brute_active(g, &w).unwrap();
        let cur = *w.last().unwrap();
        let nexts: BTreeSet<NodeId> = active
            .iter()
            .map(|&i| {
                let e = &g.edges()[i];
                if e.u == cur {
                    e.v
                } else {
                    e.u
                }
            })
            .collect();
        for n in nexts {
            let mut w2 = w.clone();
            w2.push(n);
            stack.push(w2);
        }
    }
    out
}

/// Walks of 1..=`bound` steps using only edges whose intervals contain `t`.
pub fn walks_at_time(g: &TemporalGraph, t: f64, bound: usize) -> Vec<Vec<NodeId>> {
    let live: Vec<&TemporalEdge> = g.edges().iter().filter(|e| e.interval.contains_time(t)).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<NodeId>> = (0..g.node_count() as u32).map(|v| vec![NodeId(v)]).collect();
    while let Some(w) = stack.pop() {
        if w.len() > 1 {
            out.push(w.clone());
        }
        if w.len() > bound {
            continue;
        }
        let cur = *w.last().unwrap();
        let nexts: BTreeSet<NodeId> = live
            .iter()
            .filter(|e| touches(e, cur))
            .map(|e| if e.u == cur { e.v } else { e.u })
            .collect();
        for n in nexts {
            let mut w2 = w.clone();
            w2.push(n);
            stack.push(w2);
        }
    }
    out
}

/// Upper-tail p-value of Pearson's statistic for `counts` against `probs`.
pub fn chi_square_p_value(counts: &[u64], probs: &[f64]) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    assert_eq!(counts.len(), probs.len());
    let n: u64 = counts.iter().sum();
    let stat: f64 = counts
        .iter()
        .zip(probs)
        .map(|(&c, &p)| {
            let e = p * n as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    let dof = (counts.len() - 1) as f64;
    if dof == 0.0 {
        return 1.0;
    }
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

pub fn total_variation(a: &BTreeMap<NodeId, f64>, b: &BTreeMap<NodeId, f64>) -> f64 {
    let keys: BTreeSet<&NodeId> = a.keys().chain(b.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}
