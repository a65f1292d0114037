//! Replays the active-edge recursion by brute force over the raw edge list.
//! Shares no step logic with the sampler so it can serve as its oracle.

use super::{Walk, WalkConfig};
use crate::graph::{NodeId, TemporalEdge, TemporalGraph};

fn touches(e: &TemporalEdge, x: NodeId) -> bool {
    e.u == x || e.v == x
}

fn overlap(a: &TemporalEdge, b: &TemporalEdge) -> bool {
    let lo = a.interval.start().max(b.interval.start());
    let hi = a.interval.end().min(b.interval.end());
    lo <= hi
}

/// True iff `walk` is admissible on `g` from its first node, has at most
/// `cfg.walk_length` steps, and `terminated_early` matches its length.
pub fn validate_walk(g: &TemporalGraph, walk: &Walk, cfg: &WalkConfig) -> bool {
    let nodes = &walk.nodes;
    let Some(&start) = nodes.first() else {
        return false;
    };
    if nodes.iter().any(|n| n.index() >= g.node_count()) {
        return false;
    }
    let steps = nodes.len() - 1;
    if steps > cfg.walk_length || walk.terminated_early != (steps < cfg.walk_length) {
        return false;
    }

    let all = g.edges();
    let mut active: Vec<&TemporalEdge> = all.iter().filter(|e| touches(e, start)).collect();
    for pair in nodes.windows(2) {
        let (here, next) = (pair[0], pair[1]);
        let linked = active.iter().any(|e| {
            let mut ends = [e.u, e.v];
            let mut want = [here, next];
            ends.sort();
            want.sort();
            ends == want
        });
        if !linked {
            return false;
        }
        let bridge: Vec<&TemporalEdge> = active.iter().copied().filter(|e| touches(e, next)).collect();
        active = all
            .iter()
            .filter(|e| touches(e, next) && bridge.iter().any(|b| overlap(b, e)))
            .collect();
    }
    true
}
