use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    advance_active, classify, group_by_neighbor, initial_active, transition_distribution,
    ActiveEdgeSet, SamplingMode, StepKind, WalkConfig, WalkError,
};
use crate::alias::AliasTable;
use crate::graph::{NodeId, TemporalGraph};

/// Draws the next node exactly from [`transition_distribution`].
pub fn sample_step_exact<R: Rng + ?Sized>(
    g: &TemporalGraph,
    active: &ActiveEdgeSet,
    prev: Option<NodeId>,
    p: f64,
    q: f64,
    rng: &mut R,
) -> Option<NodeId> {
    let dist = transition_distribution(g, active, prev, p, q)?;
    if dist.candidates.len() == 1 {
        return Some(dist.candidates[0]);
    }
    let index = WeightedIndex::new(&dist.weights).expect("positive finite weights");
    Some(dist.candidates[index.sample(rng)])
}

/// Rejection sampling over candidates in uniformly random order. A visited
/// candidate is kept with its [`StepKind::retention`] probability; if a full
/// pass keeps nothing, an alias table over the already-computed weights
/// decides.
pub fn sample_step_rejection<R: Rng + ?Sized>(
    g: &TemporalGraph,
    active: &ActiveEdgeSet,
    prev: Option<NodeId>,
    p: f64,
    q: f64,
    rng: &mut R,
) -> Option<NodeId> {
    let mut groups = group_by_neighbor(g, active);
    match groups.len() {
        0 => return None,
        1 => return Some(groups[0].0),
        _ => {}
    }
    let n = groups.len();
    let mut kinds: Vec<StepKind> = Vec::with_capacity(n);
    // Incremental Fisher-Yates: position k holds the k-th visited candidate.
    for k in 0..n {
        let j = rng.gen_range(k..n);
        groups.swap(k, j);
        let (w, via) = &groups[k];
        let kind = classify(g, prev, *w, via);
        kinds.push(kind);
        let keep = kind.retention(p, q);
        if keep >= 1.0 || rng.gen::<f64>() < keep {
            return Some(*w);
        }
    }
    let weights: Vec<f64> = kinds.iter().map(|k| k.weight(p, q)).collect();
    let table = AliasTable::new(&weights).expect("positive finite weights");
    Some(groups[table.sample(rng)].0)
}

/// A node sequence `<u_0, ..., u_k>` with `k <= walk_length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub nodes: Vec<NodeId>,
    /// Set when a dead end stopped the walk before `walk_length` steps.
    pub terminated_early: bool,
}

impl Walk {
    pub fn steps(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }
}

/// Walks in generation order: start nodes ascending, replicates inner.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WalkCorpus {
    pub walks: Vec<Walk>,
}

impl WalkCorpus {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    /// One walk per line, node labels separated by spaces.
    pub fn to_text(&self, g: &TemporalGraph) -> String {
        let mut out = String::new();
        for w in &self.walks {
            for (i, &n) in w.nodes.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(g.label(n));
            }
            out.push('\n');
        }
        out
    }
}

/// The random stream for replicate `replicate` of the walk from `start`.
/// Independent of which thread runs the walk.
pub fn walk_rng(seed: u64, start: NodeId, replicate: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((start.0 as u64) << 32) | replicate as u64);
    rng
}

pub fn sample_walk<R: Rng + ?Sized>(
    g: &TemporalGraph,
    start: NodeId,
    cfg: &WalkConfig,
    rng: &mut R,
) -> Result<Walk, WalkError> {
    let mut active = initial_active(g, start)?;
    let mut nodes = Vec::with_capacity(cfg.walk_length + 1);
    nodes.push(start);
    let mut prev = None;
    for _ in 0..cfg.walk_length {
        let next = match cfg.mode {
            SamplingMode::Exact => sample_step_exact(g, &active, prev, cfg.p, cfg.q, rng),
            SamplingMode::Rejection => sample_step_rejection(g, &active, prev, cfg.p, cfg.q, rng),
        };
        let Some(next) = next else {
            return Ok(Walk {
                nodes,
                terminated_early: true,
            });
        };
        prev = Some(active.node());
        active = advance_active(g, &active, next)?;
        nodes.push(next);
    }
    Ok(Walk {
        nodes,
        terminated_early: false,
    })
}

/// `walks_per_node` walks from every node, using all available threads.
pub fn sample_corpus(g: &TemporalGraph, cfg: &WalkConfig) -> Result<WalkCorpus, WalkError> {
    sample_corpus_with_threads(g, cfg, None)
}

/// As [`sample_corpus`] with at most `threads` workers. The result does not
/// depend on the thread count.
pub fn sample_corpus_with_threads(
    g: &TemporalGraph,
    cfg: &WalkConfig,
    threads: Option<usize>,
) -> Result<WalkCorpus, WalkError> {
    cfg.validate()?;
    let per_node = cfg.walks_per_node;
    let total = g.node_count() * per_node;
    let run = || {
        (0..total)
            .into_par_iter()
            .map(|task| {
                let start = NodeId((task / per_node) as u32);
                let replicate = (task % per_node) as u32;
                let mut rng = walk_rng(cfg.seed, start, replicate);
                sample_walk(g, start, cfg, &mut rng)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let walks = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| WalkError::Config(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(WalkCorpus { walks })
}
