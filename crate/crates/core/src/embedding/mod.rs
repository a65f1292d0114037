//! Skip-gram with negative sampling over walk corpora.

mod io;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::alias::AliasTable;
use crate::graph::NodeId;
use crate::walker::WalkCorpus;

pub use io::{load_embeddings, save_embeddings, EmbeddingFormatError, NodeEmbeddings};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrainError {
    #[error("walk corpus yields no (center, context) pairs; increase walk length or walks per node")]
    NoPairs,
    #[error("invalid training configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrainConfig {
    /// Context radius around each center position.
    pub window: usize,
    /// Full passes over the shuffled pair list.
    pub epochs: usize,
    pub dim: usize,
    pub negatives: usize,
    pub lr_initial: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            window: 10,
            epochs: 5,
            dim: 128,
            negatives: 5,
            lr_initial: 0.025,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), TrainError> {
        let bad = |m: &str| Err(TrainError::Config(m.to_owned()));
        if self.window == 0 {
            return bad("window must be >= 1");
        }
        if self.epochs == 0 {
            return bad("iterations must be >= 1");
        }
        if self.dim == 0 {
            return bad("dimension must be >= 1");
        }
        if self.negatives == 0 {
            return bad("negatives must be >= 1");
        }
        if !(self.lr_initial.is_finite() && self.lr_initial > 0.0) {
            return bad("learning rate must be finite and > 0");
        }
        Ok(())
    }
}

/// Input ("center") and output ("context") vectors, one row per node.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    dim: usize,
    input: Vec<f64>,
    context: Vec<f64>,
}

impl EmbeddingMatrix {
    pub fn zeros(rows: usize, dim: usize) -> Self {
        EmbeddingMatrix {
            dim,
            input: vec![0.0; rows * dim],
            context: vec![0.0; rows * dim],
        }
    }

    /// Input rows uniform in `[-0.5/dim, 0.5/dim]`, context rows zero.
    pub fn initialized<R: Rng + ?Sized>(rows: usize, dim: usize, rng: &mut R) -> Self {
        let half = 0.5 / dim as f64;
        let mut m = Self::zeros(rows, dim);
        for x in &mut m.input {
            *x = rng.gen_range(-half..=half);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.input.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn input_row(&self, n: NodeId) -> &[f64] {
        &self.input[n.index() * self.dim..(n.index() + 1) * self.dim]
    }

    pub fn context_row(&self, n: NodeId) -> &[f64] {
        &self.context[n.index() * self.dim..(n.index() + 1) * self.dim]
    }

    pub fn input_vectors(&self) -> &[f64] {
        &self.input
    }

    pub fn context_vectors(&self) -> &[f64] {
        &self.context
    }

    pub fn is_finite(&self) -> bool {
        self.input.iter().chain(&self.context).all(|x| x.is_finite())
    }
}

/// Every `(u_i, u_j)` with `0 < |i - j| <= window` within each walk.
pub fn extract_pairs(corpus: &WalkCorpus, window: usize) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
    corpus.walks.iter().flat_map(move |w| {
        let nodes = &w.nodes;
        (0..nodes.len()).flat_map(move |i| {
            let lo = i.saturating_sub(window);
            let hi = (i + window).min(nodes.len().saturating_sub(1));
            (lo..=hi).filter(move |&j| j != i).map(move |j| (nodes[i], nodes[j]))
        })
    })
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// `ln σ(x)` without overflow for large `|x|`.
#[inline]
pub fn log_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        -(-x).exp().ln_1p()
    } else {
        x - x.exp().ln_1p()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SgnsGrads {
    pub loss: f64,
    pub center: Vec<f64>,
    pub context: Vec<f64>,
    pub negatives: Vec<Vec<f64>>,
}

/// `loss = -ln σ(c·v) - Σ_k ln σ(-n_k·v)` for center `v`, context `c` and
/// negatives `n_k`, with the gradient of the loss for each vector.
pub fn sgns_pair_loss_and_grads(center: &[f64], context: &[f64], negatives: &[&[f64]]) -> SgnsGrads {
    let s = dot(context, center);
    let mut loss = -log_sigmoid(s);
    let g_pos = sigmoid(s) - 1.0;
    let mut d_center: Vec<f64> = context.iter().map(|c| g_pos * c).collect();
    let d_context: Vec<f64> = center.iter().map(|v| g_pos * v).collect();
    let mut d_negs = Vec::with_capacity(negatives.len());
    for neg in negatives {
        let s = dot(neg, center);
        loss -= log_sigmoid(-s);
        let g = sigmoid(s);
        for (dc, n) in d_center.iter_mut().zip(neg.iter()) {
            *dc += g * n;
        }
        d_negs.push(center.iter().map(|v| g * v).collect());
    }
    SgnsGrads {
        loss,
        center: d_center,
        context: d_context,
        negatives: d_negs,
    }
}

/// Sequential SGD trainer. Deterministic for a fixed seed.
pub struct SkipGramTrainer {
    cfg: TrainConfig,
    matrix: EmbeddingMatrix,
    pairs: Vec<(NodeId, NodeId)>,
    noise: AliasTable,
    rng: ChaCha8Rng,
    updates_done: u64,
    epochs_done: usize,
}

impl SkipGramTrainer {
    pub fn new(corpus: &WalkCorpus, node_count: usize, cfg: &TrainConfig) -> Result<Self, TrainError> {
        cfg.validate()?;
        let pairs: Vec<_> = extract_pairs(corpus, cfg.window).collect();
        if pairs.is_empty() {
            return Err(TrainError::NoPairs);
        }
        let mut freq = vec![0.0f64; node_count];
        for w in &corpus.walks {
            for n in &w.nodes {
                let slot = freq
                    .get_mut(n.index())
                    .ok_or_else(|| TrainError::Config(format!("corpus node {n} outside 0..{node_count}")))?;
                *slot += 1.0;
            }
        }
        let noise_weights: Vec<f64> = freq.iter().map(|f| f.powf(0.75)).collect();
        let noise = AliasTable::new(&noise_weights).ok_or(TrainError::NoPairs)?;

        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let matrix = EmbeddingMatrix::initialized(node_count, cfg.dim, &mut rng);
        Ok(SkipGramTrainer {
            cfg: *cfg,
            matrix,
            pairs,
            noise,
            rng,
            updates_done: 0,
            epochs_done: 0,
        })
    }

    pub fn matrix(&self) -> &EmbeddingMatrix {
        &self.matrix
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn epochs_done(&self) -> usize {
        self.epochs_done
    }

    fn total_updates(&self) -> u64 {
        self.pairs.len() as u64 * self.cfg.epochs as u64
    }

    /// Linear decay from `lr_initial` to `lr_initial / 100`.
    fn learning_rate(&self) -> f64 {
        let progress = (self.updates_done as f64 / self.total_updates() as f64).min(1.0);
        self.cfg.lr_initial * (1.0 - 0.99 * progress)
    }

    /// One shuffled pass over all pairs. Returns the mean pair loss observed
    /// before each update.
    pub fn train_epoch(&mut self) -> f64 {
        let dim = self.cfg.dim;
        let mut pairs = std::mem::take(&mut self.pairs);
        pairs.shuffle(&mut self.rng);
        let mut grad = vec![0.0; dim];
        let mut loss_sum = 0.0;
        for &(center, ctx) in &pairs {
            let lr = self.learning_rate();
            let m = &mut self.matrix;
            let c_off = center.index() * dim;
            grad.iter_mut().for_each(|g| *g = 0.0);

            let step = |target: usize, label: f64, m: &mut EmbeddingMatrix, grad: &mut [f64]| {
                let t_off = target * dim;
                let s = dot(&m.input[c_off..c_off + dim], &m.context[t_off..t_off + dim]);
                // d loss / d s
                let g = sigmoid(s) - label;
                for k in 0..dim {
                    grad[k] += g * m.context[t_off + k];
                    m.context[t_off + k] -= lr * g * m.input[c_off + k];
                }
                if label > 0.0 {
                    -log_sigmoid(s)
                } else {
                    -log_sigmoid(-s)
                }
            };

            loss_sum += step(ctx.index(), 1.0, m, &mut grad);
            for _ in 0..self.cfg.negatives {
                let neg = self.noise.sample(&mut self.rng);
                if neg == ctx.index() {
                    continue;
                }
                loss_sum += step(neg, 0.0, m, &mut grad);
            }
            for k in 0..dim {
                m.input[c_off + k] -= lr * grad[k];
            }
            self.updates_done += 1;
        }
        let mean = loss_sum / pairs.len() as f64;
        self.pairs = pairs;
        self.epochs_done += 1;
        mean
    }

    /// Mean SGNS loss over every pair with negatives drawn from a fresh
    /// stream seeded by `seed`. Does not touch the parameters or the
    /// training stream.
    pub fn mean_loss(&self, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = &self.matrix;
        let mut total = 0.0;
        for &(center, ctx) in &self.pairs {
            let v = m.input_row(center);
            total -= log_sigmoid(dot(v, m.context_row(ctx)));
            for _ in 0..self.cfg.negatives {
                let neg = self.noise.sample(&mut rng);
                if neg == ctx.index() {
                    continue;
                }
                total -= log_sigmoid(-dot(v, m.context_row(NodeId(neg as u32))));
            }
        }
        total / self.pairs.len() as f64
    }

    /// Runs the remaining epochs; returns the matrix and per-epoch mean losses.
    pub fn run(mut self) -> (EmbeddingMatrix, Vec<f64>) {
        let mut losses = Vec::with_capacity(self.cfg.epochs);
        while self.epochs_done < self.cfg.epochs {
            losses.push(self.train_epoch());
        }
        (self.matrix, losses)
    }
}

pub fn train_skipgram(
    corpus: &WalkCorpus,
    node_count: usize,
    cfg: &TrainConfig,
) -> Result<EmbeddingMatrix, TrainError> {
    Ok(SkipGramTrainer::new(corpus, node_count, cfg)?.run().0)
}
