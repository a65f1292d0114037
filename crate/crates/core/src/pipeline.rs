//! Edge list in, embedding file out.

use serde::Serialize;
use thiserror::Error;

use crate::embedding::{save_embeddings, EmbeddingFormatError, SkipGramTrainer, TrainConfig, TrainError};
use crate::graph::{transform_graph, GraphError, InputTemporalGraph};
use crate::walker::{sample_corpus_with_threads, WalkConfig, WalkCorpus, WalkError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub walk: WalkConfig,
    pub train: TrainConfig,
    /// Walker worker cap. Does not affect results.
    pub threads: Option<usize>,
}

impl PipelineConfig {
    /// Walk and training parameters share `seed`.
    pub fn new(walk: WalkConfig, train: TrainConfig) -> Self {
        PipelineConfig {
            walk,
            train,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        self.walk.validate()?;
        self.train.validate()?;
        if self.threads == Some(0) {
            return Err(PipelineError::Config("threads must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error(transparent)]
    Format(#[from] EmbeddingFormatError),
}

impl PipelineError {
    /// True for errors caused by bad parameters rather than by the data.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            PipelineError::Config(_)
                | PipelineError::Walk(WalkError::Config(_))
                | PipelineError::Train(TrainError::Config(_))
                | PipelineError::Graph(GraphError::InvalidLambda(_))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub version: &'static str,
    pub config: PipelineConfig,
    pub nodes: usize,
    pub input_edges: usize,
    pub walks: usize,
    pub walks_terminated_early: usize,
    pub walk_steps: usize,
    pub training_pairs: usize,
    pub epoch_losses: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub embeddings: String,
    pub corpus: WalkCorpus,
    pub manifest: RunManifest,
}

/// Transform, walk, train, save.
pub fn run_walkingtime(input: &InputTemporalGraph, cfg: &PipelineConfig) -> Result<PipelineOutput, PipelineError> {
    cfg.validate()?;
    let g = transform_graph(input, cfg.walk.lambda)?;
    let corpus = sample_corpus_with_threads(&g, &cfg.walk, cfg.threads)?;
    let trainer = SkipGramTrainer::new(&corpus, g.node_count(), &cfg.train)?;
    let training_pairs = trainer.pair_count();
    let (matrix, epoch_losses) = trainer.run();
    let embeddings = save_embeddings(&matrix, g.symbols())?;
    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION"),
        config: *cfg,
        nodes: g.node_count(),
        input_edges: input.edge_count(),
        walks: corpus.len(),
        walks_terminated_early: corpus.walks.iter().filter(|w| w.terminated_early).count(),
        walk_steps: corpus.walks.iter().map(|w| w.steps()).sum(),
        training_pairs,
        epoch_losses,
    };
    Ok(PipelineOutput {
        embeddings,
        corpus,
        manifest,
    })
}
