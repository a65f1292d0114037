//! Gap statistics for choosing the window extension `lambda`.
//!
//! For two incident edges with intervals `[a1, b1]` and `[a2, b2]` the gap is
//! `(max(b1, b2) - min(a1, a2) - (b1 - a1) - (b2 - a2)) / 2`: the smallest
//! `lambda` at which the widened intervals touch. Non-positive values mean
//! the pair already overlaps.

use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{EdgeId, NodeId, TemporalGraph, TimeInterval};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LambdaError {
    #[error("gap statistic needs finite intervals, got {0}")]
    InfiniteInterval(TimeInterval),
    #[error("sample count must be >= 1")]
    NoSamples,
    #[error("no node has two finite-interval incident edges{}", if *.distinct_pairs { " joining distinct node pairs" } else { "" })]
    NoEligibleNode { distinct_pairs: bool },
    #[error("bin width must be finite and > 0, got {0}")]
    BadBinWidth(f64),
    #[error("histogram would need {0} bins; pass a wider bin width")]
    TooManyBins(usize),
}

pub fn pair_gap_statistic(i1: &TimeInterval, i2: &TimeInterval) -> Result<f64, LambdaError> {
    for iv in [i1, i2] {
        if !iv.is_finite() {
            return Err(LambdaError::InfiniteInterval(*iv));
        }
    }
    // Equal to the four-term form above, with a single rounding step.
    let mut gap = 0.5 * (i1.start().max(i2.start()) - i1.end().min(i2.end()));
    // Rounding in the widened endpoints can leave the pair an ulp apart.
    if gap > 0.0 {
        while !i1.widen(gap).intersects(&i2.widen(gap)) {
            gap = gap.next_up();
        }
    }
    Ok(gap)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramOptions {
    pub samples: usize,
    /// Only pair edges whose endpoint pairs differ.
    pub distinct_pairs: bool,
    pub seed: u64,
    /// Overrides the Freedman-Diaconis bin width.
    pub bin_width: Option<f64>,
}

impl Default for HistogramOptions {
    fn default() -> Self {
        HistogramOptions {
            samples: 10_000,
            distinct_pairs: false,
            seed: 0,
            bin_width: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaHistogram {
    /// `counts.len() + 1` strictly increasing edges; the last bin is closed.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub n_samples: usize,
    /// `(level, value)` for levels 0.5, 0.9 and 0.99.
    pub quantiles: Vec<(f64, f64)>,
}

pub const QUANTILE_LEVELS: [f64; 3] = [0.5, 0.9, 0.99];
const MAX_BINS: usize = 100_000;
const CHUNK: usize = 1024;
const MAX_PAIR_ATTEMPTS: usize = 10_000;

impl LambdaHistogram {
    pub fn quantile(&self, level: f64) -> Option<f64> {
        self.quantiles.iter().find(|(l, _)| *l == level).map(|(_, v)| *v)
    }

    /// `bin_start,bin_end,count` rows under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_start,bin_end,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", self.bin_edges[i], self.bin_edges[i + 1], c);
        }
        out
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .quantiles
            .iter()
            .map(|(l, v)| format!("q{}={v}", l * 100.0))
            .collect();
        format!("samples={} {}", self.n_samples, parts.join(" "))
    }
}

/// Linear interpolation between closest ranks over sorted data.
fn quantile_sorted(sorted: &[f64], level: f64) -> f64 {
    let pos = level * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn bin(sorted: &[f64], width: Option<f64>) -> Result<(Vec<f64>, Vec<usize>), LambdaError> {
    let (min, max) = (sorted[0], sorted[sorted.len() - 1]);
    let width = match width {
        Some(w) if !(w.is_finite() && w > 0.0) => return Err(LambdaError::BadBinWidth(w)),
        Some(w) => w,
        None => {
            let iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
            let fd = 2.0 * iqr / (sorted.len() as f64).cbrt();
            if fd > 0.0 {
                fd
            } else if max > min {
                (max - min) / (sorted.len() as f64).sqrt().ceil()
            } else {
                1.0
            }
        }
    };
    let span = ((max - min) / width).ceil();
    let bins = if span.is_finite() { (span as usize).max(1) } else { usize::MAX };
    if bins > MAX_BINS {
        return Err(LambdaError::TooManyBins(bins));
    }
    let (start, bins) = if max > min { (min, bins) } else { (min - width / 2.0, 1) };
    let edges: Vec<f64> = (0..=bins).map(|i| start + i as f64 * width).collect();
    let mut counts = vec![0usize; bins];
    for &x in sorted {
        let k = (((x - start) / width).floor() as usize).min(bins - 1);
        counts[k] += 1;
    }
    Ok((edges, counts))
}

/// Samples gap statistics: pick a node uniformly among those with two or
/// more finite-interval incident edges, then two of those edges uniformly
/// without replacement. Persistent edges never participate.
///
/// Draw `i` uses a stream derived from `(seed, i / 1024)`, so the result is
/// independent of how chunks are spread across threads.
pub fn sample_gap_histogram(g: &TemporalGraph, opts: &HistogramOptions) -> Result<LambdaHistogram, LambdaError> {
    if opts.samples == 0 {
        return Err(LambdaError::NoSamples);
    }
    let eligible: Vec<(NodeId, Vec<EdgeId>)> = g
        .nodes()
        .filter_map(|v| {
            let finite: Vec<EdgeId> = g
                .incident(v)
                .iter()
                .copied()
                .filter(|&e| g.edge(e).interval.is_finite())
                .collect();
            let ok = if opts.distinct_pairs {
                let mut far: Vec<NodeId> = finite.iter().filter_map(|&e| g.edge(e).opposite(v)).collect();
                far.sort_unstable();
                far.dedup();
                far.len() >= 2
            } else {
                finite.len() >= 2
            };
            ok.then_some((v, finite))
        })
        .collect();
    if eligible.is_empty() {
        return Err(LambdaError::NoEligibleNode {
            distinct_pairs: opts.distinct_pairs,
        });
    }

    let draw = |rng: &mut ChaCha8Rng| -> f64 {
        let (v, edges) = &eligible[rng.gen_range(0..eligible.len())];
        let mut attempt = 0;
        loop {
            let picked = index::sample(rng, edges.len(), 2);
            let (e1, e2) = (g.edge(edges[picked.index(0)]), g.edge(edges[picked.index(1)]));
            attempt += 1;
            let same_pair = e1.opposite(*v) == e2.opposite(*v);
            if !opts.distinct_pairs || !same_pair || attempt >= MAX_PAIR_ATTEMPTS {
                return pair_gap_statistic(&e1.interval, &e2.interval).expect("finite intervals");
            }
        }
    };

    let chunks = opts.samples.div_ceil(CHUNK);
    let mut samples: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(opts.samples - c * CHUNK);
            (0..n).map(move |_| draw(&mut rng)).collect::<Vec<_>>()
        })
        .collect();
    samples.sort_by(f64::total_cmp);

    let quantiles = QUANTILE_LEVELS
        .iter()
        .map(|&l| (l, quantile_sorted(&samples, l)))
        .collect();
    let (bin_edges, counts) = bin(&samples, opts.bin_width)?;
    Ok(LambdaHistogram {
        bin_edges,
        counts,
        n_samples: samples.len(),
        quantiles,
    })
}
