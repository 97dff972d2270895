//! Timing the closed-form pipeline against the swap-based baseline.

use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use bolano_core::oracle::flatten_and_swap_no;
use bolano_core::{normal_order, LadderPoly, NormalPoly, ParallelConfig};

use crate::workload::workload;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Blasiak,
    Baseline,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Blasiak => "blasiak",
            Algo::Baseline => "baseline",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub ops: usize,
    pub modes: usize,
    pub trials: usize,
    pub seed: u64,
    pub algos: Vec<Algo>,
    /// Each word is timed this many times and the fastest run is kept.
    pub repeats: usize,
    pub parallel: ParallelConfig,
}

impl BenchConfig {
    pub fn new(ops: usize, modes: usize, trials: usize, seed: u64) -> Self {
        BenchConfig {
            ops,
            modes,
            trials,
            seed,
            algos: vec![Algo::Blasiak, Algo::Baseline],
            repeats: 1,
            parallel: ParallelConfig::serial(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub seed: u64,
    pub trial: usize,
    pub n_ops: usize,
    pub n_modes: usize,
    pub algo: Algo,
    pub nanos: u64,
    pub terms: usize,
}

pub const CSV_HEADER: &str = "seed,trial,n_ops,n_modes,algo,nanos,terms";

impl BenchRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.seed,
            self.trial,
            self.n_ops,
            self.n_modes,
            self.algo.name(),
            self.nanos,
            self.terms
        )
    }
}

/// Statistics of `baseline_time / blasiak_time` over the trials.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub median_ratio: f64,
    pub mean_ratio: f64,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trials={} median_ratio={:.3} mean_ratio={:.3} (baseline/blasiak)",
            self.trials, self.median_ratio, self.mean_ratio
        )
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub summary: Option<Summary>,
}

/// The two algorithms disagreed on a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub trial: usize,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "blasiak and baseline disagree on trial {}", self.trial)
    }
}

impl std::error::Error for Mismatch {}

fn time(algo: Algo, word: &LadderPoly, cfg: &BenchConfig) -> (u64, NormalPoly) {
    let mut best = u64::MAX;
    let mut out = NormalPoly::zero();
    for _ in 0..cfg.repeats.max(1) {
        let start = Instant::now();
        out = match algo {
            Algo::Blasiak => normal_order(black_box(word), &cfg.parallel),
            Algo::Baseline => flatten_and_swap_no(black_box(word)),
        };
        let ns = start.elapsed().as_nanos();
        best = best.min(ns.clamp(1, u64::MAX as u128) as u64);
        black_box(&out);
    }
    (best, out)
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Runs every trial serially. When both algorithms run, their outputs are
/// compared on every word.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, Mismatch> {
    let words = workload(cfg.seed, cfg.ops, cfg.modes, cfg.trials);
    let mut records = Vec::with_capacity(words.len() * cfg.algos.len());
    let mut ratios = Vec::new();
    for (trial, word) in words.iter().enumerate() {
        let mut results = Vec::new();
        for &algo in &cfg.algos {
            let (nanos, out) = time(algo, word, cfg);
            records.push(BenchRecord {
                seed: cfg.seed,
                trial,
                n_ops: cfg.ops,
                n_modes: cfg.modes,
                algo,
                nanos,
                terms: out.len(),
            });
            results.push((algo, nanos, out));
        }
        if let [(a1, t1, o1), (_, t2, o2)] = results.as_slice() {
            if o1 != o2 {
                return Err(Mismatch { trial });
            }
            let (blasiak, baseline) = if *a1 == Algo::Blasiak {
                (t1, t2)
            } else {
                (t2, t1)
            };
            ratios.push(*baseline as f64 / *blasiak as f64);
        }
    }
    let summary = (!ratios.is_empty()).then(|| Summary {
        trials: ratios.len(),
        mean_ratio: ratios.iter().sum::<f64>() / ratios.len() as f64,
        median_ratio: median(&mut ratios),
    });
    Ok(BenchReport { records, summary })
}
