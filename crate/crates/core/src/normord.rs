//! Multimode normal ordering.
//!
//! Each summand is split by mode (operators of different modes commute), each
//! single-mode factor is normal-ordered by [`blasiak_normal_order`], and the
//! per-mode results are multiplied back together with creations of every mode
//! to the left. Summands are independent, so they can be processed on a
//! worker pool; the merge is exact addition into a canonical map, so the
//! result does not depend on scheduling.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use rayon::ThreadPool;
use smallvec::{smallvec, SmallVec};

use crate::blasiak::{
    blasiak_normal_order, blasiak_small, ModeExpansion, SmallExpansion, WordProfile,
};
use crate::error::{Error, Result};
use crate::expr::{LadderPoly, LadderTerm, ModeLabel, NormalPoly, OpKind, Scalar, Signature, Word};

pub const ENV_WORKERS: &str = "BOLANO_WORKERS";
pub const ENV_MIN_SUMMANDS: &str = "BOLANO_MIN_SUMMANDS";
pub const ENV_PARALLEL: &str = "BOLANO_PARALLEL";

/// Controls the per-summand worker pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelConfig {
    pub enable: bool,
    pub workers: usize,
    /// Smallest summand count that engages the pool. Values below 2 act as 2.
    pub min_summands: i64,
}

impl Default for ParallelConfig {
    fn default() -> Self {
        ParallelConfig {
            enable: true,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            min_summands: 2,
        }
    }
}

impl ParallelConfig {
    pub fn serial() -> Self {
        ParallelConfig {
            enable: false,
            workers: 1,
            ..Default::default()
        }
    }

    pub fn with_workers(workers: usize) -> Self {
        ParallelConfig {
            workers: workers.max(1),
            ..Default::default()
        }
    }

    pub fn effective_min_summands(&self) -> usize {
        self.min_summands.max(2) as usize
    }

    /// Defaults overridden by `BOLANO_WORKERS`, `BOLANO_MIN_SUMMANDS` and
    /// `BOLANO_PARALLEL`.
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let mut cfg = ParallelConfig::default();
        let bad = |k: &str, v: &str| Error::InvalidConfig(format!("{k}={v}"));
        if let Some(v) = lookup(ENV_WORKERS) {
            cfg.workers = v
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|w| *w > 0)
                .ok_or_else(|| bad(ENV_WORKERS, &v))?;
        }
        if let Some(v) = lookup(ENV_MIN_SUMMANDS) {
            cfg.min_summands = v.trim().parse().map_err(|_| bad(ENV_MIN_SUMMANDS, &v))?;
        }
        if let Some(v) = lookup(ENV_PARALLEL) {
            cfg.enable = match v.trim() {
                "1" => true,
                "0" => false,
                _ => return Err(bad(ENV_PARALLEL, &v)),
            };
        }
        Ok(cfg)
    }

    fn engages(&self, summands: usize) -> bool {
        self.enable && self.workers > 1 && summands >= self.effective_min_summands()
    }
}

fn pool(workers: usize) -> Arc<ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS.get_or_init(Default::default).lock().unwrap();
    pools
        .entry(workers)
        .or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .thread_name(|i| format!("bolano-{i}"))
                    .build()
                    .expect("failed to start worker pool"),
            )
        })
        .clone()
}

/// Normal-orders an expanded polynomial.
pub fn normal_order(p: &LadderPoly, cfg: &ParallelConfig) -> NormalPoly {
    let terms: Vec<(&Word, &Scalar)> = p.iter().collect();
    if cfg.engages(terms.len()) {
        pool(cfg.workers).install(|| {
            terms
                .par_iter()
                .map(|(w, c)| normal_order_term(w, c))
                .reduce(NormalPoly::zero, |a, b| a + b)
        })
    } else {
        let mut acc = NormalPoly::zero();
        for (w, c) in terms {
            acc += normal_order_term(w, c);
        }
        acc
    }
}

/// One mode's subword as `(kind, power)` runs.
type ModeRuns<'a> = (&'a ModeLabel, SmallVec<[(OpKind, u32); 16]>);

fn normal_order_term(word: &Word, coeff: &Scalar) -> NormalPoly {
    if word.is_empty() {
        return NormalPoly::scalar(coeff.clone());
    }
    let mut by_mode: SmallVec<[ModeRuns; 4]> = SmallVec::new();
    for (op, e) in word.blocks() {
        match by_mode.iter_mut().find(|(m, _)| **m == op.mode) {
            Some((_, ops)) => ops.push((op.kind, *e)),
            None => by_mode.push((&op.mode, smallvec![(op.kind, *e)])),
        }
    }
    by_mode.sort_unstable_by(|a, b| a.0.cmp(b.0));
    let profiles: SmallVec<[(&ModeLabel, WordProfile); 4]> = by_mode
        .into_iter()
        .map(|(mode, ops)| {
            (
                mode,
                WordProfile::from_word(&ops).expect("per-mode words are nonempty"),
            )
        })
        .collect();
    if let Some(n) = normal_order_small(&profiles, coeff) {
        return n;
    }
    let factors: SmallVec<[(&ModeLabel, ModeExpansion); 4]> = profiles
        .iter()
        .map(|(mode, profile)| (*mode, blasiak_normal_order(profile)))
        .collect();
    combine(factors.iter().map(|(m, e)| (*m, e)), coeff)
}

/// The same product as [`combine`], with every coefficient held in `i128`.
/// `None` on overflow.
fn normal_order_small(
    profiles: &[(&ModeLabel, WordProfile)],
    coeff: &Scalar,
) -> Option<NormalPoly> {
    let expansions: SmallVec<[SmallExpansion; 4]> = profiles
        .iter()
        .map(|(_, p)| blasiak_small(p))
        .collect::<Option<_>>()?;
    let mut out = NormalPoly::zero();
    let mut idx: SmallVec<[usize; 4]> = smallvec![0; expansions.len()];
    loop {
        let mut c = 1i128;
        for (e, &i) in expansions.iter().zip(&idx) {
            c = c.checked_mul(e[i].2)?;
        }
        let sig = Signature::from_modes(
            profiles
                .iter()
                .zip(expansions.iter().zip(&idx))
                .map(|((m, _), (e, &i))| ((*m).clone(), e[i].0, e[i].1)),
        );
        out.add_term(sig, coeff.scale_int(&BigInt::from(c)));
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Some(out);
            }
            idx[pos] += 1;
            if idx[pos] < expansions[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn split_word(word: &Word) -> BTreeMap<ModeLabel, Vec<(OpKind, u32)>> {
    let mut by_mode: BTreeMap<ModeLabel, Vec<(OpKind, u32)>> = BTreeMap::new();
    for (op, e) in word.blocks() {
        by_mode
            .entry(op.mode.clone())
            .or_default()
            .push((op.kind, *e));
    }
    by_mode
}

/// Splits a term into its scalar and one order-preserving subword per mode.
pub fn factor_by_mode(t: &LadderTerm) -> (Scalar, BTreeMap<ModeLabel, Vec<(OpKind, u32)>>) {
    (t.coeff.clone(), split_word(&t.word))
}

/// Multiplies per-mode normal forms and a scalar into one canonical
/// polynomial. Modes must be distinct.
pub fn final_sort(factors: &[(ModeLabel, ModeExpansion)], scalar: &Scalar) -> NormalPoly {
    combine(factors.iter().map(|(m, e)| (m, e)), scalar)
}

fn combine<'a>(
    factors: impl Iterator<Item = (&'a ModeLabel, &'a ModeExpansion)>,
    scalar: &Scalar,
) -> NormalPoly {
    let mut partial: Vec<(Signature, BigInt)> = vec![(Signature::identity(), BigInt::one())];
    for (mode, expansion) in factors {
        let mut next = Vec::with_capacity(partial.len() * expansion.terms.len());
        for (sig, c) in &partial {
            for (p, q, k) in &expansion.terms {
                let mut s = sig.clone();
                debug_assert_eq!(s.get(mode), (0, 0), "mode {mode} repeated");
                s.insert(mode.clone(), *p, *q);
                next.push((s, c * k));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(sig, c)| (sig, scalar.scale_int(&c)))
        .collect()
}

/// Normal-ordered `A B - B A`.
pub fn commutator_no(a: &LadderPoly, b: &LadderPoly, cfg: &ParallelConfig) -> NormalPoly {
    normal_order(&(&(a * b) - &(b * a)), cfg)
}
