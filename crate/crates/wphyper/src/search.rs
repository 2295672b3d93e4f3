//! Bounded exhaustive enumeration of quasi-smooth Calabi-Yau surface
//! hypersurfaces, re-deriving the cited extremal records below a weight
//! bound.
//!
//! Candidates are descending quadruples `a0 >= a1 >= a2 >= a3` with
//! degree `d = a0+a1+a2+a3`. Quasi-smooth well-formed members of this
//! shape automatically have canonical singularities, so the inner loop
//! needs no singularity analysis.

use rug::{Integer, Rational};
use thiserror::Error;

use crate::geometry::{
    hyp_well_formed, hyp_volume, quasi_smooth_general, wps_well_formed, GeomError, Hypersurface,
};

/// Complexity guard on the largest weight.
pub const MAX_WEIGHT_GUARD: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordKind {
    MinVolume,
    MaxBottomWeight,
}

impl RecordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordKind::MinVolume => "min-volume",
            RecordKind::MaxBottomWeight => "max-bottom-weight",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub max_weight: u64,
    pub kind: RecordKind,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordValue {
    Volume(Rational),
    BottomWeight(Integer),
}

/// Search outcome. `best` is `None` only when no candidate survives
/// the filters. The record is only certified below `max_weight`.
#[derive(Debug, Clone)]
pub struct RecordSet {
    pub kind: RecordKind,
    pub max_weight: u64,
    pub best: Option<RecordValue>,
    pub achievers: Vec<[u64; 4]>,
    pub examined: u64,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("max_weight {0} exceeds the complexity guard {MAX_WEIGHT_GUARD}")]
    GuardExceeded(u64),
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

struct Shard {
    best: Option<RecordValue>,
    achievers: Vec<[u64; 4]>,
    examined: u64,
}

/// `true` if `candidate` beats `best` for this record kind.
fn beats(kind: RecordKind, candidate: &RecordValue, best: &RecordValue) -> bool {
    match (kind, candidate, best) {
        (RecordKind::MinVolume, RecordValue::Volume(c), RecordValue::Volume(b)) => c < b,
        (RecordKind::MaxBottomWeight, RecordValue::BottomWeight(c), RecordValue::BottomWeight(b)) => {
            c > b
        }
        _ => unreachable!("record values never mix kinds"),
    }
}

fn fold(kind: RecordKind, acc: &mut Shard, value: RecordValue, weights: [u64; 4]) {
    match &acc.best {
        None => {
            acc.best = Some(value);
            acc.achievers.push(weights);
        }
        Some(best) if beats(kind, &value, best) => {
            acc.best = Some(value);
            acc.achievers.clear();
            acc.achievers.push(weights);
        }
        Some(best) if &value == best => acc.achievers.push(weights),
        Some(_) => {}
    }
}

fn run_shard(cfg: &SearchConfig, a0: u64) -> Result<Shard, SearchError> {
    let mut acc = Shard {
        best: None,
        achievers: Vec::new(),
        examined: 0,
    };
    for a1 in 1..=a0 {
        for a2 in 1..=a1 {
            for a3 in 1..=a2 {
                acc.examined += 1;
                let w = [a0, a1, a2, a3];
                let d = a0 + a1 + a2 + a3;
                let h = Hypersurface::from_u64(&w, d)?;
                if !wps_well_formed(&h.space) || !hyp_well_formed(&h)?.0 {
                    continue;
                }
                if !quasi_smooth_general(&h)? {
                    continue;
                }
                let value = match cfg.kind {
                    RecordKind::MinVolume => RecordValue::Volume(hyp_volume(&h)),
                    RecordKind::MaxBottomWeight => RecordValue::BottomWeight(Integer::from(a3)),
                };
                fold(cfg.kind, &mut acc, value, w);
            }
        }
    }
    Ok(acc)
}

/// Exhaustive record search over all Calabi-Yau surface candidates
/// with top weight at most `cfg.max_weight`, sharded by the top weight
/// across `cfg.workers` threads and merged in a fixed order so the
/// result is independent of the worker count.
pub fn enumerate_cy_surfaces(cfg: &SearchConfig) -> Result<RecordSet, SearchError> {
    if cfg.max_weight == 0 || cfg.max_weight > MAX_WEIGHT_GUARD {
        return Err(SearchError::GuardExceeded(cfg.max_weight));
    }
    if cfg.workers == 0 {
        return Err(SearchError::NoWorkers);
    }
    let workers = cfg.workers.min(cfg.max_weight as usize);

    // Round-robin by top weight keeps shard sizes balanced; merging
    // in ascending top-weight order keeps the result order fixed.
    let mut shards: Vec<(u64, Result<Shard, SearchError>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                scope.spawn(move || {
                    ((k as u64 + 1)..=cfg.max_weight)
                        .step_by(workers)
                        .map(|a0| (a0, run_shard(cfg, a0)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    shards.sort_by_key(|(a0, _)| *a0);

    let mut merged = Shard {
        best: None,
        achievers: Vec::new(),
        examined: 0,
    };
    for (_, shard) in shards {
        let shard = shard?;
        merged.examined += shard.examined;
        for (value, w) in shard.achievers.iter().map(|w| {
            // Reconstructing the value per achiever keeps the fold uniform.
            let d = w.iter().sum::<u64>();
            let h = Hypersurface::from_u64(w, d).unwrap();
            let v = match cfg.kind {
                RecordKind::MinVolume => RecordValue::Volume(hyp_volume(&h)),
                RecordKind::MaxBottomWeight => RecordValue::BottomWeight(Integer::from(w[3])),
            };
            (v, *w)
        }) {
            fold(cfg.kind, &mut merged, value, w);
        }
    }
    merged.achievers.sort();
    Ok(RecordSet {
        kind: cfg.kind,
        max_weight: cfg.max_weight,
        best: merged.best,
        achievers: merged.achievers,
        examined: merged.examined,
    })
}
