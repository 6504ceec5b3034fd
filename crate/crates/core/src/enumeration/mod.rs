//! Isomorphism-free enumeration of polyhedral graphs.
//!
//! Every polyhedral graph other than a wheel arises from a smaller one by
//! adding an edge across a face or by splitting a vertex of degree at least
//! four into two vertices of degree at least three. Both moves preserve
//! polyhedrality, so starting from the wheels (the pyramids) and applying
//! them in rounds of increasing edge count reaches every type. A graph
//! belongs to exactly one round, so deduplicating each round by canonical
//! code yields every type exactly once.

mod oracle;

pub use oracle::{brute_force_oracle, ORACLE_MAX_VERTICES};

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::embedding::{canonical_code, CanonicalCode};
use crate::generators::pyramid;
use crate::validity::PolyhedralGraph;

/// Largest `max_vertices` accepted without the streaming override.
pub const SOFT_CAP: usize = 16;

/// Codes store vertex numbers in single bytes.
pub const HARD_LIMIT: usize = 255;

/// Environment variable naming the worker count (`0` = one per core).
pub const THREADS_ENV: &str = "POLYCENSUS_THREADS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("max_vertices must be at least 4, got {0}")]
    TooSmall(usize),
    #[error("max_vertices {got} exceeds the soft cap of {cap}; use streaming enumeration")]
    CapExceeded { got: usize, cap: usize },
    #[error("max_vertices {0} exceeds the code limit of {HARD_LIMIT}")]
    TooLarge(usize),
    #[error("oracle covers 4..={ORACLE_MAX_VERTICES} vertices, got {0}")]
    OutOfOracleRange(usize),
    #[error("invalid {THREADS_ENV} value {0:?}")]
    BadThreadCount(String),
    #[error("cannot start worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_vertices: usize,
    /// Worker count; `0` uses one per core.
    pub threads: usize,
}

impl EnumerationConfig {
    pub fn new(max_vertices: usize) -> Self {
        Self {
            max_vertices,
            threads: 0,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    /// Reads the worker count from [`THREADS_ENV`], defaulting to `0`.
    pub fn threads_from_env(self) -> Result<Self, EnumerationError> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => {
                let t = v
                    .trim()
                    .parse()
                    .map_err(|_| EnumerationError::BadThreadCount(v.clone()))?;
                Ok(self.with_threads(t))
            }
            Err(_) => Ok(self),
        }
    }

    /// A worker pool of the configured size.
    pub fn pool(&self) -> Result<rayon::ThreadPool, EnumerationError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| EnumerationError::ThreadPool(e.to_string()))
    }
}

/// Counters shared by stored and streaming enumeration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Graphs produced, seeds and every expansion included.
    pub generated: u64,
    /// Expansions whose type was already produced in the same round.
    pub duplicates: u64,
    pub wall_time: Duration,
}

/// All polyhedral types with `4..=max_vertices` vertices.
#[derive(Debug, Clone)]
pub struct EnumerationRun {
    pub max_vertices: usize,
    per_n: BTreeMap<usize, Vec<CanonicalCode>>,
    pub stats: EnumerationStats,
}

impl EnumerationRun {
    /// Sorted codes of the `n`-vertex types.
    pub fn codes(&self, n: usize) -> &[CanonicalCode] {
        self.per_n.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> BTreeMap<usize, usize> {
        self.per_n.iter().map(|(&n, c)| (n, c.len())).collect()
    }

    pub fn len(&self) -> usize {
        self.per_n.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every code, by vertex count and then by code.
    pub fn iter(&self) -> impl Iterator<Item = &CanonicalCode> + '_ {
        self.per_n.values().flatten()
    }

    pub fn contains(&self, code: &CanonicalCode) -> bool {
        self.codes(code.vertex_count()).binary_search(code).is_ok()
    }

    /// Decodes every type, in [`EnumerationRun::iter`] order.
    pub fn graphs(&self) -> impl Iterator<Item = PolyhedralGraph> + '_ {
        self.iter().map(decode_polyhedral)
    }
}

pub(crate) fn decode_polyhedral(code: &CanonicalCode) -> PolyhedralGraph {
    PolyhedralGraph::new_unchecked(code.decode().expect("enumerated codes decode"))
}

/// Enumerates with one worker per core, or as set by [`THREADS_ENV`].
pub fn enumerate_polyhedral(max_vertices: usize) -> Result<EnumerationRun, EnumerationError> {
    enumerate_with(&EnumerationConfig::new(max_vertices).threads_from_env()?)
}

pub fn enumerate_with(config: &EnumerationConfig) -> Result<EnumerationRun, EnumerationError> {
    if config.max_vertices > SOFT_CAP {
        return Err(EnumerationError::CapExceeded {
            got: config.max_vertices,
            cap: SOFT_CAP,
        });
    }
    let mut per_n: BTreeMap<usize, Vec<CanonicalCode>> =
        (4..=config.max_vertices).map(|n| (n, Vec::new())).collect();
    let stats = run_rounds(config, |round| {
        for code in round {
            per_n.get_mut(&code.vertex_count()).unwrap().push(code);
        }
    })?;
    for codes in per_n.values_mut() {
        codes.sort_unstable();
    }
    Ok(EnumerationRun {
        max_vertices: config.max_vertices,
        per_n,
        stats,
    })
}

/// Passes every type to `sink` without keeping the codes, so any
/// `max_vertices` up to [`HARD_LIMIT`] is accepted. Codes arrive grouped by
/// edge count (ascending), sorted within each group; deduplication is still
/// exact because each group is complete before it is emitted.
pub fn enumerate_streaming(
    config: &EnumerationConfig,
    mut sink: impl FnMut(&CanonicalCode),
) -> Result<EnumerationStats, EnumerationError> {
    run_rounds(config, |round| round.iter().for_each(&mut sink))
}

fn run_rounds(
    config: &EnumerationConfig,
    mut emit: impl FnMut(Vec<CanonicalCode>),
) -> Result<EnumerationStats, EnumerationError> {
    let max = config.max_vertices;
    if max < 4 {
        return Err(EnumerationError::TooSmall(max));
    }
    if max > HARD_LIMIT {
        return Err(EnumerationError::TooLarge(max));
    }
    let pool = config.pool()?;
    let start = Instant::now();
    let mut stats = EnumerationStats::default();

    let mut round: Vec<CanonicalCode> = Vec::new();
    for edges in 6..=3 * max - 6 {
        // the wheel with `edges / 2` spokes seeds this round
        if edges % 2 == 0 && edges / 2 < max {
            let wheel = pyramid(edges / 2).expect("wheels have at least 3 spokes");
            round.push(wheel.canonical_code().clone());
            stats.generated += 1;
        }
        round.sort_unstable();
        let (children, generated) = pool.install(|| {
            round
                .par_iter()
                .fold(
                    || (FxHashSet::default(), 0u64),
                    |(mut set, mut count), code| {
                        expand(code, max, |child| {
                            count += 1;
                            set.insert(child);
                        });
                        (set, count)
                    },
                )
                .reduce(
                    || (FxHashSet::default(), 0),
                    |(a, ca), (b, cb)| {
                        let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                        big.extend(small);
                        (big, ca + cb)
                    },
                )
        });
        stats.generated += generated;
        stats.duplicates += generated - children.len() as u64;
        emit(std::mem::replace(
            &mut round,
            children.into_iter().collect(),
        ));
    }
    debug_assert!(round.is_empty());
    stats.wall_time = start.elapsed();
    Ok(stats)
}

/// Calls `out` with the code of every one-edge expansion of `code` that has
/// at most `max_vertices` vertices.
fn expand(code: &CanonicalCode, max_vertices: usize, mut out: impl FnMut(CanonicalCode)) {
    let e = code.decode().expect("enumerated codes decode");
    for face in e.faces() {
        let darts = face.darts();
        let k = darts.len();
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let (a, b) = (darts[i], darts[j]);
                debug_assert!(e.dart_between(e.head(a), e.head(b)).is_none());
                out(canonical_code(&e.with_diagonal(a, b)));
            }
        }
    }
    if e.vertex_count() < max_vertices {
        for v in 0..e.vertex_count() {
            let deg = e.degree(v);
            // each split into two arcs of at least two darts, listed once
            // as the arc avoiding position 0
            for len in 2..=deg.saturating_sub(2) {
                for s in 1..=deg - len {
                    out(canonical_code(&e.with_split(v, s..s + len)));
                }
            }
        }
    }
}
