//! Level-wise breadth-first search of pattern space.
//!
//! Level 0 holds every frequent pattern of length `m ..= m + n - 1`, where
//! `m` is the minimum pattern length and `n` the step width. Level `k`
//! candidates are the exact `n`-bit extensions of level `k - 1`. Each
//! candidate has a single parent, so no deduplication is needed, and every
//! length `L ≥ m` falls in exactly one level. An infrequent pattern is never
//! extended; under a monotone backend no extension of it can be frequent, so
//! the search is complete.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bits::BitString;
use crate::codelength::{code_len, Backend, CodeLen};
use crate::error::{Error, Result};
use crate::occurrence::{OccurrenceParams, ScoredTransactions, TransactionSet};

/// Support threshold ε.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Support {
    Count(u64),
    /// Fraction of `|T|` in `(0, 1]`, rounded up to a count.
    Fraction(f64),
}

impl Support {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Support::Count(0) => Err(Error::InvalidParameter("epsilon count must be at least 1".into())),
            Support::Fraction(f) if !(f > 0.0 && f <= 1.0) => Err(Error::InvalidParameter(format!(
                "epsilon fraction {f} not in (0, 1]"
            ))),
            _ => Ok(()),
        }
    }

    /// Absolute count for a transaction set of `n` items.
    pub fn resolve(&self, n: usize) -> u64 {
        match *self {
            Support::Count(c) => c,
            // The slack absorbs products like 0.3 * 10 = 3.0000000000000004.
            Support::Fraction(f) => ((f * n as f64 - 1e-9).ceil() as u64).max(1),
        }
    }
}

impl FromStr for Support {
    type Err = Error;

    /// `"4"` is a count; `"0.3f"` a fraction.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed = if let Some(frac) = s.strip_suffix('f') {
            frac.parse::<f64>().map(Support::Fraction).map_err(|e| e.to_string())
        } else {
            s.parse::<u64>().map(Support::Count).map_err(|e| e.to_string())
        };
        let support = parsed.map_err(|e| Error::InvalidParameter(format!("epsilon {s:?}: {e}")))?;
        support.validate()?;
        Ok(support)
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Count(c) => write!(f, "{c}"),
            Support::Fraction(x) => write!(f, "{x}f"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Exact pruning; requires a monotone backend.
    #[default]
    Sound,
    /// Best-effort pruning for non-monotone backends. Results are flagged
    /// approximate.
    Heuristic,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sound" => Ok(Mode::Sound),
            "heuristic" => Ok(Mode::Heuristic),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sound => "sound",
            Mode::Heuristic => "heuristic",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MiningConfig {
    pub epsilon: Support,
    pub step_bits: usize,
    pub max_level: usize,
    pub mode: Mode,
}

impl MiningConfig {
    pub fn new(epsilon: Support) -> Self {
        MiningConfig {
            epsilon,
            step_bits: 4,
            max_level: 64,
            mode: Mode::Sound,
        }
    }

    pub fn with_step_bits(mut self, n: usize) -> Self {
        self.step_bits = n;
        self
    }

    pub fn with_max_level(mut self, max_level: usize) -> Self {
        self.max_level = max_level;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.epsilon.validate()?;
        if self.step_bits == 0 {
            return Err(Error::InvalidParameter("step_bits must be at least 1".into()));
        }
        // Level 0 enumerates 2^n strings per length.
        if self.step_bits > 24 {
            return Err(Error::InvalidParameter(format!(
                "step_bits {} too large to enumerate",
                self.step_bits
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequentPattern {
    pub pattern: BitString,
    pub count: u64,
    pub code_len: CodeLen,
    pub level: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MiningResult {
    /// Sorted by `(level, pattern)`.
    pub patterns: Vec<FrequentPattern>,
    /// Resolved absolute support threshold.
    pub epsilon: u64,
    /// Stopped at `max_level` with a nonempty frontier.
    pub truncated: bool,
    /// Produced in heuristic mode; completeness not guaranteed.
    pub approximate: bool,
}

impl MiningResult {
    pub fn level(&self, k: usize) -> impl Iterator<Item = &FrequentPattern> {
        self.patterns.iter().filter(move |p| p.level == k)
    }

    pub fn max_level(&self) -> Option<usize> {
        self.patterns.iter().map(|p| p.level).max()
    }
}

fn check_inputs(backend: &Backend, params: &OccurrenceParams, t: &TransactionSet, config: &MiningConfig) -> Result<()> {
    params.validated()?;
    config.validate()?;
    if t.is_empty() {
        return Err(Error::InvalidParameter("transaction set is empty".into()));
    }
    if config.mode == Mode::Sound && !backend.is_monotone() {
        return Err(Error::InvalidParameter(format!(
            "backend {} is not monotone; use heuristic mode",
            backend.name()
        )));
    }
    Ok(())
}

/// Counts every candidate in one pass over the transactions and keeps those
/// reaching `epsilon`. Candidates whose code length exceeds the entropy
/// ceiling of the most complex transaction are skipped without a pass.
fn count_pass(
    scored: &ScoredTransactions,
    params: &OccurrenceParams,
    candidates: Vec<BitString>,
    epsilon: u64,
    level: usize,
) -> Result<Vec<FrequentPattern>> {
    let ceiling = params.entropy_ceiling(scored.max_code_len());
    let kept: Vec<Option<FrequentPattern>> = candidates
        .into_par_iter()
        .map(|pattern| {
            let lx = code_len(scored.backend(), &pattern)?;
            if lx.bits() > ceiling {
                return Ok(None);
            }
            let count = scored.frequency_with(params, &pattern, lx)?;
            Ok((count >= epsilon).then_some(FrequentPattern {
                pattern,
                count,
                code_len: lx,
                level,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(kept.into_iter().flatten().collect())
}

fn seed_from_scored(
    scored: &ScoredTransactions,
    params: &OccurrenceParams,
    config: &MiningConfig,
    epsilon: u64,
) -> Result<Vec<FrequentPattern>> {
    if epsilon > scored.len() as u64 {
        return Ok(Vec::new());
    }
    let first = params.min_pattern_len;
    let candidates: Vec<BitString> = (first..first + config.step_bits)
        .flat_map(|len| {
            assert!(len <= 64, "seed length {len} exceeds 64 bits");
            (0..1u64 << len).map(move |v| BitString::from_value(v, len))
        })
        .collect();
    count_pass(scored, params, candidates, epsilon, 0)
}

/// All frequent patterns of lengths `m ..= m + n - 1`, with exact counts.
pub fn seed_level0(
    backend: &Backend,
    params: &OccurrenceParams,
    transactions: &TransactionSet,
    config: &MiningConfig,
) -> Result<Vec<FrequentPattern>> {
    check_inputs(backend, params, transactions, config)?;
    let scored = transactions.score(backend)?;
    seed_from_scored(&scored, params, config, config.epsilon.resolve(transactions.len()))
}

/// Every exact `step_bits`-bit extension of every pattern in `prev`.
pub fn generate(prev: &[FrequentPattern], step_bits: usize) -> Vec<BitString> {
    let mut out = Vec::with_capacity(prev.len() << step_bits);
    for parent in prev {
        for suffix in 0..1u64 << step_bits {
            out.push(parent.pattern.concat(&BitString::from_value(suffix, step_bits)));
        }
    }
    out
}

/// Mines every pattern with support at least ε.
///
/// The count pass runs on the current rayon pool; counts are exact integers
/// so the result does not depend on the number of workers.
pub fn mine(
    backend: &Backend,
    params: &OccurrenceParams,
    transactions: &TransactionSet,
    config: &MiningConfig,
) -> Result<MiningResult> {
    check_inputs(backend, params, transactions, config)?;
    let approximate = config.mode == Mode::Heuristic;
    if approximate {
        log::warn!(
            "heuristic mode with backend {}: pruning is best-effort and results may be incomplete",
            backend.name()
        );
    }
    let epsilon = config.epsilon.resolve(transactions.len());
    let mut result = MiningResult {
        epsilon,
        approximate,
        ..Default::default()
    };
    if epsilon > transactions.len() as u64 {
        return Ok(result);
    }

    let scored = transactions.score(backend)?;
    let mut frontier = seed_from_scored(&scored, params, config, epsilon)?;
    let mut level = 0;
    while !frontier.is_empty() {
        if level == config.max_level {
            result.truncated = true;
            result.patterns.append(&mut frontier);
            break;
        }
        level += 1;
        let candidates = generate(&frontier, config.step_bits);
        log::debug!("level {level}: {} candidates", candidates.len());
        let next = count_pass(&scored, params, candidates, epsilon, level)?;
        result.patterns.append(&mut frontier);
        frontier = next;
    }
    result
        .patterns
        .sort_by(|a, b| (a.level, &a.pattern).cmp(&(b.level, &b.pattern)));
    Ok(result)
}
