//! Exhaustive ground truth for `F(T, ε)`.
//!
//! Every bit string of length `m ..= max_len` is scored with the frequency
//! function directly; nothing is pruned. This is only meant for
//! verification at desk scale (`max_len` up to about 20).
//!
//! Completeness beyond `max_len` is certified by the first length class `L`
//! such that either
//!
//! * the cheapest length-`L` string already exceeds the entropy ceiling of
//!   the most complex transaction, or
//! * no length-`L` string is frequent.
//!
//! Either way no longer string can be frequent under a monotone backend.

use rayon::prelude::*;

use crate::bits::BitString;
use crate::codelength::{code_len, Backend};
use crate::error::{Error, Result};
use crate::miner::Support;
use crate::occurrence::{OccurrenceParams, TransactionSet};

pub const MAX_ENUMERATED_LEN: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_len: usize,
    /// Fail with [`Error::Incomplete`] unless the enumeration reaches a
    /// certifying length class.
    pub must_cover_termination: bool,
}

impl OracleConfig {
    pub fn new(max_len: usize) -> Self {
        OracleConfig {
            max_len,
            must_cover_termination: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// ε exceeds the number of transactions.
    SupportAboveCount,
    /// Every string of this length fails entropy reduction everywhere.
    EntropyBound(usize),
    /// No string of this length is frequent.
    EmptyLengthClass(usize),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct OracleResult {
    /// `(pattern, count)` sorted by length, then lexicographically.
    pub patterns: Vec<(BitString, u64)>,
    pub epsilon: u64,
    pub certificate: Option<Certificate>,
}

/// `{ x : m ≤ |x| ≤ max_len, f(T, x) ≥ ε }` by exhaustion.
pub fn enumerate_frequent(
    backend: &Backend,
    params: &OccurrenceParams,
    transactions: &TransactionSet,
    epsilon: Support,
    config: &OracleConfig,
) -> Result<OracleResult> {
    params.validated()?;
    epsilon.validate()?;
    let first = params.min_pattern_len;
    if config.max_len < first || config.max_len > MAX_ENUMERATED_LEN {
        return Err(Error::InvalidParameter(format!(
            "oracle max_len {} must lie in {first}..={MAX_ENUMERATED_LEN}",
            config.max_len
        )));
    }
    if config.must_cover_termination && !backend.is_monotone() {
        return Err(Error::InvalidParameter(format!(
            "completeness certificates need a monotone backend, not {}",
            backend.name()
        )));
    }
    let eps = epsilon.resolve(transactions.len());
    let mut result = OracleResult {
        epsilon: eps,
        ..Default::default()
    };
    if eps > transactions.len() as u64 {
        result.certificate = Some(Certificate::SupportAboveCount);
        return Ok(result);
    }

    let scored = transactions.score(backend)?;
    let ceiling = params.entropy_ceiling(scored.max_code_len());
    for len in first..=config.max_len {
        let scanned: Vec<(f64, Option<u64>)> = (0..1u64 << len)
            .into_par_iter()
            .map(|v| {
                let x = BitString::from_value(v, len);
                let lx = code_len(backend, &x)?;
                let count = scored.frequency_with(params, &x, lx)?;
                Ok((lx.bits(), (count >= eps).then_some(count)))
            })
            .collect::<Result<_>>()?;

        let min_len = scanned.iter().map(|(l, _)| *l).fold(f64::INFINITY, f64::min);
        let before = result.patterns.len();
        for (v, (_, count)) in scanned.into_iter().enumerate() {
            if let Some(c) = count {
                result.patterns.push((BitString::from_value(v as u64, len), c));
            }
        }
        if result.certificate.is_none() {
            if min_len > ceiling {
                result.certificate = Some(Certificate::EntropyBound(len));
            } else if result.patterns.len() == before {
                result.certificate = Some(Certificate::EmptyLengthClass(len));
            }
        }
    }

    if config.must_cover_termination && result.certificate.is_none() {
        return Err(Error::Incomplete {
            max_len: config.max_len,
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::occurrence::frequency;

    #[test]
    fn support_above_count_is_empty() {
        let t = TransactionSet::new(vec!["0101".parse().unwrap()]).unwrap();
        let r = enumerate_frequent(
            &Backend::default(),
            &OccurrenceParams::default(),
            &t,
            Support::Count(2),
            &OracleConfig::new(4),
        )
        .unwrap();
        assert!(r.patterns.is_empty());
        assert_eq!(r.certificate, Some(Certificate::SupportAboveCount));
    }

    #[test]
    fn repeated_alternating_datum() {
        let y: BitString = "0101010101010101".parse().unwrap();
        let t = TransactionSet::new(vec![y; 5]).unwrap();
        let b = Backend::default();
        let p = OccurrenceParams::scale_free(0.6, 0.25).unwrap();
        let cfg = OracleConfig {
            max_len: 8,
            must_cover_termination: false,
        };
        let r = enumerate_frequent(&b, &p, &t, Support::Count(5), &cfg).unwrap();
        // Definitional recomputation.
        let mut want = Vec::new();
        for len in 1..=8 {
            for v in 0..1u64 << len {
                let x = BitString::from_value(v, len);
                let f = frequency(&b, &p, &t, &x).unwrap();
                if f >= 5 {
                    want.push((x, f));
                }
            }
        }
        assert_eq!(r.patterns, want);
    }

    #[test]
    fn uncertified_enumeration_fails_loudly() {
        let t = crate::datagen::gen_random(6, 32..=32, 2).unwrap();
        let b = Backend::default();
        let p = OccurrenceParams::scale_free(0.6, 0.3).unwrap();
        let err = enumerate_frequent(&b, &p, &t, Support::Count(1), &OracleConfig::new(1)).unwrap_err();
        assert!(matches!(err, Error::Incomplete { max_len: 1 }));
    }
}
