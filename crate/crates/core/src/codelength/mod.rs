//! Real-valued code lengths standing in for algorithmic information content.
//!
//! `L(x)` approximates `H(x)`. Joint and conditional quantities use plain
//! concatenation with the adaptive model carried across the boundary:
//!
//! * `joint_code_len(c, x) = L(c ∥ x)`
//! * `cond_code_len(x, c) = L(c ∥ x) - L(c)`
//!
//! The built-in backends ([`Backend::Kt`], [`Backend::LzParse`]) are pure and
//! monotone: appending bits never lowers a code length, which keeps
//! conditional lengths nonnegative and makes level-wise pruning exact.

mod external;
mod kt;
mod lz;

use std::fmt;

pub use external::{ExternalCompressor, DEFAULT_TIMEOUT};
pub use kt::MAX_ORDER as MAX_KT_ORDER;

use crate::bits::BitString;
use crate::error::{Error, Result};
use kt::KtState;
use lz::LzState;

/// A code length in bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct CodeLen(f64);

impl CodeLen {
    pub const ZERO: CodeLen = CodeLen(0.0);

    pub fn bits(self) -> f64 {
        self.0
    }
}

impl fmt::Display for CodeLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Code-length estimator configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Adaptive KT estimator conditioned on the previous `order` bits.
    Kt { order: u8 },
    /// LZ78 phrase-count cost.
    LzParse,
    /// An external compressor; not monotone.
    External(ExternalCompressor),
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Kt { order: 0 }
    }
}

impl Backend {
    pub fn kt(order: u8) -> Result<Backend> {
        if order > MAX_KT_ORDER {
            return Err(Error::InvalidParameter(format!(
                "KT order {order} exceeds the maximum of {MAX_KT_ORDER}"
            )));
        }
        Ok(Backend::Kt { order })
    }

    pub fn external(command: impl Into<String>) -> Backend {
        Backend::External(ExternalCompressor::new(command))
    }

    /// Whether appending bits can never decrease the estimate.
    pub fn is_monotone(&self) -> bool {
        !matches!(self, Backend::External(_))
    }

    /// Short identifier: `kt`, `lz` or `external:<cmd>`.
    pub fn name(&self) -> String {
        match self {
            Backend::Kt { .. } => "kt".into(),
            Backend::LzParse => "lz".into(),
            Backend::External(e) => format!("external:{}", e.command),
        }
    }

    pub fn order(&self) -> Option<u8> {
        match self {
            Backend::Kt { order } => Some(*order),
            _ => None,
        }
    }

    /// Codes `context` once so that many continuations can be scored cheaply.
    pub fn prepare(&self, context: &BitString) -> Result<Prepared> {
        let state = match self {
            Backend::Kt { order } => {
                let mut s = KtState::new(*order);
                s.feed(context);
                PreparedState::Kt(s)
            }
            Backend::LzParse => {
                let mut s = LzState::new();
                s.feed(context);
                PreparedState::Lz(s)
            }
            Backend::External(e) => PreparedState::External {
                base: e.compressed_bits(context)?,
                compressor: e.clone(),
                context: context.clone(),
            },
        };
        Ok(Prepared { state })
    }
}

/// A backend that has already consumed a context string.
#[derive(Clone, Debug)]
pub struct Prepared {
    state: PreparedState,
}

#[derive(Clone, Debug)]
enum PreparedState {
    Kt(KtState),
    Lz(LzState),
    External {
        compressor: ExternalCompressor,
        context: BitString,
        base: f64,
    },
}

impl Prepared {
    /// `L(context)`.
    pub fn code_len(&self) -> CodeLen {
        CodeLen(match &self.state {
            PreparedState::Kt(s) => s.bits(),
            PreparedState::Lz(s) => s.bits(),
            PreparedState::External { base, .. } => *base,
        })
    }

    /// `L(context ∥ x)`.
    pub fn joint(&self, x: &BitString) -> Result<CodeLen> {
        Ok(CodeLen(match &self.state {
            PreparedState::Kt(s) => s.extended(x),
            PreparedState::Lz(s) => s.extended(x),
            PreparedState::External {
                compressor,
                context,
                ..
            } => compressor.compressed_bits(&context.concat(x))?,
        }))
    }

    /// `L(context ∥ x) - L(context)`.
    pub fn cond(&self, x: &BitString) -> Result<f64> {
        Ok(self.joint(x)?.bits() - self.code_len().bits())
    }
}

/// `L(x)`; zero for the empty string.
pub fn code_len(backend: &Backend, x: &BitString) -> Result<CodeLen> {
    Ok(backend.prepare(x)?.code_len())
}

/// `L(context ∥ x)` with the model carried across the boundary.
pub fn joint_code_len(backend: &Backend, context: &BitString, x: &BitString) -> Result<CodeLen> {
    backend.prepare(context)?.joint(x)
}

/// `L(given ∥ x) - L(given)`, in bits.
///
/// Nonnegative for the built-in backends. An external compressor can make it
/// negative, hence the plain `f64`.
pub fn cond_code_len(backend: &Backend, x: &BitString, given: &BitString) -> Result<f64> {
    backend.prepare(given)?.cond(x)
}

/// Joint code length of an unordered pair: the shorter string goes first,
/// ties broken lexicographically. Exactly symmetric in `(a, b)`.
pub fn joint_code_len_canonical(backend: &Backend, a: &BitString, b: &BitString) -> Result<CodeLen> {
    let (first, second) = canonical_pair(a, b);
    joint_code_len(backend, first, second)
}

pub(crate) fn canonical_pair<'a>(a: &'a BitString, b: &'a BitString) -> (&'a BitString, &'a BitString) {
    if (a.len(), a) <= (b.len(), b) {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    const KT0: Backend = Backend::Kt { order: 0 };

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn kt_examples() {
        assert_eq!(code_len(&KT0, &BitString::new()).unwrap().bits(), 0.0);
        let l = code_len(&KT0, &bs("0000")).unwrap().bits();
        assert!(close(l, -(105.0f64 / 384.0).log2(), 1e-12));
        assert!(close(l, 1.8707, 1e-4));
        assert!(close(code_len(&KT0, &bs("01")).unwrap().bits(), 3.0, 1e-12));
        let z16 = code_len(&KT0, &BitString::zeros(16)).unwrap().bits();
        assert!(close(z16, 2.837, 1e-3), "{z16}");
    }

    #[test]
    fn joint_examples() {
        let x = bs("0110");
        let plain = code_len(&KT0, &x).unwrap();
        assert_eq!(joint_code_len(&KT0, &BitString::new(), &x).unwrap(), plain);
        assert_eq!(joint_code_len(&KT0, &x, &BitString::new()).unwrap(), plain);
        let j = joint_code_len(&KT0, &bs("00"), &bs("0")).unwrap().bits();
        assert!(close(j, -(0.5f64 * 0.75 * (5.0 / 6.0)).log2(), 1e-12));
        assert!(close(j, 1.678, 1e-3));
    }

    #[test]
    fn cond_examples() {
        let c = cond_code_len(&KT0, &bs("0"), &bs("00")).unwrap();
        assert!(close(c, 0.263, 1e-3), "{c}");
        let y = bs("10110");
        assert_eq!(cond_code_len(&KT0, &BitString::new(), &y).unwrap(), 0.0);
        let x = bs("0111");
        assert_eq!(
            cond_code_len(&KT0, &x, &BitString::new()).unwrap(),
            code_len(&KT0, &x).unwrap().bits()
        );
    }

    #[test]
    fn canonical_joint() {
        let a = BitString::zeros(16);
        let j = joint_code_len_canonical(&KT0, &a, &a).unwrap();
        assert_eq!(j, joint_code_len(&KT0, &a, &a).unwrap());
        assert!(close(j.bits(), 3.331, 1e-3), "{j}");
        let b = bs("1");
        assert_eq!(
            joint_code_len_canonical(&KT0, &a, &b).unwrap(),
            joint_code_len(&KT0, &b, &a).unwrap()
        );
    }

    #[test]
    fn order_is_bounded() {
        assert!(Backend::kt(MAX_KT_ORDER).is_ok());
        assert!(Backend::kt(MAX_KT_ORDER + 1).is_err());
    }

    #[test]
    fn lz_backend_is_monotone_on_a_sample() {
        let x = bs("0110100110010110");
        let mut prev = 0.0;
        for i in 0..=x.len() {
            let l = code_len(&Backend::LzParse, &x.prefix(i)).unwrap().bits();
            assert!(l >= prev);
            prev = l;
        }
    }

    #[test]
    fn external_backend_propagates_failure() {
        let b = Backend::external("false");
        assert!(matches!(code_len(&b, &bs("1")), Err(Error::Backend(_))));
        assert!(!b.is_monotone());
    }
}
