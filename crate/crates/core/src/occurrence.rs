//! The occurrence predicate `x ≺ y` and the frequency function `f(T, x)`.
//!
//! A pattern occurs in a datum when it is much simpler than the datum
//! (entropy reduction) and carries little information the datum lacks
//! (noise exclusion). With code lengths in place of complexities:
//!
//! | variant    | entropy reduction     | noise exclusion              |
//! |------------|-----------------------|------------------------------|
//! | scale-free | `L(x) ≤ c1·L(y)`      | `L(y∥x) ≤ (1 + c2)·L(y)`     |
//! | additive   | `L(x) ≤ L(y) − c3`    | `L(y∥x) − L(y) ≤ c4`         |
//!
//! Both sides grow monotonically in `x` under the built-in backends, so an
//! extension of a pattern that does not occur in `y` does not occur either.

use crate::bits::BitString;
use crate::codelength::{Backend, CodeLen, Prepared};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Variant {
    ScaleFree { c1: f64, c2: f64 },
    Additive { c3: f64, c4: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OccurrenceParams {
    pub variant: Variant,
    /// Shortest pattern the predicate accepts. The empty pattern would
    /// trivially occur everywhere.
    pub min_pattern_len: usize,
}

impl Default for OccurrenceParams {
    /// `c1 = 0.5`, `c2 = 0.25`. These are conventional starting points, not
    /// validated settings.
    fn default() -> Self {
        OccurrenceParams {
            variant: Variant::ScaleFree { c1: 0.5, c2: 0.25 },
            min_pattern_len: 1,
        }
    }
}

impl OccurrenceParams {
    pub fn scale_free(c1: f64, c2: f64) -> Result<Self> {
        OccurrenceParams {
            variant: Variant::ScaleFree { c1, c2 },
            min_pattern_len: 1,
        }
        .validated()
    }

    pub fn additive(c3: f64, c4: f64) -> Result<Self> {
        OccurrenceParams {
            variant: Variant::Additive { c3, c4 },
            min_pattern_len: 1,
        }
        .validated()
    }

    pub fn with_min_pattern_len(mut self, len: usize) -> Result<Self> {
        self.min_pattern_len = len;
        self.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        match self.variant {
            Variant::ScaleFree { c1, c2 } => {
                if !open_unit(c1) || !open_unit(c2) {
                    return Err(Error::InvalidParameter(format!(
                        "scale-free thresholds need 0 < c1, c2 < 1 (got c1={c1}, c2={c2})"
                    )));
                }
            }
            Variant::Additive { c3, c4 } => {
                if !(c3 > 0.0 && c3.is_finite() && c4 > 0.0 && c4.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "additive thresholds need c3, c4 > 0 (got c3={c3}, c4={c4})"
                    )));
                }
            }
        }
        if self.min_pattern_len == 0 {
            return Err(Error::InvalidParameter("min_pattern_len must be at least 1".into()));
        }
        Ok(self)
    }

    pub fn variant_name(&self) -> &'static str {
        match self.variant {
            Variant::ScaleFree { .. } => "scale-free",
            Variant::Additive { .. } => "additive",
        }
    }

    /// Largest `L(x)` that passes entropy reduction against a datum of
    /// length `datum` bits.
    pub fn entropy_ceiling(&self, datum: f64) -> f64 {
        match self.variant {
            Variant::ScaleFree { c1, .. } => c1 * datum,
            Variant::Additive { c3, .. } => datum - c3,
        }
    }

    pub(crate) fn check_pattern(&self, x: &BitString) -> Result<()> {
        if x.len() < self.min_pattern_len {
            return Err(Error::InvalidParameter(format!(
                "pattern of {} bits is shorter than min_pattern_len {}",
                x.len(),
                self.min_pattern_len
            )));
        }
        Ok(())
    }

    /// Applies both conditions given `L(x)`, `L(y)` and a lazily computed
    /// `L(y∥x)`. The joint is only evaluated when entropy reduction holds.
    pub(crate) fn decide(
        &self,
        pattern: f64,
        datum: f64,
        datum_len: usize,
        joint: impl FnOnce() -> Result<f64>,
    ) -> Result<bool> {
        if datum <= 0.0 {
            return Err(Error::ZeroCodeLength { len: datum_len });
        }
        if pattern > self.entropy_ceiling(datum) {
            return Ok(false);
        }
        let joint = joint()?;
        Ok(match self.variant {
            Variant::ScaleFree { c2, .. } => joint <= (1.0 + c2) * datum,
            Variant::Additive { c4, .. } => joint - datum <= c4,
        })
    }
}

/// Multiset of transactions, each at least one bit long.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransactionSet {
    items: Vec<BitString>,
}

impl TransactionSet {
    pub fn new(items: Vec<BitString>) -> Result<Self> {
        if let Some(i) = items.iter().position(BitString::is_empty) {
            return Err(Error::InvalidParameter(format!("transaction {i} is empty")));
        }
        Ok(TransactionSet { items })
    }

    pub fn items(&self) -> &[BitString] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitString> {
        self.items.iter()
    }

    /// Codes every transaction once under `backend`.
    pub fn score(&self, backend: &Backend) -> Result<ScoredTransactions> {
        let states = self
            .items
            .iter()
            .enumerate()
            .map(|(i, y)| backend.prepare(y).map_err(|e| e.at_transaction(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ScoredTransactions {
            backend: backend.clone(),
            lens: self.items.iter().map(BitString::len).collect(),
            states,
        })
    }
}

impl From<TransactionSet> for Vec<BitString> {
    fn from(t: TransactionSet) -> Self {
        t.items
    }
}

/// Transactions with their coded states cached for repeated queries.
#[derive(Clone, Debug)]
pub struct ScoredTransactions {
    backend: Backend,
    lens: Vec<usize>,
    states: Vec<Prepared>,
}

impl ScoredTransactions {
    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Cached `L(y_i)`.
    pub fn code_len(&self, index: usize) -> CodeLen {
        self.states[index].code_len()
    }

    pub fn max_code_len(&self) -> f64 {
        self.states
            .iter()
            .map(|s| s.code_len().bits())
            .fold(0.0, f64::max)
    }

    /// `x ≺ y_index` with `L(x)` supplied by the caller.
    pub fn occurs_in(
        &self,
        params: &OccurrenceParams,
        x: &BitString,
        pattern_len: CodeLen,
        index: usize,
    ) -> Result<bool> {
        let state = &self.states[index];
        params
            .decide(pattern_len.bits(), state.code_len().bits(), self.lens[index], || {
                Ok(state.joint(x)?.bits())
            })
            .map_err(|e| e.at_transaction(index))
    }

    /// `f(T, x)`, counting multiplicity.
    pub fn frequency(&self, params: &OccurrenceParams, x: &BitString) -> Result<u64> {
        params.check_pattern(x)?;
        let lx = crate::codelength::code_len(&self.backend, x)?;
        self.frequency_with(params, x, lx)
    }

    pub(crate) fn frequency_with(
        &self,
        params: &OccurrenceParams,
        x: &BitString,
        lx: CodeLen,
    ) -> Result<u64> {
        let mut count = 0;
        for i in 0..self.states.len() {
            if self.occurs_in(params, x, lx, i)? {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// `x ≺ y`.
pub fn occurs(backend: &Backend, params: &OccurrenceParams, x: &BitString, y: &BitString) -> Result<bool> {
    params.check_pattern(x)?;
    if y.is_empty() {
        return Err(Error::InvalidParameter("datum must have at least one bit".into()));
    }
    let lx = crate::codelength::code_len(backend, x)?.bits();
    let prepared = backend.prepare(y)?;
    params.decide(lx, prepared.code_len().bits(), y.len(), || {
        Ok(prepared.joint(x)?.bits())
    })
}

/// `f(T, x) = |{ y ∈ T : x ≺ y }|`.
pub fn frequency(
    backend: &Backend,
    params: &OccurrenceParams,
    transactions: &TransactionSet,
    x: &BitString,
) -> Result<u64> {
    transactions.score(backend)?.frequency(params, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codelength::{code_len, joint_code_len};

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    const KT0: Backend = Backend::Kt { order: 0 };

    #[test]
    fn pattern_never_occurs_in_itself_scale_free() {
        let p = OccurrenceParams::scale_free(0.9, 0.5).unwrap();
        for y in ["1", "0110", "0010111010001101", "1111111"] {
            let y = bs(y);
            assert!(!occurs(&KT0, &p, &y, &y).unwrap());
        }
    }

    #[test]
    fn short_run_in_mixed_datum() {
        let p = OccurrenceParams::scale_free(0.6, 0.3).unwrap();
        let x = bs("0000");
        let y = bs("0010111010001101");
        let lx = code_len(&KT0, &x).unwrap().bits();
        let ly = code_len(&KT0, &y).unwrap().bits();
        let lyx = joint_code_len(&KT0, &y, &x).unwrap().bits();
        assert!((lx - 1.8707).abs() < 1e-3);
        // Direct product evaluation: y has 8 zeros, 8 ones.
        let mut prod = 1.0f64;
        let (mut n0, mut n1) = (0.0, 0.0);
        for b in y.iter().chain(x.iter()) {
            let c = if b { n1 } else { n0 };
            prod *= (c + 0.5) / (n0 + n1 + 1.0);
            if b { n1 += 1.0 } else { n0 += 1.0 }
        }
        assert!((lyx + prod.log2()).abs() < 1e-9);
        assert!(lx <= 0.6 * ly && lyx <= 1.3 * ly, "lx={lx} ly={ly} lyx={lyx}");
        assert!(occurs(&KT0, &p, &x, &y).unwrap());
    }

    #[test]
    fn entropy_reduction_fails_on_constant_datum() {
        let p = OccurrenceParams::scale_free(0.6, 0.3).unwrap();
        assert!(!occurs(&KT0, &p, &bs("0000"), &BitString::zeros(16)).unwrap());
    }

    #[test]
    fn additive_variant_uses_conditional() {
        let p = OccurrenceParams::additive(1.0, 3.0).unwrap();
        let y = bs("0010111010001101");
        assert!(occurs(&KT0, &p, &bs("00"), &y).unwrap());
        let strict = OccurrenceParams::additive(1.0, 0.5).unwrap();
        assert!(!occurs(&KT0, &strict, &bs("00"), &y).unwrap());
    }

    #[test]
    fn empty_pattern_is_rejected() {
        let p = OccurrenceParams::default();
        assert!(occurs(&KT0, &p, &BitString::new(), &bs("01")).is_err());
        let p3 = p.with_min_pattern_len(3).unwrap();
        assert!(occurs(&KT0, &p3, &bs("01"), &bs("0110")).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(OccurrenceParams::scale_free(0.0, 0.5).is_err());
        assert!(OccurrenceParams::scale_free(0.5, 1.0).is_err());
        assert!(OccurrenceParams::additive(0.0, 1.0).is_err());
        assert!(OccurrenceParams::additive(1.0, f64::NAN).is_err());
        assert!(OccurrenceParams::default().with_min_pattern_len(0).is_err());
    }

    #[test]
    fn zero_length_datum_is_a_predicate_error() {
        let p = OccurrenceParams::default();
        let err = p.decide(1.0, 0.0, 8, || Ok(1.0)).unwrap_err();
        assert!(matches!(err, Error::ZeroCodeLength { len: 8 }));
    }

    #[test]
    fn frequency_counts_multiplicity() {
        let p = OccurrenceParams::scale_free(0.6, 0.3).unwrap();
        let y = bs("0010111010001101");
        let x = bs("0000");
        let t = TransactionSet::new(vec![y.clone(), y]).unwrap();
        assert_eq!(frequency(&KT0, &p, &t, &x).unwrap(), 2);
        assert_eq!(frequency(&KT0, &p, &TransactionSet::default(), &x).unwrap(), 0);
    }

    #[test]
    fn empty_transaction_rejected() {
        assert!(TransactionSet::new(vec![bs("1"), BitString::new()]).is_err());
    }
}
