//! Seeded synthetic transaction sets: uniform random noise and planted
//! motifs with per-bit errors.
//!
//! Randomness comes from [`Xorshift64Star`], so datasets are bit-identical
//! across platforms for a given seed.

use std::ops::RangeInclusive;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::occurrence::TransactionSet;

/// Portable xorshift64* generator.
///
/// The seed is scrambled with one SplitMix64 step (so seed 0 is usable),
/// then each draw applies
///
/// ```text
/// x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
/// out = x * 0x2545F4914F6CDD1D   (wrapping)
/// ```
#[derive(Clone, Debug)]
pub struct Xorshift64Star {
    state: u64,
}

impl Xorshift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Xorshift64Star {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Top bit of the next draw.
    pub fn next_bit(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n` by rejection. `n` must be nonzero.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    pub fn in_range(&mut self, range: &RangeInclusive<usize>) -> usize {
        range.start() + self.below((range.end() - range.start()) as u64 + 1) as usize
    }

    pub fn bits(&mut self, len: usize) -> BitString {
        (0..len).map(|_| self.next_bit()).collect()
    }
}

/// `count` uniform random transactions with lengths drawn from `len_range`.
pub fn gen_random(count: usize, len_range: RangeInclusive<usize>, seed: u64) -> Result<TransactionSet> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    if len_range.is_empty() || *len_range.start() == 0 {
        return Err(Error::InvalidParameter(format!(
            "length range {}..={} must be nonempty and start at 1 or more",
            len_range.start(),
            len_range.end()
        )));
    }
    let mut rng = Xorshift64Star::new(seed);
    let items = (0..count)
        .map(|_| {
            let len = rng.in_range(&len_range);
            rng.bits(len)
        })
        .collect();
    TransactionSet::new(items)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlantSpec {
    pub motif: BitString,
    pub transaction_count: usize,
    pub planted_fraction: f64,
    /// Independent flip probability for each bit of a planted motif copy.
    pub flip_prob: f64,
    /// Random bits before and after the motif, drawn independently.
    pub pad_len: RangeInclusive<usize>,
    pub seed: u64,
}

impl Default for PlantSpec {
    fn default() -> Self {
        PlantSpec {
            motif: "00000001111111".parse().unwrap(),
            transaction_count: 50,
            planted_fraction: 0.8,
            flip_prob: 0.05,
            pad_len: 4..=10,
            seed: 7,
        }
    }
}

impl PlantSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.motif.is_empty() {
            return bad("motif must have at least one bit".into());
        }
        if self.transaction_count == 0 {
            return bad("transaction_count must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.planted_fraction) {
            return bad(format!("planted_fraction {} not in [0, 1]", self.planted_fraction));
        }
        if !(0.0..1.0).contains(&self.flip_prob) {
            return bad(format!("flip_prob {} not in [0, 1)", self.flip_prob));
        }
        if self.pad_len.is_empty() {
            return bad("pad range min exceeds max".into());
        }
        Ok(())
    }

    pub fn planted_count(&self) -> usize {
        (self.planted_fraction * self.transaction_count as f64).round() as usize
    }
}

/// What the generator did to one transaction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlantRecord {
    pub planted: bool,
    /// Start of the motif copy, for planted transactions.
    pub offset: Option<usize>,
    /// Motif-relative indices of flipped bits.
    pub flipped: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub spec: PlantSpec,
    pub records: Vec<PlantRecord>,
}

impl Manifest {
    pub fn planted_count(&self) -> usize {
        self.records.iter().filter(|r| r.planted).count()
    }

    /// Regenerates the dataset from the recorded spec and checks it against
    /// the records.
    pub fn replay(&self) -> Result<TransactionSet> {
        let regenerated = gen_planted(&self.spec)?;
        if regenerated.manifest.records != self.records {
            return Err(Error::InvalidParameter(
                "manifest records do not match regeneration from its spec".into(),
            ));
        }
        self.check(&regenerated.transactions)?;
        Ok(regenerated.transactions)
    }

    /// Every planted record must show the motif, with exactly the recorded
    /// flips, at its offset.
    pub fn check(&self, transactions: &TransactionSet) -> Result<()> {
        if transactions.len() != self.records.len() {
            return Err(Error::InvalidParameter(format!(
                "manifest has {} records for {} transactions",
                self.records.len(),
                transactions.len()
            )));
        }
        let motif = &self.spec.motif;
        for (i, (record, y)) in self.records.iter().zip(transactions.iter()).enumerate() {
            if !record.planted {
                continue;
            }
            let offset = record.offset.ok_or_else(|| {
                Error::InvalidParameter(format!("planted record {i} has no offset"))
            })?;
            if offset + motif.len() > y.len() {
                return Err(Error::InvalidParameter(format!(
                    "record {i}: motif window past end of transaction"
                )));
            }
            let mut expected = motif.clone();
            for &f in &record.flipped {
                expected.flip(f);
            }
            if y.slice(offset, offset + motif.len()) != expected {
                return Err(Error::InvalidParameter(format!(
                    "record {i}: transaction does not contain the recorded motif copy"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct PlantedDataset {
    pub transactions: TransactionSet,
    pub manifest: Manifest,
}

/// Planted transactions are `pad ∥ noisy motif ∥ pad`; the rest are uniform
/// random strings whose lengths follow the same distribution.
pub fn gen_planted(spec: &PlantSpec) -> Result<PlantedDataset> {
    spec.validate()?;
    let mut rng = Xorshift64Star::new(spec.seed);
    let n = spec.transaction_count;

    // Partial Fisher–Yates to choose which transactions carry the motif.
    let mut order: Vec<usize> = (0..n).collect();
    let planted = spec.planted_count();
    for i in 0..planted {
        let j = i + rng.below((n - i) as u64) as usize;
        order.swap(i, j);
    }
    let mut is_planted = vec![false; n];
    for &i in &order[..planted] {
        is_planted[i] = true;
    }

    let mut items = Vec::with_capacity(n);
    let mut records = Vec::with_capacity(n);
    for &plant in &is_planted {
        let before = rng.in_range(&spec.pad_len);
        let after = rng.in_range(&spec.pad_len);
        if plant {
            let mut y = rng.bits(before);
            let mut flipped = Vec::new();
            for (i, bit) in spec.motif.iter().enumerate() {
                let flip = rng.next_f64() < spec.flip_prob;
                if flip {
                    flipped.push(i);
                }
                y.push(bit ^ flip);
            }
            y.extend_from(&rng.bits(after));
            items.push(y);
            records.push(PlantRecord {
                planted: true,
                offset: Some(before),
                flipped,
            });
        } else {
            items.push(rng.bits(before + spec.motif.len() + after));
            records.push(PlantRecord::default());
        }
    }

    Ok(PlantedDataset {
        transactions: TransactionSet::new(items)?,
        manifest: Manifest {
            spec: spec.clone(),
            records,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_is_reproducible_and_varied() {
        let mut a = Xorshift64Star::new(7);
        let mut b = Xorshift64Star::new(7);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs[0], xs[1]);
        let mut z = Xorshift64Star::new(0);
        assert_ne!(z.next_u64(), 0);
    }

    #[test]
    fn rng_bits_are_roughly_balanced() {
        let mut r = Xorshift64Star::new(1);
        let ones = (0..10_000).filter(|_| r.next_bit()).count();
        assert!((4700..5300).contains(&ones), "{ones}");
        for _ in 0..1000 {
            let f = r.next_f64();
            assert!((0.0..1.0).contains(&f));
            assert!(r.below(3) < 3);
        }
    }

    #[test]
    fn random_rejects_bad_arguments() {
        assert!(gen_random(0, 1..=4, 1).is_err());
        assert!(gen_random(3, 0..=4, 1).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let bad = 5..=4;
        assert!(gen_random(3, bad, 1).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(12, 24..=24, 7).unwrap();
        let b = gen_random(12, 24..=24, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|y| y.len() == 24));
        assert_ne!(a, gen_random(12, 24..=24, 8).unwrap());
    }

    #[test]
    fn clean_full_planting_yields_the_motif() {
        let spec = PlantSpec {
            planted_fraction: 1.0,
            flip_prob: 0.0,
            pad_len: 0..=0,
            transaction_count: 6,
            ..PlantSpec::default()
        };
        let d = gen_planted(&spec).unwrap();
        assert!(d.transactions.iter().all(|y| *y == spec.motif));
    }

    #[test]
    fn default_spec_plants_forty_of_fifty() {
        let d = gen_planted(&PlantSpec::default()).unwrap();
        assert_eq!(d.transactions.len(), 50);
        assert_eq!(d.manifest.planted_count(), 40);
        d.manifest.check(&d.transactions).unwrap();
        assert_eq!(d.manifest.replay().unwrap(), d.transactions);
    }

    #[test]
    fn tampered_transaction_fails_check() {
        let d = gen_planted(&PlantSpec::default()).unwrap();
        let i = d.manifest.records.iter().position(|r| r.planted).unwrap();
        let off = d.manifest.records[i].offset.unwrap();
        let mut items: Vec<BitString> = d.transactions.clone().into();
        items[i].flip(off);
        let t = TransactionSet::new(items).unwrap();
        assert!(d.manifest.check(&t).is_err());
    }

    #[test]
    fn invalid_specs() {
        let mut s = PlantSpec { flip_prob: 1.0, ..PlantSpec::default() };
        assert!(gen_planted(&s).is_err());
        s.flip_prob = 0.0;
        s.motif = BitString::new();
        assert!(gen_planted(&s).is_err());
    }
}
