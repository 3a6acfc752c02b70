//! Krichevsky–Trofimov sequential estimator over binary contexts.
//!
//! Each bit is coded with probability `(n_b + 1/2) / (n_0 + n_1 + 1)`, where
//! `n_0`, `n_1` are the counts seen so far in the current context. The
//! context is the previous `order` bits; the first `order` positions use the
//! shorter context available, and contexts of different lengths never share
//! counts.
//!
//! The code length is accumulated as a running sum in coding order, so
//! resuming from a saved state produces the same floating-point result as
//! coding the whole concatenation from scratch.

use crate::bits::BitString;

pub const MAX_ORDER: u8 = 16;

#[derive(Clone, Debug)]
pub(crate) struct KtState {
    order: u8,
    counts: Vec<[u32; 2]>,
    history: u64,
    seen: usize,
    bits: f64,
}

#[inline]
fn bit_cost(counts: [u32; 2], bit: bool) -> f64 {
    let hit = counts[bit as usize] as f64 + 0.5;
    let total = (counts[0] + counts[1]) as f64 + 1.0;
    -(hit / total).log2()
}

/// Dense index of the context of length `min(seen, order)` ending at
/// `history`. Contexts of length `j` occupy `2^j - 1 .. 2^(j+1) - 1`.
#[inline]
fn context_index(order: u8, seen: usize, history: u64) -> usize {
    let j = seen.min(order as usize);
    let mask = (1u64 << j) - 1;
    (mask + (history & mask)) as usize
}

impl KtState {
    pub fn new(order: u8) -> Self {
        debug_assert!(order <= MAX_ORDER);
        KtState {
            order,
            counts: vec![[0, 0]; (1usize << (order + 1)) - 1],
            history: 0,
            seen: 0,
            bits: 0.0,
        }
    }

    pub fn bits(&self) -> f64 {
        self.bits
    }

    pub fn push(&mut self, bit: bool) {
        let ctx = context_index(self.order, self.seen, self.history);
        let counts = &mut self.counts[ctx];
        self.bits += bit_cost(*counts, bit);
        counts[bit as usize] += 1;
        self.history = (self.history << 1) | bit as u64;
        self.seen += 1;
    }

    pub fn feed(&mut self, x: &BitString) {
        for bit in x {
            self.push(bit);
        }
    }

    /// Total code length after appending `x`, leaving `self` untouched.
    pub fn extended(&self, x: &BitString) -> f64 {
        if x.len() > 64 {
            let mut s = self.clone();
            s.feed(x);
            return s.bits;
        }
        // Sparse overlay of the contexts touched by `x`.
        let mut touched: Vec<(usize, [u32; 2])> = Vec::with_capacity(x.len().min(8));
        let mut history = self.history;
        let mut seen = self.seen;
        let mut bits = self.bits;
        for bit in x {
            let ctx = context_index(self.order, seen, history);
            let slot = match touched.iter().position(|(c, _)| *c == ctx) {
                Some(i) => i,
                None => {
                    touched.push((ctx, self.counts[ctx]));
                    touched.len() - 1
                }
            };
            let counts = &mut touched[slot].1;
            bits += bit_cost(*counts, bit);
            counts[bit as usize] += 1;
            history = (history << 1) | bit as u64;
            seen += 1;
        }
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn order_zero_small_products() {
        let mut s = KtState::new(0);
        s.feed(&bs("01"));
        assert!((s.bits() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn extended_matches_feeding() {
        for order in [0, 1, 3] {
            let mut base = KtState::new(order);
            base.feed(&bs("0110100111"));
            let x = bs("0001110101100");
            let mut full = base.clone();
            full.feed(&x);
            assert_eq!(base.extended(&x).to_bits(), full.bits().to_bits());
        }
    }

    #[test]
    fn short_contexts_are_distinct_from_full_ones() {
        // Order 2 on "00": first bit uses the empty context, second the
        // length-1 context "0"; both are fresh so each costs one bit.
        let mut s = KtState::new(2);
        s.feed(&bs("00"));
        assert!((s.bits() - 2.0).abs() < 1e-12);
    }
}
