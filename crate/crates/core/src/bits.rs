//! Exact-length bit sequences.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

const WORD: usize = 64;

/// An exact-length sequence of bits.
///
/// Bits are packed LSB-first into `u64` words; the unused tail of the last
/// word is always zero, so derived equality and hashing are bitwise and
/// length-sensitive (`"0" != "00"`).
///
/// Ordering is lexicographic over the bit sequence, with a proper prefix
/// ordered before its extensions.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString {
            words: Vec::with_capacity(bits.div_ceil(WORD)),
            len: 0,
        }
    }

    /// The `len` low bits of `value`, most significant first.
    ///
    /// Enumerating `value` over `0..1 << len` yields every length-`len`
    /// string in lexicographic order.
    pub fn from_value(value: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_value supports at most 64 bits");
        let mut s = BitString::with_capacity(len);
        for i in (0..len).rev() {
            s.push((value >> i) & 1 == 1);
        }
        s
    }

    pub fn zeros(len: usize) -> Self {
        BitString {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        (index < self.len).then(|| (self.words[index / WORD] >> (index % WORD)) & 1 == 1)
    }

    pub fn set(&mut self, index: usize, bit: bool) {
        assert!(index < self.len, "bit index {index} out of range for length {}", self.len);
        let mask = 1u64 << (index % WORD);
        if bit {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range for length {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / WORD] |= 1u64 << (self.len % WORD);
        }
        self.len += 1;
    }

    pub fn extend_from(&mut self, other: &BitString) {
        for bit in other.iter() {
            self.push(bit);
        }
    }

    /// `self ∥ other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = BitString::with_capacity(self.len + other.len);
        out.extend_from(self);
        out.extend_from(other);
        out
    }

    /// The first `len` bits.
    pub fn prefix(&self, len: usize) -> BitString {
        assert!(len <= self.len);
        self.slice(0, len)
    }

    pub fn slice(&self, start: usize, end: usize) -> BitString {
        assert!(start <= end && end <= self.len);
        (start..end).map(|i| self.get(i).unwrap()).collect()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { bits: self, pos: 0 }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of differing positions; `None` when lengths differ.
    pub fn hamming(&self, other: &BitString) -> Option<usize> {
        (self.len == other.len).then(|| {
            self.words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| (a ^ b).count_ones() as usize)
                .sum()
        })
    }

    /// Packs bits most-significant-bit first into bytes, zero-padding the
    /// final partial byte.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for (i, bit) in self.iter().enumerate() {
            if bit {
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }

    /// Expands every byte into eight bits, most significant first.
    pub fn from_bytes_msb(bytes: &[u8]) -> BitString {
        let mut out = BitString::with_capacity(bytes.len() * 8);
        for byte in bytes {
            for i in (0..8).rev() {
                out.push((byte >> i) & 1 == 1);
            }
        }
        out
    }
}

pub struct Iter<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl Iterator for Iter<'_> {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        let bit = self.bits.get(self.pos)?;
        self.pos += 1;
        Some(bit)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.bits.len - self.pos;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for Iter<'_> {}

impl<'a> IntoIterator for &'a BitString {
    type Item = bool;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut out = BitString::new();
        for bit in iter {
            out.push(bit);
        }
        out
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Parses a literal of `0` and `1` characters. The empty string is the
    /// empty bit string.
    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParameter(format!(
                    "invalid bit character {other:?}"
                ))),
            })
            .collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.pad(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn length_sensitive_equality() {
        assert_ne!(bs("0"), bs("00"));
        assert_eq!(bs("0110"), bs("0110"));
        assert_eq!(BitString::new(), bs(""));
    }

    #[test]
    fn ordering_is_lexicographic_with_prefix_first() {
        assert!(bs("0") < bs("00"));
        assert!(bs("01") < bs("1"));
        assert!(bs("0111") < bs("1000"));
        assert!(bs("") < bs("0"));
    }

    #[test]
    fn from_value_is_msb_first() {
        assert_eq!(BitString::from_value(0b011, 3), bs("011"));
        assert_eq!(BitString::from_value(0, 0), BitString::new());
        let all: Vec<_> = (0..4).map(|v| BitString::from_value(v, 2)).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn crosses_word_boundaries() {
        let mut s = BitString::new();
        for i in 0..200 {
            s.push(i % 3 == 0);
        }
        assert_eq!(s.len(), 200);
        assert_eq!(s.count_ones(), 67);
        assert_eq!(s.get(129), Some(true));
        assert_eq!(s.get(200), None);
        let t = s.prefix(130).concat(&s.slice(130, 200));
        assert_eq!(s, t);
    }

    #[test]
    fn set_and_flip_keep_padding_clean() {
        let mut a = BitString::zeros(3);
        a.set(1, true);
        a.flip(2);
        a.flip(2);
        assert_eq!(a, bs("010"));
    }

    #[test]
    fn msb_byte_packing() {
        assert_eq!(bs("101").to_bytes_msb(), vec![0b1010_0000]);
        assert_eq!(BitString::from_bytes_msb(b"A"), bs("01000001"));
        assert_eq!(bs("").to_bytes_msb(), Vec::<u8>::new());
    }

    #[test]
    fn hamming_requires_equal_length() {
        assert_eq!(bs("0011").hamming(&bs("0101")), Some(2));
        assert_eq!(bs("0").hamming(&bs("00")), None);
    }

    #[test]
    fn rejects_non_bit_characters() {
        assert!("012".parse::<BitString>().is_err());
    }
}
