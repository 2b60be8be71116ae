//! Packed bit strings, the universal input/output type.
//!
//! Indexing is 1-based throughout the crate, matching the `[1..n]` convention
//! used by every protocol here. Accessors panic on out-of-range indices; that
//! is a caller bug, not a recoverable condition.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Immutable-after-construction packed bit sequence.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0u64; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at 1-based position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "bit index {i} out of 1..={}", self.len);
        let k = i - 1;
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        let k = self.len;
        if k % 64 == 0 {
            self.words.push(0);
        }
        if bit {
            self.words[k / 64] |= 1u64 << (k % 64);
        }
        self.len += 1;
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i >= 1 && i <= self.len);
        let k = i - 1;
        if bit {
            self.words[k / 64] |= 1u64 << (k % 64);
        } else {
            self.words[k / 64] &= !(1u64 << (k % 64));
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut out = Self::with_capacity(bits.len());
        for &b in bits {
            out.push(b);
        }
        out
    }

    /// Parse from an ASCII string of '0'/'1' characters.
    pub fn from_bit_str(s: &str) -> Self {
        let mut out = Self::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => panic!("invalid bit char {c:?}"),
            }
        }
        out
    }

    /// Expand bytes MSB-first, 8 bits per byte.
    pub fn from_bytes_msb(bytes: &[u8]) -> Self {
        let mut out = Self::with_capacity(bytes.len() * 8);
        for &b in bytes {
            for k in (0..8).rev() {
                out.push((b >> k) & 1 == 1);
            }
        }
        out
    }

    /// Repack into bytes MSB-first. Requires `len % 8 == 0`.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        assert!(self.len % 8 == 0, "bit length {} not a whole number of bytes", self.len);
        let mut out = Vec::with_capacity(self.len / 8);
        for byte_idx in 0..self.len / 8 {
            let mut b = 0u8;
            for k in 0..8 {
                b = (b << 1) | self.get(byte_idx * 8 + k + 1) as u8;
            }
            out.push(b);
        }
        out
    }

    /// Substring over the 1-based inclusive range `[lo..hi]`; empty when `lo > hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Self::new();
        }
        assert!(lo >= 1 && hi <= self.len, "slice [{lo}..{hi}] out of 1..={}", self.len);
        let mut out = Self::with_capacity(hi - lo + 1);
        for i in lo..=hi {
            out.push(self.get(i));
        }
        out
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 1..=other.len {
            out.push(other.get(i));
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |i| self.get(i))
    }

    /// Hamming distance; both strings must have equal length.
    pub fn hamming(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "hamming over unequal lengths");
        let mut d = 0usize;
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            d += (a ^ b).count_ones() as usize;
        }
        d
    }

    /// Longest common prefix length of `self[i..]` and `other[j..]`
    /// (1-based suffix starts). Word-parallel scan.
    pub fn lcp_suffix(&self, i: usize, other: &Self, j: usize) -> usize {
        debug_assert!(i >= 1 && j >= 1);
        let max = (self.len + 1 - i.min(self.len + 1)).min(other.len + 1 - j.min(other.len + 1));
        let mut l = 0usize;
        // Compare 64 bits at a time while both suffixes have a full word left.
        while l + 64 <= max {
            let a = self.read_word(i + l);
            let b = other.read_word(j + l);
            let x = a ^ b;
            if x != 0 {
                return l + x.trailing_zeros() as usize;
            }
            l += 64;
        }
        while l < max && self.get(i + l) == other.get(j + l) {
            l += 1;
        }
        l
    }

    /// 64 bits starting at 1-based position `i` (LSB = position `i`).
    /// Positions past the end read as zero.
    #[inline]
    fn read_word(&self, i: usize) -> u64 {
        let k = i - 1;
        let w = k / 64;
        let off = k % 64;
        let lo = self.words.get(w).copied().unwrap_or(0) >> off;
        if off == 0 {
            lo
        } else {
            lo | (self.words.get(w + 1).copied().unwrap_or(0) << (64 - off))
        }
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 80 {
            write!(f, "BitString(\"{}\")", self.to_bit_string())
        } else {
            write!(f, "BitString(len={})", self.len)
        }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let mut out = Self::new();
        for b in iter {
            out.push(b);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_get_roundtrip() {
        let s = BitString::from_bit_str("0101");
        assert_eq!(s.len(), 4);
        assert!(!s.get(1));
        assert!(s.get(2));
        assert!(!s.get(3));
        assert!(s.get(4));
    }

    #[test]
    fn bytes_roundtrip() {
        let bytes = [0x00u8, 0xff, 0xa5, 0x3c];
        let s = BitString::from_bytes_msb(&bytes);
        assert_eq!(s.len(), 32);
        assert_eq!(s.to_bytes_msb(), bytes);
        assert!(s.get(9)); // 0xff starts at bit 9
    }

    #[test]
    fn slicing() {
        let s = BitString::from_bit_str("0110100");
        assert_eq!(s.slice(2, 4).to_bit_string(), "110");
        assert_eq!(s.slice(1, 7).to_bit_string(), "0110100");
        assert!(s.slice(5, 4).is_empty());
    }

    #[test]
    fn hamming_and_lcp() {
        let a = BitString::from_bit_str("0101");
        let b = BitString::from_bit_str("0110");
        assert_eq!(a.hamming(&b), 2);
        assert_eq!(a.lcp_suffix(1, &b, 1), 2);
        assert_eq!(a.lcp_suffix(1, &a, 1), 4);
        assert_eq!(a.lcp_suffix(3, &b, 3), 0);
    }

    #[test]
    fn lcp_long_word_boundary() {
        let mut a = BitString::zeros(200);
        let mut b = BitString::zeros(200);
        a.set(150, true);
        assert_eq!(a.lcp_suffix(1, &b, 1), 149);
        b.set(150, true);
        assert_eq!(a.lcp_suffix(1, &b, 1), 200);
        assert_eq!(a.lcp_suffix(3, &b, 5), 145);
    }
}
