//! Fixed-length bit vectors packed little-endian into `u64` words.
//!
//! Bits at positions `>= len` are always zero; every mutating operation
//! keeps that invariant so word-level comparisons and popcounts are exact.

use std::fmt;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut b = Bits::zeros(len);
        b.set(index, true);
        b
    }

    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut b = Bits::zeros(len);
        for i in ones {
            b.flip(i);
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set position.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Highest set position.
    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    /// `self ^= other` on the common prefix; `other` may be shorter.
    pub fn xor_assign(&mut self, other: &Bits) {
        assert!(other.len <= self.len, "xor with a longer vector");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Parity of `self & other`.
    pub fn dot(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    /// Copy with a new length, zero-padding or truncating.
    pub fn resized(&self, len: usize) -> Bits {
        let mut words = self.words.clone();
        words.resize(words_for(len), 0);
        let mut b = Bits { words, len };
        b.clear_tail();
        b
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &Bits) -> Bits {
        let mut out = self.resized(self.len + other.len);
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// XOR `src` shifted left by `shift` bits into `self`, dropping bits beyond `len`.
    pub(crate) fn xor_shifted(&mut self, src: &[u64], shift: usize) {
        let word_shift = shift / WORD_BITS;
        let bit_shift = shift % WORD_BITS;
        let n = self.words.len();
        if word_shift >= n {
            return;
        }
        let room = n - word_shift;
        if bit_shift == 0 {
            for (d, s) in self.words[word_shift..].iter_mut().zip(src.iter().take(room)) {
                *d ^= *s;
            }
        } else {
            let mut carry = 0u64;
            for (d, s) in self.words[word_shift..].iter_mut().zip(src.iter().take(room)) {
                *d ^= (s << bit_shift) | carry;
                carry = s >> (WORD_BITS - bit_shift);
            }
            if src.len() < room {
                self.words[word_shift + src.len()] ^= carry;
            }
        }
        self.clear_tail();
    }

    pub(crate) fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits[{}]{{", self.len)?;
        for (k, i) in self.iter_ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_roundtrip_and_tail_masking() {
        let b = Bits::from_ones(130, [0, 63, 64, 129]);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(b.first_one(), Some(0));
        assert_eq!(b.last_one(), Some(129));
        let t = b.resized(64);
        assert_eq!(t.iter_ones().collect::<Vec<_>>(), vec![0, 63]);
    }

    #[test]
    fn shifted_xor_drops_overflow() {
        let mut dst = Bits::zeros(100);
        let src = Bits::from_ones(70, [0, 5, 69]);
        dst.xor_shifted(src.words(), 30);
        assert_eq!(dst.iter_ones().collect::<Vec<_>>(), vec![30, 35, 99]);
        let mut dst = Bits::zeros(100);
        dst.xor_shifted(src.words(), 64);
        assert_eq!(dst.iter_ones().collect::<Vec<_>>(), vec![64, 69]);
    }

    #[test]
    fn dot_is_parity_of_overlap() {
        let a = Bits::from_ones(10, [1, 2, 3]);
        let b = Bits::from_ones(10, [2, 3, 9]);
        assert!(!a.dot(&b));
        assert!(a.dot(&Bits::from_ones(10, [3])));
    }
}
