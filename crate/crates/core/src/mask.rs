//! Fixed-width bit sets over `{0, .., n-1}`.
//!
//! Spaces with at most 64 elements live in a single inline word; larger
//! spaces spill onto the heap. All masks belonging to one space have the
//! same word count, which keeps equality, hashing and ordering structural.

use std::cmp::Ordering;
use std::fmt;

use smallvec::{smallvec, SmallVec};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mask {
    words: SmallVec<[u64; 1]>,
}

impl Mask {
    pub fn empty(n: usize) -> Self {
        Mask {
            words: smallvec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut m = Self::empty(n);
        for i in 0..n / WORD {
            m.words[i] = u64::MAX;
        }
        if !n.is_multiple_of(WORD) {
            m.words[n / WORD] = (1u64 << (n % WORD)) - 1;
        }
        m
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut m = Self::empty(n);
        m.insert(i);
        m
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut m = Self::empty(n);
        for i in it {
            m.insert(i);
        }
        m
    }

    /// Builds a mask from the low word only; `n` must be at most 64.
    pub fn from_word(n: usize, w: u64) -> Self {
        debug_assert!(n <= WORD);
        let mut m = Self::empty(n);
        m.words[0] = w;
        m
    }

    /// The low word; meaningful for spaces with at most 64 elements.
    #[inline]
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / WORD] |= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD] &= !(1u64 << (i % WORD));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / WORD)
            .is_some_and(|w| w >> (i % WORD) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Mask) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Mask) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn and(&self, other: &Mask) -> Mask {
        let mut r = self.clone();
        r.and_assign(other);
        r
    }

    pub fn or(&self, other: &Mask) -> Mask {
        let mut r = self.clone();
        r.or_assign(other);
        r
    }

    pub fn and_not(&self, other: &Mask) -> Mask {
        let mut r = self.clone();
        for (a, b) in r.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        r
    }

    pub fn and_assign(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> MaskIter<'_> {
        MaskIter {
            words: &self.words,
            idx: 0,
            cur: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Numeric order: the mask read as a binary integer.
impl Ord for Mask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .iter()
            .rev()
            .cmp(other.words.iter().rev())
    }
}

impl PartialOrd for Mask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct MaskIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for MaskIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
