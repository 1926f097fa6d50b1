//! Fixed-universe bitsets over a generic machine word.
//!
//! Every set carries the size of its universe; bits at or above the
//! universe size are always zero, so word-wise comparisons and popcounts
//! never see garbage in the tail word.

use std::fmt;
use std::hash::Hash;

use num_traits::PrimInt;

/// Unsigned machine word used as bitset storage.
pub trait Word: PrimInt + Hash + Default + fmt::Debug + Send + Sync + 'static {
    const BITS: usize;
}

macro_rules! impl_word {
    ($($t:ty),*) => {
        $(impl Word for $t {
            const BITS: usize = <$t>::BITS as usize;
        })*
    };
}

impl_word!(u8, u16, u32, u64, u128);

#[inline]
fn split<W: Word>(i: usize) -> (usize, usize) {
    (i / W::BITS, i % W::BITS)
}

#[inline]
fn bit<W: Word>(offset: usize) -> W {
    W::one() << offset
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet<W: Word> {
    universe: usize,
    words: Vec<W>,
}

impl<W: Word> BitSet<W> {
    pub fn new(universe: usize) -> Self {
        BitSet {
            universe,
            words: vec![W::zero(); universe.div_ceil(W::BITS)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::new(universe);
        for w in set.words.iter_mut() {
            *w = !W::zero();
        }
        set.trim();
        set
    }

    pub fn from_members(universe: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::new(universe);
        for m in members {
            set.insert(m);
        }
        set
    }

    /// Clears the unused high bits of the last word.
    fn trim(&mut self) {
        let (_, extra) = split::<W>(self.universe);
        if extra != 0 {
            if let Some(last) = self.words.last_mut() {
                *last = *last & (bit::<W>(extra) - W::one());
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn words(&self) -> &[W] {
        &self.words
    }

    /// Panics if `i` lies outside the universe.
    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "bit {i} outside universe {}", self.universe);
        let (w, b) = split::<W>(i);
        self.words[w] = self.words[w] | bit(b);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.universe, "bit {i} outside universe {}", self.universe);
        let (w, b) = split::<W>(i);
        self.words[w] = self.words[w] & !bit::<W>(b);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        if i >= self.universe {
            return false;
        }
        let (w, b) = split::<W>(i);
        self.words[w] & bit(b) != W::zero()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| w.is_zero())
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn clear(&mut self) {
        for w in self.words.iter_mut() {
            *w = W::zero();
        }
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "bitset universes differ: {} vs {}",
            self.universe, other.universe
        );
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, &b) in self.words.iter_mut().zip(&other.words) {
            *a = *a | b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, &b) in self.words.iter_mut().zip(&other.words) {
            *a = *a & b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, &b) in self.words.iter_mut().zip(&other.words) {
            *a = *a & !b;
        }
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .any(|(&a, &b)| a & b != W::zero())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == W::zero())
    }

    /// `self ⊊ other`.
    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_zero())
            .map(|(i, w)| i * W::BITS + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Ones<'_, W> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or_else(W::zero),
        }
    }
}

impl<W: Word> fmt::Debug for BitSet<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the members of a [`BitSet`] in ascending order.
pub struct Ones<'a, W: Word> {
    words: &'a [W],
    index: usize,
    current: W,
}

impl<W: Word> Iterator for Ones<'_, W> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if !self.current.is_zero() {
                let tz = self.current.trailing_zeros() as usize;
                self.current = self.current & (self.current - W::one());
                return Some(self.index * W::BITS + tz);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a, W: Word> IntoIterator for &'a BitSet<W> {
    type Item = usize;
    type IntoIter = Ones<'a, W>;

    fn into_iter(self) -> Ones<'a, W> {
        self.iter()
    }
}
