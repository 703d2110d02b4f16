//! Subsets of the ground set `[n] = {1, …, n}` stored as bitsets.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported ground set size.
pub const MAX_GROUND: usize = 64;

/// A subset of `[n]`; element `i` lives in bit `i - 1`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroundSubset(u64);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    pub fn from_bits(bits: u64) -> Self {
        GroundSubset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The full ground set `[n]`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            GroundSubset(u64::MAX)
        } else {
            GroundSubset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&i));
        GroundSubset(1u64 << (i - 1))
    }

    /// Builds a subset from 1-based elements. Panics on 0 or elements above 64.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u64;
        for i in elements {
            assert!((1..=MAX_GROUND).contains(&i), "ground element {i} out of range");
            bits |= 1u64 << (i - 1);
        }
        GroundSubset(bits)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= MAX_GROUND && self.0 & (1u64 << (i - 1)) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        GroundSubset(self.0 | Self::singleton(i).0)
    }

    pub fn remove(self, i: usize) -> Self {
        GroundSubset(self.0 & !Self::singleton(i).0)
    }

    pub fn union(self, other: Self) -> Self {
        GroundSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GroundSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GroundSubset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Self::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn within(self, n: usize) -> bool {
        self.is_subset(Self::full(n))
    }

    /// Smallest element, if any.
    pub fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    pub fn max_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of elements of `self` strictly below `i`.
    pub fn count_below(self, i: usize) -> usize {
        if i <= 1 {
            0
        } else {
            (self.0 & ((1u64 << (i - 1)) - 1)).count_ones() as usize
        }
    }

    /// Number of elements of `self` strictly above `i`.
    pub fn count_above(self, i: usize) -> usize {
        if i >= MAX_GROUND {
            0
        } else {
            (self.0 >> i).count_ones() as usize
        }
    }

    /// Indicator vector `u_λ` of length `n`.
    pub fn indicator(self, n: usize) -> Vec<i64> {
        (1..=n).map(|i| i64::from(self.contains(i))).collect()
    }

    /// Applies a permutation given as `perm[i - 1] = σ(i)`.
    pub fn permute(self, perm: &[usize]) -> Self {
        GroundSubset::from_elements(self.iter().map(|i| perm[i - 1]))
    }

    /// Compact label: concatenated digits for `n ≤ 9`, comma separated otherwise.
    pub fn label(self, n: usize) -> String {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        if n <= 9 {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Parses a label produced by [`GroundSubset::label`] (digits or comma list).
    pub fn parse_label(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Some(Self::EMPTY);
        }
        let elements: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let elements = elements?;
        if elements.iter().any(|&i| i == 0 || i > MAX_GROUND) {
            return None;
        }
        Some(Self::from_elements(elements))
    }
}

impl Ord for GroundSubset {
    /// Lexicographic order on the increasing element sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for GroundSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }
}

/// All `k`-subsets of `[n]` in lexicographic order (the index set `Λ(k, n)`).
pub fn k_subsets(n: usize, k: usize) -> Vec<GroundSubset> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(GroundSubset::from_elements(idx.iter().copied()));
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - (k - 1 - p)) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// All subsets of `[n]`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = GroundSubset> {
    assert!(n < MAX_GROUND);
    (0u64..(1u64 << n)).map(GroundSubset)
}

/// Binomial coefficient as `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
