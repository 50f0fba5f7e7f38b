//! Subsets of a small ground set `[n] = {1, ..., n}` packed into one machine word.
//!
//! Element `i` lives in bit `i - 1`, so the natural integer order on the packed
//! word ("bitmask order") is the order every search in this crate walks in.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `[n]` for `n <= 64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full ground set `[n]`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    /// `{e}`; `e` is 1-indexed.
    #[inline]
    pub fn singleton(e: u32) -> Self {
        debug_assert!((1..=64).contains(&e));
        ElementSet(1u64 << (e - 1))
    }

    /// Builds a set from 1-indexed elements, rejecting zero, out-of-word
    /// elements and repeats.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e as usize > MAX_ELEMENTS {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    n: MAX_ELEMENTS,
                });
            }
            let b = 1u64 << (e - 1);
            if bits & b != 0 {
                return Err(Error::InvalidParameter(format!("element {e} repeated")));
            }
            bits |= b;
        }
        Ok(ElementSet(bits))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: u32) -> bool {
        (1..=64).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    #[inline]
    pub fn with(self, e: u32) -> Self {
        self | ElementSet::singleton(e)
    }

    #[inline]
    pub fn without(self, e: u32) -> Self {
        ElementSet(self.0 & !ElementSet::singleton(e).0)
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// `|self ∩ other|`
    #[inline]
    pub const fn meet(self, other: Self) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    /// True iff every element is in `[n]`.
    #[inline]
    pub fn within(self, n: usize) -> bool {
        self.is_subset(ElementSet::full(n))
    }

    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_element(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// All `k`-subsets of `self`, ascending in bitmask order.
    pub fn subsets_of_size(self, k: usize) -> KSubsets {
        KSubsets::new(self, k)
    }

    /// Places the low `|self|` bits of `pattern` onto the elements of `self`,
    /// in order.
    fn deposit(self, mut pattern: u64) -> ElementSet {
        let mut out = 0u64;
        let mut ground = self.0;
        while pattern != 0 && ground != 0 {
            let low = ground & ground.wrapping_neg();
            if pattern & 1 != 0 {
                out |= low;
            }
            pattern >>= 1;
            ground ^= low;
        }
        ElementSet(out)
    }
}

impl std::ops::BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl FromIterator<u32> for ElementSet {
    /// Panics on elements outside `1..=64`; use [`ElementSet::from_elements`]
    /// for untrusted input.
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        iter.into_iter()
            .fold(ElementSet::EMPTY, |acc, e| acc.with(e))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ascending element iterator.
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// `k`-subsets of a ground set in ascending bitmask order (Gosper's hack on
/// the compressed index space).
#[derive(Clone)]
pub struct KSubsets {
    ground: ElementSet,
    width: usize,
    current: Option<u64>,
}

impl KSubsets {
    fn new(ground: ElementSet, k: usize) -> Self {
        let width = ground.len();
        let current = if k > width {
            None
        } else if k == 0 {
            Some(0)
        } else if k == 64 {
            Some(u64::MAX)
        } else {
            Some((1u64 << k) - 1)
        };
        KSubsets {
            ground,
            width,
            current,
        }
    }
}

impl Iterator for KSubsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.current?;
        let out = self.ground.deposit(cur);
        self.current = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let (r, overflow) = cur.overflowing_add(c);
            if overflow || r == 0 {
                None
            } else {
                let next = (((r ^ cur) >> 2) / c) | r;
                if self.width < 64 && next >> self.width != 0 {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(out)
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is always integral at this point
        let num = acc.checked_mul((n - i) as u128);
        match num {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}
