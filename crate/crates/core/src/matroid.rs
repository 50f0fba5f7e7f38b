//! Line structures, sparse paving matroids and a basis-list matroid used as an
//! independent oracle.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{binomial, ElementSet, MAX_ELEMENTS};

/// True iff two `rank`-sets may both be lines: they meet in at most
/// `rank - 2` elements.
#[inline]
pub fn lines_compatible(a: ElementSet, b: ElementSet, rank: usize) -> bool {
    a.meet(b) + 2 <= rank
}

/// A family of `rank`-sets pairwise meeting in at most `rank - 2` elements.
///
/// Lines are kept sorted in bitmask order, so two structures over the same
/// labels compare equal iff they hold the same lines.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineStructure {
    rank: usize,
    lines: Vec<ElementSet>,
}

impl LineStructure {
    pub fn new(rank: usize, lines: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let mut lines: Vec<ElementSet> = lines.into_iter().collect();
        lines.sort_unstable();
        lines.dedup();
        for &l in &lines {
            if l.len() != rank {
                return Err(Error::BadCardinality {
                    set: l,
                    expected: rank,
                    found: l.len(),
                });
            }
        }
        for (i, &a) in lines.iter().enumerate() {
            for &b in &lines[i + 1..] {
                if !lines_compatible(a, b, rank) {
                    return Err(Error::NotStable {
                        first: a,
                        second: b,
                    });
                }
            }
        }
        Ok(LineStructure { rank, lines })
    }

    pub fn empty(rank: usize) -> Self {
        LineStructure {
            rank,
            lines: Vec::new(),
        }
    }

    /// Caller guarantees the lines are sorted, distinct, of size `rank` and
    /// pairwise compatible.
    pub(crate) fn from_sorted_unchecked(rank: usize, lines: Vec<ElementSet>) -> Self {
        debug_assert!(lines.windows(2).all(|w| w[0] < w[1]));
        LineStructure { rank, lines }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lines(&self) -> &[ElementSet] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.lines.binary_search(&set).is_ok()
    }

    /// Union of all lines.
    pub fn support(&self) -> ElementSet {
        self.lines.iter().fold(ElementSet::EMPTY, |acc, &l| acc | l)
    }

    /// `n_L`, the number of elements covered by some line.
    pub fn support_size(&self) -> usize {
        self.support().len()
    }

    /// Relabels the elements through `map` (old element -> new element).
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Result<Self> {
        let lines = self
            .lines
            .iter()
            .map(|l| ElementSet::from_elements(l.iter().map(&map)))
            .collect::<Result<Vec<_>>>()?;
        LineStructure::new(self.rank, lines)
    }

    /// Relabels the support onto `1..=n_L`, preserving element order.
    pub fn compact(&self) -> Self {
        let support: Vec<u32> = self.support().to_vec();
        let mut table = [0u32; MAX_ELEMENTS + 1];
        for (i, &e) in support.iter().enumerate() {
            table[e as usize] = i as u32 + 1;
        }
        self.relabel(|e| table[e as usize])
            .expect("order-preserving relabel of a valid structure")
    }

    /// Shifts every element up by `offset`.
    pub fn shifted(&self, offset: u32) -> Result<Self> {
        self.relabel(|e| e + offset)
    }
}

/// A sparse paving matroid of rank `r` on `[n]`, stored as its non-bases.
///
/// Every `r`-subset of `[n]` that is not listed is a basis, smaller sets are
/// independent, and larger sets have rank `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparsePavingMatroid {
    n: usize,
    nonbases: LineStructure,
}

impl SparsePavingMatroid {
    /// Validates `lines` as the non-bases of a rank-`r` sparse paving matroid
    /// on `[n]`.
    pub fn new(n: usize, r: usize, lines: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        if r > n {
            return Err(Error::RankTooLarge { n, rank: r });
        }
        let lines: Vec<ElementSet> = lines.into_iter().collect();
        let ground = ElementSet::full(n);
        for &l in &lines {
            if l.len() != r {
                return Err(Error::BadCardinality {
                    set: l,
                    expected: r,
                    found: l.len(),
                });
            }
            if !l.is_subset(ground) {
                let element = (l - ground).min_element().unwrap_or(0);
                return Err(Error::ElementOutOfRange { element, n });
            }
        }
        let nonbases = LineStructure::new(r, lines)?;
        Self::from_line_structure(n, nonbases)
    }

    pub fn from_line_structure(n: usize, nonbases: LineStructure) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let r = nonbases.rank();
        if r > n {
            return Err(Error::RankTooLarge { n, rank: r });
        }
        if !nonbases.support().within(n) {
            let element = (nonbases.support() - ElementSet::full(n))
                .min_element()
                .unwrap_or(0);
            return Err(Error::ElementOutOfRange { element, n });
        }
        if nonbases.len() as u128 >= binomial(n as u64, r as u64) {
            return Err(Error::NoBasis { n, rank: r });
        }
        Ok(SparsePavingMatroid { n, nonbases })
    }

    /// `U_{r,n}`: no non-bases.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        Self::new(n, r, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.nonbases.rank()
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn nonbases(&self) -> &[ElementSet] {
        self.nonbases.lines()
    }

    pub fn line_structure(&self) -> &LineStructure {
        &self.nonbases
    }

    pub fn is_nonbasis(&self, set: ElementSet) -> bool {
        self.nonbases.contains(set)
    }

    pub fn is_basis(&self, set: ElementSet) -> bool {
        set.len() == self.rank() && set.within(self.n) && !self.is_nonbasis(set)
    }

    pub fn is_independent(&self, set: ElementSet) -> bool {
        set.len() < self.rank() || self.is_basis(set)
    }

    /// Rank of `set` (elements outside `[n]` are ignored).
    pub fn rank_of(&self, set: ElementSet) -> usize {
        let set = set & self.ground();
        let r = self.rank();
        let k = set.len();
        if k < r {
            k
        } else if k == r && self.is_nonbasis(set) {
            r - 1
        } else {
            r
        }
    }

    /// All bases in bitmask order.
    pub fn bases(&self) -> Vec<ElementSet> {
        self.ground()
            .subsets_of_size(self.rank())
            .filter(|&s| !self.is_nonbasis(s))
            .collect()
    }

    pub fn to_general(&self) -> GeneralMatroid {
        GeneralMatroid {
            n: self.n,
            bases: self.bases().into_iter().collect(),
        }
    }
}

/// Shorthand for [`SparsePavingMatroid::new`].
pub fn make_sparse_paving(
    n: usize,
    r: usize,
    lines: impl IntoIterator<Item = ElementSet>,
) -> Result<SparsePavingMatroid> {
    SparsePavingMatroid::new(n, r, lines)
}

/// A matroid given by its list of bases. Only used as an oracle for results
/// that leave the sparse paving class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralMatroid {
    n: usize,
    bases: BTreeSet<ElementSet>,
}

impl GeneralMatroid {
    pub fn new(n: usize, bases: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let bases: BTreeSet<ElementSet> = bases.into_iter().collect();
        if let Some(b) = bases.iter().find(|b| !b.within(n)) {
            let element = (*b - ElementSet::full(n)).min_element().unwrap_or(0);
            return Err(Error::ElementOutOfRange { element, n });
        }
        let list: Vec<_> = bases.iter().copied().collect();
        if !verify_matroid_axioms(&list) {
            return Err(Error::InvalidParameter(
                "basis family violates the exchange axiom".into(),
            ));
        }
        Ok(GeneralMatroid { n, bases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.bases.iter().next().map_or(0, |b| b.len())
    }

    pub fn bases(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.bases.iter().copied()
    }

    pub fn rank_of(&self, set: ElementSet) -> usize {
        self.bases.iter().map(|&b| b.meet(set)).max().unwrap_or(0)
    }
}

/// Brute-force check of the basis axioms: non-empty, equicardinal, and for
/// all bases `B1, B2` and `x ∈ B1 \ B2` some `y ∈ B2 \ B1` makes
/// `B1 - x + y` a basis.
pub fn verify_matroid_axioms(bases: &[ElementSet]) -> bool {
    let Some(first) = bases.first() else {
        return false;
    };
    let k = first.len();
    if bases.iter().any(|b| b.len() != k) {
        return false;
    }
    let lookup: HashSet<ElementSet> = bases.iter().copied().collect();
    for &b1 in bases {
        for &b2 in bases {
            for x in (b1 - b2).iter() {
                let base = b1.without(x);
                if !(b2 - b1).iter().any(|y| lookup.contains(&base.with(y))) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied()).unwrap()
    }

    #[test]
    fn construction_examples() {
        let m = make_sparse_paving(4, 2, [set(&[1, 2]), set(&[3, 4])]).unwrap();
        assert_eq!(m.bases().len(), 4);

        let err = make_sparse_paving(4, 2, [set(&[1, 2]), set(&[1, 3])]).unwrap_err();
        assert!(matches!(err, Error::NotStable { .. }));

        let m0 = make_sparse_paving(4, 0, []).unwrap();
        assert_eq!(m0.bases(), vec![ElementSet::EMPTY]);
        assert!(matches!(
            make_sparse_paving(4, 0, [ElementSet::EMPTY]),
            Err(Error::NoBasis { .. })
        ));
        assert!(matches!(
            make_sparse_paving(3, 3, [set(&[1, 2, 3])]),
            Err(Error::NoBasis { .. })
        ));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            make_sparse_paving(4, 2, [set(&[1, 2, 3])]),
            Err(Error::BadCardinality { .. })
        ));
        assert!(matches!(
            make_sparse_paving(4, 2, [set(&[1, 5])]),
            Err(Error::ElementOutOfRange { element: 5, .. })
        ));
        assert!(matches!(
            make_sparse_paving(3, 4, []),
            Err(Error::RankTooLarge { .. })
        ));
        assert!(matches!(
            make_sparse_paving(65, 1, []),
            Err(Error::GroundSetTooLarge { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        let m = make_sparse_paving(4, 2, [set(&[1, 2])]).unwrap();
        assert_eq!(m.rank_of(set(&[1, 2])), 1);
        assert_eq!(m.rank_of(set(&[1, 3])), 2);
        assert_eq!(m.rank_of(set(&[1, 2, 3])), 2);
        assert_eq!(m.rank_of(set(&[4])), 1);
        assert_eq!(m.rank_of(ElementSet::EMPTY), 0);
    }

    #[test]
    fn rank_agrees_with_basis_list() {
        let m =
            make_sparse_paving(6, 3, [set(&[1, 2, 3]), set(&[3, 4, 5]), set(&[1, 5, 6])]).unwrap();
        let g = m.to_general();
        for bits in 0..64u64 {
            let x = ElementSet::from_bits(bits);
            assert_eq!(m.rank_of(x), g.rank_of(x), "{x}");
        }
    }

    #[test]
    fn axiom_oracle_examples() {
        let u24: Vec<_> = ElementSet::full(4).subsets_of_size(2).collect();
        assert!(verify_matroid_axioms(&u24));
        assert!(!verify_matroid_axioms(&[set(&[1, 2]), set(&[3, 4])]));
        assert!(!verify_matroid_axioms(&[]));
        assert!(!verify_matroid_axioms(&[set(&[1]), set(&[1, 2])]));
        assert!(GeneralMatroid::new(4, [set(&[1, 2]), set(&[3, 4])]).is_err());
    }

    #[test]
    fn line_structure_compaction() {
        let l = LineStructure::new(2, [set(&[3, 7]), set(&[5, 9])]).unwrap();
        assert_eq!(l.support_size(), 4);
        let c = l.compact();
        assert_eq!(c.lines(), &[set(&[1, 3]), set(&[2, 4])]);
    }
}
