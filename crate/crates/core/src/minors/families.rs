//! Named target minors.

use crate::error::{Error, Result};
use crate::matroid::SparsePavingMatroid;
use crate::subset::ElementSet;

/// The rank-3 whirl on `[6]`: three lines pairwise meeting in one element.
pub fn whirl3() -> SparsePavingMatroid {
    SparsePavingMatroid::new(
        6,
        3,
        [
            ElementSet::from_bits(0b001011),
            ElementSet::from_bits(0b010110),
            ElementSet::from_bits(0b100101),
        ],
    )
    .expect("the whirl is sparse paving")
}

/// `U_{t,k}`.
pub fn uniform(t: usize, k: usize) -> Result<SparsePavingMatroid> {
    SparsePavingMatroid::uniform(t, k)
}

/// A structure on `lines_support` elements needs one spare element when it
/// would otherwise make its only `r`-set a non-basis.
fn ground_size(rank: usize, support: usize) -> usize {
    support.max(rank + 1)
}

/// `count` pairwise disjoint lines `{1..r}, {r+1..2r}, ...`.
pub fn disjoint_lines(rank: usize, count: usize) -> Result<SparsePavingMatroid> {
    if rank == 0 && count > 0 {
        return Err(Error::InvalidParameter(
            "rank-0 lines leave no basis".into(),
        ));
    }
    let lines = (0..count).map(|i| {
        let lo = (i * rank) as u32;
        (lo + 1..=lo + rank as u32).collect::<ElementSet>()
    });
    SparsePavingMatroid::new(ground_size(rank, rank * count), rank, lines)
}

/// `count` lines through the core `{1..r-2}`, each adding two fresh elements.
pub fn common_core_lines(rank: usize, count: usize) -> Result<SparsePavingMatroid> {
    if rank < 2 {
        return Err(Error::InvalidParameter(format!(
            "common-core lines need rank at least 2, got {rank}"
        )));
    }
    let core = ElementSet::full(rank - 2);
    let lines = (0..count).map(|i| {
        let a = (rank - 1 + 2 * i) as u32;
        core.with(a).with(a + 1)
    });
    SparsePavingMatroid::new(ground_size(rank, rank - 2 + 2 * count), rank, lines)
}

/// The rank-`r` matroid on `[r + 1]` whose only non-basis is `{1..r}`.
pub fn single_line(rank: usize) -> Result<SparsePavingMatroid> {
    disjoint_lines(rank, 1)
}

/// `H` with `d` fresh elements `n+1..n+d` added to every non-basis.
pub fn lift(h: &SparsePavingMatroid, d: usize) -> Result<SparsePavingMatroid> {
    let n = h.n();
    let fresh = ElementSet::full(n + d) - ElementSet::full(n);
    if n + d > crate::subset::MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge {
            n: n + d,
            max: crate::subset::MAX_ELEMENTS,
        });
    }
    SparsePavingMatroid::new(n + d, h.rank() + d, h.nonbases().iter().map(|&c| c | fresh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::johnson::is_stable;
    use crate::verify_matroid_axioms;

    fn set(xs: &[u32]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn whirl_shape() {
        let w = whirl3();
        assert_eq!(
            w.nonbases(),
            &[set(&[1, 2, 4]), set(&[2, 3, 5]), set(&[1, 3, 6])]
        );
        assert!(is_stable(w.nonbases()));
        assert!(verify_matroid_axioms(&w.bases()));
    }

    #[test]
    fn constructors() {
        let u = uniform(2, 4).unwrap();
        assert!(u.nonbases().is_empty());
        assert_eq!(u.n(), 4);

        let d = disjoint_lines(3, 2).unwrap();
        assert_eq!(d.n(), 6);
        assert_eq!(d.nonbases(), &[set(&[1, 2, 3]), set(&[4, 5, 6])]);

        let c = common_core_lines(3, 3).unwrap();
        assert_eq!(c.n(), 7);
        assert_eq!(
            c.nonbases(),
            &[set(&[1, 2, 3]), set(&[1, 4, 5]), set(&[1, 6, 7])]
        );

        let s = single_line(2).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.nonbases(), &[set(&[1, 2])]);
        assert!(disjoint_lines(1, 2).is_err());
    }

    #[test]
    fn lifts() {
        let w = whirl3();
        assert_eq!(lift(&w, 0).unwrap(), w);
        let s = single_line(2).unwrap();
        let l = lift(&s, 1).unwrap();
        assert_eq!(l.rank(), 3);
        assert_eq!(l.nonbases(), &[set(&[1, 2, 4])]);
        let l2 = lift(&w, 2).unwrap();
        for (i, &a) in l2.nonbases().iter().enumerate() {
            for &b in &l2.nonbases()[i + 1..] {
                assert_eq!(a.meet(b), 1 + 2);
            }
        }
    }
}
