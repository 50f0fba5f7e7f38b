//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's search code; only plain set arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use sparsepave::{ElementSet, SparsePavingMatroid};

pub fn set(xs: &[u32]) -> ElementSet {
    xs.iter().copied().collect()
}

/// Every `k`-subset of `[n]`, in increasing bitmask order.
pub fn k_subsets(n: usize, k: usize) -> Vec<ElementSet> {
    (0u64..1 << n)
        .filter(|b| b.count_ones() as usize == k)
        .map(ElementSet::from_bits)
        .collect()
}

pub fn subsets_of(base: ElementSet, k: usize) -> Vec<ElementSet> {
    let elements = base.to_vec();
    (0u64..1 << elements.len())
        .filter(|b| b.count_ones() as usize == k)
        .map(|b| {
            elements
                .iter()
                .enumerate()
                .filter(|(i, _)| b >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

pub fn pairwise_ok(family: &[ElementSet], r: usize) -> bool {
    family.iter().enumerate().all(|(i, a)| {
        family[i + 1..]
            .iter()
            .all(|b| r == 0 || (a.bits() & b.bits()).count_ones() as usize != r - 1)
    })
}

/// Stable sets of `J(n, r)` by filtering the whole power set of vertices.
pub fn stable_sets_naive(n: usize, r: usize) -> Vec<Vec<ElementSet>> {
    let vertices = k_subsets(n, r);
    assert!(vertices.len() <= 24, "power set too large");
    (0u64..1 << vertices.len())
        .map(|mask| {
            vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect::<Vec<_>>()
        })
        .filter(|f| pairwise_ok(f, r))
        .collect()
}

/// Basis exchange: for bases `A`, `B` and `a ∈ A∖B` some `b ∈ B∖A` makes
/// `A - a + b` a basis. Also requires a non-empty, equicardinal family.
pub fn basis_exchange(bases: &[ElementSet]) -> bool {
    if bases.is_empty() {
        return false;
    }
    let all: HashSet<u64> = bases.iter().map(|b| b.bits()).collect();
    let size = bases[0].len();
    bases.iter().all(|a| a.len() == size)
        && bases.iter().all(|&a| {
            bases.iter().all(|&b| {
                ElementSet::from_bits(a.bits() & !b.bits()).iter().all(|x| {
                    ElementSet::from_bits(b.bits() & !a.bits())
                        .iter()
                        .any(|y| all.contains(&a.without(x).with(y).bits()))
                })
            })
        })
}

/// `∂A` computed from scratch.
pub fn shadow_naive(family: &[ElementSet]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for a in family {
        for e in a.iter() {
            out.insert(a.bits() & !(1 << (e - 1)));
        }
    }
    out
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `f` with every injection of `0..k` into `0..n`, as a vector.
pub fn injections(k: usize, n: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(
        k: usize,
        n: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                let stop = go(k, n, used, cur, f);
                cur.pop();
                used[v] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
    go(k, n, &mut vec![false; n], &mut Vec::new(), f)
}

fn map_set(s: ElementSet, from: &[u32], to: &[u32]) -> ElementSet {
    s.iter()
        .map(|e| to[from.iter().position(|&x| x == e).expect("in support")])
        .collect()
}

/// Some injection of the support of `lines` into `ground` sends every line
/// onto a member of `host`.
pub fn has_copy_brute(host: &[ElementSet], lines: &[ElementSet], ground: ElementSet) -> bool {
    if lines.is_empty() {
        return true;
    }
    let support: Vec<u32> = lines
        .iter()
        .fold(ElementSet::EMPTY, |acc, &l| acc.union(l))
        .to_vec();
    let targets = ground.to_vec();
    if support.len() > targets.len() {
        return false;
    }
    let host: HashSet<u64> = host.iter().map(|h| h.bits()).collect();
    injections(support.len(), targets.len(), &mut |map| {
        let image: Vec<u32> = map.iter().map(|&i| targets[i]).collect();
        lines
            .iter()
            .all(|&l| host.contains(&map_set(l, &support, &image).bits()))
    })
}

/// Bases of `M / C | E'` for independent `C`: the `(r - |C|)`-subsets `B` of
/// `E'` with `B ∪ C` a basis.
fn minor_bases(
    nonbases: &HashSet<u64>,
    c: ElementSet,
    keep: ElementSet,
    rank: usize,
) -> HashSet<u64> {
    subsets_of(keep, rank)
        .into_iter()
        .filter(|&b| !nonbases.contains(&b.union(c).bits()))
        .map(|b| b.bits())
        .collect()
}

/// `H ⪯ M` by trying every independent contraction set of size
/// `r(M) - r(H)`, every kept set of size `|E(H)|`, and every bijection.
pub fn has_minor_brute(m: &SparsePavingMatroid, h: &SparsePavingMatroid) -> bool {
    let (n, r, nh, rh) = (m.n(), m.rank(), h.n(), h.rank());
    if rh > r || nh > n || n - nh < r - rh {
        return false;
    }
    let h_bases: HashSet<u64> = k_subsets(nh, rh)
        .into_iter()
        .filter(|b| !h.nonbases().contains(b))
        .map(|b| b.bits())
        .collect();
    let h_ground = ElementSet::full(nh).to_vec();
    let nonbases: HashSet<u64> = m.nonbases().iter().map(|c| c.bits()).collect();
    for c in k_subsets(n, r - rh) {
        if nonbases.contains(&c.bits()) {
            continue;
        }
        let rest = ElementSet::full(n).difference(c);
        for keep in subsets_of(rest, nh) {
            let bases = minor_bases(&nonbases, c, keep, rh);
            if bases.len() != h_bases.len() {
                continue;
            }
            let kept = keep.to_vec();
            let found = injections(nh, nh, &mut |perm| {
                let image: Vec<u32> = perm.iter().map(|&i| kept[i]).collect();
                h_bases.iter().all(|&b| {
                    bases.contains(&map_set(ElementSet::from_bits(b), &h_ground, &image).bits())
                })
            });
            if found {
                return true;
            }
        }
    }
    false
}

/// Whether every `k`-subset of `x` gets its own colour.
pub fn distinct_colours(x: ElementSet, k: usize, colour: impl Fn(ElementSet) -> u64) -> bool {
    let mut seen = HashSet::new();
    subsets_of(x, k).into_iter().all(|s| seen.insert(colour(s)))
}
