//! The experiments behind the `sparsepave` subcommands.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::Pow;
use rayon::prelude::*;

use super::record::{parse_csv, CensusRecord, Value};
use crate::error::{Error, Result};
use crate::johnson::{
    byskov_bound, count_sparse_paving, count_sparse_paving_rank, derive_seed,
    exceeds_graham_sloane, greedy_extension_mask, is_stable, local_lym_holds, max_stable_bound,
    maximum_extension_size, rng_from_seed, steiner_triple_system_7, DenseJohnson,
    SparsePavingCounts, SparsePavingSampler, StableSets, VertexMask,
};
use crate::matroid::SparsePavingMatroid;
use crate::minors::{find_clean_copy_minor, has_minor_with_budget};
use crate::subset::{binomial, ElementSet};
use crate::verify_matroid_axioms;

/// Largest `n` the exhaustive verification suite accepts.
pub const VERIFY_MAX_N: usize = 7;

/// Node budget for exact maximal-extension sizes in [`nonbasis_bound`].
pub const EXTENSION_NODES: u64 = 200_000;

/// A deliberately broken bound, used to check that verification notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Drops the `k - α` exponent of the Byskov bound to zero.
    Byskov,
}

fn checked_byskov(vertices: u64, k: u64, fault: Option<Fault>) -> BigUint {
    match fault {
        Some(Fault::Byskov) => {
            let alpha = vertices % k;
            Pow::pow(BigUint::from(vertices / k + 1), alpha as u32)
        }
        None => byskov_bound(vertices, k),
    }
}

/// Result of [`verify`]: the per-check table and the failed checks.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOutcome {
    pub record: CensusRecord,
    pub failures: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checks {
    record: CensusRecord,
    failures: Vec<String>,
}

impl Checks {
    fn add(&mut self, name: &str, n: usize, r: Option<usize>, holds: bool, detail: String) {
        let r_value: Value = match r {
            Some(r) => r.into(),
            None => "all".into(),
        };
        if !holds {
            let at = match r {
                Some(r) => format!("n={n} r={r}"),
                None => format!("n={n}"),
            };
            self.failures.push(format!("{name} {at}: {detail}"));
        }
        self.record.push(vec![
            name.into(),
            n.into(),
            r_value,
            holds.into(),
            detail.into(),
        ]);
    }
}

/// Power-set count of stable sets, for graphs of at most 20 vertices.
fn naive_stable_count(graph: &DenseJohnson) -> Option<u128> {
    let v = graph.vertex_count();
    (v <= 20).then(|| {
        (0u128..1 << v)
            .filter(|&m| graph.is_stable_mask(VertexMask(m)))
            .count() as u128
    })
}

fn verify_rank(n: usize, r: usize, fault: Option<Fault>, checks: &mut Checks) -> Result<()> {
    let graph = DenseJohnson::new(n, r)?;
    let vertices = graph.vertex_count();
    let bound = max_stable_bound(n as u64, r as u64);
    let mut largest = 0usize;
    let mut stable_count = 0u128;
    let mut bad_matroid = None;
    let mut bad_lym = None;
    let mut hist = vec![0u128; vertices + 1];
    for mask in StableSets::new(&graph, None) {
        stable_count += 1;
        largest = largest.max(mask.len());
        if graph.is_maximal_stable(mask) {
            hist[mask.len()] += 1;
        }
        let family = graph.decode(mask);
        if (family.len() as u128) < vertices as u128 || vertices == 0 {
            let ok = SparsePavingMatroid::new(n, r, family.iter().copied())
                .map(|m| verify_matroid_axioms(&m.bases()))
                .unwrap_or(false);
            if !ok && bad_matroid.is_none() {
                bad_matroid = Some(family.clone());
            }
        }
        if r >= 1 && !local_lym_holds(n, r, &family) && bad_lym.is_none() {
            bad_lym = Some(family);
        }
    }

    let mut rejected = true;
    for i in 0..vertices {
        for j in graph.neighbors(i).indices().filter(|&j| j > i) {
            rejected &= SparsePavingMatroid::new(n, r, [graph.vertex(i), graph.vertex(j)]).is_err();
        }
    }
    checks.add(
        "axioms",
        n,
        Some(r),
        bad_matroid.is_none() && rejected,
        match &bad_matroid {
            Some(f) => format!("stable family {f:?} fails basis exchange"),
            None if !rejected => "an adjacent pair was accepted".into(),
            None => format!("{stable_count} stable sets"),
        },
    );

    let naive = naive_stable_count(&graph);
    checks.add(
        "counts",
        n,
        Some(r),
        naive.is_none_or(|c| c == stable_count),
        match naive {
            Some(c) => format!("dfs {stable_count} naive {c}"),
            None => format!("dfs {stable_count}"),
        },
    );

    // J(n, 0) is a single vertex and the counting bound needs r >= 1
    if r >= 1 {
        checks.add(
            "max-stable",
            n,
            Some(r),
            Ratio::from_integer(largest as u128) <= bound,
            format!("largest {largest} bound {bound}"),
        );
    }

    let mut byskov_ok = true;
    let mut worst = String::new();
    for (k, &count) in hist.iter().enumerate().skip(1) {
        if count == 0 {
            continue;
        }
        let b = checked_byskov(vertices as u64, k as u64, fault);
        if BigUint::from(count) > b {
            byskov_ok = false;
            worst = format!("{count} maximal stable sets of size {k} exceed {b}");
            break;
        }
    }
    let maximal: u128 = hist.iter().sum();
    checks.add(
        "byskov",
        n,
        Some(r),
        byskov_ok,
        if byskov_ok {
            format!("{maximal} maximal stable sets")
        } else {
            worst
        },
    );

    checks.add(
        "local-lym",
        n,
        Some(r),
        bad_lym.is_none(),
        match bad_lym {
            Some(f) => format!("fails on {f:?}"),
            None => "all stable families".into(),
        },
    );

    if (n, r) == (7, 3) {
        let sts = steiner_triple_system_7();
        let ok = is_stable(&sts) && Ratio::from_integer(sts.len() as u128) == bound && largest == 7;
        checks.add("steiner", n, Some(r), ok, format!("{} blocks", sts.len()));
    }
    Ok(())
}

/// Runs the exhaustive invariant suite for every `n <= n_max` and every rank.
pub fn verify(n_max: usize, fault: Option<Fault>) -> Result<VerifyOutcome> {
    if n_max > VERIFY_MAX_N {
        return Err(Error::BudgetExceeded(format!(
            "verification is exhaustive and capped at n = {VERIFY_MAX_N}"
        )));
    }
    let mut checks = Checks {
        record: CensusRecord::new("verify", &["check", "n", "r", "holds", "detail"])
            .param("n_max", n_max),
        failures: Vec::new(),
    };
    for n in 0..=n_max {
        for r in 0..=n {
            verify_rank(n, r, fault, &mut checks)?;
        }
        if n >= 2 {
            let total = count_sparse_paving(n)?.total;
            checks.add(
                "graham-sloane",
                n,
                None,
                exceeds_graham_sloane(n as u64, total),
                format!("s_n = {total}"),
            );
        }
    }
    Ok(VerifyOutcome {
        record: checks.record,
        failures: checks.failures,
    })
}

/// `s_{n,r}` for every rank, then `s_n` on a row with rank `all`.
pub fn count(n: usize) -> Result<CensusRecord> {
    let counts = count_sparse_paving(n)?;
    let mut rec = CensusRecord::new("count", &["n", "r", "count"]).param("n", n);
    for (r, &c) in counts.by_rank.iter().enumerate() {
        rec.push(vec![n.into(), r.into(), c.into()]);
    }
    rec.push(vec![n.into(), "all".into(), counts.total.into()]);
    Ok(rec)
}

/// The single row `s_{n,r}`.
pub fn count_rank(n: usize, r: usize) -> Result<CensusRecord> {
    if r > n {
        return Err(Error::RankTooLarge { n, rank: r });
    }
    let c = count_sparse_paving_rank(n, r)?;
    let mut rec = CensusRecord::new("count", &["n", "r", "count"])
        .param("n", n)
        .param("r", r);
    rec.push(vec![n.into(), r.into(), c.into()]);
    Ok(rec)
}

/// Reads a `count` CSV report back.
pub fn counts_from_csv(text: &str) -> Result<SparsePavingCounts> {
    let rows = parse_csv(text)?;
    let bad = |line: usize, message: &str| Error::Parse {
        line,
        message: message.to_string(),
    };
    if rows.first().map(|h| h.as_slice()) != Some(&["n", "r", "count"].map(String::from)[..]) {
        return Err(bad(1, "expected header `n,r,count`"));
    }
    let mut n = None;
    let mut by_rank = Vec::new();
    let mut total = None;
    for (i, row) in rows.iter().enumerate().skip(1) {
        let line = i + 1;
        let [rn, rr, rc] = row.as_slice() else {
            return Err(bad(line, "expected three fields"));
        };
        let this_n: usize = rn.parse().map_err(|_| bad(line, "bad n"))?;
        if *n.get_or_insert(this_n) != this_n {
            return Err(bad(line, "mixed n"));
        }
        let c: u128 = rc.parse().map_err(|_| bad(line, "bad count"))?;
        if rr == "all" {
            total = Some(c);
        } else if rr.parse::<usize>().ok() == Some(by_rank.len()) {
            by_rank.push(c);
        } else {
            return Err(bad(line, "ranks out of order"));
        }
    }
    let n = n.ok_or_else(|| bad(2, "no rows"))?;
    let total = total.ok_or_else(|| bad(rows.len(), "missing total"))?;
    if by_rank.len() != n + 1 || by_rank.iter().sum::<u128>() != total {
        return Err(bad(rows.len(), "ranks do not add up"));
    }
    Ok(SparsePavingCounts { n, by_rank, total })
}

/// How matroids are tested for the target minor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MinorMode {
    /// The exhaustive oracle.
    #[default]
    Exact,
    /// Clean copies of the target's line structure only.
    Fast,
}

/// The matroids of one census row: all of `S_n` when `samples == 0`,
/// otherwise `samples` draws, draw `i` seeded by `(seed, n, i)`.
pub struct Population {
    sampler: SparsePavingSampler,
    samples: u64,
    seed: u64,
}

impl Population {
    pub fn new(n: usize, samples: u64, seed: u64) -> Result<Self> {
        let sampler = SparsePavingSampler::new(n)?;
        if samples == 0 && !sampler.is_exact() {
            return Err(Error::BudgetExceeded(format!(
                "S_{n} is too large to enumerate; pass --samples"
            )));
        }
        Ok(Population {
            sampler,
            samples,
            seed,
        })
    }

    pub fn exhaustive(&self) -> bool {
        self.samples == 0
    }

    pub fn exact_sampler(&self) -> bool {
        self.sampler.is_exact()
    }

    pub fn len(&self) -> u128 {
        if self.exhaustive() {
            self.sampler.total().expect("exact range")
        } else {
            self.samples.into()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: u128) -> SparsePavingMatroid {
        if self.exhaustive() {
            self.sampler.nth(i).expect("index in range")
        } else {
            let n = self.sampler.n() as u64;
            let mut rng = rng_from_seed(derive_seed(&[self.seed, n, i as u64]));
            self.sampler.sample(&mut rng).matroid
        }
    }

    /// Applies `f` to every member in parallel; results come back in index
    /// order whatever the schedule.
    pub fn map<T: Send>(&self, f: impl Fn(&SparsePavingMatroid) -> T + Sync) -> Vec<T> {
        let len = u64::try_from(self.len()).expect("population fits in u64");
        (0..len)
            .into_par_iter()
            .map(|i| f(&self.get(i.into())))
            .collect()
    }
}

fn rank_profile(n: usize, ranks: impl Iterator<Item = usize>) -> String {
    let mut counts = vec![0u64; n + 1];
    for r in ranks {
        counts[r] += 1;
    }
    counts
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// Parameters of [`minor_census`].
#[derive(Clone, Debug)]
pub struct MinorCensus<'a> {
    pub target: &'a SparsePavingMatroid,
    pub target_name: String,
    pub n_values: &'a [usize],
    pub samples: u64,
    pub seed: u64,
    pub mode: MinorMode,
    pub budget: u128,
}

/// Per `n`: how many matroids of the population have the target as a minor.
pub fn minor_census(p: &MinorCensus<'_>) -> Result<CensusRecord> {
    let mut rec = CensusRecord::new(
        "minor-census",
        &[
            "n",
            "matroids",
            "hits",
            "fraction",
            "exhaustive",
            "exact_sampler",
            "rank_counts",
        ],
    )
    .param("target", &p.target_name)
    .param("samples", p.samples)
    .param(
        "mode",
        if p.mode == MinorMode::Exact {
            "exact"
        } else {
            "fast"
        },
    );
    rec.seed = Some(p.seed);
    for &n in p.n_values {
        let population = Population::new(n, p.samples, p.seed)?;
        let cells = population.map(|m| {
            let hit = match p.mode {
                MinorMode::Exact => {
                    has_minor_with_budget(m, p.target, p.budget).map(|w| w.is_some())
                }
                MinorMode::Fast => Ok(find_clean_copy_minor(m, p.target).is_some()),
            };
            hit.map(|h| (m.rank(), h))
        });
        let cells = cells.into_iter().collect::<Result<Vec<_>>>()?;
        let hits = cells.iter().filter(|c| c.1).count() as u128;
        let total = cells.len() as u128;
        rec.push(vec![
            n.into(),
            total.into(),
            hits.into(),
            Ratio::new(hits, total.max(1)).into(),
            population.exhaustive().into(),
            population.exact_sampler().into(),
            rank_profile(n, cells.iter().map(|c| c.0)).into(),
        ]);
    }
    Ok(rec)
}

/// `|C(M)| / ((1/4n) C(n, r))`.
pub fn nonbasis_ratio(m: &SparsePavingMatroid) -> Ratio<u128> {
    let n = m.n() as u128;
    Ratio::new(
        m.nonbases().len() as u128 * 4 * n,
        binomial(m.n() as u64, m.rank() as u64),
    )
}

struct BoundCell {
    ratio: Ratio<u128>,
    /// `(size, exact)` of the largest stable superset of `C(M)`.
    extension: Option<(usize, bool)>,
    rank: usize,
}

fn extension_size(
    graphs: &[Option<DenseJohnson>],
    m: &SparsePavingMatroid,
) -> Option<(usize, bool)> {
    let graph = graphs[m.rank()].as_ref()?;
    let mask = graph.encode(m.nonbases()).ok()?;
    match maximum_extension_size(graph, mask, EXTENSION_NODES) {
        Ok(size) => Some((size, true)),
        Err(_) => Some((greedy_extension_mask(graph, mask).len(), false)),
    }
}

/// Per `n`: how many matroids have fewer than `C(n,r)/(4n)` non-bases, the
/// mean of `|C(M)|·4n/C(n,r)`, and how many have a stable extension of at
/// least `C(n,r)/((1+ε)2n)` with `ε = 1/10`.
pub fn nonbasis_bound(n_values: &[usize], samples: u64, seed: u64) -> Result<CensusRecord> {
    let mut rec = CensusRecord::new(
        "nonbasis-bound",
        &[
            "n",
            "matroids",
            "below",
            "fraction_below",
            "mean_ratio",
            "extension_evaluated",
            "extension_exact",
            "extension_hits",
            "extension_fraction",
            "exhaustive",
            "exact_sampler",
            "rank_counts",
        ],
    )
    .param("samples", samples)
    .param("epsilon", "1/10");
    rec.seed = Some(seed);
    for &n in n_values {
        let population = Population::new(n, samples, seed)?;
        let graphs: Vec<Option<DenseJohnson>> =
            (0..=n).map(|r| DenseJohnson::new(n, r).ok()).collect();
        let cells = population.map(|m| BoundCell {
            ratio: nonbasis_ratio(m),
            extension: extension_size(&graphs, m),
            rank: m.rank(),
        });
        let total = cells.len() as u128;
        let below = cells
            .iter()
            .filter(|c| c.ratio < Ratio::from_integer(1))
            .count() as u128;
        let sum = cells
            .iter()
            .fold(Ratio::from_integer(0u128), |acc, c| acc + c.ratio);
        let evaluated: Vec<(usize, bool, usize)> = cells
            .iter()
            .filter_map(|c| c.extension.map(|(s, e)| (s, e, c.rank)))
            .collect();
        let hits = evaluated
            .iter()
            .filter(|&&(size, _, r)| {
                size as u128 * 22 * n as u128 >= 10 * binomial(n as u64, r as u64)
            })
            .count() as u128;
        rec.push(vec![
            n.into(),
            total.into(),
            below.into(),
            Ratio::new(below, total.max(1)).into(),
            (sum / Ratio::from_integer(total.max(1))).into(),
            (evaluated.len() as u128).into(),
            (evaluated.iter().filter(|e| e.1).count() as u128).into(),
            hits.into(),
            Ratio::new(hits, (evaluated.len() as u128).max(1)).into(),
            population.exhaustive().into(),
            population.exact_sampler().into(),
            rank_profile(n, cells.iter().map(|c| c.rank)).into(),
        ]);
    }
    Ok(rec)
}

/// Elements as `{1,2,3}` joined by spaces, for report cells.
pub fn format_sets(sets: &[ElementSet]) -> String {
    sets.iter()
        .map(ElementSet::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::uniform;

    #[test]
    fn verify_small() {
        let ok = verify(5, None).unwrap();
        assert!(ok.passed(), "{:?}", ok.failures);
        let vacuous = verify(0, None).unwrap();
        assert!(vacuous.passed());
        let broken = verify(5, Some(Fault::Byskov)).unwrap();
        assert!(broken.failures.iter().any(|f| f.starts_with("byskov")));
        assert!(verify(VERIFY_MAX_N + 1, None).is_err());
    }

    #[test]
    fn count_round_trip() {
        let rec = count(4).unwrap();
        let csv = rec.to_csv();
        assert_eq!(
            csv,
            "n,r,count\n4,0,1\n4,1,5\n4,2,10\n4,3,5\n4,4,1\n4,all,22\n"
        );
        let back = counts_from_csv(&csv).unwrap();
        assert_eq!(back, count_sparse_paving(4).unwrap());
        assert_eq!(count(back.n).unwrap().to_csv(), csv);
        assert!(counts_from_csv("n,r,count\n4,0,1\n").is_err());
    }

    #[test]
    fn census_is_reproducible() {
        let u = uniform(1, 2).unwrap();
        let p = MinorCensus {
            target: &u,
            target_name: "u:1:2".into(),
            n_values: &[4, 5],
            samples: 30,
            seed: 11,
            mode: MinorMode::Exact,
            budget: 1_000_000,
        };
        let a = minor_census(&p).unwrap().to_csv();
        assert_eq!(a, minor_census(&p).unwrap().to_csv());
        let fast = minor_census(&MinorCensus {
            mode: MinorMode::Fast,
            ..p.clone()
        })
        .unwrap();
        assert_eq!(fast.rows.len(), 2);
    }

    #[test]
    fn ratio_scales() {
        let m = SparsePavingMatroid::new(6, 3, [ElementSet::from_bits(0b000111)]).unwrap();
        let m2 = SparsePavingMatroid::new(
            6,
            3,
            [
                ElementSet::from_bits(0b000111),
                ElementSet::from_bits(0b111000),
            ],
        )
        .unwrap();
        assert_eq!(nonbasis_ratio(&m2), nonbasis_ratio(&m) * 2);
        assert_eq!(nonbasis_ratio(&m), Ratio::new(24, 20));
    }
}
