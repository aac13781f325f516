//! Independent checks on the constructions: an exhaustive search over cyclic
//! orders of points in convex position, a randomized placement search, and an
//! empirical probe of the two-splitter bound for even cycles.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{build_arrangement, splitter_analysis, Classification};
use crate::embedding::{
    self, construct_even, ensure_general_position, perturb, regular_polygon_points,
    validate_general_position, CycleEmbedding, EmbeddingError, DEFAULT_DIGITS,
};
use crate::geometry::{int, ratio, Point};

/// Largest n the exhaustive oracle accepts: 10!/2 orders.
pub const ORACLE_MAX_N: usize = 11;

/// Random placements draw integer coordinates from `0..=GRID_MAX`.
pub const GRID_MAX: i64 = 1_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("n={0} exceeds the exhaustive oracle bound of {ORACLE_MAX_N}")]
    NTooLarge(usize),
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// A cyclic order of `0..n` up to rotation and reflection.
///
/// Stored canonically: starting at 0 and with `order[1] < order[n-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPermutation {
    order: Vec<usize>,
}

impl CyclicPermutation {
    pub fn new(order: Vec<usize>) -> Result<Self, SearchError> {
        let n = order.len();
        if n < 3 {
            return Err(SearchError::InvalidArgument(format!(
                "a cyclic permutation needs at least 3 entries, got {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(SearchError::InvalidArgument(format!(
                    "{order:?} is not a permutation of 0..{n}"
                )));
            }
        }
        let start = order.iter().position(|&v| v == 0).unwrap();
        let mut canonical: Vec<usize> = order[start..].iter().chain(&order[..start]).copied().collect();
        if canonical[1] > canonical[n - 1] {
            canonical[1..].reverse();
        }
        Ok(CyclicPermutation { order: canonical })
    }

    pub fn identity(n: usize) -> Result<Self, SearchError> {
        Self::new((0..n).collect())
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }
}

impl std::fmt::Display for CyclicPermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.order.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Whether chords `(a, b)` and `(c, d)` between labelled points on a circle
/// cross: their endpoints must be distinct and alternate around the circle.
fn chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

fn crossings_of_order(order: &[usize]) -> u64 {
    let n = order.len();
    let chord = |i: usize| (order[i], order[(i + 1) % n]);
    let mut count = 0;
    for i in 0..n {
        for j in i + 2..n {
            // Segments 0 and n-1 share corner order[0].
            if i == 0 && j == n - 1 {
                continue;
            }
            if chords_cross(chord(i), chord(j)) {
                count += 1;
            }
        }
    }
    count
}

/// Number of crossing segment pairs when the corners sit in convex position,
/// labelled `0..n` around the hull, and are visited in `perm` order.
pub fn crossing_count_convex(perm: &CyclicPermutation) -> u64 {
    crossings_of_order(&perm.order)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub n: usize,
    pub max_regions: u64,
    /// Lexicographically smallest canonical order reaching `max_regions`.
    pub witness: CyclicPermutation,
    pub evaluated_count: u64,
}

/// Rearranges `a` into the next permutation in lexicographic order, returning
/// `false` once `a` is the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]).map(|i| i - 1) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Best (crossings, order, evaluated) among canonical orders with `order[1] == second`.
fn best_with_second(n: usize, second: usize) -> Option<(u64, Vec<usize>, u64)> {
    let mut rest: Vec<usize> = (1..n).filter(|&v| v != second).collect();
    let mut order = vec![0; n];
    order[1] = second;
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut evaluated = 0;
    loop {
        // Reflection-minimal: the last entry must exceed the second.
        if *rest.last().unwrap() > second {
            order[2..].copy_from_slice(&rest);
            evaluated += 1;
            let c = crossings_of_order(&order);
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                best = Some((c, order.clone()));
            }
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    best.map(|(c, o)| (c, o, evaluated))
}

/// Exhaustive maximum of `1 + crossings` over every cyclic order of `n`
/// points in convex position.
pub fn oracle_max_regions_convex(n: usize) -> Result<OracleResult, SearchError> {
    if n < 3 {
        return Err(SearchError::InvalidArgument(format!("oracle needs n >= 3, got {n}")));
    }
    if n > ORACLE_MAX_N {
        return Err(SearchError::NTooLarge(n));
    }
    // Each choice of the second entry is an independent, lexicographically
    // ordered block; blocks are merged in order so ties keep the smallest order.
    let blocks: Vec<(u64, Vec<usize>, u64)> = (1..n - 1)
        .into_par_iter()
        .filter_map(|second| best_with_second(n, second))
        .collect();
    let evaluated_count = blocks.iter().map(|b| b.2).sum();
    let (crossings, order, _) = blocks
        .into_iter()
        .reduce(|best, next| if next.0 > best.0 { next } else { best })
        .expect("n >= 3 has at least one canonical order");
    Ok(OracleResult {
        n,
        max_regions: crossings + 1,
        witness: CyclicPermutation::new(order)?,
        evaluated_count,
    })
}

/// Places `perm` on a regular n-gon (perturbed if needed, which keeps the
/// points in convex position and in the same circular order).
pub fn realize_convex(perm: &CyclicPermutation, seed: u64) -> Result<CycleEmbedding, SearchError> {
    let polygon = regular_polygon_points(perm.n(), &int(1), DEFAULT_DIGITS)?;
    let corners = perm.order.iter().map(|&v| polygon[v].clone()).collect();
    Ok(ensure_general_position(CycleEmbedding::new(corners)?, seed)?)
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn random_grid_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    (0..n)
        .map(|_| Point::from_ints(rng.gen_range(0..=GRID_MAX), rng.gen_range(0..=GRID_MAX)))
        .collect()
}

/// A random placement on the integer grid, nudged into general position.
/// Redraws whenever the points cannot be repaired.
fn random_general_position(
    rng: &mut ChaCha8Rng,
    n: usize,
    shuffle: bool,
) -> CycleEmbedding {
    let nudge = ratio(1, 2);
    loop {
        let mut points = random_grid_points(rng, n);
        if shuffle {
            points.shuffle(rng);
        }
        let Ok(emb) = CycleEmbedding::new(points) else {
            continue;
        };
        if validate_general_position(&emb).is_empty() {
            return emb;
        }
        if let Ok(fixed) = perturb(&emb, &nudge, rng.gen()) {
            return fixed;
        }
    }
}

/// A seeded random general-position embedding of an `n`-cycle, as used by
/// [`random_search`]. Deterministic in `(n, seed, trial)`.
pub fn random_embedding(n: usize, seed: u64, trial: u64) -> CycleEmbedding {
    random_general_position(&mut trial_rng(seed, trial), n, false)
}

fn regions(emb: &CycleEmbedding) -> u64 {
    build_arrangement(emb)
        .expect("random placements are repaired into general position")
        .face_count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub regions: u64,
    pub embedding: CycleEmbedding,
    /// Trial that produced the best embedding.
    pub trial: u64,
}

/// Best region count over `trials` random placements. Each trial evaluates the
/// points in drawing order and again in a shuffled cyclic order. Ties go to the
/// earliest trial, and within a trial to the unshuffled placement.
pub fn random_search(n: usize, trials: u64, seed: u64) -> Result<SearchResult, SearchError> {
    if n < 3 {
        return Err(SearchError::InvalidArgument(format!("search needs n >= 3, got {n}")));
    }
    if trials == 0 {
        return Err(SearchError::InvalidArgument("trials must be at least 1".into()));
    }
    let best = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let plain = random_general_position(&mut rng, n, false);
            let shuffled = random_general_position(&mut rng, n, true);
            let (rp, rs) = (regions(&plain), regions(&shuffled));
            let (r, emb) = if rs > rp { (rs, shuffled) } else { (rp, plain) };
            SearchResult {
                regions: r,
                embedding: emb,
                trial,
            }
        })
        .reduce_with(|a, b| {
            if b.regions > a.regions || (b.regions == a.regions && b.trial < a.trial) {
                b
            } else {
                a
            }
        })
        .expect("trials >= 1");
    Ok(best)
}

fn splitter_count(emb: &CycleEmbedding) -> Option<usize> {
    splitter_analysis(emb)
        .ok()
        .map(|r| r.count(Classification::Splitter))
}

/// Largest number of splitters seen on the even construction and on `trials`
/// random embeddings (random grid points in random cyclic order).
pub fn splitter_bound_check(n: usize, trials: u64, seed: u64) -> Result<usize, SearchError> {
    if n < 4 || n % 2 == 1 {
        return Err(SearchError::InvalidArgument(format!(
            "splitter bound check needs even n >= 4, got {n}"
        )));
    }
    let constructed = splitter_count(&construct_even(n)?).unwrap_or(0);
    let random = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            loop {
                let mut points = random_grid_points(&mut rng, n);
                points.shuffle(&mut rng);
                if let Some(count) = CycleEmbedding::new(points).ok().as_ref().and_then(splitter_count) {
                    break count;
                }
            }
        })
        .max()
        .unwrap_or(0);
    Ok(constructed.max(random))
}

/// Splitter count of the odd construction, for comparison with the even bound.
pub fn odd_construction_splitters(n: usize) -> Result<usize, SearchError> {
    let emb = embedding::construct_odd(n)?;
    Ok(splitter_count(&emb).unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::f_max;

    fn perm(v: &[usize]) -> CyclicPermutation {
        CyclicPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(perm(&[2, 3, 0, 1]).order(), &[0, 1, 2, 3]);
        assert_eq!(perm(&[0, 3, 2, 1]).order(), &[0, 1, 2, 3]);
        assert_eq!(perm(&[1, 3, 0, 2]).order(), &[0, 2, 1, 3]);
        assert!(CyclicPermutation::new(vec![0, 1, 1]).is_err());
        assert!(CyclicPermutation::new(vec![0, 1, 3]).is_err());
        assert!(CyclicPermutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(crossing_count_convex(&perm(&[0, 1, 2, 3])), 0);
        assert_eq!(crossing_count_convex(&perm(&[0, 2, 1, 3])), 1);
        assert_eq!(crossing_count_convex(&perm(&[0, 2, 4, 1, 3])), 5);
    }

    #[test]
    fn next_permutation_walks_lexicographically() {
        let mut a = [0, 1, 2];
        let mut seen = vec![a.to_vec()];
        while next_permutation(&mut a) {
            seen.push(a.to_vec());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
        );
    }

    #[test]
    fn oracle_small() {
        let r = oracle_max_regions_convex(3).unwrap();
        assert_eq!((r.max_regions, r.evaluated_count), (1, 1));
        let r = oracle_max_regions_convex(4).unwrap();
        assert_eq!((r.max_regions, r.evaluated_count), (2, 3));
        let r = oracle_max_regions_convex(5).unwrap();
        assert_eq!(r.max_regions, 6);
        assert_eq!(r.witness.order(), &[0, 2, 4, 1, 3]);
        assert_eq!(r.evaluated_count, 12);
    }

    #[test]
    fn oracle_eight() {
        let r = oracle_max_regions_convex(8).unwrap();
        assert_eq!(r.max_regions, f_max(8).unwrap());
        assert_eq!(r.evaluated_count, 5040 / 2);
    }

    #[test]
    fn oracle_bounds() {
        assert!(matches!(oracle_max_regions_convex(12), Err(SearchError::NTooLarge(12))));
        assert!(oracle_max_regions_convex(2).is_err());
    }

    #[test]
    fn witness_realizes_geometrically() {
        for n in 3..=8 {
            let r = oracle_max_regions_convex(n).unwrap();
            let emb = realize_convex(&r.witness, 0).unwrap();
            assert_eq!(regions(&emb), r.max_regions, "n={n}");
        }
    }

    #[test]
    fn random_search_small() {
        assert_eq!(random_search(3, 5, 9).unwrap().regions, 1);
        let r = random_search(4, 200, 1).unwrap();
        assert_eq!(r.regions, 2);
        let r = random_search(5, 100, 1).unwrap();
        assert!(r.regions <= 6);
        assert!(random_search(4, 0, 1).is_err());
    }

    #[test]
    fn random_search_is_deterministic() {
        assert_eq!(random_search(6, 40, 7).unwrap(), random_search(6, 40, 7).unwrap());
    }

    #[test]
    fn splitter_bound_small() {
        assert_eq!(splitter_bound_check(4, 100, 0).unwrap(), 2);
        assert_eq!(splitter_bound_check(6, 1, 0).unwrap(), 2);
        assert!(splitter_bound_check(5, 1, 0).is_err());
        assert_eq!(odd_construction_splitters(9).unwrap(), 9);
    }
}
