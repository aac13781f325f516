//! Straight-line embeddings of cycle graphs and the two optimal constructions.
//!
//! Corners are indexed from 0 in cycle order: segment `i` joins `corners[i]` to
//! `corners[(i + 1) % n]`. Construction labels are also 0-based, so the
//! 1-based corner `c` of the usual presentation is label `c - 1` here.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{self, Classification};
use crate::formulas::{self, InvalidN};
use crate::geometry::{
    format_rational, parse_rational, ratio, segment_intersection, GeometryError,
    IntersectionResult, Point, Rational, Segment,
};

/// Decimal digits kept when rounding polygon vertices.
pub const DEFAULT_DIGITS: u32 = 8;
/// Retry bound for [`perturb`].
pub const PERTURB_RETRIES: u64 = 64;

/// Perturbation offsets are multiples of `epsilon / OFFSET_DENOMINATOR`.
const OFFSET_DENOMINATOR: i64 = 1 << 21;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    InvalidN(#[from] InvalidN),
    #[error("a cycle embedding needs at least 3 corners, got {0}")]
    TooFewCorners(usize),
    #[error("corners {0} and {1} are adjacent and coincide")]
    ZeroLengthSegment(usize, usize),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("segment set does not form a single Hamiltonian cycle on {0} corners")]
    ConstructionNotACycle(usize),
    #[error("no general-position perturbation found after {0} attempts")]
    PerturbationFailed(u64),
    #[error("no placement of the even construction for n={0} reached the optimum")]
    NoOptimalPlacement(usize),
    #[error("malformed embedding file: {0}")]
    Parse(String),
}

/// N corner points in cycle order.
///
/// Construction only rejects zero-length segments; general position is a
/// separate check ([`validate_general_position`]) so that degenerate inputs can
/// still be loaded and reported on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleEmbedding {
    corners: Vec<Point>,
}

impl CycleEmbedding {
    pub fn new(corners: Vec<Point>) -> Result<Self, EmbeddingError> {
        let n = corners.len();
        if n < 3 {
            return Err(EmbeddingError::TooFewCorners(n));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if corners[i] == corners[j] {
                return Err(EmbeddingError::ZeroLengthSegment(i.min(j), i.max(j)));
            }
        }
        Ok(CycleEmbedding { corners })
    }

    pub fn n(&self) -> usize {
        self.corners.len()
    }

    pub fn corners(&self) -> &[Point] {
        &self.corners
    }

    pub fn segment(&self, i: usize) -> Segment {
        let n = self.n();
        Segment {
            a: self.corners[i].clone(),
            b: self.corners[(i + 1) % n].clone(),
            cycle_index: i,
        }
    }

    pub fn segments(&self) -> Vec<Segment> {
        (0..self.n()).map(|i| self.segment(i)).collect()
    }

    /// Whether segments `i` and `j` share a corner.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.n();
        i != j && ((i + 1) % n == j || (j + 1) % n == i)
    }

    pub fn map_corners(&self, f: impl Fn(&Point) -> Point) -> Result<Self, EmbeddingError> {
        CycleEmbedding::new(self.corners.iter().map(f).collect())
    }

    /// Serializes to the JSON embedding file format.
    pub fn to_file_string(&self) -> String {
        let file = EmbeddingFile {
            n: self.n(),
            corners: self
                .corners
                .iter()
                .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("string-only document");
        text.push('\n');
        text
    }

    pub fn from_file_str(text: &str) -> Result<Self, EmbeddingError> {
        let file: EmbeddingFile =
            serde_json::from_str(text).map_err(|e| EmbeddingError::Parse(e.to_string()))?;
        if file.n != file.corners.len() {
            return Err(EmbeddingError::Parse(format!(
                "n is {} but {} corners are listed",
                file.n,
                file.corners.len()
            )));
        }
        let coord = |s: &str| {
            parse_rational(s)
                .ok_or_else(|| EmbeddingError::Parse(format!("bad coordinate {s:?}, expected p/q")))
        };
        let corners = file
            .corners
            .iter()
            .map(|[x, y]| Ok(Point::new(coord(x)?, coord(y)?)))
            .collect::<Result<Vec<_>, EmbeddingError>>()?;
        CycleEmbedding::new(corners)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingFile {
    n: usize,
    corners: Vec<[String; 2]>,
}

/// Every way an embedding departs from general position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegeneracyReport {
    /// Points shared by three or more segments, with the segments through them.
    pub triple_points: Vec<(Point, Vec<usize>)>,
    /// (corner, segment) pairs where the corner lies on a segment not incident to it.
    pub corner_incidences: Vec<(usize, usize)>,
    pub collinear_overlaps: Vec<(usize, usize)>,
    pub coincident_corners: Vec<(usize, usize)>,
}

impl DegeneracyReport {
    pub fn is_empty(&self) -> bool {
        self.triple_points.is_empty()
            && self.corner_incidences.is_empty()
            && self.collinear_overlaps.is_empty()
            && self.coincident_corners.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} triple point(s), {} corner incidence(s), {} collinear overlap(s), {} coincident corner pair(s)",
            self.triple_points.len(),
            self.corner_incidences.len(),
            self.collinear_overlaps.len(),
            self.coincident_corners.len()
        )
    }
}

pub fn validate_general_position(emb: &CycleEmbedding) -> DegeneracyReport {
    let n = emb.n();
    let segments = emb.segments();
    let mut report = DegeneracyReport::default();

    for i in 0..n {
        for j in i + 1..n {
            if emb.corners[i] == emb.corners[j] {
                report.coincident_corners.push((i, j));
            }
        }
    }

    for (c, corner) in emb.corners.iter().enumerate() {
        let incident = [c, (c + n - 1) % n];
        for s in &segments {
            if !incident.contains(&s.cycle_index) && s.contains(corner) {
                report.corner_incidences.push((c, s.cycle_index));
            }
        }
    }

    let mut through: BTreeMap<Point, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            match segment_intersection(&segments[i], &segments[j]) {
                IntersectionResult::CollinearOverlap => report.collinear_overlaps.push((i, j)),
                IntersectionResult::ProperCrossing(p) | IntersectionResult::EndpointTouch(p) => {
                    let set = through.entry(p).or_default();
                    set.insert(i);
                    set.insert(j);
                }
                IntersectionResult::Disjoint => {}
            }
        }
    }
    report.triple_points = through
        .into_iter()
        .filter(|(_, segs)| segs.len() >= 3)
        .map(|(p, segs)| (p, segs.into_iter().collect()))
        .collect();

    report
}

/// Vertices of a regular `k`-gon of circumradius `scale`, starting on the
/// positive x axis and running counter-clockwise. Each cosine and sine is
/// rounded to `digits` decimal places before scaling, so the result is exact
/// rational data.
pub fn regular_polygon_points(
    k: usize,
    scale: &Rational,
    digits: u32,
) -> Result<Vec<Point>, EmbeddingError> {
    if k < 3 {
        return Err(EmbeddingError::InvalidArgument(format!("polygon needs k >= 3, got {k}")));
    }
    // f64 carries ~15 significant digits.
    if !(4..=15).contains(&digits) {
        return Err(EmbeddingError::InvalidArgument(format!(
            "digits must lie in 4..=15, got {digits}"
        )));
    }
    if !scale.is_positive() {
        return Err(EmbeddingError::InvalidArgument("scale must be positive".into()));
    }
    let denom = 10i64.pow(digits);
    let round = |v: f64| {
        let scaled = (v * denom as f64).round() as i64;
        ratio(scaled, denom) * scale
    };
    let points: Vec<Point> = (0..k)
        .map(|j| {
            let theta = TAU * j as f64 / k as f64;
            Point::new(round(theta.cos()), round(theta.sin()))
        })
        .collect();
    let distinct: BTreeSet<&Point> = points.iter().collect();
    if distinct.len() != k {
        return Err(EmbeddingError::InvalidArgument(format!(
            "{digits} digits cannot separate the vertices of a {k}-gon"
        )));
    }
    Ok(points)
}

/// Default perturbation radius: circumradius × 10⁻⁴.
pub fn default_epsilon(circumradius: &Rational) -> Rational {
    circumradius * ratio(1, 10_000)
}

/// Displaces every corner by a seeded offset of length at most `epsilon`,
/// retrying with fresh offsets until the result is in general position.
///
/// Attempt `t` draws from a ChaCha stream keyed by `(seed, t)`, so the output
/// depends only on the arguments.
pub fn perturb(
    emb: &CycleEmbedding,
    epsilon: &Rational,
    seed: u64,
) -> Result<CycleEmbedding, EmbeddingError> {
    if !epsilon.is_positive() {
        return Err(EmbeddingError::InvalidArgument("epsilon must be positive".into()));
    }
    let step = epsilon / Rational::from_integer(BigInt::from(OFFSET_DENOMINATOR));
    // Each component stays within epsilon/2, so the offset length is below epsilon.
    let half_range = OFFSET_DENOMINATOR / 2;
    for attempt in 0..PERTURB_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        let moved: Vec<Point> = emb
            .corners
            .iter()
            .map(|c| {
                let dx = rng.gen_range(-half_range..=half_range);
                let dy = rng.gen_range(-half_range..=half_range);
                Point::new(
                    &c.x + &step * Rational::from_integer(dx.into()),
                    &c.y + &step * Rational::from_integer(dy.into()),
                )
            })
            .collect();
        if let Ok(candidate) = CycleEmbedding::new(moved) {
            if validate_general_position(&candidate).is_empty() {
                return Ok(candidate);
            }
        }
    }
    Err(EmbeddingError::PerturbationFailed(PERTURB_RETRIES))
}

/// Returns `emb` unchanged when it is already in general position, otherwise
/// [`perturb`]s it with the default epsilon for a unit circumradius.
pub fn ensure_general_position(
    emb: CycleEmbedding,
    seed: u64,
) -> Result<CycleEmbedding, EmbeddingError> {
    if validate_general_position(&emb).is_empty() {
        Ok(emb)
    } else {
        perturb(&emb, &default_epsilon(&Rational::from_integer(1.into())), seed)
    }
}

/// The star construction for odd `n` with seed 0.
pub fn construct_odd(n: usize) -> Result<CycleEmbedding, EmbeddingError> {
    construct_odd_seeded(n, 0)
}

/// Odd `n`: label `c` is joined to `c + (n-1)/2 mod n`, on a regular n-gon.
/// Every segment of the result crosses every other one.
///
/// `seed` only matters if the rounded polygon happens to be degenerate.
pub fn construct_odd_seeded(n: usize, seed: u64) -> Result<CycleEmbedding, EmbeddingError> {
    formulas::ParityCase::new(n as u64)?;
    if n % 2 == 0 {
        return Err(EmbeddingError::InvalidArgument(format!("construct_odd needs odd n, got {n}")));
    }
    let polygon = regular_polygon_points(n, &Rational::from_integer(1.into()), DEFAULT_DIGITS)?;
    let step = (n - 1) / 2;
    let corners = (0..n).map(|i| polygon[(i * step) % n].clone()).collect();
    ensure_general_position(CycleEmbedding::new(corners)?, seed)
}

/// Segment set of the even construction, as unordered label pairs: every
/// label `c` joined to `c + (n-2)/2 mod n`, then `(0, n/2-1)` and `(n/2, n-1)`
/// swapped for the crossing pair `(0, n/2)` and `(n/2-1, n-1)`.
pub fn even_segment_set(n: usize) -> Vec<(usize, usize)> {
    let half = n / 2;
    let step = half - 1;
    let normalize = |a: usize, b: usize| (a.min(b), a.max(b));
    let removed = [normalize(0, half - 1), normalize(half, n - 1)];
    let mut set: Vec<(usize, usize)> = (0..n)
        .map(|c| normalize(c, (c + step) % n))
        .filter(|pair| !removed.contains(pair))
        .collect();
    set.push(normalize(0, half));
    set.push(normalize(half - 1, n - 1));
    set
}

/// Walks a segment set as a cycle starting at label 0, stepping first to the
/// smaller neighbour. Fails unless the set is one Hamiltonian cycle.
pub fn cycle_order(n: usize, segments: &[(usize, usize)]) -> Result<Vec<usize>, EmbeddingError> {
    let not_a_cycle = || EmbeddingError::ConstructionNotACycle(n);
    if segments.len() != n {
        return Err(not_a_cycle());
    }
    let mut neighbours = vec![Vec::with_capacity(2); n];
    for &(a, b) in segments {
        if a >= n || b >= n || a == b {
            return Err(not_a_cycle());
        }
        neighbours[a].push(b);
        neighbours[b].push(a);
    }
    if neighbours.iter().any(|nb| nb.len() != 2 || nb[0] == nb[1]) {
        return Err(not_a_cycle());
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let (mut prev, mut cur) = (usize::MAX, 0);
    while !seen[cur] {
        seen[cur] = true;
        order.push(cur);
        let nb = &neighbours[cur];
        let next = if prev == usize::MAX {
            nb[0].min(nb[1])
        } else if nb[0] == prev {
            nb[1]
        } else {
            nb[0]
        };
        prev = cur;
        cur = next;
    }
    if order.len() != n || cur != 0 {
        return Err(not_a_cycle());
    }
    Ok(order)
}

/// The two-splitter construction for even `n` with seed 0.
pub fn construct_even(n: usize) -> Result<CycleEmbedding, EmbeddingError> {
    construct_even_seeded(n, 0)
}

/// Even `n`: the segments of [`even_segment_set`] with corners on `n` of the
/// `n + 1` vertices of a regular polygon.
///
/// The empty polygon vertex first sits between labels `n-1` and `0`, the
/// outer endpoints of the two crossing segments. Should that placement not
/// reach the optimum after perturbation, the labels are rotated against the
/// empty vertex one step at a time.
pub fn construct_even_seeded(n: usize, seed: u64) -> Result<CycleEmbedding, EmbeddingError> {
    let target = formulas::f_max(n as u64)?;
    for shift in 0..n {
        let Ok(emb) = ensure_general_position(place_even(n, shift)?, seed) else {
            continue;
        };
        if is_optimal_even(&emb, target) {
            return Ok(emb);
        }
    }
    Err(EmbeddingError::NoOptimalPlacement(n))
}

/// The even construction before any perturbation. Label `(v + shift) mod n`
/// sits on vertex `v` of a regular `(n + 1)`-gon; vertex `n` stays empty, so
/// with `shift == 0` the gap lies between labels `n-1` and `0`.
pub fn place_even(n: usize, shift: usize) -> Result<CycleEmbedding, EmbeddingError> {
    formulas::ParityCase::new(n as u64)?;
    if n % 2 == 1 {
        return Err(EmbeddingError::InvalidArgument(format!(
            "the even construction needs even n, got {n}"
        )));
    }
    let order = cycle_order(n, &even_segment_set(n))?;
    let polygon = regular_polygon_points(n + 1, &Rational::from_integer(1.into()), DEFAULT_DIGITS)?;
    let mut position = vec![0; n];
    for v in 0..n {
        position[(v + shift) % n] = v;
    }
    CycleEmbedding::new(order.iter().map(|&label| polygon[position[label]].clone()).collect())
}

fn is_optimal_even(emb: &CycleEmbedding, target: u64) -> bool {
    let Ok(arr) = arrangement::build_arrangement(emb) else {
        return false;
    };
    let Ok(splitters) = arrangement::splitter_analysis(emb) else {
        return false;
    };
    arr.face_count() == target
        && splitters.count(Classification::Splitter) == 2
        && splitters.count(Classification::OneOffSplitter) == emb.n() - 2
}

/// Dispatches to the odd or even construction.
pub fn construct(n: usize, seed: u64) -> Result<CycleEmbedding, EmbeddingError> {
    formulas::ParityCase::new(n as u64)?;
    if n % 2 == 1 {
        construct_odd_seeded(n, seed)
    } else {
        construct_even_seeded(n, seed)
    }
}

/// Builds an embedding from the plain integer coordinates, mostly for tests.
pub fn from_int_corners(corners: &[(i64, i64)]) -> Result<CycleEmbedding, EmbeddingError> {
    CycleEmbedding::new(corners.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
}

impl From<GeometryError> for EmbeddingError {
    fn from(e: GeometryError) -> Self {
        EmbeddingError::InvalidArgument(e.to_string())
    }
}
