//! Exact planar primitives over arbitrary-precision rationals.
//!
//! Nothing in here touches floating point. Every predicate is decided by the
//! sign of an exact cross or dot product.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact fraction, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("segment endpoints coincide at {0}")]
    ZeroLengthSegment(Box<Point>),
    #[error("point {point} does not lie on segment {segment}")]
    PointNotOnSegment {
        point: Box<Point>,
        segment: Box<Segment>,
    },
}

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`. Panics when `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn sub(&self, other: &Point) -> Vector {
        Vector {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }

    pub fn translate(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Displacement between two points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    pub x: Rational,
    pub y: Rational,
}

impl Vector {
    pub fn cross(&self, other: &Vector) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, k: &Rational) -> Vector {
        Vector {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `true` for directions in the half-plane `y > 0`, plus the positive x axis.
    fn upper_half(&self) -> bool {
        self.y.is_positive() || (self.y.is_zero() && self.x.is_positive())
    }

    /// Counter-clockwise angular order starting from the positive x axis.
    ///
    /// Uses the half-plane split followed by the sign of the cross product,
    /// so no angle is ever materialized.
    pub fn angle_cmp(&self, other: &Vector) -> Ordering {
        match (self.upper_half(), other.upper_half()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => {
                let c = self.cross(other);
                if c.is_positive() {
                    Ordering::Less
                } else if c.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let c = q.sub(p).cross(&r.sub(p));
    if c.is_positive() {
        Orientation::Ccw
    } else if c.is_negative() {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

/// A straight cycle connection from `a` to `b`. `cycle_index` is the position of
/// the segment in its cycle (segment `i` starts at corner `i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
    pub cycle_index: usize,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} {}-{}", self.cycle_index, self.a, self.b)
    }
}

impl Segment {
    pub fn new(a: Point, b: Point, cycle_index: usize) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::ZeroLengthSegment(Box::new(a)));
        }
        Ok(Segment { a, b, cycle_index })
    }

    pub fn direction(&self) -> Vector {
        self.b.sub(&self.a)
    }

    /// Parameter of the orthogonal projection of `p` onto the supporting line,
    /// 0 at `a` and 1 at `b`.
    pub fn parameter_of(&self, p: &Point) -> Rational {
        let d = self.direction();
        p.sub(&self.a).dot(&d) / d.dot(&d)
    }

    /// Closed-segment membership test.
    pub fn contains(&self, p: &Point) -> bool {
        if orientation(&self.a, &self.b, p) != Orientation::Collinear {
            return false;
        }
        let t = self.parameter_of(p);
        !t.is_negative() && t <= Rational::one()
    }

    pub fn has_endpoint(&self, p: &Point) -> bool {
        &self.a == p || &self.b == p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntersectionResult {
    Disjoint,
    /// Single common point strictly inside both segments.
    ProperCrossing(Point),
    /// Single common point that is an endpoint of at least one segment.
    EndpointTouch(Point),
    /// The segments share a sub-segment of positive length.
    CollinearOverlap,
}

impl IntersectionResult {
    pub fn intersects(&self) -> bool {
        !matches!(self, IntersectionResult::Disjoint)
    }

    pub fn point(&self) -> Option<&Point> {
        match self {
            IntersectionResult::ProperCrossing(p) | IntersectionResult::EndpointTouch(p) => Some(p),
            _ => None,
        }
    }
}

pub fn segment_intersection(s1: &Segment, s2: &Segment) -> IntersectionResult {
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);

    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        return collinear_intersection(s1, s2);
    }

    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);

    let strictly_opposite = |u: Orientation, v: Orientation| {
        u != Orientation::Collinear && v != Orientation::Collinear && u != v
    };
    if strictly_opposite(o1, o2) && strictly_opposite(o3, o4) {
        let d1 = s1.direction();
        let d2 = s2.direction();
        let t = s2.a.sub(&s1.a).cross(&d2) / d1.cross(&d2);
        return IntersectionResult::ProperCrossing(s1.a.translate(&d1.scale(&t)));
    }

    // The supporting lines are not identical, so at most one common point
    // exists and it must be one of the endpoints tested below.
    for (o, p, other) in [
        (o1, &s2.a, s1),
        (o2, &s2.b, s1),
        (o3, &s1.a, s2),
        (o4, &s1.b, s2),
    ] {
        if o == Orientation::Collinear && other.contains(p) {
            return IntersectionResult::EndpointTouch(p.clone());
        }
    }
    IntersectionResult::Disjoint
}

fn collinear_intersection(s1: &Segment, s2: &Segment) -> IntersectionResult {
    // Project s2 onto s1's parameterization; both intervals are then 1-D.
    let (mut lo, mut hi) = (s1.parameter_of(&s2.a), s1.parameter_of(&s2.b));
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let start = if lo > zero { lo } else { zero };
    let end = if hi < one { hi } else { one };
    match start.cmp(&end) {
        Ordering::Greater => IntersectionResult::Disjoint,
        Ordering::Less => IntersectionResult::CollinearOverlap,
        Ordering::Equal => {
            let d = s1.direction();
            IntersectionResult::EndpointTouch(s1.a.translate(&d.scale(&start)))
        }
    }
}

/// Orders points lying on `s` from `s.a` towards `s.b`, dropping duplicates.
pub fn sort_points_along(s: &Segment, pts: &[Point]) -> Result<Vec<Point>, GeometryError> {
    let mut keyed = Vec::with_capacity(pts.len());
    for p in pts {
        if !s.contains(p) {
            return Err(GeometryError::PointNotOnSegment {
                point: Box::new(p.clone()),
                segment: Box::new(s.clone()),
            });
        }
        keyed.push((s.parameter_of(p), p.clone()));
    }
    keyed.sort_by(|l, r| l.0.cmp(&r.0));
    keyed.dedup_by(|l, r| l.0 == r.0);
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}

/// Parses the `p/q` text form used by embedding files. The sign, if any, sits
/// on `p`; `q` must be a positive integer. Non-reduced fractions are accepted
/// and normalized.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (num, den) = text.split_once('/')?;
    if den.starts_with(['+', '-']) || num.starts_with('+') {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if !den.is_positive() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Inverse of [`parse_rational`]; always emits both parts, e.g. `3/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering rounded half away from zero to `digits` fractional digits.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let magnitude = rounded.abs();
    let whole = &magnitude / &scale;
    let frac = &magnitude % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>digits$}")
    }
}
