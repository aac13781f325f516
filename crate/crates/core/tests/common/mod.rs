//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use cycle_regions::embedding::CycleEmbedding;
use cycle_regions::geometry::{segment_intersection, IntersectionResult, Point, Rational};

/// Proper crossings of `emb` with the two segments through each.
pub fn crossings(emb: &CycleEmbedding) -> Vec<(Point, usize, usize)> {
    let segs = emb.segments();
    let n = emb.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let IntersectionResult::ProperCrossing(p) = segment_intersection(&segs[i], &segs[j]) {
                out.push((p, i, j));
            }
        }
    }
    out
}

/// Moves one corner the smallest distance that makes its outgoing segment pass
/// exactly through an existing crossing of two other segments, producing a
/// triple point. Returns the degenerate embedding and the squared move length.
pub fn inject_triple_point(emb: &CycleEmbedding) -> (CycleEmbedding, Rational) {
    let n = emb.n();
    let corners = emb.corners();
    let mut best: Option<(Rational, usize, Point)> = None;
    for (x, i, j) in crossings(emb) {
        for c in 0..n {
            let touched = [c, (c + n - 1) % n];
            if touched.contains(&i) || touched.contains(&j) {
                continue;
            }
            let anchor = &corners[(c + 1) % n];
            let dir = x.sub(anchor);
            let t = corners[c].sub(anchor).dot(&dir) / dir.dot(&dir);
            if t <= Rational::from_integer(1.into()) {
                continue;
            }
            let moved = anchor.translate(&dir.scale(&t));
            let d = moved.sub(&corners[c]);
            let dist2 = d.dot(&d);
            if best.as_ref().is_none_or(|(b, _, _)| &dist2 < b) {
                best = Some((dist2, c, moved));
            }
        }
    }
    let (dist2, c, moved) = best.expect("embedding has crossings");
    let mut new_corners = corners.to_vec();
    new_corners[c] = moved;
    (CycleEmbedding::new(new_corners).unwrap(), dist2)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap()
}
