mod common;

use cycle_regions::arrangement::{build_arrangement, region_count_traversal};
use cycle_regions::embedding::{default_epsilon, perturb, CycleEmbedding};
use cycle_regions::formulas::f_max;
use cycle_regions::geometry::{
    int, orientation, ratio, segment_intersection, IntersectionResult, Orientation, Point, Rational,
    Segment,
};
use cycle_regions::search::{crossing_count_convex, random_embedding, realize_convex, CyclicPermutation};
use proptest::prelude::*;

fn small_point() -> impl Strategy<Value = Point> {
    (-8i64..=8, -8i64..=8).prop_map(|(x, y)| Point::from_ints(x, y))
}

fn small_segment() -> impl Strategy<Value = Segment> {
    (small_point(), small_point())
        .prop_filter("distinct endpoints", |(a, b)| a != b)
        .prop_map(|(a, b)| Segment::new(a, b, 0).unwrap())
}

fn scale_point(p: &Point, k: &Rational) -> Point {
    Point::new(&p.x * k, &p.y * k)
}

fn scale_result(r: &IntersectionResult, k: &Rational) -> IntersectionResult {
    match r {
        IntersectionResult::ProperCrossing(p) => IntersectionResult::ProperCrossing(scale_point(p, k)),
        IntersectionResult::EndpointTouch(p) => IntersectionResult::EndpointTouch(scale_point(p, k)),
        other => other.clone(),
    }
}

/// Rotation by the angle with cosine 3/5 and sine 4/5, then a translation.
fn rigid_motion(p: &Point) -> Point {
    let (c, s) = (ratio(3, 5), ratio(4, 5));
    Point::new(
        &c * &p.x - &s * &p.y + ratio(7, 3),
        &s * &p.x + &c * &p.y - int(11),
    )
}

proptest! {
    #[test]
    fn orientation_antisymmetric(p in small_point(), q in small_point(), r in small_point()) {
        let o = orientation(&p, &q, &r);
        prop_assert_eq!(orientation(&q, &p, &r), o.reversed());
        prop_assert_eq!(orientation(&p, &r, &q), o.reversed());
        prop_assert_eq!(orientation(&r, &q, &p), o.reversed());
        prop_assert_eq!(orientation(&q, &r, &p), o);
    }

    #[test]
    fn intersection_symmetric(s1 in small_segment(), s2 in small_segment()) {
        prop_assert_eq!(segment_intersection(&s1, &s2), segment_intersection(&s2, &s1));
    }

    #[test]
    fn intersection_point_lies_on_both(s1 in small_segment(), s2 in small_segment()) {
        match segment_intersection(&s1, &s2) {
            IntersectionResult::ProperCrossing(p) => {
                prop_assert_eq!(orientation(&s1.a, &s1.b, &p), Orientation::Collinear);
                prop_assert_eq!(orientation(&s2.a, &s2.b, &p), Orientation::Collinear);
                prop_assert!(!s1.has_endpoint(&p) && !s2.has_endpoint(&p));
            }
            IntersectionResult::EndpointTouch(p) => {
                prop_assert!(s1.contains(&p) && s2.contains(&p));
                prop_assert!(s1.has_endpoint(&p) || s2.has_endpoint(&p));
            }
            _ => {}
        }
    }

    #[test]
    fn intersection_commutes_with_scaling(
        s1 in small_segment(),
        s2 in small_segment(),
        num in 1i64..50,
        den in 1i64..50,
    ) {
        let k = ratio(num, den);
        let scale = |s: &Segment| Segment::new(scale_point(&s.a, &k), scale_point(&s.b, &k), s.cycle_index).unwrap();
        prop_assert_eq!(
            segment_intersection(&scale(&s1), &scale(&s2)),
            scale_result(&segment_intersection(&s1, &s2), &k)
        );
    }

    #[test]
    fn embedding_file_round_trip(coords in prop::collection::vec((-1000i64..1000, 1i64..1000, -1000i64..1000, 1i64..1000), 3..12)) {
        let corners: Vec<Point> = coords.iter().map(|&(a, b, c, d)| Point::new(ratio(a, b), ratio(c, d))).collect();
        if let Ok(emb) = CycleEmbedding::new(corners) {
            let text = emb.to_file_string();
            let back = CycleEmbedding::from_file_str(&text).unwrap();
            prop_assert_eq!(back.to_file_string(), text);
            prop_assert_eq!(back, emb);
        }
    }

    #[test]
    fn crossing_count_dihedral_invariant(n in 3usize..10, seed in any::<u64>(), shift in 0usize..10) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let base = crossing_count_convex(&CyclicPermutation::new(order.clone()).unwrap());
        let mut rotated = order.clone();
        rotated.rotate_left(shift % n);
        let mut reflected = order.clone();
        reflected.reverse();
        // Relabelling the hull points by a rotation keeps every interleaving.
        let relabelled: Vec<usize> = order.iter().map(|v| (v + shift) % n).collect();
        prop_assert_eq!(crossing_count_convex(&CyclicPermutation::new(rotated).unwrap()), base);
        prop_assert_eq!(crossing_count_convex(&CyclicPermutation::new(reflected).unwrap()), base);
        prop_assert_eq!(crossing_count_convex(&CyclicPermutation::new(relabelled).unwrap()), base);
        prop_assert!(base < f_max(n as u64).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counters_agree_on_random_embeddings(n in 3usize..10, seed in any::<u64>()) {
        let emb = random_embedding(n, seed, 0);
        let arr = build_arrangement(&emb).unwrap();
        prop_assert_eq!(arr.face_count(), region_count_traversal(&emb).unwrap());
        prop_assert!(arr.face_count() <= f_max(n as u64).unwrap());
        // Every vertex lies on exactly two segments.
        let on_segments: usize = arr.per_segment().iter().map(|t| t.vertices).sum();
        prop_assert_eq!(on_segments as u64, 2 * arr.vertex_count());
        let edges: usize = arr.per_segment().iter().map(|t| t.edges).sum();
        prop_assert_eq!(edges as u64, arr.edge_count());
        prop_assert_eq!(arr.face_count(), arr.crossing_count() + 1);
    }

    #[test]
    fn regions_invariant_under_similarity(n in 3usize..9, seed in any::<u64>(), k in 1i64..40) {
        let emb = random_embedding(n, seed, 1);
        let f = build_arrangement(&emb).unwrap().face_count();
        let scaled = emb.map_corners(|p| scale_point(p, &ratio(k, 7))).unwrap();
        let moved = emb.map_corners(rigid_motion).unwrap();
        prop_assert_eq!(build_arrangement(&scaled).unwrap().face_count(), f);
        prop_assert_eq!(build_arrangement(&moved).unwrap().face_count(), f);
        prop_assert_eq!(region_count_traversal(&moved).unwrap(), f);
    }

    #[test]
    fn perturb_is_deterministic(n in 3usize..8, seed in any::<u64>(), pseed in any::<u64>()) {
        let emb = random_embedding(n, seed, 2);
        let eps = default_epsilon(&int(1));
        prop_assert_eq!(perturb(&emb, &eps, pseed).unwrap(), perturb(&emb, &eps, pseed).unwrap());
    }

    #[test]
    fn convex_crossings_match_geometry(n in 3usize..10, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let perm = CyclicPermutation::new(order).unwrap();
        let emb = realize_convex(&perm, seed).unwrap();
        prop_assert_eq!(
            build_arrangement(&emb).unwrap().face_count(),
            crossing_count_convex(&perm) + 1
        );
    }
}

/// Spot check of the combinatorial/geometric agreement on 100 seeded orders per n.
#[test]
fn seeded_realization_sample() {
    use rand::{seq::SliceRandom, SeedableRng};
    for n in 4..=9usize {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..100 {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let perm = CyclicPermutation::new(order).unwrap();
            let emb = realize_convex(&perm, 0).unwrap();
            assert_eq!(
                build_arrangement(&emb).unwrap().face_count(),
                crossing_count_convex(&perm) + 1,
                "{perm}"
            );
        }
    }
}

#[test]
fn injected_triple_point_is_degenerate() {
    let emb = cycle_regions::embedding::construct_even(8).unwrap();
    let (bad, moved) = common::inject_triple_point(&emb);
    assert!(common::to_f64(&moved) > 0.0);
    assert!(build_arrangement(&bad).is_err());
}
