//! The planar graph cut out by a cycle embedding, and the two region counters.
//!
//! Vertices are the corners plus every proper crossing; each segment is split
//! into edges at its crossings. Bounded regions are counted once through
//! Euler's relation `F = E - V + 1` and once by walking faces of the rotation
//! system.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use crate::embedding::{validate_general_position, CycleEmbedding, DegeneracyReport};
use crate::geometry::{segment_intersection, sort_points_along, IntersectionResult, Point, Rational};
use num_traits::{Signed, Zero};

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("embedding is not in general position: {}", .0.summary())]
    DegenerateInput(DegeneracyReport),
    #[error("arrangement graph is disconnected")]
    DisconnectedArrangement,
    #[error("face traversal found {0} unbounded faces, expected exactly one")]
    UnboundedFaces(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Corner,
    Crossing,
}

/// Vertex and edge tallies along one segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentTally {
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    vertices: Vec<(Point, VertexKind)>,
    edges: Vec<(usize, usize)>,
    per_segment: Vec<SegmentTally>,
}

impl Arrangement {
    pub fn vertices(&self) -> &[(Point, VertexKind)] {
        &self.vertices
    }

    /// Edges as pairs of indices into [`Arrangement::vertices`].
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn per_segment(&self) -> &[SegmentTally] {
        &self.per_segment
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertices.len() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn crossing_count(&self) -> u64 {
        self.vertices.iter().filter(|(_, k)| *k == VertexKind::Crossing).count() as u64
    }

    /// Bounded region count by Euler's relation.
    pub fn face_count(&self) -> u64 {
        region_count_euler(self)
    }
}

pub fn region_count_euler(arr: &Arrangement) -> u64 {
    arr.edge_count() + 1 - arr.vertex_count()
}

fn require_general_position(emb: &CycleEmbedding) -> Result<(), ArrangementError> {
    let report = validate_general_position(emb);
    if report.is_empty() {
        Ok(())
    } else {
        Err(ArrangementError::DegenerateInput(report))
    }
}

pub fn build_arrangement(emb: &CycleEmbedding) -> Result<Arrangement, ArrangementError> {
    require_general_position(emb)?;
    let n = emb.n();
    let segments = emb.segments();

    // Crossings of segment i with every later non-adjacent segment.
    let crossings: Vec<Vec<(usize, Point)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .filter(|&j| !emb.adjacent(i, j))
                .filter_map(|j| match segment_intersection(&segments[i], &segments[j]) {
                    IntersectionResult::ProperCrossing(p) => Some((j, p)),
                    _ => None,
                })
                .collect()
        })
        .collect();

    let mut on_segment: Vec<Vec<Point>> = vec![Vec::new(); n];
    let mut crossing_points = BTreeMap::new();
    for (i, row) in crossings.into_iter().enumerate() {
        for (j, p) in row {
            on_segment[i].push(p.clone());
            on_segment[j].push(p.clone());
            crossing_points.insert(p, ());
        }
    }

    let mut vertices: Vec<(Point, VertexKind)> =
        emb.corners().iter().map(|c| (c.clone(), VertexKind::Corner)).collect();
    let mut index: BTreeMap<Point, usize> =
        emb.corners().iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    for p in crossing_points.into_keys() {
        index.insert(p.clone(), vertices.len());
        vertices.push((p, VertexKind::Crossing));
    }

    let mut edges = Vec::new();
    let mut per_segment = Vec::with_capacity(n);
    for (s, interior) in segments.iter().zip(on_segment) {
        let mut chain = vec![s.a.clone()];
        chain.extend(sort_points_along(s, &interior).expect("crossing lies on its segment"));
        chain.push(s.b.clone());
        for pair in chain.windows(2) {
            edges.push((index[&pair[0]], index[&pair[1]]));
        }
        per_segment.push(SegmentTally {
            vertices: chain.len(),
            edges: chain.len() - 1,
        });
    }

    let mut components = UnionFind::new(vertices.len());
    for &(u, v) in &edges {
        components.union(u, v);
    }
    let root = components.find(0);
    if (0..vertices.len()).any(|v| components.find(v) != root) {
        return Err(ArrangementError::DisconnectedArrangement);
    }

    Ok(Arrangement {
        vertices,
        edges,
        per_segment,
    })
}

/// Counts bounded faces by tracing every face boundary of the rotation system.
///
/// Outgoing edge-ends at each vertex are sorted counter-clockwise with exact
/// angle comparisons. Following a half-edge `u -> v`, the walk continues with
/// the edge-end at `v` immediately clockwise from `v -> u`, which keeps the
/// face on the left. Bounded faces then have positive signed area and the
/// single unbounded face negative area.
pub fn region_count_traversal(emb: &CycleEmbedding) -> Result<u64, ArrangementError> {
    let arr = build_arrangement(emb)?;
    let points: Vec<&Point> = arr.vertices.iter().map(|(p, _)| p).collect();

    // Half-edge 2k runs along edge k as stored, 2k + 1 the other way.
    let half_edge_count = 2 * arr.edges.len();
    let head = |h: usize| {
        let (u, v) = arr.edges[h / 2];
        if h % 2 == 0 {
            v
        } else {
            u
        }
    };
    let tail = |h: usize| head(h ^ 1);

    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for h in 0..half_edge_count {
        rotation[tail(h)].push(h);
    }
    let mut slot = vec![0; half_edge_count];
    for (v, out) in rotation.iter_mut().enumerate() {
        out.sort_by(|&a, &b| {
            let da = points[head(a)].sub(points[v]);
            let db = points[head(b)].sub(points[v]);
            da.angle_cmp(&db)
        });
        for (k, &h) in out.iter().enumerate() {
            slot[h] = k;
        }
    }

    let mut visited = vec![false; half_edge_count];
    let mut bounded = 0;
    let mut unbounded = 0;
    for start in 0..half_edge_count {
        if visited[start] {
            continue;
        }
        let mut twice_area = Rational::zero();
        let mut h = start;
        while !visited[h] {
            visited[h] = true;
            let (p, q) = (points[tail(h)], points[head(h)]);
            twice_area += &p.x * &q.y - &p.y * &q.x;
            let twin = h ^ 1;
            let around = &rotation[head(h)];
            h = around[(slot[twin] + around.len() - 1) % around.len()];
        }
        if twice_area.is_positive() {
            bounded += 1;
        } else {
            unbounded += 1;
        }
    }
    if unbounded != 1 {
        return Err(ArrangementError::UnboundedFaces(unbounded));
    }
    Ok(bounded)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Meets all `n - 1` other segments.
    Splitter,
    /// Meets all but one.
    OneOffSplitter,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitterEntry {
    /// Other segments met, shared corners included.
    pub intersected_count: usize,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitterReport {
    pub segments: Vec<SplitterEntry>,
}

impl SplitterReport {
    pub fn count(&self, class: Classification) -> usize {
        self.segments.iter().filter(|e| e.classification == class).count()
    }
}

/// Classifies every segment by how many others it meets. Touching at a
/// corner counts, so degenerate embeddings are fine, except for collinear
/// overlaps which are rejected.
pub fn splitter_analysis(emb: &CycleEmbedding) -> Result<SplitterReport, ArrangementError> {
    let n = emb.n();
    let segments = emb.segments();
    let mut counts = vec![0usize; n];
    let mut overlaps = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match segment_intersection(&segments[i], &segments[j]) {
                IntersectionResult::Disjoint => {}
                IntersectionResult::CollinearOverlap => overlaps.push((i, j)),
                _ => {
                    counts[i] += 1;
                    counts[j] += 1;
                }
            }
        }
    }
    if !overlaps.is_empty() {
        return Err(ArrangementError::DegenerateInput(DegeneracyReport {
            collinear_overlaps: overlaps,
            ..Default::default()
        }));
    }
    let segments = counts
        .into_iter()
        .map(|c| SplitterEntry {
            intersected_count: c,
            classification: if c == n - 1 {
                Classification::Splitter
            } else if c + 2 == n {
                Classification::OneOffSplitter
            } else {
                Classification::Other
            },
        })
        .collect();
    Ok(SplitterReport { segments })
}
