//! Clusters along one highway.
//!
//! Two clusters are related when their hulls meet or some point of one hull
//! walks to some point of the other. Because walking regions are generated by
//! hull boundaries, the relation is decided on boundary segments. Clusters are
//! built by a sweep in side order that keeps the live clusters on a stack
//! (the envelope); a new point merges the contiguous top range ending at the
//! deepest cluster it relates to, and the merged cluster is retested until
//! nothing deeper relates.

use std::ops::Range;

use crate::error::{HullError, Result};
use crate::geometry::{HighwayConfig, Point};
use crate::hull::{convex_hull, hulls_intersect, new_edges};
use crate::scalar::Scalar;
use crate::side::{Side, SideSequence};
use crate::walking::{segments_related, Reach};

pub type Edge<T> = (Point<T>, Point<T>);

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster<T> {
    pub id: usize,
    pub side: Side,
    /// Input indices of the member points.
    pub members: Vec<usize>,
    /// Counterclockwise hull vertices in input coordinates.
    pub hull: Vec<Point<T>>,
    /// Inclusive range of side-order positions.
    pub span: (usize, usize),
    pub marked: bool,
}

impl<T: Scalar> Cluster<T> {
    pub fn singleton(id: usize, side: Side, member: usize, p: Point<T>, pos: usize) -> Self {
        Cluster {
            id,
            side,
            members: vec![member],
            hull: vec![p],
            span: (pos, pos),
            marked: false,
        }
    }

    pub fn reach(&self, k: &T) -> Reach<T> {
        Reach::of_points(&self.hull, k).expect("cluster hull is never empty")
    }

    /// Hull boundary as closed segments; a single vertex is a zero-length one.
    pub fn boundary(&self) -> Vec<Edge<T>> {
        boundary_segments(&self.hull)
    }
}

pub fn boundary_segments<T: Scalar>(hull: &[Point<T>]) -> Vec<Edge<T>> {
    match hull.len() {
        0 => Vec::new(),
        1 => vec![(hull[0].clone(), hull[0].clone())],
        2 => vec![(hull[0].clone(), hull[1].clone())],
        n => (0..n)
            .map(|i| (hull[i].clone(), hull[(i + 1) % n].clone()))
            .collect(),
    }
}

/// Relation between two hulls, with a reach prefilter on every segment pair.
pub fn hulls_related<T: Scalar>(a: &[Point<T>], b: &[Point<T>], cfg: &HighwayConfig<T>) -> bool {
    let k = cfg.reach_factor();
    let ra = match Reach::of_points(a, &k) {
        Some(r) => r,
        None => return false,
    };
    let rb = match Reach::of_points(b, &k) {
        Some(r) => r,
        None => return false,
    };
    if !ra.may_relate(&rb) {
        return false;
    }
    if hulls_intersect(a, b) {
        return true;
    }
    let sa: Vec<(Edge<T>, Reach<T>)> = boundary_segments(a)
        .into_iter()
        .map(|e| {
            let r = Reach::of_points([&e.0, &e.1], &k).expect("two points");
            (e, r)
        })
        .filter(|(_, r)| r.may_relate(&rb))
        .collect();
    let sb: Vec<(Edge<T>, Reach<T>)> = boundary_segments(b)
        .into_iter()
        .map(|e| {
            let r = Reach::of_points([&e.0, &e.1], &k).expect("two points");
            (e, r)
        })
        .filter(|(_, r)| r.may_relate(&ra))
        .collect();
    sa.iter().any(|(ea, ra)| {
        sb.iter()
            .any(|(eb, rb)| ra.may_relate(rb) && segments_related(&ea.0, &ea.1, &eb.0, &eb.1, cfg))
    })
}

/// Merges `clusters[range]` into one cluster and reports the hull edges that
/// none of the parts had.
pub fn merge_cluster_range<T: Scalar>(
    clusters: &[Cluster<T>],
    range: Range<usize>,
) -> Result<(Cluster<T>, Vec<Edge<T>>)> {
    if range.is_empty() || range.end > clusters.len() {
        return Err(HullError::EmptyRange);
    }
    let parts = &clusters[range];
    Ok(merge_parts(parts.iter()))
}

pub(crate) fn merge_parts<'a, T: Scalar, I>(parts: I) -> (Cluster<T>, Vec<Edge<T>>)
where
    I: IntoIterator<Item = &'a Cluster<T>>,
{
    let parts: Vec<Cluster<T>> = parts.into_iter().cloned().collect();
    let (mut merged, fresh) = merge_hulls(&parts);
    merged.members = parts
        .iter()
        .flat_map(|c| c.members.iter().copied())
        .collect();
    merged.members.sort_unstable();
    (merged, fresh)
}

/// Merged cluster with an empty member list, and its fresh edges.
fn merge_hulls<T: Scalar>(parts: &[Cluster<T>]) -> (Cluster<T>, Vec<Edge<T>>) {
    let first = &parts[0];
    let mut pts = Vec::new();
    let mut span = first.span;
    for c in parts {
        pts.extend(c.hull.iter().cloned());
        span = (span.0.min(c.span.0), span.1.max(c.span.1));
    }
    let hull = convex_hull(&pts);
    let hulls: Vec<&[Point<T>]> = parts.iter().map(|c| c.hull.as_slice()).collect();
    let fresh = new_edges(&hull, &hulls);
    let merged = Cluster {
        id: first.id,
        side: first.side,
        members: Vec::new(),
        hull,
        span,
        marked: parts.iter().any(|c| c.marked),
    };
    (merged, fresh)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnvelopeStats {
    pub inserted: usize,
    pub deleted: usize,
    pub relation_tests: usize,
    pub edges_formed: usize,
}

/// Live clusters of one side in sweep order, with prefix maxima of the
/// forward reach so that scans stop as soon as nothing deeper can relate.
#[derive(Debug, Clone)]
pub struct Envelope<T> {
    side: Side,
    cfg: HighwayConfig<T>,
    k: T,
    clusters: Vec<Cluster<T>>,
    prefix_reach: Vec<T>,
    pub stats: EnvelopeStats,
}

impl<T: Scalar> Envelope<T> {
    pub fn new(side: Side, cfg: &HighwayConfig<T>) -> Self {
        Envelope {
            side,
            cfg: cfg.clone(),
            k: cfg.reach_factor(),
            clusters: Vec::new(),
            prefix_reach: Vec::new(),
            stats: EnvelopeStats::default(),
        }
    }

    pub fn clusters(&self) -> &[Cluster<T>] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// (backward extent of `c`, forward extent of `c`) along the sweep.
    fn keys(&self, c: &Cluster<T>) -> (T, T) {
        let r = c.reach(&self.k);
        match self.side {
            Side::Hx => (r.min_u, r.max_w),
            Side::Hy => (r.min_u_t, r.max_w_t),
        }
    }

    /// Maximal top range of live clusters ending at the deepest one related
    /// to `c`, or `None`.
    pub fn point_inclusion(&mut self, c: &Cluster<T>) -> Option<Range<usize>> {
        let (back, _) = self.keys(c);
        let mut deepest = None;
        let mut j = self.clusters.len();
        while j > 0 {
            j -= 1;
            if self.prefix_reach[j] < back {
                break;
            }
            self.stats.relation_tests += 1;
            if hulls_related(&self.clusters[j].hull, &c.hull, &self.cfg) {
                deepest = Some(j);
            }
        }
        deepest.map(|j| j..self.clusters.len())
    }

    /// Pops `range` (which must be a top range), merges it with `c` and
    /// returns the merged cluster and its fresh edges without pushing it.
    pub fn absorb(&mut self, range: Range<usize>, c: Cluster<T>) -> (Cluster<T>, Vec<Edge<T>>) {
        let mut parts: Vec<Cluster<T>> = self.clusters.drain(range.clone()).collect();
        self.prefix_reach.truncate(range.start);
        self.stats.deleted += parts.len();
        parts.push(c);
        // Member lists move into the largest one; order is restored once the
        // sweep ends.
        let big = (0..parts.len())
            .max_by_key(|&i| parts[i].members.len())
            .expect("nonempty");
        let mut members = std::mem::take(&mut parts[big].members);
        for (i, p) in parts.iter_mut().enumerate() {
            if i != big {
                members.append(&mut p.members);
            }
        }
        let (mut merged, fresh) = merge_hulls(&parts);
        merged.members = members;
        self.stats.edges_formed += fresh.len();
        (merged, fresh)
    }

    pub fn push(&mut self, c: Cluster<T>) {
        let (_, fwd) = self.keys(&c);
        let top = match self.prefix_reach.last() {
            Some(prev) => T::max_of(prev, &fwd),
            None => fwd,
        };
        self.prefix_reach.push(top);
        self.clusters.push(c);
        self.stats.inserted += 1;
        debug_assert!(
            self.clusters.len() < 2 || {
                let n = self.clusters.len();
                self.clusters[n - 2].span.1 < self.clusters[n - 1].span.0
            }
        );
    }

    /// Spans strictly increase along the stack.
    pub fn is_monotone(&self) -> bool {
        self.clusters.windows(2).all(|w| w[0].span.1 < w[1].span.0)
    }

    pub fn into_clusters(self) -> (Vec<Cluster<T>>, EnvelopeStats) {
        (self.clusters, self.stats)
    }
}

/// Result of clustering one side.
#[derive(Debug, Clone)]
pub struct SideClusters<T> {
    pub side: Side,
    pub clusters: Vec<Cluster<T>>,
    pub stats: EnvelopeStats,
}

pub fn build_side_clusters<T: Scalar>(
    seq: &SideSequence<T>,
    cfg: &HighwayConfig<T>,
) -> SideClusters<T> {
    let mut env = Envelope::new(seq.side, cfg);
    for (pos, (p, &idx)) in seq.points.iter().zip(&seq.indices).enumerate() {
        let mut cur = Cluster::singleton(0, seq.side, idx, p.clone(), pos);
        while let Some(range) = env.point_inclusion(&cur) {
            cur = env.absorb(range, cur).0;
        }
        env.push(cur);
    }
    let (mut clusters, stats) = env.into_clusters();
    for (i, c) in clusters.iter_mut().enumerate() {
        c.id = i;
        c.members.sort_unstable();
    }
    SideClusters {
        side: seq.side,
        clusters,
        stats,
    }
}
