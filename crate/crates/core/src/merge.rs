//! Merging clusters across the bisector.
//!
//! Marks pair an `H_x` cluster with an `H_y` cluster when a point of one walks
//! to a point or hull edge of the other. All marked pairs are merged, then any
//! cross pair the marks missed (two hull edges walking to each other with no
//! vertex witness) is merged by a reach-filtered completeness pass, and merged
//! groups are retested until nothing relates.

use std::collections::BTreeSet;

use crate::clustering::{boundary_segments, hulls_related, Cluster, SideClusters};
use crate::cross::{
    cross_slopes, edge_side_inclusion_exact, edge_side_inclusion_l1, point_side_inclusion_l1,
    Inclusion, ProbeCount,
};
use crate::drag::build_index_with_slopes;
use crate::envelope::OuterBoundary;
use crate::error::{HullError, Result};
use crate::geometry::{HighwayConfig, Point};
use crate::hull::convex_hull;
use crate::scalar::Scalar;
use crate::side::{Side, SideSequence};
use crate::walking::Reach;

/// Marked cluster pairs as `(H_x cluster, H_y cluster)` positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MarkSet {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl MarkSet {
    pub fn marked(&self, side: Side) -> BTreeSet<usize> {
        self.pairs
            .iter()
            .map(|&(x, y)| if side == Side::Hx { x } else { y })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MarkStats {
    pub point_drags: usize,
    /// Largest number of drags issued for one point.
    pub max_point_drags: usize,
    /// Points that needed more than three drags.
    pub points_over_three: usize,
    pub edges_tested: usize,
    pub edge_drags: usize,
    /// Largest number of drags issued for one edge.
    pub max_edge_drags: usize,
    pub fallbacks: usize,
    pub kd_nodes: usize,
    pub ray_steps: usize,
}

/// Position of the owning cluster for every side-order position.
fn owners<T>(clusters: &[Cluster<T>], len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for (i, c) in clusters.iter().enumerate() {
        for slot in &mut out[c.span.0..=c.span.1] {
            *slot = i;
        }
    }
    out
}

/// One side as seen from its own canonical frame.
struct Frame<'a, T> {
    side: Side,
    points: Vec<Point<T>>,
    clusters: &'a [Cluster<T>],
    owner: Vec<usize>,
}

impl<'a, T: Scalar> Frame<'a, T> {
    fn new(seq: &SideSequence<T>, sc: &'a SideClusters<T>) -> Self {
        Frame {
            side: seq.side,
            points: seq.points.clone(),
            clusters: &sc.clusters,
            owner: owners(&sc.clusters, seq.len()),
        }
    }

    fn pair(&self, own: usize, other: usize) -> (usize, usize) {
        match self.side {
            Side::Hx => (own, other),
            Side::Hy => (other, own),
        }
    }
}

/// Collects every cross-side mark. Both sides test themselves against the
/// other's points in their own canonical frame.
pub fn collect_marks<T: Scalar>(
    seq_x: &SideSequence<T>,
    side_x: &SideClusters<T>,
    seq_y: &SideSequence<T>,
    side_y: &SideClusters<T>,
    cfg: &HighwayConfig<T>,
) -> (MarkSet, MarkStats) {
    let fx = Frame::new(seq_x, side_x);
    let fy = Frame::new(seq_y, side_y);
    let mut marks = MarkSet::default();
    let mut stats = MarkStats::default();
    let slopes = cross_slopes(cfg);
    for (own, other) in [(&fx, &fy), (&fy, &fx)] {
        let own_pts: Vec<Point<T>> = own.points.iter().map(|p| own.side.canonical(p)).collect();
        let other_pts: Vec<Point<T>> = other.points.iter().map(|p| own.side.canonical(p)).collect();
        let index = build_index_with_slopes(&other_pts, &slopes);
        let record = |own_c: usize,
                      inc: &Inclusion,
                      per_edge: bool,
                      marks: &mut MarkSet,
                      stats: &mut MarkStats| {
            for &h in &inc.hits {
                marks.pairs.insert(own.pair(own_c, other.owner[h]));
            }
            record_probes(stats, &inc.probes, per_edge);
        };
        match cfg {
            HighwayConfig::L1 { .. } => {
                for (pos, p) in own_pts.iter().enumerate() {
                    let inc = point_side_inclusion_l1(p, &index, cfg);
                    record(own.owner[pos], &inc, false, &mut marks, &mut stats);
                }
            }
            HighwayConfig::L2Inf => {
                // Other-side sweep order is ascending canonical y in this frame.
                let boundary = OuterBoundary::build(&own_pts);
                let (hits, steps) = boundary.ray_shoot(&other_pts);
                stats.ray_steps += steps;
                for (src, h) in hits {
                    marks.pairs.insert(own.pair(own.owner[src], other.owner[h]));
                }
            }
        }
        for (ci, c) in own.clusters.iter().enumerate() {
            if c.hull.len() < 2 {
                continue;
            }
            for (a, b) in boundary_segments(&c.hull) {
                let e = (own.side.canonical(&a), own.side.canonical(&b));
                let inc = match cfg {
                    HighwayConfig::L1 { .. } => edge_side_inclusion_l1(&e, &index, cfg),
                    HighwayConfig::L2Inf => edge_side_inclusion_exact(&e, &index, cfg),
                };
                stats.edges_tested += 1;
                record(ci, &inc, true, &mut marks, &mut stats);
            }
        }
    }
    (marks, stats)
}

fn record_probes(stats: &mut MarkStats, p: &ProbeCount, per_edge: bool) {
    stats.fallbacks += p.fallbacks;
    stats.kd_nodes += p.nodes;
    if per_edge {
        stats.edge_drags += p.drags;
        stats.max_edge_drags = stats.max_edge_drags.max(p.drags);
    } else {
        stats.point_drags += p.drags;
        stats.max_point_drags = stats.max_point_drags.max(p.drags);
        if p.drags > 3 {
            stats.points_over_three += 1;
        }
    }
}

/// Rightmost marked `H_x` cluster and topmost marked `H_y` cluster, as
/// `(c_t, c_r)`.
pub fn select_extremes(marks: &MarkSet) -> Result<Option<(usize, usize)>> {
    let ct = marks.marked(Side::Hy).into_iter().max();
    let cr = marks.marked(Side::Hx).into_iter().max();
    match (ct, cr) {
        (None, None) => Ok(None),
        (Some(t), Some(r)) => Ok(Some((t, r))),
        _ => Err(HullError::AsymmetricMarks),
    }
}

/// A cluster of the final partition.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalCluster<T> {
    pub members: Vec<usize>,
    pub hull: Vec<Point<T>>,
    pub on_x: bool,
    pub on_y: bool,
}

impl<T: Scalar> FinalCluster<T> {
    fn from_parts<'a, I: IntoIterator<Item = &'a Cluster<T>>>(parts: I) -> Self
    where
        T: 'a,
    {
        let mut out = FinalCluster {
            members: Vec::new(),
            hull: Vec::new(),
            on_x: false,
            on_y: false,
        };
        let mut pts = Vec::new();
        for c in parts {
            out.members.extend_from_slice(&c.members);
            pts.extend(c.hull.iter().cloned());
            match c.side {
                Side::Hx => out.on_x = true,
                Side::Hy => out.on_y = true,
            }
        }
        out.members.sort_unstable();
        out.hull = convex_hull(&pts);
        out
    }
}

/// Merges every `H_x` cluster up to `c_r` and every `H_y` cluster up to `c_t`
/// into one cluster placed first; the rest keep their order.
pub fn merge_across<T: Scalar>(
    side_x: &[Cluster<T>],
    side_y: &[Cluster<T>],
    ct: usize,
    cr: usize,
) -> (FinalCluster<T>, Vec<FinalCluster<T>>, Vec<FinalCluster<T>>) {
    let merged = FinalCluster::from_parts(side_x[..=cr].iter().chain(&side_y[..=ct]));
    let rest = |cs: &[Cluster<T>]| cs.iter().map(|c| FinalCluster::from_parts([c])).collect();
    (merged, rest(&side_x[cr + 1..]), rest(&side_y[ct + 1..]))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SettleStats {
    pub mark_pairs: usize,
    /// Cross pairs related with no mark between them.
    pub completeness_merges: usize,
    /// Merges found when retesting merged groups.
    pub cascade_merges: usize,
    pub relation_tests: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Pairs `(i, j)` of `a` and `b` whose reaches overlap, by a sweep on the
/// first interval and a direct check on the second.
fn reach_pairs<T: Scalar>(a: &[Reach<T>], b: &[Reach<T>]) -> Vec<(usize, usize)> {
    let mut events: Vec<(usize, bool)> = (0..a.len())
        .map(|i| (i, true))
        .chain((0..b.len()).map(|j| (j, false)))
        .collect();
    let start = |e: &(usize, bool)| if e.1 { &a[e.0].min_u } else { &b[e.0].min_u };
    events.sort_by(|p, q| start(p).partial_cmp(start(q)).expect("ordered"));
    let mut live_a: Vec<usize> = Vec::new();
    let mut live_b: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for e in &events {
        let s = start(e).clone();
        live_a.retain(|&i| a[i].max_w >= s);
        live_b.retain(|&j| b[j].max_w >= s);
        if e.1 {
            out.extend(
                live_b
                    .iter()
                    .filter(|&&j| a[e.0].may_relate(&b[j]))
                    .map(|&j| (e.0, j)),
            );
            live_a.push(e.0);
        } else {
            out.extend(
                live_a
                    .iter()
                    .filter(|&&i| a[i].may_relate(&b[e.0]))
                    .map(|&i| (i, e.0)),
            );
            live_b.push(e.0);
        }
    }
    out.sort_unstable();
    out
}

/// Merges marked pairs and everything they transitively relate to.
pub fn settle<T: Scalar>(
    side_x: &[Cluster<T>],
    side_y: &[Cluster<T>],
    marks: &MarkSet,
    cfg: &HighwayConfig<T>,
) -> (Vec<FinalCluster<T>>, SettleStats) {
    let nx = side_x.len();
    let all: Vec<&Cluster<T>> = side_x.iter().chain(side_y).collect();
    let mut uf = UnionFind::new(all.len());
    let mut stats = SettleStats {
        mark_pairs: marks.pairs.len(),
        ..SettleStats::default()
    };
    for &(x, y) in &marks.pairs {
        uf.union(x, nx + y);
    }
    let k = cfg.reach_factor();
    let rx: Vec<Reach<T>> = side_x.iter().map(|c| c.reach(&k)).collect();
    let ry: Vec<Reach<T>> = side_y.iter().map(|c| c.reach(&k)).collect();
    for (i, j) in reach_pairs(&rx, &ry) {
        if uf.find(i) == uf.find(nx + j) {
            continue;
        }
        stats.relation_tests += 1;
        if hulls_related(&side_x[i].hull, &side_y[j].hull, cfg) {
            uf.union(i, nx + j);
            stats.completeness_merges += 1;
        }
    }

    // Groups keyed by root, in order of their smallest cluster.
    let mut groups: Vec<Option<FinalCluster<T>>> = Vec::new();
    let mut reach: Vec<Option<Reach<T>>> = Vec::new();
    let mut dirty: Vec<usize> = Vec::new();
    let mut slot_of = vec![usize::MAX; all.len()];
    let mut parts: Vec<Vec<&Cluster<T>>> = Vec::new();
    for i in 0..all.len() {
        let r = uf.find(i);
        if slot_of[r] == usize::MAX {
            slot_of[r] = parts.len();
            parts.push(Vec::new());
        }
        parts[slot_of[r]].push(all[i]);
    }
    for p in &parts {
        let g = FinalCluster::from_parts(p.iter().copied());
        if p.len() > 1 {
            dirty.push(groups.len());
        }
        reach.push(Reach::of_points(&g.hull, &k));
        groups.push(Some(g));
    }
    while let Some(g) = dirty.pop() {
        if groups[g].is_none() {
            continue;
        }
        let mut absorbed = false;
        for h in 0..groups.len() {
            if h == g || groups[h].is_none() {
                continue;
            }
            let (Some(rg), Some(rh)) = (&reach[g], &reach[h]) else {
                continue;
            };
            if !rg.may_relate(rh) {
                continue;
            }
            stats.relation_tests += 1;
            let related = hulls_related(
                &groups[g].as_ref().expect("live").hull,
                &groups[h].as_ref().expect("live").hull,
                cfg,
            );
            if related {
                let other = groups[h].take().expect("live");
                let cur = groups[g].as_mut().expect("live");
                cur.members.extend(other.members);
                cur.members.sort_unstable();
                let mut pts = cur.hull.clone();
                pts.extend(other.hull);
                cur.hull = convex_hull(&pts);
                cur.on_x |= other.on_x;
                cur.on_y |= other.on_y;
                reach[g] = Reach::of_points(&cur.hull, &k);
                reach[h] = None;
                stats.cascade_merges += 1;
                absorbed = true;
                break;
            }
        }
        if absorbed {
            dirty.push(g);
        }
    }
    (groups.into_iter().flatten().collect(), stats)
}

/// `true` iff no two clusters of the partition relate.
pub fn is_fixed_point<T: Scalar>(clusters: &[FinalCluster<T>], cfg: &HighwayConfig<T>) -> bool {
    (0..clusters.len()).all(|i| {
        (i + 1..clusters.len()).all(|j| !hulls_related(&clusters[i].hull, &clusters[j].hull, cfg))
    })
}

/// Input-index blocks of a partition, normalised for comparison.
pub fn partition_blocks<T>(clusters: &[FinalCluster<T>]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = clusters.iter().map(|c| c.members.clone()).collect();
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}
