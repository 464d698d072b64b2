//! End-to-end construction.

use crate::assembly::{assemble, TimeConvexHull};
use crate::clustering::build_side_clusters;
use crate::error::Result;
use crate::geometry::{HighwayConfig, Point};
use crate::merge::{
    collect_marks, merge_across, partition_blocks, select_extremes, settle, MarkSet, MarkStats,
    SettleStats,
};
use crate::scalar::Scalar;
use crate::side::decompose;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub n: usize,
    pub side_clusters: (usize, usize),
    pub edges_formed: usize,
    pub side_relation_tests: usize,
    pub marks: MarkStats,
    pub settle: SettleStats,
}

#[derive(Debug, Clone)]
pub struct HullRun<T> {
    pub hull: TimeConvexHull<T>,
    pub marks: MarkSet,
    /// `(c_t, c_r)` when any mark exists.
    pub extremes: Option<(usize, usize)>,
    /// Partition obtained by merging only up to the extremes.
    pub extreme_partition: Option<Vec<Vec<usize>>>,
    pub stats: RunStats,
}

impl<T: Scalar> HullRun<T> {
    pub fn partition(&self) -> Vec<Vec<usize>> {
        partition_blocks(&self.hull.clusters)
    }
}

pub fn compute_hull<T: Scalar>(points: &[Point<T>], cfg: &HighwayConfig<T>) -> Result<HullRun<T>> {
    for p in points {
        Point::in_quadrant(p.x.clone(), p.y.clone())?;
    }
    let (sx, sy) = decompose(points);
    let cx = build_side_clusters(&sx, cfg);
    let cy = build_side_clusters(&sy, cfg);
    let (marks, mark_stats) = collect_marks(&sx, &cx, &sy, &cy, cfg);
    let extremes = select_extremes(&marks)?;
    let extreme_partition = extremes.map(|(ct, cr)| {
        let (merged, rx, ry) = merge_across(&cx.clusters, &cy.clusters, ct, cr);
        let mut all = vec![merged];
        all.extend(rx);
        all.extend(ry);
        partition_blocks(&all)
    });
    let (clusters, settle_stats) = settle(&cx.clusters, &cy.clusters, &marks, cfg);
    let stats = RunStats {
        n: points.len(),
        side_clusters: (cx.clusters.len(), cy.clusters.len()),
        edges_formed: cx.stats.edges_formed + cy.stats.edges_formed,
        side_relation_tests: cx.stats.relation_tests + cy.stats.relation_tests,
        marks: mark_stats,
        settle: settle_stats,
    };
    Ok(HullRun {
        hull: assemble(clusters),
        marks,
        extremes,
        extreme_partition,
        stats,
    })
}
