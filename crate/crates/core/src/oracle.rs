//! Brute-force references. Quadratic or worse and intentionally naive.

use std::collections::BTreeSet;

use crate::geometry::{in_walking_region, HighwayConfig, Point};
use crate::hull::{convex_hull, hull_contains, segments_cross};
use crate::scalar::Scalar;
use crate::walking::{segments_related, wr_edge_membership};

/// Minimum travel time over paths that walk to a sampled highway point,
/// ride (switching highways at the origin if needed), and walk from another
/// sampled highway point; or walk directly. Samples are spaced `step` apart
/// on `[0, extent]` of each axis, where `extent` covers both points.
pub fn oracle_time_distance<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
    cfg: &HighwayConfig<T>,
    step: &T,
) -> f64 {
    assert!(step.is_positive(), "grid step must be positive");
    let extent = [&p.x, &p.y, &q.x, &q.y]
        .into_iter()
        .fold(T::zero(), |m, v| T::max_of(&m, v));
    let mut grid = Vec::new();
    let mut a = T::zero();
    while a < extent {
        grid.push(a.clone());
        a = a + step.clone();
    }
    grid.push(extent);
    match cfg {
        HighwayConfig::L1 { .. } => oracle_l1(p, q, &cfg.inverse_speed(), &grid).to_f64_lossy(),
        HighwayConfig::L2Inf => oracle_l2inf(p, q, &grid),
    }
}

fn oracle_l1<T: Scalar>(p: &Point<T>, q: &Point<T>, inv: &T, grid: &[T]) -> T {
    let walk = |a: &Point<T>, b: &Point<T>| {
        (a.x.clone() - b.x.clone()).abs() + (a.y.clone() - b.y.clone()).abs()
    };
    let on_x = |a: &T| Point::new(a.clone(), T::zero());
    let on_y = |a: &T| Point::new(T::zero(), a.clone());
    let mut best = walk(p, q);
    for axis_p in [0, 1] {
        for axis_q in [0, 1] {
            let foot = |axis: usize, a: &T| if axis == 0 { on_x(a) } else { on_y(a) };
            let wp: Vec<T> = grid.iter().map(|a| walk(p, &foot(axis_p, a))).collect();
            let wq: Vec<T> = grid.iter().map(|a| walk(q, &foot(axis_q, a))).collect();
            let cand = if axis_p == axis_q {
                // min over e, f of wp(e) + |e - f| inv + wq(f), by a two-pass
                // distance transform of wp.
                let n = grid.len();
                let mut reach = wp.clone();
                for i in 1..n {
                    let via = reach[i - 1].clone()
                        + (grid[i].clone() - grid[i - 1].clone()) * inv.clone();
                    reach[i] = T::min_of(&reach[i], &via);
                }
                for i in (0..n - 1).rev() {
                    let via = reach[i + 1].clone()
                        + (grid[i + 1].clone() - grid[i].clone()) * inv.clone();
                    reach[i] = T::min_of(&reach[i], &via);
                }
                reach
                    .into_iter()
                    .zip(wq)
                    .map(|(r, w)| r + w)
                    .reduce(|a, b| T::min_of(&a, &b))
                    .expect("grid is nonempty")
            } else {
                let lp = wp
                    .into_iter()
                    .zip(grid)
                    .map(|(w, a)| w + a.clone() * inv.clone())
                    .reduce(|a, b| T::min_of(&a, &b))
                    .expect("grid is nonempty");
                let lq = wq
                    .into_iter()
                    .zip(grid)
                    .map(|(w, a)| w + a.clone() * inv.clone())
                    .reduce(|a, b| T::min_of(&a, &b))
                    .expect("grid is nonempty");
                lp + lq
            };
            best = T::min_of(&best, &cand);
        }
    }
    best
}

fn oracle_l2inf<T: Scalar>(p: &Point<T>, q: &Point<T>, grid: &[T]) -> f64 {
    let near = |a: &Point<T>| {
        let (x, y) = (a.x.to_f64_lossy(), a.y.to_f64_lossy());
        grid.iter()
            .map(|g| {
                let g = g.to_f64_lossy();
                (x - g).hypot(y).min(x.hypot(y - g))
            })
            .fold(f64::INFINITY, f64::min)
    };
    let direct =
        (p.x.to_f64_lossy() - q.x.to_f64_lossy()).hypot(p.y.to_f64_lossy() - q.y.to_f64_lossy());
    direct.min(near(p) + near(q))
}

/// Relation between two point blocks, decided on their hulls without any
/// filtering: shared points, or any boundary point pair that walks.
fn blocks_related<T: Scalar>(a: &[Point<T>], b: &[Point<T>], cfg: &HighwayConfig<T>) -> bool {
    let segs = |h: &[Point<T>]| -> Vec<(Point<T>, Point<T>)> {
        (0..h.len())
            .map(|i| (h[i].clone(), h[(i + 1) % h.len()].clone()))
            .collect()
    };
    if a.iter().any(|p| hull_contains(b, p)) || b.iter().any(|p| hull_contains(a, p)) {
        return true;
    }
    let (sa, sb) = (segs(a), segs(b));
    if sa
        .iter()
        .any(|(p, q)| sb.iter().any(|(r, s)| segments_cross(p, q, r, s)))
    {
        return true;
    }
    for (p, q) in &sa {
        for (r, s) in &sb {
            if segments_related(p, q, r, s, cfg) {
                return true;
            }
        }
    }
    false
}

/// Partition of input indices into blocks, blocks sorted by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OraclePartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OraclePartition {
    pub fn normalized(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        OraclePartition { blocks }
    }
}

/// Fixed point of hull-level walking closure over all points, ignoring sides.
pub fn oracle_clusters<T: Scalar>(points: &[Point<T>], cfg: &HighwayConfig<T>) -> OraclePartition {
    let mut blocks: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
    oracle_close(points, &mut blocks, cfg);
    OraclePartition::normalized(blocks)
}

/// Continues the closure from a given partition.
pub fn oracle_close<T: Scalar>(
    points: &[Point<T>],
    blocks: &mut Vec<Vec<usize>>,
    cfg: &HighwayConfig<T>,
) {
    let hull_of =
        |b: &[usize]| convex_hull(&b.iter().map(|&i| points[i].clone()).collect::<Vec<_>>());
    let mut hulls: Vec<Vec<Point<T>>> = blocks.iter().map(|b| hull_of(b)).collect();
    'outer: loop {
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks_related(&hulls[i], &hulls[j], cfg) {
                    let moved = blocks.swap_remove(j);
                    hulls.swap_remove(j);
                    blocks[i].extend(moved);
                    hulls[i] = hull_of(&blocks[i]);
                    continue 'outer;
                }
            }
        }
        break;
    }
}

/// Every (H_x cluster, H_y cluster) pair in which a point of one cluster
/// walks to a vertex or edge of the other. Clusters are given as hulls and
/// member points.
pub fn oracle_cross_marks<T: Scalar>(
    side_x: &[(Vec<Point<T>>, Vec<Point<T>>)],
    side_y: &[(Vec<Point<T>>, Vec<Point<T>>)],
    cfg: &HighwayConfig<T>,
) -> BTreeSet<(usize, usize)> {
    let touches = |hull: &[Point<T>], p: &Point<T>| match hull.len() {
        1 => in_walking_region(&hull[0], p, cfg),
        n => (0..n).any(|i| wr_edge_membership(&hull[i], &hull[(i + 1) % n], p, cfg)),
    };
    let mut out = BTreeSet::new();
    for (i, (hx, mx)) in side_x.iter().enumerate() {
        for (j, (hy, my)) in side_y.iter().enumerate() {
            if my.iter().any(|p| touches(hx, p)) || mx.iter().any(|p| touches(hy, p)) {
                out.insert((i, j));
            }
        }
    }
    out
}
