//! Inclusion tests across the bisector.
//!
//! Everything here runs in the canonical frame of the side being tested, so
//! the tested point or edge lies on or below `x = y` and the other side's
//! points lie strictly above it.

use crate::clustering::Edge;
use crate::drag::{DragDirection, DragIndex, DragQuery};
use crate::geometry::{HighwayConfig, Point};
use crate::polygon::{ConvexPolygon, HalfPlane};
use crate::scalar::Scalar;
use crate::walking::{
    edge_walking_region_polygon, walking_region_polygon, wr_edge_membership, Reach,
};

/// Counters for one inclusion test.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProbeCount {
    /// Drags issued against left-boundary pieces.
    pub drags: usize,
    /// Exact region searches issued because a drag witness fell outside.
    pub fallbacks: usize,
    /// kd-tree nodes visited.
    pub nodes: usize,
}

impl ProbeCount {
    pub fn add(&mut self, o: &ProbeCount) {
        self.drags += o.drags;
        self.fallbacks += o.fallbacks;
        self.nodes += o.nodes;
    }
}

/// Hits of other-side points (as build indices of `other`) for one region.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Inclusion {
    pub hits: Vec<usize>,
    pub probes: ProbeCount,
}

fn above_bisector<T: Scalar>() -> HalfPlane<T> {
    // x - y <= 0
    HalfPlane::new(T::one(), -T::one(), T::zero())
}

fn box_meets<T: Scalar>(lo: &Point<T>, hi: &Point<T>, blo: &Point<T>, bhi: &Point<T>) -> bool {
    lo.x <= bhi.x && blo.x <= hi.x && lo.y <= bhi.y && blo.y <= hi.y
}

/// `true` iff every right-boundary edge of the polygon is either on the
/// vertical line `x = limit` or on the bisector, so that everything a
/// rightward drag meets before the limit and above the bisector is inside.
fn right_side_is_flat<T: Scalar>(poly: &ConvexPolygon<T>, limit: &T) -> bool {
    poly.right_chain()
        .iter()
        .all(|(a, b)| (&a.x == limit && &b.x == limit) || (a.x == a.y && b.x == b.y))
}

/// Drags the left boundary of `region` (already clipped to the other side)
/// rightward to its rightmost x and collects the first hits. Pieces whose
/// hit may lie outside the region fall back to an exact search.
pub fn drag_region<T: Scalar>(region: &ConvexPolygon<T>, other: &DragIndex<T>) -> Inclusion {
    let mut out = Inclusion::default();
    let Some((lo, hi)) = region.bbox() else {
        return out;
    };
    let limit = hi.x.clone();
    let flat = right_side_is_flat(region, &limit);
    let left = region.left_chain();
    let mut need_search = false;
    for (upper, lower) in &left {
        let q = DragQuery {
            a: lower.clone(),
            b: upper.clone(),
            direction: DragDirection::Right,
            limit: Some(limit.clone()),
        };
        let (hit, nodes) = other
            .drag(&q)
            .expect("left-chain pieces are not horizontal");
        out.probes.drags += 1;
        out.probes.nodes += nodes;
        if let Some(h) = hit {
            if region.contains(&h.point) {
                out.hits.push(h.index);
            } else if !flat {
                need_search = true;
            }
        }
    }
    if left.is_empty() || need_search {
        // Points, horizontal segments and non-flat right sides.
        out.probes.fallbacks += 1;
        let (found, nodes) =
            other.find_first(|a, b| box_meets(a, b, &lo, &hi), |p| region.contains(p));
        out.probes.nodes += nodes;
        if let Some((i, _)) = found {
            out.hits.push(i);
        }
    }
    out.hits.sort_unstable();
    out.hits.dedup();
    out
}

/// L1 inclusion of a canonical point against the other side.
pub fn point_side_inclusion_l1<T: Scalar>(
    p: &Point<T>,
    other: &DragIndex<T>,
    cfg: &HighwayConfig<T>,
) -> Inclusion {
    let region = walking_region_polygon(p, cfg)
        .expect("L1 config")
        .clip(&above_bisector());
    if region.is_empty() {
        return Inclusion::default();
    }
    drag_region(&region, other)
}

/// L1 inclusion of a canonical hull edge against the other side.
pub fn edge_side_inclusion_l1<T: Scalar>(
    e: &Edge<T>,
    other: &DragIndex<T>,
    cfg: &HighwayConfig<T>,
) -> Inclusion {
    let region = edge_walking_region_polygon(&e.0, &e.1, cfg)
        .expect("L1 config")
        .clip(&above_bisector());
    if region.is_empty() {
        return Inclusion::default();
    }
    drag_region(&region, other)
}

/// Number of left-boundary pieces of the cross-side part of the walking
/// region of a canonical point (the drags point inclusion issues).
pub fn cross_left_pieces<T: Scalar>(p: &Point<T>, cfg: &HighwayConfig<T>) -> usize {
    walking_region_polygon(p, cfg)
        .expect("L1 config")
        .clip(&above_bisector())
        .left_chain()
        .len()
}

/// Slopes (`dx / dy`) of every left-boundary piece a point region can have,
/// for building a drag index with fast paths. Empty outside L1.
pub fn cross_slopes<T: Scalar>(cfg: &HighwayConfig<T>) -> Vec<T> {
    match cfg {
        HighwayConfig::L1 { .. } => {
            let c = (T::one() - cfg.inverse_speed()).half();
            vec![
                T::zero(),
                c.clone(),
                -c.clone(),
                c.clone() - T::one(),
                -(T::one() / c),
            ]
        }
        HighwayConfig::L2Inf => Vec::new(),
    }
}

/// Exact search for other-side points walking to some point of edge `e`,
/// pruned by reach. Works for both metrics.
pub fn edge_side_inclusion_exact<T: Scalar>(
    e: &Edge<T>,
    other: &DragIndex<T>,
    cfg: &HighwayConfig<T>,
) -> Inclusion {
    let k = cfg.reach_factor();
    let reach = Reach::of_points([&e.0, &e.1], &k).expect("two points");
    let enter = |lo: &Point<T>, hi: &Point<T>| {
        let corners = [
            lo.clone(),
            hi.clone(),
            Point::new(lo.x.clone(), hi.y.clone()),
            Point::new(hi.x.clone(), lo.y.clone()),
        ];
        Reach::of_points(&corners, &k)
            .expect("four points")
            .may_relate(&reach)
    };
    let hits = other.find_all(enter, |p| wr_edge_membership(&e.0, &e.1, p, cfg));
    Inclusion {
        hits,
        probes: ProbeCount {
            fallbacks: 1,
            ..ProbeCount::default()
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drag::build_index;
    use crate::geometry::in_walking_region;
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::new(q(x, 1), q(y, 1))
    }

    #[test]
    fn unreachable_points_are_not_hit() {
        let cfg = HighwayConfig::l1(q(2, 1)).unwrap();
        let idx = build_index(&[pt(1, 50)]);
        let inc = point_side_inclusion_l1(&pt(100, 1), &idx, &cfg);
        assert!(inc.hits.is_empty());
        // The origin's region is the origin itself: no boundary to drag.
        let inc = point_side_inclusion_l1(&pt(0, 0), &idx, &cfg);
        assert!(inc.hits.is_empty());
        assert_eq!(inc.probes.drags, 0);
    }

    #[test]
    fn direct_diagonal_point_is_always_reachable() {
        let cfg = HighwayConfig::l1(q(3, 2)).unwrap();
        for p in [pt(7, 0), pt(9, 4), pt(5, 5)] {
            assert!(in_walking_region(
                &p,
                &Point::new(p.x.clone(), p.x.clone()),
                &cfg
            ));
        }
    }

    #[test]
    fn left_pieces_use_registered_slopes() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for v in [q(3, 2), q(2, 1), q(7, 3), q(100, 1)] {
            let cfg = HighwayConfig::l1(v).unwrap();
            let slopes = cross_slopes(&cfg);
            for _ in 0..300 {
                let x = rng.gen_range(0..500);
                let p = pt(x, rng.gen_range(0..=x));
                let region = walking_region_polygon(&p, &cfg)
                    .unwrap()
                    .clip(&above_bisector());
                for (upper, lower) in region.left_chain() {
                    let s =
                        (upper.x.clone() - lower.x.clone()) / (upper.y.clone() - lower.y.clone());
                    assert!(slopes.contains(&s), "{p:?} {s}");
                }
            }
        }
    }

    #[test]
    fn point_inclusion_agrees_with_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for v in [q(3, 2), q(2, 1), q(5, 1)] {
            let cfg = HighwayConfig::l1(v).unwrap();
            for _ in 0..100 {
                let other: Vec<_> = (0..20)
                    .map(|_| {
                        let y = rng.gen_range(1..60);
                        pt(rng.gen_range(0..y), y)
                    })
                    .collect();
                let idx = build_index(&other);
                let x = rng.gen_range(0..60);
                let p = pt(x, rng.gen_range(0..=x));
                let inc = point_side_inclusion_l1(&p, &idx, &cfg);
                let any = other.iter().any(|o| in_walking_region(&p, o, &cfg));
                assert_eq!(!inc.hits.is_empty(), any, "{p:?}");
                for &h in &inc.hits {
                    assert!(in_walking_region(&p, &other[h], &cfg));
                }
            }
        }
    }

    #[test]
    fn edge_inclusion_agrees_with_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for cfg in [HighwayConfig::l1(q(2, 1)).unwrap(), HighwayConfig::L2Inf] {
            for _ in 0..100 {
                let other: Vec<_> = (0..20)
                    .map(|_| {
                        let y = rng.gen_range(1..60);
                        pt(rng.gen_range(0..y), y)
                    })
                    .collect();
                let idx = build_index(&other);
                let (x0, x1) = (rng.gen_range(0..60), rng.gen_range(0..60));
                let e = (pt(x0, rng.gen_range(0..=x0)), pt(x1, rng.gen_range(0..=x1)));
                let any = other
                    .iter()
                    .any(|o| wr_edge_membership(&e.0, &e.1, o, &cfg));
                let exact = edge_side_inclusion_exact(&e, &idx, &cfg);
                assert_eq!(!exact.hits.is_empty(), any);
                if let HighwayConfig::L1 { .. } = cfg {
                    let dragged = edge_side_inclusion_l1(&e, &idx, &cfg);
                    assert_eq!(!dragged.hits.is_empty(), any);
                }
            }
        }
    }
}
