//! The final structure: cluster polygons joined by highway stretches.

use std::cmp::Ordering;

use crate::geometry::{HighwayConfig, Point};
use crate::hull::{convex_hull, hull_contains};
use crate::merge::FinalCluster;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Hx,
    Hy,
}

/// A closed stretch `[from, to]` of one highway.
#[derive(Debug, Clone, PartialEq)]
pub struct HighwayLink<T> {
    pub axis: Axis,
    pub from: T,
    pub to: T,
}

/// Where a cluster touches each highway.
#[derive(Debug, Clone, PartialEq)]
pub struct Feet<T> {
    pub x: Option<(T, T)>,
    pub y: Option<(T, T)>,
}

fn extent<T: Scalar>(vals: impl Iterator<Item = T>) -> Option<(T, T)> {
    vals.fold(None, |acc, v| match acc {
        None => Some((v.clone(), v)),
        Some((lo, hi)) => Some((T::min_of(&lo, &v), T::max_of(&hi, &v))),
    })
}

/// Projections of the hull onto the highways the cluster uses.
pub fn attachment_feet<T: Scalar>(c: &FinalCluster<T>) -> Feet<T> {
    Feet {
        x: if c.on_x {
            extent(c.hull.iter().map(|p| p.x.clone()))
        } else {
            None
        },
        y: if c.on_y {
            extent(c.hull.iter().map(|p| p.y.clone()))
        } else {
            None
        },
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeConvexHull<T> {
    /// `H_x`-only clusters from far to near, then clusters on both highways,
    /// then `H_y`-only clusters from near to far.
    pub clusters: Vec<FinalCluster<T>>,
    pub feet: Vec<Feet<T>>,
    pub highway_links: Vec<HighwayLink<T>>,
    pub uses_both_highways: bool,
    /// Cluster visits made by the assembly pass.
    pub visits: usize,
}

fn foot_start<T: Scalar>(f: &Feet<T>, axis: Axis) -> Option<&T> {
    match axis {
        Axis::Hx => f.x.as_ref().map(|v| &v.0),
        Axis::Hy => f.y.as_ref().map(|v| &v.0),
    }
}

/// Orders the clusters and emits the gaps between consecutive feet on each
/// highway, plus the stretch back to the origin when both highways are used.
pub fn assemble<T: Scalar>(clusters: Vec<FinalCluster<T>>) -> TimeConvexHull<T> {
    let mut keyed: Vec<(u8, Feet<T>, FinalCluster<T>)> = clusters
        .into_iter()
        .map(|c| {
            let f = attachment_feet(&c);
            let rank = match (c.on_x, c.on_y) {
                (true, false) => 0,
                (true, true) => 1,
                _ => 2,
            };
            (rank, f, c)
        })
        .collect();
    keyed.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| match a.0 {
            0 => foot_start(&b.1, Axis::Hx)
                .partial_cmp(&foot_start(&a.1, Axis::Hx))
                .unwrap_or(Ordering::Equal),
            2 => foot_start(&a.1, Axis::Hy)
                .partial_cmp(&foot_start(&b.1, Axis::Hy))
                .unwrap_or(Ordering::Equal),
            _ => a.2.members.cmp(&b.2.members),
        })
    });

    let mut out = TimeConvexHull {
        clusters: Vec::with_capacity(keyed.len()),
        feet: Vec::with_capacity(keyed.len()),
        highway_links: Vec::new(),
        uses_both_highways: false,
        visits: 0,
    };
    for (_, f, c) in keyed {
        out.visits += 1;
        out.feet.push(f);
        out.clusters.push(c);
    }
    let xs: Vec<(T, T)> = out.feet.iter().filter_map(|f| f.x.clone()).collect();
    let ys: Vec<(T, T)> = out.feet.iter().filter_map(|f| f.y.clone()).collect();
    out.uses_both_highways = !xs.is_empty() && !ys.is_empty();
    out.highway_links
        .extend(gap_links(Axis::Hx, xs, out.uses_both_highways));
    out.highway_links
        .extend(gap_links(Axis::Hy, ys, out.uses_both_highways));
    out
}

/// Links covering every gap between feet on one highway, and the stretch from
/// the origin to the first foot when `from_origin` is set.
fn gap_links<T: Scalar>(
    axis: Axis,
    mut feet: Vec<(T, T)>,
    from_origin: bool,
) -> Vec<HighwayLink<T>> {
    feet.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    let mut links = Vec::new();
    let mut front = if from_origin { Some(T::zero()) } else { None };
    for (lo, hi) in feet {
        if let Some(f) = &front {
            if &lo > f {
                links.push(HighwayLink {
                    axis,
                    from: f.clone(),
                    to: lo.clone(),
                });
            }
        }
        front = Some(match front {
            Some(f) => T::max_of(&f, &hi),
            None => hi,
        });
    }
    links
}

impl<T: Scalar> TimeConvexHull<T> {
    /// Cluster polygon extended down to its feet.
    pub fn attached_region(&self, i: usize) -> Vec<Point<T>> {
        let mut pts = self.clusters[i].hull.clone();
        let f = &self.feet[i];
        if let Some((lo, hi)) = &f.x {
            pts.push(Point::new(lo.clone(), T::zero()));
            pts.push(Point::new(hi.clone(), T::zero()));
        }
        if let Some((lo, hi)) = &f.y {
            pts.push(Point::new(T::zero(), lo.clone()));
            pts.push(Point::new(T::zero(), hi.clone()));
        }
        convex_hull(&pts)
    }

    /// `true` iff `v` on the given highway is covered by a foot or a link.
    pub fn highway_covers(&self, axis: Axis, v: &T) -> bool {
        let in_feet = self.feet.iter().any(|f| {
            let iv = match axis {
                Axis::Hx => &f.x,
                Axis::Hy => &f.y,
            };
            iv.as_ref().map_or(false, |(lo, hi)| lo <= v && v <= hi)
        });
        in_feet
            || self
                .highway_links
                .iter()
                .any(|l| l.axis == axis && &l.from <= v && v <= &l.to)
    }
}

/// One straight piece of a shortest path.
#[derive(Debug, Clone, PartialEq)]
pub enum Leg<T> {
    Walk(Point<T>, Point<T>),
    Ride(Axis, T, T),
}

/// A shortest path between `p` and `q`: the direct walk when it is no slower,
/// otherwise perpendicular drops to the cheapest highway route.
pub fn shortest_path<T: Scalar>(p: &Point<T>, q: &Point<T>, cfg: &HighwayConfig<T>) -> Vec<Leg<T>> {
    let fx = |a: &Point<T>| Point::new(a.x.clone(), T::zero());
    let fy = |a: &Point<T>| Point::new(T::zero(), a.y.clone());
    let walk_x = |a: &Point<T>, b: &Point<T>| {
        vec![
            Leg::Walk(a.clone(), fx(a)),
            Leg::Ride(Axis::Hx, a.x.clone(), b.x.clone()),
            Leg::Walk(fx(b), b.clone()),
        ]
    };
    let walk_y = |a: &Point<T>, b: &Point<T>| {
        vec![
            Leg::Walk(a.clone(), fy(a)),
            Leg::Ride(Axis::Hy, a.y.clone(), b.y.clone()),
            Leg::Walk(fy(b), b.clone()),
        ]
    };
    let corner = |a: &Point<T>, b: &Point<T>| {
        vec![
            Leg::Walk(a.clone(), fx(a)),
            Leg::Ride(Axis::Hx, a.x.clone(), T::zero()),
            Leg::Ride(Axis::Hy, T::zero(), b.y.clone()),
            Leg::Walk(fy(b), b.clone()),
        ]
    };
    let rev = |legs: Vec<Leg<T>>| -> Vec<Leg<T>> { legs.into_iter().rev().collect() };
    match cfg {
        HighwayConfig::L1 { .. } => {
            let inv = cfg.inverse_speed();
            let dx = (p.x.clone() - q.x.clone()).abs();
            let dy = (p.y.clone() - q.y.clone()).abs();
            let direct = dx.clone() + dy.clone();
            let options: [(T, Vec<Leg<T>>); 4] = [
                (p.y.clone() + dx * inv.clone() + q.y.clone(), walk_x(p, q)),
                (p.x.clone() + dy * inv.clone() + q.x.clone(), walk_y(p, q)),
                (
                    p.y.clone() + (p.x.clone() + q.y.clone()) * inv.clone() + q.x.clone(),
                    corner(p, q),
                ),
                (
                    q.y.clone() + (q.x.clone() + p.y.clone()) * inv + p.x.clone(),
                    rev(corner(q, p)),
                ),
            ];
            best_route(direct, p, q, options)
        }
        HighwayConfig::L2Inf => {
            // Compared through squares: walking wins iff |pq| <= g_p + g_q.
            let (gp, gq) = (p.highway_gap(), q.highway_gap());
            let s = gp.clone() + gq.clone();
            if p.dist2(q) <= s.clone() * s {
                return vec![Leg::Walk(p.clone(), q.clone())];
            }
            let px = p.y <= p.x;
            let qx = q.y <= q.x;
            match (px, qx) {
                (true, true) => walk_x(p, q),
                (false, false) => walk_y(p, q),
                (true, false) => corner(p, q),
                (false, true) => rev(corner(q, p)),
            }
        }
    }
}

fn best_route<T: Scalar>(
    direct: T,
    p: &Point<T>,
    q: &Point<T>,
    options: [(T, Vec<Leg<T>>); 4],
) -> Vec<Leg<T>> {
    let mut best: (T, Vec<Leg<T>>) = (direct, vec![Leg::Walk(p.clone(), q.clone())]);
    for (cost, legs) in options {
        if cost < best.0 {
            best = (cost, legs);
        }
    }
    best.1
}

/// Counts sampled path points not covered by the structure.
///
/// For a pair in one cluster every walking sample must lie in that cluster's
/// attached region; otherwise in any attached region. Riding samples must lie
/// on a foot or link. Samples are `step` apart along each leg; a walking leg
/// whose endpoints share one convex region needs no sampling.
pub fn closure_violations<T: Scalar>(
    points: &[Point<T>],
    tch: &TimeConvexHull<T>,
    cfg: &HighwayConfig<T>,
    pairs: &[(usize, usize)],
    step: f64,
) -> usize {
    let mut owner = vec![usize::MAX; points.len()];
    for (i, c) in tch.clusters.iter().enumerate() {
        for &m in &c.members {
            owner[m] = i;
        }
    }
    let regions: Vec<Vec<Point<T>>> = (0..tch.clusters.len())
        .map(|i| tch.attached_region(i))
        .collect();
    let mut bad = 0;
    for &(a, b) in pairs {
        let same = owner[a] == owner[b];
        let allowed: Vec<&Vec<Point<T>>> = if same {
            vec![&regions[owner[a]]]
        } else {
            regions.iter().collect()
        };
        for leg in shortest_path(&points[a], &points[b], cfg) {
            match leg {
                Leg::Walk(s, e) => {
                    if allowed
                        .iter()
                        .any(|r| hull_contains(r, &s) && hull_contains(r, &e))
                    {
                        continue;
                    }
                    let n = samples(&s, &e, step);
                    for k in 0..=n {
                        let t = T::from_ratio(k as i64, n.max(1) as i64);
                        let v = s.lerp(&e, &t);
                        if !allowed.iter().any(|r| hull_contains(r, &v)) {
                            bad += 1;
                        }
                    }
                }
                Leg::Ride(axis, s, e) => {
                    let (lo, hi) = if s <= e { (s, e) } else { (e, s) };
                    let n = ((hi.to_f64_lossy() - lo.to_f64_lossy()) / step)
                        .ceil()
                        .max(1.0) as i64;
                    for k in 0..=n {
                        let v = lo.clone() + (hi.clone() - lo.clone()) * T::from_ratio(k, n);
                        if !tch.highway_covers(axis, &v) {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    bad
}

fn samples<T: Scalar>(s: &Point<T>, e: &Point<T>, step: f64) -> usize {
    let d =
        (s.x.to_f64_lossy() - e.x.to_f64_lossy()).hypot(s.y.to_f64_lossy() - e.y.to_f64_lossy());
    (d / step).ceil().max(1.0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::new(q(x), q(y))
    }

    fn fc(
        members: Vec<usize>,
        hull: Vec<Point<Rational>>,
        on_x: bool,
        on_y: bool,
    ) -> FinalCluster<Rational> {
        FinalCluster {
            members,
            hull: convex_hull(&hull),
            on_x,
            on_y,
        }
    }

    #[test]
    fn feet_examples() {
        let f = attachment_feet(&fc(vec![0], vec![pt(3, 1)], true, false));
        assert_eq!(f.x, Some((q(3), q(3))));
        assert_eq!(f.y, None);
        let f = attachment_feet(&fc(
            vec![0, 1, 2],
            vec![pt(2, 1), pt(7, 2), pt(4, 3)],
            true,
            false,
        ));
        assert_eq!(f.x, Some((q(2), q(7))));
        let f = attachment_feet(&fc(vec![0, 1], vec![pt(5, 2), pt(1, 6)], true, true));
        assert_eq!(f.x, Some((q(1), q(5))));
        assert_eq!(f.y, Some((q(2), q(6))));
    }

    #[test]
    fn single_point_has_no_links() {
        let t = assemble(vec![fc(vec![0], vec![pt(3, 1)], true, false)]);
        assert_eq!(t.clusters.len(), 1);
        assert!(t.highway_links.is_empty());
        assert!(!t.uses_both_highways);
    }

    #[test]
    fn two_far_clusters_get_one_link() {
        let t = assemble(vec![
            fc(vec![0, 1], vec![pt(2, 1), pt(7, 1)], true, false),
            fc(vec![2], vec![pt(40, 1)], true, false),
        ]);
        assert_eq!(
            t.highway_links,
            vec![HighwayLink {
                axis: Axis::Hx,
                from: q(7),
                to: q(40)
            }]
        );
        assert_eq!(t.visits, 2);
        assert_eq!(t.clusters[0].members, vec![2]);
    }

    #[test]
    fn mixed_cluster_beyond_x_only_cluster_is_linked() {
        let t = assemble(vec![
            fc(vec![0], vec![pt(30, 2), pt(40, 5)], true, false),
            fc(vec![1, 2], vec![pt(90, 80), pt(80, 95)], true, true),
        ]);
        assert!(t.highway_covers(Axis::Hx, &q(60)));
        assert!(t.highway_covers(Axis::Hx, &q(10)));
        assert!(t.highway_covers(Axis::Hy, &q(40)));
        assert!(!t.highway_covers(Axis::Hx, &q(100)));
    }

    #[test]
    fn cross_cluster_attaches_to_both_axes() {
        let t = assemble(vec![
            fc(vec![0, 1], vec![pt(5, 2), pt(2, 5)], true, true),
            fc(vec![2], vec![pt(40, 1)], true, false),
            fc(vec![3], vec![pt(1, 50)], false, true),
        ]);
        assert!(t.uses_both_highways);
        assert_eq!(t.clusters[1].members, vec![0, 1]);
        let mut links = t.highway_links.clone();
        links.sort_by(|a, b| a.axis.cmp(&b.axis).then(a.from.cmp(&b.from)));
        assert_eq!(
            links,
            vec![
                HighwayLink {
                    axis: Axis::Hx,
                    from: q(0),
                    to: q(2)
                },
                HighwayLink {
                    axis: Axis::Hx,
                    from: q(5),
                    to: q(40)
                },
                HighwayLink {
                    axis: Axis::Hy,
                    from: q(0),
                    to: q(2)
                },
                HighwayLink {
                    axis: Axis::Hy,
                    from: q(5),
                    to: q(50)
                },
            ]
        );
    }

    #[test]
    fn paths_prefer_walking_on_ties() {
        let cfg = HighwayConfig::l1(Rational::from_int(2)).unwrap();
        // Walking 8 versus 1 + 4 + 1 = 6.
        let legs = shortest_path(&pt(1, 1), &pt(9, 1), &cfg);
        assert_eq!(legs.len(), 3);
        // Walking 4 versus 1 + 2 + 1 = 4.
        assert_eq!(shortest_path(&pt(1, 1), &pt(5, 1), &cfg).len(), 1);
        let legs = shortest_path(&pt(100, 1), &pt(1, 100), &cfg);
        assert_eq!(legs.len(), 4);
    }
}
