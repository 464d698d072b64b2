//! Walking regions of points and segments.
//!
//! Under L1 the set of pairs `(p, q)` that prefer walking is cut out by
//! sixteen linear inequalities, so the walking region of a point or of a
//! segment is a convex polygon and two segments are related iff a clipped
//! unit square is nonempty. Under L2 with infinitely fast highways the gap
//! `|pq|^2 - (min(x_p,y_p) + min(x_q,y_q))^2` is quadratic on each cell where
//! the minima pick a fixed coordinate, and is minimised in closed form.

use crate::error::{HullError, Result};
use crate::geometry::{in_walking_region, HighwayConfig, Point};
use crate::polygon::{eliminate_unit_param, ConvexPolygon, HalfPlane, Lin3};
use crate::scalar::Scalar;

type LinPoint<T> = [Lin3<T>; 2];

fn lin_const<T: Scalar>(p: &Point<T>) -> LinPoint<T> {
    [Lin3::constant(p.x.clone()), Lin3::constant(p.y.clone())]
}

/// `a + var * (b - a)` for unknown index `var`.
fn lin_segment<T: Scalar>(a: &Point<T>, b: &Point<T>, var: usize) -> LinPoint<T> {
    let mut x = Lin3::constant(a.x.clone());
    x.c[var] = b.x.clone() - a.x.clone();
    let mut y = Lin3::constant(a.y.clone());
    y.c[var] = b.y.clone() - a.y.clone();
    [x, y]
}

/// The sixteen forms `f <= 0` whose conjunction says the direct L1 walk
/// between `p` and `q` is no slower than any of the four highway routes.
pub fn l1_gap_forms<T: Scalar>(p: &[Lin3<T>; 2], q: &[Lin3<T>; 2], inv: &T) -> Vec<Lin3<T>> {
    let dx = p[0].sub(&q[0]);
    let dy = p[1].sub(&q[1]);
    let slack = T::one() - inv.clone();
    let mut out = Vec::with_capacity(16);
    for sx in [T::one(), -T::one()] {
        for sy in [T::one(), -T::one()] {
            let ax = dx.scale(&sx);
            let ay = dy.scale(&sy);
            let walk = ax.add(&ay);
            out.push(ax.scale(&slack).add(&ay).sub(&p[1]).sub(&q[1]));
            out.push(ax.add(&ay.scale(&slack)).sub(&p[0]).sub(&q[0]));
            out.push(
                walk.sub(&p[1])
                    .sub(&p[0].scale(inv))
                    .sub(&q[1].scale(inv))
                    .sub(&q[0]),
            );
            out.push(
                walk.sub(&p[0])
                    .sub(&p[1].scale(inv))
                    .sub(&q[0].scale(inv))
                    .sub(&q[1]),
            );
        }
    }
    out
}

fn require_l1<T: Scalar>(cfg: &HighwayConfig<T>) -> Result<T> {
    match cfg {
        HighwayConfig::L1 { .. } => Ok(cfg.inverse_speed()),
        HighwayConfig::L2Inf => Err(HullError::UnsupportedMetric("L1")),
    }
}

/// Axis box guaranteed to contain the walking region of every point of the
/// given set: `|dx| + |dy| <= 2k (x_q + y_q)`.
fn region_box<T: Scalar>(pts: &[&Point<T>], cfg: &HighwayConfig<T>) -> ConvexPolygon<T> {
    let two_k = T::two() * cfg.reach_factor();
    let mut hx = T::zero();
    let mut hy = T::zero();
    for p in pts {
        let r = two_k.clone() * (p.x.clone() + p.y.clone());
        hx = T::max_of(&hx, &(p.x.clone() + r.clone()));
        hy = T::max_of(&hy, &(p.y.clone() + r));
    }
    ConvexPolygon::rectangle(T::zero(), T::zero(), hx, hy)
}

/// Walking region of `q` under L1 as a (possibly degenerate) convex polygon.
pub fn walking_region_polygon<T: Scalar>(
    q: &Point<T>,
    cfg: &HighwayConfig<T>,
) -> Result<ConvexPolygon<T>> {
    let inv = require_l1(cfg)?;
    let b = [Lin3::var(0), Lin3::var(1)];
    let planes: Vec<HalfPlane<T>> = l1_gap_forms(&b, &lin_const(q), &inv)
        .iter()
        .map(Lin3::to_half_plane)
        .collect();
    Ok(region_box(&[q], cfg).clip_all(&planes))
}

/// Union of the walking regions of all points of segment `ab` under L1.
pub fn edge_walking_region_polygon<T: Scalar>(
    a: &Point<T>,
    b: &Point<T>,
    cfg: &HighwayConfig<T>,
) -> Result<ConvexPolygon<T>> {
    let inv = require_l1(cfg)?;
    let free = [Lin3::var(0), Lin3::var(1)];
    let forms = l1_gap_forms(&free, &lin_segment(a, b, 2), &inv);
    let planes = eliminate_unit_param(&forms);
    Ok(region_box(&[a, b], cfg).clip_all(&planes))
}

/// Necessary condition for two point sets to contain a walking pair.
///
/// Any walking pair satisfies `|dx| <= k (y_p + y_q)` and
/// `|dy| <= k (x_p + x_q)`, which splits into four one-dimensional interval
/// tests on `x -/+ k y` and `y -/+ k x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reach<T> {
    pub min_u: T,
    pub max_w: T,
    pub min_u_t: T,
    pub max_w_t: T,
}

impl<T: Scalar> Reach<T> {
    pub fn of_point(p: &Point<T>, k: &T) -> Self {
        Reach {
            min_u: p.x.clone() - k.clone() * p.y.clone(),
            max_w: p.x.clone() + k.clone() * p.y.clone(),
            min_u_t: p.y.clone() - k.clone() * p.x.clone(),
            max_w_t: p.y.clone() + k.clone() * p.x.clone(),
        }
    }

    pub fn of_points<'a, I>(pts: I, k: &T) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Point<T>>,
    {
        let mut it = pts.into_iter();
        let mut acc = Reach::of_point(it.next()?, k);
        for p in it {
            acc.absorb(&Reach::of_point(p, k));
        }
        Some(acc)
    }

    pub fn absorb(&mut self, o: &Self) {
        self.min_u = T::min_of(&self.min_u, &o.min_u);
        self.max_w = T::max_of(&self.max_w, &o.max_w);
        self.min_u_t = T::min_of(&self.min_u_t, &o.min_u_t);
        self.max_w_t = T::max_of(&self.max_w_t, &o.max_w_t);
    }

    pub fn may_relate(&self, o: &Self) -> bool {
        self.min_u <= o.max_w
            && o.min_u <= self.max_w
            && self.min_u_t <= o.max_w_t
            && o.min_u_t <= self.max_w_t
    }
}

/// `true` iff some point of segment `a0a1` and some point of segment `b0b1`
/// are in each other's walking region. Degenerate segments are points.
pub fn segments_related<T: Scalar>(
    a0: &Point<T>,
    a1: &Point<T>,
    b0: &Point<T>,
    b1: &Point<T>,
    cfg: &HighwayConfig<T>,
) -> bool {
    match cfg {
        HighwayConfig::L1 { .. } => {
            let ends = [(a0, b0), (a0, b1), (a1, b0), (a1, b1)];
            if ends.iter().any(|(p, q)| in_walking_region(p, q, cfg)) {
                return true;
            }
            let inv = cfg.inverse_speed();
            let forms = l1_gap_forms(&lin_segment(a0, a1, 0), &lin_segment(b0, b1, 1), &inv);
            let planes: Vec<_> = forms.iter().map(Lin3::to_half_plane).collect();
            !ConvexPolygon::rectangle(T::zero(), T::zero(), T::one(), T::one())
                .clip_all(&planes)
                .is_empty()
        }
        HighwayConfig::L2Inf => l2inf_segments_related(a0, a1, b0, b1),
    }
}

/// `true` iff some point of segment `ab` is in the walking region of `q`.
pub fn wr_edge_membership<T: Scalar>(
    a: &Point<T>,
    b: &Point<T>,
    q: &Point<T>,
    cfg: &HighwayConfig<T>,
) -> bool {
    segments_related(a, b, q, q, cfg)
}

/// Splits `[0, 1]` where the segment crosses the bisector and returns each
/// piece with the affine form of `min(x, y)` on it.
fn gap_cells<T: Scalar>(a: &Point<T>, b: &Point<T>, var: usize) -> Vec<(T, T, Lin3<T>)> {
    let line = lin_segment(a, b, var);
    let g0 = a.x.clone() - a.y.clone();
    let g1 = (b.x.clone() - b.y.clone()) - g0.clone();
    let mut cuts = vec![T::zero()];
    if !g1.is_zero() {
        let s = -g0 / g1;
        if s.is_positive() && s < T::one() {
            cuts.push(s);
        }
    }
    cuts.push(T::one());
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let mid = a.lerp(b, &(w[0].clone() + w[1].clone()).half());
        let m = if mid.y <= mid.x {
            line[1].clone()
        } else {
            line[0].clone()
        };
        out.push((w[0].clone(), w[1].clone(), m));
    }
    out
}

/// Coefficients of `l^2` as `[s^2, st, t^2, s, t, 1]` for `l = c0 s + c1 t + k`.
fn square_form<T: Scalar>(l: &Lin3<T>) -> [T; 6] {
    let (a, b, k) = (l.c[0].clone(), l.c[1].clone(), l.k.clone());
    let two = T::two();
    [
        a.clone() * a.clone(),
        two.clone() * a.clone() * b.clone(),
        b.clone() * b.clone(),
        two.clone() * a * k.clone(),
        two * b * k.clone(),
        k.clone() * k,
    ]
}

fn quad_eval<T: Scalar>(q: &[T; 6], s: &T, t: &T) -> T {
    q[0].clone() * s.clone() * s.clone()
        + q[1].clone() * s.clone() * t.clone()
        + q[2].clone() * t.clone() * t.clone()
        + q[3].clone() * s.clone()
        + q[4].clone() * t.clone()
        + q[5].clone()
}

fn within<T: Scalar>(v: &T, lo: &T, hi: &T) -> bool {
    lo <= v && v <= hi
}

/// `true` iff the quadratic reaches a non-positive value on the rectangle.
fn quad_min_nonpositive<T: Scalar>(q: &[T; 6], s0: &T, s1: &T, t0: &T, t1: &T) -> bool {
    let hit = |s: &T, t: &T| !quad_eval(q, s, t).is_positive();
    for s in [s0, s1] {
        for t in [t0, t1] {
            if hit(s, t) {
                return true;
            }
        }
    }
    let (a, b, c, d, e) = (&q[0], &q[1], &q[2], &q[3], &q[4]);
    if c.is_positive() {
        for s in [s0, s1] {
            let t = -(b.clone() * s.clone() + e.clone()) / (T::two() * c.clone());
            if within(&t, t0, t1) && hit(s, &t) {
                return true;
            }
        }
    }
    if a.is_positive() {
        for t in [t0, t1] {
            let s = -(b.clone() * t.clone() + d.clone()) / (T::two() * a.clone());
            if within(&s, s0, s1) && hit(&s, t) {
                return true;
            }
        }
        let det = T::from_int(4) * a.clone() * c.clone() - b.clone() * b.clone();
        if det.is_positive() {
            let s = (b.clone() * e.clone() - T::two() * c.clone() * d.clone()) / det.clone();
            let t = (b.clone() * d.clone() - T::two() * a.clone() * e.clone()) / det;
            if within(&s, s0, s1) && within(&t, t0, t1) && hit(&s, &t) {
                return true;
            }
        }
    }
    false
}

fn l2inf_segments_related<T: Scalar>(
    a0: &Point<T>,
    a1: &Point<T>,
    b0: &Point<T>,
    b1: &Point<T>,
) -> bool {
    let pa = lin_segment(a0, a1, 0);
    let pb = lin_segment(b0, b1, 1);
    let dx = pa[0].sub(&pb[0]);
    let dy = pa[1].sub(&pb[1]);
    let sx = square_form(&dx);
    let sy = square_form(&dy);
    for (s0, s1, ma) in gap_cells(a0, a1, 0) {
        for (t0, t1, mb) in gap_cells(b0, b1, 1) {
            let sm = square_form(&ma.add(&mb));
            let q: [T; 6] = std::array::from_fn(|i| sx[i].clone() + sy[i].clone() - sm[i].clone());
            if quad_min_nonpositive(&q, &s0, &s1, &t0, &t1) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn rand_pt(rng: &mut ChaCha8Rng, hi: i64) -> Point<Rational> {
        Point::new(
            q(rng.gen_range(0..=hi * 4), 4),
            q(rng.gen_range(0..=hi * 4), 4),
        )
    }

    fn configs() -> Vec<HighwayConfig<Rational>> {
        vec![
            HighwayConfig::l1(q(3, 2)).unwrap(),
            HighwayConfig::l1(q(2, 1)).unwrap(),
            HighwayConfig::l1(q(5, 1)).unwrap(),
            HighwayConfig::L2Inf,
        ]
    }

    #[test]
    fn point_polygon_matches_predicate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for cfg in configs().into_iter().take(3) {
            for _ in 0..60 {
                let c = rand_pt(&mut rng, 10);
                let poly = walking_region_polygon(&c, &cfg).unwrap();
                for _ in 0..40 {
                    let b = rand_pt(&mut rng, 30);
                    assert_eq!(
                        poly.contains(&b),
                        in_walking_region(&c, &b, &cfg),
                        "{c:?} {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn origin_region_is_a_single_point() {
        let cfg = HighwayConfig::l1(q(2, 1)).unwrap();
        let poly = walking_region_polygon(&pt(0, 0), &cfg).unwrap();
        assert_eq!(poly.vertices, vec![pt(0, 0)]);
    }

    #[test]
    fn edge_membership_finds_interior_witness() {
        let cfg = HighwayConfig::l1(q(2, 1)).unwrap();
        // Both endpoints tie with the H_x route here, so they already contain c.
        let c = Point::new(q(5, 1), q(1, 1) + q(1, 1000));
        assert!(in_walking_region(&pt(1, 1), &c, &cfg));
        assert!(in_walking_region(&pt(9, 1), &c, &cfg));
        assert!(wr_edge_membership(&pt(1, 1), &pt(9, 1), &c, &cfg));

        let (a, b, c) = (pt(10, 6), pt(6, 3), pt(8, 0));
        assert!(!in_walking_region(&a, &c, &cfg));
        assert!(!in_walking_region(&b, &c, &cfg));
        assert!(in_walking_region(&Point::new(q(8, 1), q(9, 2)), &c, &cfg));
        assert!(wr_edge_membership(&a, &b, &c, &cfg));
        assert!(wr_edge_membership(&a, &a, &a, &cfg));
        assert!(wr_edge_membership(&a, &a, &a, &HighwayConfig::L2Inf));
    }

    /// Dense sampling of both segments; exact predicate on each sample pair.
    fn sampled_related(
        a0: &Point<Rational>,
        a1: &Point<Rational>,
        b0: &Point<Rational>,
        b1: &Point<Rational>,
        cfg: &HighwayConfig<Rational>,
    ) -> bool {
        let steps = 24;
        (0..=steps).any(|i| {
            let p = a0.lerp(a1, &q(i, steps));
            (0..=steps).any(|j| in_walking_region(&p, &b0.lerp(b1, &q(j, steps)), cfg))
        })
    }

    #[test]
    fn segment_relation_is_implied_by_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for cfg in configs() {
            for _ in 0..150 {
                let (a0, a1, b0, b1) = (
                    rand_pt(&mut rng, 12),
                    rand_pt(&mut rng, 12),
                    rand_pt(&mut rng, 12),
                    rand_pt(&mut rng, 12),
                );
                let exact = segments_related(&a0, &a1, &b0, &b1, &cfg);
                if sampled_related(&a0, &a1, &b0, &b1, &cfg) {
                    assert!(exact, "{a0:?} {a1:?} {b0:?} {b1:?} {cfg:?}");
                }
                assert_eq!(exact, segments_related(&b0, &b1, &a0, &a1, &cfg));
                assert_eq!(exact, segments_related(&a1, &a0, &b1, &b0, &cfg));
            }
        }
    }

    #[test]
    fn edge_polygon_matches_edge_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for cfg in configs().into_iter().take(3) {
            for _ in 0..40 {
                let (a, b) = (rand_pt(&mut rng, 10), rand_pt(&mut rng, 10));
                let poly = edge_walking_region_polygon(&a, &b, &cfg).unwrap();
                for _ in 0..30 {
                    let c = rand_pt(&mut rng, 30);
                    assert_eq!(poly.contains(&c), wr_edge_membership(&a, &b, &c, &cfg));
                }
            }
        }
    }

    #[test]
    fn reach_never_rejects_related_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for cfg in configs() {
            let k = cfg.reach_factor();
            for _ in 0..2000 {
                let (a, b) = (rand_pt(&mut rng, 20), rand_pt(&mut rng, 20));
                if in_walking_region(&a, &b, &cfg) {
                    assert!(Reach::of_point(&a, &k).may_relate(&Reach::of_point(&b, &k)));
                }
            }
        }
    }
}
