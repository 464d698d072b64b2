//! Convex polygons built by clipping with closed half-planes.

use crate::geometry::{on_segment, orient, Point};
use crate::scalar::Scalar;

/// Closed half-plane `a*x + b*y + c <= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlane<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> HalfPlane<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        HalfPlane { a, b, c }
    }

    pub fn eval(&self, p: &Point<T>) -> T {
        self.a.clone() * p.x.clone() + self.b.clone() * p.y.clone() + self.c.clone()
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        !self.eval(p).is_positive()
    }
}

/// Affine form `c[0]*u + c[1]*v + c[2]*w + k` over three unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct Lin3<T> {
    pub c: [T; 3],
    pub k: T,
}

impl<T: Scalar> Lin3<T> {
    pub fn constant(k: T) -> Self {
        Lin3 {
            c: [T::zero(), T::zero(), T::zero()],
            k,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut l = Lin3::constant(T::zero());
        l.c[i] = T::one();
        l
    }

    pub fn add(&self, o: &Self) -> Self {
        Lin3 {
            c: [
                self.c[0].clone() + o.c[0].clone(),
                self.c[1].clone() + o.c[1].clone(),
                self.c[2].clone() + o.c[2].clone(),
            ],
            k: self.k.clone() + o.k.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        Lin3 {
            c: [
                self.c[0].clone() * s.clone(),
                self.c[1].clone() * s.clone(),
                self.c[2].clone() * s.clone(),
            ],
            k: self.k.clone() * s.clone(),
        }
    }

    /// Drops the third unknown and reads the form as a half-plane in (u, v).
    pub fn to_half_plane(&self) -> HalfPlane<T> {
        HalfPlane::new(self.c[0].clone(), self.c[1].clone(), self.k.clone())
    }
}

/// Eliminates the third unknown `w` from `forms[i] <= 0` with `w` restricted
/// to `[0, 1]` (Fourier-Motzkin). The result describes the exact projection
/// onto (u, v).
pub fn eliminate_unit_param<T: Scalar>(forms: &[Lin3<T>]) -> Vec<HalfPlane<T>> {
    let mut rows: Vec<Lin3<T>> = forms.to_vec();
    // 0 <= w <= 1
    let mut lower = Lin3::constant(T::zero());
    lower.c[2] = -T::one();
    rows.push(lower);
    let mut upper = Lin3::constant(-T::one());
    upper.c[2] = T::one();
    rows.push(upper);

    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for r in rows {
        if r.c[2].is_positive() {
            pos.push(r);
        } else if r.c[2].is_negative() {
            neg.push(r);
        } else {
            out.push(r.to_half_plane());
        }
    }
    for p in &pos {
        for n in &neg {
            // p.c2 > 0, n.c2 < 0: (-n.c2) * p + p.c2 * n cancels w.
            let combined = p.scale(&-n.c[2].clone()).add(&n.scale(&p.c[2]));
            let hp = combined.to_half_plane();
            if hp.a.is_zero() && hp.b.is_zero() && !hp.c.is_positive() {
                continue;
            }
            out.push(hp);
        }
    }
    out
}

/// Convex polygon stored counterclockwise. May be degenerate (a point or a
/// segment) when produced by clipping.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon<T> {
    pub vertices: Vec<Point<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    pub fn rectangle(x0: T, y0: T, x1: T, y1: T) -> Self {
        let mut vertices = vec![
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0),
            Point::new(x1, y1.clone()),
            Point::new(x0, y1),
        ];
        vertices.dedup();
        while vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        ConvexPolygon { vertices }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Sutherland-Hodgman against a closed half-plane.
    pub fn clip(&self, hp: &HalfPlane<T>) -> Self {
        let n = self.vertices.len();
        if n == 0 {
            return self.clone();
        }
        let vals: Vec<T> = self.vertices.iter().map(|p| hp.eval(p)).collect();
        if vals.iter().all(|v| !v.is_positive()) {
            return self.clone();
        }
        let mut out: Vec<Point<T>> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (u, v) = (&self.vertices[i], &self.vertices[j]);
            let (fu, fv) = (&vals[i], &vals[j]);
            if !fu.is_positive() {
                out.push(u.clone());
            }
            if (fu.is_negative() && fv.is_positive()) || (fu.is_positive() && fv.is_negative()) {
                let t = fu.clone() / (fu.clone() - fv.clone());
                out.push(u.lerp(v, &t));
            }
        }
        out.dedup();
        while out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        ConvexPolygon { vertices: out }
    }

    pub fn clip_all<'a, I>(&self, planes: I) -> Self
    where
        I: IntoIterator<Item = &'a HalfPlane<T>>,
    {
        let mut poly = self.clone();
        for hp in planes {
            if poly.is_empty() {
                break;
            }
            poly = poly.clip(hp);
        }
        poly
    }

    /// Twice the signed area.
    pub fn doubled_area(&self) -> T {
        let n = self.vertices.len();
        let mut acc = T::zero();
        for i in 0..n {
            let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            acc = acc + p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone();
        }
        acc
    }

    /// Closed containment; handles point and segment degeneracies.
    pub fn contains(&self, p: &Point<T>) -> bool {
        let vs = &self.vertices;
        match vs.len() {
            0 => false,
            1 => &vs[0] == p,
            _ => {
                if self.doubled_area().is_zero() {
                    let (lo, hi) = extreme_pair(vs);
                    return on_segment(p, lo, hi);
                }
                (0..vs.len()).all(|i| !orient(&vs[i], &vs[(i + 1) % vs.len()], p).is_negative())
            }
        }
    }

    pub fn bbox(&self) -> Option<(Point<T>, Point<T>)> {
        let first = self.vertices.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for v in &self.vertices[1..] {
            lo.x = T::min_of(&lo.x, &v.x);
            lo.y = T::min_of(&lo.y, &v.y);
            hi.x = T::max_of(&hi.x, &v.x);
            hi.y = T::max_of(&hi.y, &v.y);
        }
        Some((lo, hi))
    }

    /// Edges traversed downward in counterclockwise order, i.e. the left
    /// boundary, each returned as (upper endpoint, lower endpoint).
    pub fn left_chain(&self) -> Vec<(Point<T>, Point<T>)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i in 0..n {
            let (u, v) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            if v.y < u.y {
                out.push((u.clone(), v.clone()));
            }
        }
        out
    }

    /// Edges traversed upward in counterclockwise order (the right boundary).
    pub fn right_chain(&self) -> Vec<(Point<T>, Point<T>)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i in 0..n {
            let (u, v) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            if v.y > u.y {
                out.push((u.clone(), v.clone()));
            }
        }
        out
    }
}

fn extreme_pair<T: Scalar>(vs: &[Point<T>]) -> (&Point<T>, &Point<T>) {
    let mut lo = &vs[0];
    let mut hi = &vs[0];
    for v in vs {
        if v.cmp_xy(lo).is_lt() {
            lo = v;
        }
        if v.cmp_xy(hi).is_gt() {
            hi = v;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::new(r(x), r(y))
    }

    #[test]
    fn clip_square_by_diagonal() {
        let sq = ConvexPolygon::rectangle(r(0), r(0), r(2), r(2));
        // x - y <= 0
        let tri = sq.clip(&HalfPlane::new(r(1), r(-1), r(0)));
        assert_eq!(tri.vertices.len(), 3);
        assert!(tri.contains(&pt(0, 1)));
        assert!(tri.contains(&pt(1, 1)));
        assert!(!tri.contains(&pt(2, 1)));
        assert_eq!(tri.doubled_area(), r(4));
    }

    #[test]
    fn clip_can_collapse_to_segment_and_point() {
        let sq = ConvexPolygon::rectangle(r(0), r(0), r(2), r(2));
        let seg = sq
            .clip(&HalfPlane::new(r(1), r(0), r(-1)))
            .clip(&HalfPlane::new(r(-1), r(0), r(1)));
        assert!(seg.contains(&pt(1, 0)));
        assert!(seg.contains(&pt(1, 2)));
        assert!(!seg.contains(&pt(1, 3)));
        assert!(!seg.contains(&pt(0, 1)));
        let p = seg.clip(&HalfPlane::new(r(0), r(1), r(0)));
        assert!(p.contains(&pt(1, 0)));
        assert!(!p.contains(&pt(1, 1)));
        let empty = p.clip(&HalfPlane::new(r(0), r(-1), r(1)));
        assert!(empty.is_empty());
    }

    #[test]
    fn fourier_motzkin_projects_a_moving_point() {
        // (u, v) = (w, 0) for w in [0, 1]  ->  segment [0,1] x {0}
        let mut f1 = Lin3::var(0).sub(&Lin3::var(2));
        let f2 = f1.scale(&-r(1));
        let f3 = Lin3::var(1);
        let f4 = f3.scale(&-r(1));
        f1.k = r(0);
        let planes = eliminate_unit_param(&[f1, f2, f3, f4]);
        let poly = ConvexPolygon::rectangle(r(-5), r(-5), r(5), r(5)).clip_all(&planes);
        assert!(poly.contains(&pt(0, 0)));
        assert!(poly.contains(&pt(1, 0)));
        assert!(!poly.contains(&pt(2, 0)));
        assert!(!poly.contains(&pt(-1, 0)));
    }
}
