//! Euclidean convex hulls of cluster members.

use std::cmp::Ordering;

use crate::geometry::{on_segment, orient, Point};
use crate::scalar::Scalar;

/// Convex hull by Andrew's monotone chain, counterclockwise, starting at the
/// lexicographically smallest vertex. Collinear points are dropped, so a
/// collinear input yields its two extremes and coincident input one vertex.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Vec<Point<T>> {
    let mut pts: Vec<Point<T>> = points.to_vec();
    pts.sort_by(|a, b| a.cmp_xy(b));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2
            && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

/// Closed containment in a hull produced by [`convex_hull`].
pub fn hull_contains<T: Scalar>(hull: &[Point<T>], p: &Point<T>) -> bool {
    match hull.len() {
        0 => false,
        1 => &hull[0] == p,
        2 => on_segment(p, &hull[0], &hull[1]),
        n => (0..n).all(|i| !orient(&hull[i], &hull[(i + 1) % n], p).is_negative()),
    }
}

/// Undirected hull edges, each with endpoints in (x, y) order. A two-vertex
/// hull has one edge and a single vertex has none.
pub fn hull_edges<T: Scalar>(hull: &[Point<T>]) -> Vec<(Point<T>, Point<T>)> {
    let n = hull.len();
    let raw: Vec<(Point<T>, Point<T>)> = match n {
        0 | 1 => Vec::new(),
        2 => vec![(hull[0].clone(), hull[1].clone())],
        _ => (0..n)
            .map(|i| (hull[i].clone(), hull[(i + 1) % n].clone()))
            .collect(),
    };
    raw.into_iter()
        .map(|(a, b)| {
            if a.cmp_xy(&b) == Ordering::Greater {
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect()
}

/// Edges of `merged` that appear in none of `parts`.
pub fn new_edges<T: Scalar>(
    merged: &[Point<T>],
    parts: &[&[Point<T>]],
) -> Vec<(Point<T>, Point<T>)> {
    let old: Vec<(Point<T>, Point<T>)> = parts.iter().flat_map(|h| hull_edges(h)).collect();
    hull_edges(merged)
        .into_iter()
        .filter(|e| !old.contains(e))
        .collect()
}

/// `true` iff the two hulls share at least one point.
pub fn hulls_intersect<T: Scalar>(a: &[Point<T>], b: &[Point<T>]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    if a.iter().any(|p| hull_contains(b, p)) || b.iter().any(|p| hull_contains(a, p)) {
        return true;
    }
    let ea = hull_edges(a);
    let eb = hull_edges(b);
    ea.iter()
        .any(|(p, q)| eb.iter().any(|(r, s)| segments_cross(p, q, r, s)))
}

/// Closed segment intersection test.
pub fn segments_cross<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>, s: &Point<T>) -> bool {
    let d1 = orient(p, q, r);
    let d2 = orient(p, q, s);
    let d3 = orient(r, s, p);
    let d4 = orient(r, s, q);
    let opposite =
        |a: &T, b: &T| (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive());
    if opposite(&d1, &d2) && opposite(&d3, &d4) {
        return true;
    }
    on_segment(r, p, q) || on_segment(s, p, q) || on_segment(p, r, s) || on_segment(q, r, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::new(Rational::from_int(x), Rational::from_int(y))
    }

    #[test]
    fn hull_of_square_with_interior_point() {
        let h = convex_hull(&[pt(0, 0), pt(2, 0), pt(1, 1), pt(2, 2), pt(0, 2), pt(1, 0)]);
        assert_eq!(h, vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)]);
        assert!(hull_contains(&h, &pt(1, 1)));
        assert!(hull_contains(&h, &pt(2, 1)));
        assert!(!hull_contains(&h, &pt(3, 1)));
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(convex_hull(&[pt(1, 1), pt(1, 1)]), vec![pt(1, 1)]);
        let seg = convex_hull(&[pt(0, 0), pt(2, 2), pt(1, 1)]);
        assert_eq!(seg, vec![pt(0, 0), pt(2, 2)]);
        assert_eq!(hull_edges(&seg).len(), 1);
        assert!(hull_edges(&[pt(1, 1)]).is_empty());
    }

    #[test]
    fn two_singletons_form_one_new_edge() {
        let a = vec![pt(1, 1)];
        let b = vec![pt(5, 1)];
        let m = convex_hull(&[pt(1, 1), pt(5, 1)]);
        assert_eq!(new_edges(&m, &[&a, &b]), vec![(pt(1, 1), pt(5, 1))]);
    }

    #[test]
    fn new_edges_are_set_difference() {
        let a = convex_hull(&[pt(0, 0), pt(2, 0), pt(1, 2)]);
        let b = convex_hull(&[pt(4, 0), pt(6, 0), pt(5, 2)]);
        let all: Vec<_> = a.iter().chain(b.iter()).cloned().collect();
        let m = convex_hull(&all);
        let fresh = new_edges(&m, &[&a, &b]);
        assert_eq!(fresh.len(), 2);
        assert!(fresh.contains(&(pt(0, 0), pt(6, 0))));
        assert!(fresh.contains(&(pt(1, 2), pt(5, 2))));
    }

    #[test]
    fn intersection_tests() {
        let a = convex_hull(&[pt(0, 0), pt(4, 0), pt(0, 4)]);
        let b = convex_hull(&[pt(1, 1), pt(5, 5)]);
        assert!(hulls_intersect(&a, &b));
        let c = vec![pt(9, 9)];
        assert!(!hulls_intersect(&a, &c));
        assert!(segments_cross(&pt(0, 0), &pt(2, 2), &pt(0, 2), &pt(2, 0)));
        assert!(!segments_cross(&pt(0, 0), &pt(1, 1), &pt(2, 2), &pt(3, 3)));
    }
}
