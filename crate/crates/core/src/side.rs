//! Splitting the input by the bisector `x = y`.

use std::cmp::Ordering;

use crate::geometry::Point;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Nearer the x-axis; bisector points land here.
    Hx,
    /// Strictly nearer the y-axis.
    Hy,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Hx => Side::Hy,
            Side::Hy => Side::Hx,
        }
    }

    /// Maps a point into the frame where this side sits below the bisector.
    /// The map is an involution.
    pub fn canonical<T: Scalar>(self, p: &Point<T>) -> Point<T> {
        match self {
            Side::Hx => p.clone(),
            Side::Hy => p.reflect(),
        }
    }
}

pub fn assign_side<T: Scalar>(p: &Point<T>) -> Side {
    if p.y <= p.x {
        Side::Hx
    } else {
        Side::Hy
    }
}

/// Points of one side in sweep order together with their input indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SideSequence<T> {
    pub side: Side,
    pub points: Vec<Point<T>>,
    pub indices: Vec<usize>,
}

impl<T: Scalar> SideSequence<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The points mapped into the canonical frame, still in sweep order.
    pub fn canonical_points(&self) -> Vec<Point<T>> {
        self.points.iter().map(|p| self.side.canonical(p)).collect()
    }
}

/// Sweep order: `H_x` by (x, y), `H_y` by (y, x).
pub fn sweep_cmp<T: Scalar>(side: Side, a: &Point<T>, b: &Point<T>) -> Ordering {
    side.canonical(a).cmp_xy(&side.canonical(b))
}

pub fn decompose<T: Scalar>(points: &[Point<T>]) -> (SideSequence<T>, SideSequence<T>) {
    let mut hx: Vec<usize> = Vec::new();
    let mut hy: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        match assign_side(p) {
            Side::Hx => hx.push(i),
            Side::Hy => hy.push(i),
        }
    }
    let build = |side: Side, mut idx: Vec<usize>| {
        idx.sort_by(|&a, &b| sweep_cmp(side, &points[a], &points[b]).then(a.cmp(&b)));
        SideSequence {
            side,
            points: idx.iter().map(|&i| points[i].clone()).collect(),
            indices: idx,
        }
    };
    (build(Side::Hx, hx), build(Side::Hy, hy))
}
