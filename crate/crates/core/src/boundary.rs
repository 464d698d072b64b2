//! Boundary chains of single-point walking regions.
//!
//! Chains are closed loops of pieces. Membership is decided with a
//! horizontal slice: the region is convex along every horizontal line, so a
//! point is inside iff the chain crosses its height both at or left of it and
//! at or right of it.

use std::cmp::Ordering;

use crate::error::{HullError, Result};
use crate::geometry::{HighwayConfig, Point};
use crate::scalar::Scalar;
use crate::surd::Surd;
use crate::walking::walking_region_polygon;

/// Line the parabola is equidistant from, together with its focus.
#[derive(Debug, Clone, PartialEq)]
pub enum Directrix<T> {
    /// `y = c`
    Horizontal(T),
    /// `x = c`
    Vertical(T),
}

/// Which closed half of the plane, split by `x = y`, an arc lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BisectorHalf {
    /// `y <= x`
    Below,
    /// `y >= x`
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryPiece<T> {
    Segment {
        from: Point<T>,
        to: Point<T>,
    },
    /// The part of the parabola `{b : |b - focus| = dist(b, directrix)}`
    /// lying in `keep`.
    Arc {
        focus: Point<T>,
        directrix: Directrix<T>,
        keep: BisectorHalf,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryChain<T> {
    pub pieces: Vec<BoundaryPiece<T>>,
}

impl<T: Scalar> BoundaryPiece<T> {
    /// x-coordinates where the piece meets the line `y = level`.
    pub fn slice(&self, level: &T) -> Vec<Surd<T>> {
        match self {
            BoundaryPiece::Segment { from, to } => {
                if from.y == to.y {
                    if &from.y == level {
                        return vec![Surd::rational(from.x.clone()), Surd::rational(to.x.clone())];
                    }
                    return Vec::new();
                }
                let (lo, hi) = if from.y < to.y {
                    (from, to)
                } else {
                    (to, from)
                };
                if level < &lo.y || level > &hi.y {
                    return Vec::new();
                }
                let t = (level.clone() - lo.y.clone()) / (hi.y.clone() - lo.y.clone());
                vec![Surd::rational(lo.lerp(hi, &t).x)]
            }
            BoundaryPiece::Arc {
                focus,
                directrix,
                keep,
            } => {
                let raw = match directrix {
                    Directrix::Horizontal(c) => {
                        let a = level.clone() - c.clone();
                        let b = level.clone() - focus.y.clone();
                        let disc = a.clone() * a - b.clone() * b;
                        if disc.is_negative() {
                            Vec::new()
                        } else {
                            vec![
                                Surd::new(focus.x.clone(), -T::one(), disc.clone()),
                                Surd::new(focus.x.clone(), T::one(), disc),
                            ]
                        }
                    }
                    Directrix::Vertical(c) => {
                        let den = T::two() * (c.clone() - focus.x.clone());
                        if den.is_zero() {
                            Vec::new()
                        } else {
                            let dy = level.clone() - focus.y.clone();
                            let num = c.clone() * c.clone()
                                - focus.x.clone() * focus.x.clone()
                                - dy.clone() * dy;
                            vec![Surd::rational(num / den)]
                        }
                    }
                };
                raw.into_iter()
                    .filter(|x| match keep {
                        BisectorHalf::Below => x.cmp_rational(level) != Ordering::Less,
                        BisectorHalf::Above => x.cmp_rational(level) != Ordering::Greater,
                    })
                    .collect()
            }
        }
    }
}

impl<T: Scalar> BoundaryChain<T> {
    pub fn contains(&self, p: &Point<T>) -> bool {
        let mut left = false;
        let mut right = false;
        for piece in &self.pieces {
            for x in piece.slice(&p.y) {
                match x.cmp_rational(&p.x) {
                    Ordering::Less => left = true,
                    Ordering::Greater => right = true,
                    Ordering::Equal => return true,
                }
            }
            if left && right {
                return true;
            }
        }
        false
    }

    fn single_point(p: Point<T>) -> Self {
        BoundaryChain {
            pieces: vec![BoundaryPiece::Segment {
                from: p.clone(),
                to: p,
            }],
        }
    }
}

fn require_canonical<T: Scalar>(q: &Point<T>) -> Result<()> {
    if q.x < q.y {
        return Err(HullError::NotCanonical);
    }
    Point::in_quadrant(q.x.clone(), q.y.clone()).map(|_| ())
}

/// Boundary of the L1 walking region of `q`, as the closed polygon loop.
pub fn wr_boundary_l1<T: Scalar>(q: &Point<T>, cfg: &HighwayConfig<T>) -> Result<BoundaryChain<T>> {
    require_canonical(q)?;
    let poly = walking_region_polygon(q, cfg)?;
    let vs = &poly.vertices;
    if vs.len() == 1 {
        return Ok(BoundaryChain::single_point(vs[0].clone()));
    }
    let pieces = (0..vs.len())
        .map(|i| BoundaryPiece::Segment {
            from: vs[i].clone(),
            to: vs[(i + 1) % vs.len()].clone(),
        })
        .collect();
    Ok(BoundaryChain { pieces })
}

/// Boundary of the walking region of `q` under L2 with infinite highway
/// speed. Below the bisector the walk competes with `H_x`, above it with
/// `H_y`; each competition is a parabola with focus `q`.
pub fn wr_boundary_l2inf<T: Scalar>(q: &Point<T>) -> Result<BoundaryChain<T>> {
    require_canonical(q)?;
    if q.y.is_zero() {
        // Degenerates to the vertical segment {x_q} x [0, x_q].
        let foot = Point::new(q.x.clone(), T::zero());
        let top = Point::new(q.x.clone(), q.x.clone());
        if q.x.is_zero() {
            return Ok(BoundaryChain::single_point(foot));
        }
        return Ok(BoundaryChain {
            pieces: vec![BoundaryPiece::Segment {
                from: foot,
                to: top,
            }],
        });
    }
    let c = -q.y.clone();
    Ok(BoundaryChain {
        pieces: vec![
            BoundaryPiece::Arc {
                focus: q.clone(),
                directrix: Directrix::Horizontal(c.clone()),
                keep: BisectorHalf::Below,
            },
            BoundaryPiece::Arc {
                focus: q.clone(),
                directrix: Directrix::Vertical(c),
                keep: BisectorHalf::Above,
            },
        ],
    })
}

/// Apex and slope magnitude of one of the four wedge regions whose
/// intersection bounds the L1 walking region.
#[derive(Debug, Clone, PartialEq)]
pub struct Wedge<T> {
    pub apex: Point<T>,
    pub slope: T,
}

/// The four bounding wedges of the L1 walking region of canonical `q`:
/// two shallow wedges centred on `x = x_q` and two steep wedges centred on
/// `y = y_q`.
pub fn l1_bounding_wedges<T: Scalar>(
    q: &Point<T>,
    cfg: &HighwayConfig<T>,
) -> Result<[Wedge<T>; 4]> {
    require_canonical(q)?;
    let inv = match cfg {
        HighwayConfig::L1 { .. } => cfg.inverse_speed(),
        HighwayConfig::L2Inf => return Err(HullError::UnsupportedMetric("L1")),
    };
    let shallow = (T::one() - inv.clone()).half();
    let steep = T::two() / (T::one() - inv.clone());
    let diff = (q.x.clone() - q.y.clone()).half();
    let sum = (q.x.clone() + q.y.clone()) * inv.half();
    Ok([
        Wedge {
            apex: Point::new(q.x.clone(), T::zero()),
            slope: shallow.clone(),
        },
        Wedge {
            apex: Point::new(q.x.clone(), diff.clone() + sum.clone()),
            slope: shallow,
        },
        Wedge {
            apex: Point::new(T::zero(), q.y.clone()),
            slope: steep.clone(),
        },
        Wedge {
            apex: Point::new(sum - diff, q.y.clone()),
            slope: steep,
        },
    ])
}
