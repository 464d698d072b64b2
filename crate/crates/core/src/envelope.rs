//! Outer boundary of the walking regions of one side under L2 with
//! infinitely fast highways, as seen from the other side.
//!
//! In the canonical frame a point `b = (X, Y)` with `X <= Y` lies in the
//! walking region of `q = (x, y)` (with `y <= x`) iff `X >= f_q(Y)` where
//! `f_q(Y) = (Y^2 - 2yY + x^2) / (2(x + y))`. The union of all regions is
//! therefore bounded by the lower envelope of these parabolas, which is
//! built by divide and conquer with exact breakpoints.

use std::cmp::Ordering;

use crate::geometry::Point;
use crate::scalar::{sign, Scalar};
use crate::surd::{quadratic_roots, Surd};

/// `a Y^2 + b Y + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Parabola<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> Parabola<T> {
    /// Boundary of the walking region of canonical `q` across the bisector,
    /// or `None` for the origin (whose region is the origin alone).
    pub fn of_point(q: &Point<T>) -> Option<Self> {
        let s = q.x.clone() + q.y.clone();
        if s.is_zero() {
            return None;
        }
        let two_s = T::two() * s;
        Some(Parabola {
            a: T::one() / two_s.clone(),
            b: -(T::two() * q.y.clone()) / two_s.clone(),
            c: q.x.clone() * q.x.clone() / two_s,
        })
    }

    pub fn eval(&self, y: &T) -> T {
        (self.a.clone() * y.clone() + self.b.clone()) * y.clone() + self.c.clone()
    }

    fn minus(&self, o: &Self) -> Self {
        Parabola {
            a: self.a.clone() - o.a.clone(),
            b: self.b.clone() - o.b.clone(),
            c: self.c.clone() - o.c.clone(),
        }
    }

    /// Sign of the polynomial on an open interval starting at `s` that
    /// contains none of its roots.
    fn sign_after(&self, s: &Surd<T>) -> i8 {
        let roots = quadratic_roots(&self.a, &self.b, &self.c);
        if self.a.is_zero() {
            if self.b.is_zero() {
                return sign(&self.c);
            }
            let after = roots[0].cmp_surd(s) != Ordering::Greater;
            let sb = sign(&self.b);
            return if after { sb } else { -sb };
        }
        let sa = sign(&self.a);
        match roots.len() {
            2 => {
                if roots[1].cmp_surd(s) != Ordering::Greater {
                    sa
                } else if roots[0].cmp_surd(s) != Ordering::Greater {
                    -sa
                } else {
                    sa
                }
            }
            _ => sa,
        }
    }
}

/// Bisector heights `t` with `(t, t)` in the walking region of canonical `q`:
/// `(x + 2y) -/+ 2 sqrt(y (x + y))`.
pub fn bisector_interval<T: Scalar>(q: &Point<T>) -> (Surd<T>, Surd<T>) {
    let mid = q.x.clone() + T::two() * q.y.clone();
    let rad = q.y.clone() * (q.x.clone() + q.y.clone());
    (
        Surd::new(mid.clone(), -T::two(), rad.clone()),
        Surd::new(mid, T::two(), rad),
    )
}

/// Piece of the envelope: owner `owner` is minimal from `start` up to the
/// next piece's start.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece<T> {
    pub start: Surd<T>,
    pub owner: usize,
}

/// A piece clipped to where its owner's region actually reaches the
/// bisector side, i.e. the stretch of the bisector covered by it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryNode<T> {
    pub from: Surd<T>,
    pub to: Surd<T>,
    pub owner: usize,
}

#[derive(Debug, Clone)]
pub struct OuterBoundary<T> {
    /// Canonical points the envelope was built from, indexed by owner.
    pub sources: Vec<Point<T>>,
    parabolas: Vec<Option<Parabola<T>>>,
    pub pieces: Vec<Piece<T>>,
}

fn later<'a, T: Scalar>(a: &'a Surd<T>, b: &'a Surd<T>) -> &'a Surd<T> {
    if a.cmp_surd(b) == Ordering::Less {
        b
    } else {
        a
    }
}

fn earlier<'a, T: Scalar>(a: &'a Surd<T>, b: &'a Surd<T>) -> &'a Surd<T> {
    if a.cmp_surd(b) == Ordering::Greater {
        b
    } else {
        a
    }
}

impl<T: Scalar> OuterBoundary<T> {
    /// Builds the envelope of the given canonical points.
    pub fn build(points: &[Point<T>]) -> Self {
        let parabolas: Vec<Option<Parabola<T>>> = points.iter().map(Parabola::of_point).collect();
        let owners: Vec<usize> = (0..points.len())
            .filter(|&i| parabolas[i].is_some())
            .collect();
        let pieces = if owners.is_empty() {
            Vec::new()
        } else {
            Self::envelope(&parabolas, &owners)
        };
        OuterBoundary {
            sources: points.to_vec(),
            parabolas,
            pieces,
        }
    }

    fn envelope(par: &[Option<Parabola<T>>], owners: &[usize]) -> Vec<Piece<T>> {
        if owners.len() == 1 {
            return vec![Piece {
                start: Surd::rational(T::zero()),
                owner: owners[0],
            }];
        }
        let (l, r) = owners.split_at(owners.len() / 2);
        let left = Self::envelope(par, l);
        let right = Self::envelope(par, r);
        Self::merge(par, &left, &right)
    }

    fn merge(par: &[Option<Parabola<T>>], a: &[Piece<T>], b: &[Piece<T>]) -> Vec<Piece<T>> {
        let get = |i: usize| par[i].as_ref().expect("owners have parabolas");
        let mut out: Vec<Piece<T>> = Vec::new();
        let push = |out: &mut Vec<Piece<T>>, start: Surd<T>, owner: usize| {
            if out.last().map(|p| p.owner) != Some(owner) {
                out.push(Piece { start, owner });
            }
        };
        let (mut i, mut j) = (0, 0);
        let mut lo = Surd::rational(T::zero());
        loop {
            let (oa, ob) = (a[i].owner, b[j].owner);
            let na = a.get(i + 1).map(|p| &p.start);
            let nb = b.get(j + 1).map(|p| &p.start);
            let hi: Option<Surd<T>> = match (na, nb) {
                (None, None) => None,
                (Some(x), None) | (None, Some(x)) => Some(x.clone()),
                (Some(x), Some(y)) => Some(earlier(x, y).clone()),
            };
            let g = get(oa).minus(get(ob));
            let mut cuts: Vec<Surd<T>> = quadratic_roots(&g.a, &g.b, &g.c)
                .into_iter()
                .filter(|r| {
                    r.cmp_surd(&lo) == Ordering::Greater
                        && hi
                            .as_ref()
                            .map_or(true, |h| r.cmp_surd(h) == Ordering::Less)
                })
                .collect();
            cuts.insert(0, lo.clone());
            for s in cuts {
                let owner = match g.sign_after(&s) {
                    -1 => oa,
                    1 => ob,
                    _ => oa.min(ob),
                };
                push(&mut out, s, owner);
            }
            let Some(hi) = hi else { break };
            if na.map_or(false, |x| x.cmp_surd(&hi) == Ordering::Equal) {
                i += 1;
            }
            if nb.map_or(false, |x| x.cmp_surd(&hi) == Ordering::Equal) {
                j += 1;
            }
            lo = hi;
        }
        out
    }

    /// Owner whose parabola is minimal at height `y`.
    pub fn owner_at(&self, y: &T) -> Option<usize> {
        let idx = self
            .pieces
            .partition_point(|p| p.start.cmp_rational(y) != Ordering::Greater);
        idx.checked_sub(1).map(|i| self.pieces[i].owner)
    }

    /// `true` iff the canonical other-side point lies in the walking region
    /// of some source point.
    pub fn covers(&self, p: &Point<T>) -> bool {
        match self.owner_at(&p.y) {
            Some(o) => self.parabolas[o].as_ref().expect("owner").eval(&p.y) <= p.x,
            None => false,
        }
    }

    /// Pieces clipped to the bisector stretch their owner covers.
    pub fn nodes(&self) -> Vec<BoundaryNode<T>> {
        let mut out = Vec::new();
        for (k, piece) in self.pieces.iter().enumerate() {
            let (lo, hi) = bisector_interval(&self.sources[piece.owner]);
            let from = later(&piece.start, &lo).clone();
            let to = match self.pieces.get(k + 1) {
                Some(next) => earlier(&next.start, &hi).clone(),
                None => hi.clone(),
            };
            if from.cmp_surd(&to) != Ordering::Greater {
                out.push(BoundaryNode {
                    from,
                    to,
                    owner: piece.owner,
                });
            }
        }
        out
    }

    /// Walks the canonical other-side points from the highest down together
    /// with the pieces and reports every `(owner, point index)` whose point is
    /// covered. `points` must be sorted by ascending y. Returns the hits and
    /// the number of cursor steps.
    pub fn ray_shoot(&self, points: &[Point<T>]) -> (Vec<(usize, usize)>, usize) {
        let mut hits = Vec::new();
        let mut steps = 0;
        if self.pieces.is_empty() {
            return (hits, 0);
        }
        let mut k = self.pieces.len() - 1;
        for (i, p) in points.iter().enumerate().rev() {
            steps += 1;
            while k > 0 && self.pieces[k].start.cmp_rational(&p.y) == Ordering::Greater {
                k -= 1;
                steps += 1;
            }
            let owner = self.pieces[k].owner;
            if self.parabolas[owner].as_ref().expect("owner").eval(&p.y) <= p.x {
                hits.push((owner, i));
            }
        }
        hits.reverse();
        (hits, steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{in_walking_region, HighwayConfig};
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::new(Rational::from_int(x), Rational::from_int(y))
    }

    #[test]
    fn parabola_matches_predicate() {
        let q = pt(6, 2);
        let f = Parabola::of_point(&q).unwrap();
        for y in 0..30 {
            for x in 0..=y {
                let b = pt(x, y);
                let inside = f.eval(&Rational::from_int(y)) <= Rational::from_int(x);
                assert_eq!(
                    inside,
                    in_walking_region(&q, &b, &HighwayConfig::L2Inf),
                    "{b:?}"
                );
            }
        }
    }

    #[test]
    fn single_point_has_one_node() {
        let ob = OuterBoundary::build(&[pt(2, 1)]);
        let nodes = ob.nodes();
        assert_eq!(nodes.len(), 1);
        // 4 -/+ 2 sqrt(3)
        assert!((nodes[0].from.to_f64() - 0.5359).abs() < 1e-3);
        assert!((nodes[0].to.to_f64() - 7.4641).abs() < 1e-3);
    }

    #[test]
    fn dominated_point_leaves_boundary_unchanged() {
        let one = OuterBoundary::build(&[pt(10, 8)]);
        let two = OuterBoundary::build(&[pt(10, 8), pt(30, 0)]);
        assert_eq!(one.nodes().len(), two.nodes().len());
    }

    #[test]
    fn envelope_covers_exactly_the_union() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let n = rng.gen_range(1..12);
            let src: Vec<_> = (0..n)
                .map(|_| {
                    let x = rng.gen_range(0..40);
                    pt(x, rng.gen_range(0..=x))
                })
                .collect();
            let ob = OuterBoundary::build(&src);
            let mut probes: Vec<_> = (0..40)
                .map(|_| {
                    let y = rng.gen_range(1..80);
                    pt(rng.gen_range(0..y), y)
                })
                .collect();
            probes.sort_by(|a, b| a.y.cmp(&b.y));
            let (hits, _) = ob.ray_shoot(&probes);
            for (i, b) in probes.iter().enumerate() {
                let brute = src
                    .iter()
                    .any(|q| in_walking_region(q, b, &HighwayConfig::L2Inf));
                assert_eq!(ob.covers(b), brute, "{src:?} {b:?}");
                assert_eq!(hits.iter().any(|&(_, j)| j == i), brute);
            }
        }
    }
}
