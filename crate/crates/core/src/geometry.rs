//! Points, highway configurations, travel times and the walking-region
//! predicate.
//!
//! The two highways are the coordinate axes. Walking speed is 1 everywhere
//! off the highways.

use std::cmp::Ordering;

use crate::error::{HullError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    /// Checked constructor for ingested data.
    pub fn in_quadrant(x: T, y: T) -> Result<Self> {
        if x.is_negative() || y.is_negative() {
            return Err(HullError::NegativeCoordinate {
                x: format!("{x:?}"),
                y: format!("{y:?}"),
            });
        }
        Ok(Point { x, y })
    }

    /// Mirror image across the bisector `x = y`.
    pub fn reflect(&self) -> Self {
        Point::new(self.y.clone(), self.x.clone())
    }

    /// Distance to the nearer highway.
    pub fn highway_gap(&self) -> T {
        T::min_of(&self.x, &self.y)
    }

    pub fn lerp(&self, other: &Self, t: &T) -> Self {
        Point::new(
            self.x.clone() + t.clone() * (other.x.clone() - self.x.clone()),
            self.y.clone() + t.clone() * (other.y.clone() - self.y.clone()),
        )
    }

    pub fn l1_norm_to(&self, other: &Self) -> T {
        (self.x.clone() - other.x.clone()).abs() + (self.y.clone() - other.y.clone()).abs()
    }

    pub fn dist2(&self, other: &Self) -> T {
        let dx = self.x.clone() - other.x.clone();
        let dy = self.y.clone() - other.y.clone();
        dx.clone() * dx + dy.clone() * dy
    }

    /// Lexicographic (x, y) order.
    pub fn cmp_xy(&self, other: &Self) -> Ordering {
        self.x
            .partial_cmp(&other.x)
            .unwrap_or(Ordering::Equal)
            .then_with(|| self.y.partial_cmp(&other.y).unwrap_or(Ordering::Equal))
    }
}

/// Twice the signed area of triangle `abc`; positive for a left turn.
pub fn orient<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> T {
    (b.x.clone() - a.x.clone()) * (c.y.clone() - a.y.clone())
        - (b.y.clone() - a.y.clone()) * (c.x.clone() - a.x.clone())
}

/// Closed point-on-segment test.
pub fn on_segment<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> bool {
    orient(a, b, p).is_zero()
        && T::min_of(&a.x, &b.x) <= p.x
        && p.x <= T::max_of(&a.x, &b.x)
        && T::min_of(&a.y, &b.y) <= p.y
        && p.y <= T::max_of(&a.y, &b.y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    L1,
    L2Inf,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::L1 => "L1",
            Metric::L2Inf => "L2INF",
        }
    }
}

/// Metric plus highway speed. Fixed for a whole run.
#[derive(Debug, Clone, PartialEq)]
pub enum HighwayConfig<T> {
    /// L1 walking, highway speed `speed > 1`.
    L1 { speed: T },
    /// Euclidean walking, infinitely fast highways.
    L2Inf,
}

impl<T: Scalar> HighwayConfig<T> {
    pub fn l1(speed: T) -> Result<Self> {
        if speed > T::one() {
            Ok(HighwayConfig::L1 { speed })
        } else {
            Err(HullError::InvalidSpeed)
        }
    }

    pub fn l2_inf() -> Self {
        HighwayConfig::L2Inf
    }

    pub fn metric(&self) -> Metric {
        match self {
            HighwayConfig::L1 { .. } => Metric::L1,
            HighwayConfig::L2Inf => Metric::L2Inf,
        }
    }

    /// `1/V_H`, zero for infinite speed.
    pub fn inverse_speed(&self) -> T {
        match self {
            HighwayConfig::L1 { speed } => T::one() / speed.clone(),
            HighwayConfig::L2Inf => T::zero(),
        }
    }

    /// `k` such that any two mutually walking points satisfy
    /// `|dx| <= k (y_p + y_q)` and `|dy| <= k (x_p + x_q)`.
    pub fn reach_factor(&self) -> T {
        match self {
            HighwayConfig::L1 { speed } => speed.clone() / (speed.clone() - T::one()),
            HighwayConfig::L2Inf => T::one(),
        }
    }
}

/// A travel time that is either rational or the square root of a rational.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeValue<T> {
    Exact(T),
    Sqrt(T),
}

impl<T: Scalar> TimeValue<T> {
    pub fn zero() -> Self {
        TimeValue::Exact(T::zero())
    }

    /// Square of the value; always rational.
    pub fn squared(&self) -> T {
        match self {
            TimeValue::Exact(v) => v.clone() * v.clone(),
            TimeValue::Sqrt(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            TimeValue::Exact(v) | TimeValue::Sqrt(v) => v.is_zero(),
        }
    }

    /// Rational bracket around the value.
    pub fn bounds(&self) -> (T, T) {
        match self {
            TimeValue::Exact(v) => (v.clone(), v.clone()),
            TimeValue::Sqrt(r) => r.sqrt_bounds(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            TimeValue::Exact(v) => v.to_f64_lossy(),
            TimeValue::Sqrt(r) => r.to_f64_lossy().max(0.0).sqrt(),
        }
    }

    /// Exact comparison; both values are non-negative so squaring is safe.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TimeValue::Exact(a), TimeValue::Exact(b)) => {
                a.partial_cmp(b).unwrap_or(Ordering::Equal)
            }
            _ => self
                .squared()
                .partial_cmp(&other.squared())
                .unwrap_or(Ordering::Equal),
        }
    }

    pub fn min_exact(a: Self, b: Self) -> Self {
        if a.cmp_exact(&b) == Ordering::Greater {
            b
        } else {
            a
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathKind {
    Direct,
    ViaHx,
    ViaHy,
    ViaHxThenHy,
    ViaHyThenHx,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathCandidate<T> {
    pub kind: PathKind,
    pub cost: T,
}

/// Walking distance between two points under the configured metric.
pub fn metric_distance<T: Scalar>(p: &Point<T>, q: &Point<T>, metric: Metric) -> TimeValue<T> {
    match metric {
        Metric::L1 => TimeValue::Exact(p.l1_norm_to(q)),
        Metric::L2Inf => {
            let d2 = p.dist2(q);
            // Perfect squares of axis-aligned offsets stay rational.
            let dx = (p.x.clone() - q.x.clone()).abs();
            let dy = (p.y.clone() - q.y.clone()).abs();
            if dx.is_zero() {
                TimeValue::Exact(dy)
            } else if dy.is_zero() {
                TimeValue::Exact(dx)
            } else {
                TimeValue::Sqrt(d2)
            }
        }
    }
}

/// The four highway routes between `p` and `q` under finite speed L1.
///
/// Mixed routes always pass through the origin where the highways cross.
pub fn highway_path_costs<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
    cfg: &HighwayConfig<T>,
) -> Result<[PathCandidate<T>; 4]> {
    let inv = match cfg {
        HighwayConfig::L1 { .. } => cfg.inverse_speed(),
        HighwayConfig::L2Inf => return Err(HullError::UnsupportedMetric("L1")),
    };
    let dx = (p.x.clone() - q.x.clone()).abs();
    let dy = (p.y.clone() - q.y.clone()).abs();
    let via_hx = p.y.clone() + dx * inv.clone() + q.y.clone();
    let via_hy = p.x.clone() + dy * inv.clone() + q.x.clone();
    let hx_then_hy =
        p.y.clone() + p.x.clone() * inv.clone() + q.y.clone() * inv.clone() + q.x.clone();
    let hy_then_hx = p.x.clone() + p.y.clone() * inv.clone() + q.x.clone() * inv + q.y.clone();
    Ok([
        PathCandidate {
            kind: PathKind::ViaHx,
            cost: via_hx,
        },
        PathCandidate {
            kind: PathKind::ViaHy,
            cost: via_hy,
        },
        PathCandidate {
            kind: PathKind::ViaHxThenHy,
            cost: hx_then_hy,
        },
        PathCandidate {
            kind: PathKind::ViaHyThenHx,
            cost: hy_then_hx,
        },
    ])
}

/// Cheapest route that uses a highway under infinite speed: walk to the
/// nearer highway at each end and ride for free.
pub fn highway_cost_l2inf<T: Scalar>(p: &Point<T>, q: &Point<T>) -> T {
    p.highway_gap() + q.highway_gap()
}

/// Minimum travel time between `p` and `q`.
pub fn time_distance<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
    cfg: &HighwayConfig<T>,
) -> TimeValue<T> {
    let direct = metric_distance(p, q, cfg.metric());
    match cfg {
        HighwayConfig::L1 { .. } => {
            let direct = match direct {
                TimeValue::Exact(v) => v,
                TimeValue::Sqrt(_) => unreachable!("L1 distances are rational"),
            };
            let best = highway_path_costs(p, q, cfg)
                .expect("L1 config")
                .into_iter()
                .map(|c| c.cost)
                .fold(direct, |acc, c| T::min_of(&acc, &c));
            TimeValue::Exact(best)
        }
        HighwayConfig::L2Inf => {
            TimeValue::min_exact(direct, TimeValue::Exact(highway_cost_l2inf(p, q)))
        }
    }
}

/// Best route between `p` and `q` together with its kind. Ties prefer the
/// direct walk, then the order of [`PathKind`].
pub fn shortest_path_kind<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
    cfg: &HighwayConfig<T>,
) -> PathKind {
    if in_walking_region(p, q, cfg) {
        return PathKind::Direct;
    }
    match cfg {
        HighwayConfig::L1 { .. } => {
            let costs = highway_path_costs(p, q, cfg).expect("L1 config");
            let mut best = &costs[0];
            for c in &costs[1..] {
                if c.cost < best.cost {
                    best = c;
                }
            }
            best.kind
        }
        HighwayConfig::L2Inf => {
            let p_hx = p.y <= p.x;
            let q_hx = q.y <= q.x;
            match (p_hx, q_hx) {
                (true, true) => PathKind::ViaHx,
                (false, false) => PathKind::ViaHy,
                (true, false) => PathKind::ViaHxThenHy,
                (false, true) => PathKind::ViaHyThenHx,
            }
        }
    }
}

/// `true` iff the direct walk between `p` and `q` is no slower than every
/// route using a highway. Ties count as walking.
pub fn in_walking_region<T: Scalar>(p: &Point<T>, q: &Point<T>, cfg: &HighwayConfig<T>) -> bool {
    match cfg {
        HighwayConfig::L1 { .. } => {
            let direct = p.l1_norm_to(q);
            highway_path_costs(p, q, cfg)
                .expect("L1 config")
                .iter()
                .all(|c| direct <= c.cost)
        }
        HighwayConfig::L2Inf => {
            let bound = highway_cost_l2inf(p, q);
            p.dist2(q) <= bound.clone() * bound
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::new(r(x), r(y))
    }

    fn l1(v: i64) -> HighwayConfig<Rational> {
        HighwayConfig::l1(r(v)).unwrap()
    }

    #[test]
    fn metric_distance_examples() {
        assert_eq!(
            metric_distance(&pt(0, 0), &pt(3, 4), Metric::L1),
            TimeValue::Exact(r(7))
        );
        let l2 = metric_distance(&pt(0, 0), &pt(3, 4), Metric::L2Inf);
        assert_eq!(l2.cmp_exact(&TimeValue::Exact(r(5))), Ordering::Equal);
        assert!(metric_distance(&pt(2, 2), &pt(2, 2), Metric::L1).is_zero());
        assert!(metric_distance(&pt(2, 2), &pt(2, 2), Metric::L2Inf).is_zero());
    }

    #[test]
    fn highway_costs_examples() {
        let c = highway_path_costs(&pt(1, 1), &pt(5, 1), &l1(2)).unwrap();
        let costs: Vec<_> = c.iter().map(|c| c.cost.clone()).collect();
        assert_eq!(costs, vec![r(4), r(6), r(7), r(5)]);
        let c = highway_path_costs(&pt(0, 0), &pt(0, 0), &l1(2)).unwrap();
        assert!(c.iter().all(|c| c.cost.is_zero()));
        let c = highway_path_costs(&pt(0, 5), &pt(5, 0), &l1(5)).unwrap();
        assert_eq!(c[3].kind, PathKind::ViaHyThenHx);
        assert_eq!(c[3].cost, r(2));
        assert!(highway_path_costs(&pt(0, 5), &pt(5, 0), &HighwayConfig::L2Inf).is_err());
    }

    #[test]
    fn time_distance_examples() {
        assert_eq!(
            time_distance(&pt(1, 1), &pt(5, 1), &l1(2)),
            TimeValue::Exact(r(4))
        );
        let cfg = HighwayConfig::L2Inf;
        let d = time_distance(&pt(1, 2), &pt(10, 3), &cfg);
        assert_eq!(d.cmp_exact(&TimeValue::Exact(r(4))), Ordering::Equal);
        let d = time_distance(&pt(3, 4), &pt(6, 8), &cfg);
        assert_eq!(d.cmp_exact(&TimeValue::Exact(r(5))), Ordering::Equal);
    }

    #[test]
    fn walking_region_examples() {
        assert!(in_walking_region(&pt(3, 7), &pt(3, 7), &l1(2)));
        assert!(in_walking_region(&pt(1, 1), &pt(5, 1), &l1(2)));
        assert!(!in_walking_region(&pt(1, 1), &pt(9, 1), &l1(2)));
        assert!(in_walking_region(
            &pt(0, 0),
            &pt(0, 0),
            &HighwayConfig::L2Inf
        ));
    }

    #[test]
    fn speed_must_exceed_one() {
        assert!(HighwayConfig::l1(r(1)).is_err());
        assert!(HighwayConfig::l1(Rational::from_ratio(1, 2)).is_err());
        assert!(HighwayConfig::l1(Rational::from_ratio(3, 2)).is_ok());
    }

    #[test]
    fn quadrant_is_enforced() {
        assert!(Point::in_quadrant(r(-1), r(0)).is_err());
        assert!(Point::in_quadrant(r(0), r(0)).is_ok());
    }
}
