//! Quadratic irrationals `a + c*sqrt(d)` with exact comparisons.

use std::cmp::Ordering;

use crate::scalar::{sign, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Surd<T> {
    pub a: T,
    pub c: T,
    /// Radicand, never negative.
    pub d: T,
}

impl<T: Scalar> Surd<T> {
    pub fn rational(a: T) -> Self {
        Surd {
            a,
            c: T::zero(),
            d: T::zero(),
        }
    }

    pub fn new(a: T, c: T, d: T) -> Self {
        debug_assert!(!d.is_negative());
        if c.is_zero() || d.is_zero() {
            Surd::rational(a)
        } else {
            Surd { a, c, d }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.c.is_zero() || self.d.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64_lossy() + self.c.to_f64_lossy() * self.d.to_f64_lossy().max(0.0).sqrt()
    }

    /// Sign of `self - r`.
    pub fn cmp_rational(&self, r: &T) -> Ordering {
        let e = self.a.clone() - r.clone();
        let s = sign_surd(&e, &self.c, &self.d);
        s.cmp(&0)
    }

    pub fn cmp_surd(&self, other: &Self) -> Ordering {
        if other.is_rational() {
            return self.cmp_rational(&other.a);
        }
        if self.is_rational() {
            return other.cmp_rational(&self.a).reverse();
        }
        // X = (a1 - a2) + c1 sqrt(d1), Y = c2 sqrt(d2); compare X with Y.
        let e = self.a.clone() - other.a.clone();
        let sx = sign_surd(&e, &self.c, &self.d);
        let sy = sign(&other.c);
        if sx != sy {
            return sx.cmp(&sy);
        }
        if sx == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare squares. X^2 = e^2 + c1^2 d1 + 2 e c1 sqrt(d1).
        let x2_a = e.clone() * e.clone() + self.c.clone() * self.c.clone() * self.d.clone();
        let x2_c = T::two() * e * self.c.clone();
        let y2 = other.c.clone() * other.c.clone() * other.d.clone();
        let diff = sign_surd(&(x2_a - y2), &x2_c, &self.d);
        let ord = diff.cmp(&0);
        if sx > 0 {
            ord
        } else {
            ord.reverse()
        }
    }
}

/// Sign of `e + c*sqrt(d)`.
pub fn sign_surd<T: Scalar>(e: &T, c: &T, d: &T) -> i8 {
    let se = sign(e);
    let sc = if d.is_zero() { 0 } else { sign(c) };
    if sc == 0 {
        return se;
    }
    if se == 0 || se == sc {
        return if se == 0 { sc } else { se };
    }
    let lhs = e.clone() * e.clone();
    let rhs = c.clone() * c.clone() * d.clone();
    match lhs.partial_cmp(&rhs).unwrap_or(Ordering::Equal) {
        Ordering::Greater => se,
        Ordering::Less => sc,
        Ordering::Equal => 0,
    }
}

/// Real roots of `a t^2 + b t + c = 0` in increasing order.
pub fn quadratic_roots<T: Scalar>(a: &T, b: &T, c: &T) -> Vec<Surd<T>> {
    if a.is_zero() {
        if b.is_zero() {
            return Vec::new();
        }
        return vec![Surd::rational(-c.clone() / b.clone())];
    }
    let disc = b.clone() * b.clone() - T::from_int(4) * a.clone() * c.clone();
    if disc.is_negative() {
        return Vec::new();
    }
    let two_a = T::two() * a.clone();
    let center = -b.clone() / two_a.clone();
    let scale = T::one() / two_a.abs();
    if disc.is_zero() {
        return vec![Surd::rational(center)];
    }
    vec![
        Surd::new(center.clone(), -scale.clone(), disc.clone()),
        Surd::new(center, scale, disc),
    ]
}
