#![allow(dead_code)]

use highway_hull::{HighwayConfig, Point, Rational, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// Rational in `[0, hi]` with a small denominator.
pub fn coord(rng: &mut ChaCha8Rng, hi: i64) -> Rational {
    let d = [1, 1, 2, 3, 4, 5, 8][rng.gen_range(0..7)];
    rat(rng.gen_range(0..=hi * d), d)
}

/// Instance generator mixing three shapes: uniform, hugging the axes, and
/// small blobs scattered over the square.
pub fn instance(rng: &mut ChaCha8Rng, n: usize, shape: usize) -> Vec<Point<Rational>> {
    match shape % 3 {
        0 => (0..n)
            .map(|_| Point::new(coord(rng, 1000), coord(rng, 1000)))
            .collect(),
        1 => (0..n)
            .map(|_| {
                let (a, b) = (coord(rng, 1000), coord(rng, 40));
                if rng.gen_bool(0.5) {
                    Point::new(a, b)
                } else {
                    Point::new(b, a)
                }
            })
            .collect(),
        _ => {
            let blobs: Vec<(i64, i64)> = (0..rng.gen_range(2..6))
                .map(|_| (rng.gen_range(0..950), rng.gen_range(0..950)))
                .collect();
            (0..n)
                .map(|_| {
                    let (bx, by) = blobs[rng.gen_range(0..blobs.len())];
                    Point::new(rat(bx, 1) + coord(rng, 50), rat(by, 1) + coord(rng, 50))
                })
                .collect()
        }
    }
}

pub fn l1_speeds() -> Vec<Rational> {
    vec![rat(3, 2), rat(2, 1), rat(5, 1), rat(100, 1)]
}

pub fn l1(v: &Rational) -> HighwayConfig<Rational> {
    HighwayConfig::l1(v.clone()).expect("speed above one")
}
