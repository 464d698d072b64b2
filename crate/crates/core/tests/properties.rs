mod common;

use common::{l1, rat};
use highway_hull::oracle::oracle_clusters;
use highway_hull::{compute_hull, in_walking_region, HighwayConfig, Point, Rational};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point<Rational>> {
    (0i64..=400, 0i64..=400, 1i64..=3).prop_map(|(x, y, d)| Point::new(rat(x, d), rat(y, d)))
}

fn config() -> impl Strategy<Value = HighwayConfig<Rational>> {
    prop_oneof![
        (3i64..=12).prop_map(|v| l1(&rat(v, 2))),
        Just(HighwayConfig::L2Inf),
    ]
}

fn relabel(blocks: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut v: Vec<usize> = b.iter().map(|&i| perm[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_oracle(pts in prop::collection::vec(point(), 0..24), cfg in config()) {
        let run = compute_hull(&pts, &cfg).unwrap();
        prop_assert_eq!(run.partition(), oracle_clusters(&pts, &cfg).blocks);
    }

    #[test]
    fn partition_ignores_input_order(
        pts in prop::collection::vec(point(), 1..24),
        cfg in config(),
        shuffle in any::<prop::sample::Index>(),
    ) {
        let n = pts.len();
        let k = shuffle.index(n) + 1;
        let perm: Vec<usize> = (0..n).map(|i| (i * k + 7) % n).collect();
        prop_assume!({
            let mut s = perm.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == n
        });
        let mut moved = pts.clone();
        for (i, p) in pts.iter().enumerate() {
            moved[perm[i]] = p.clone();
        }
        let a = compute_hull(&pts, &cfg).unwrap().partition();
        let b = compute_hull(&moved, &cfg).unwrap().partition();
        prop_assert_eq!(relabel(&a, &perm), b);
    }

    #[test]
    fn mirror_swaps_sides(pts in prop::collection::vec(point(), 1..20), cfg in config()) {
        let mirrored: Vec<_> = pts.iter().map(|p| Point::new(p.y.clone(), p.x.clone())).collect();
        let a = compute_hull(&pts, &cfg).unwrap();
        let b = compute_hull(&mirrored, &cfg).unwrap();
        prop_assert_eq!(a.partition(), b.partition());
    }

    #[test]
    fn reachable_pairs_share_a_cluster(pts in prop::collection::vec(point(), 2..20), cfg in config()) {
        let run = compute_hull(&pts, &cfg).unwrap();
        let mut owner = vec![usize::MAX; pts.len()];
        for (c, cl) in run.hull.clusters.iter().enumerate() {
            for &i in &cl.members {
                prop_assert_eq!(owner[i], usize::MAX);
                owner[i] = c;
            }
        }
        prop_assert!(owner.iter().all(|&c| c != usize::MAX));
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                if in_walking_region(&pts[j], &pts[i], &cfg) {
                    prop_assert_eq!(owner[i], owner[j]);
                }
            }
        }
    }
}
