use highway_hull::clustering::build_side_clusters;
use highway_hull::oracle::{oracle_clusters, OraclePartition};
use highway_hull::side::decompose;
use highway_hull::{HighwayConfig, Point, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hx(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point<Rational>> {
    (0..n)
        .map(|_| {
            let x = rng.gen_range(0..=1000i64);
            let y = rng.gen_range(0..=x);
            Point::new(Rational::from_int(x), Rational::from_int(y))
        })
        .collect()
}

#[test]
fn single_side_partition_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let cfgs = [
        HighwayConfig::l1(Rational::from_ratio(3, 2)).unwrap(),
        HighwayConfig::l1(Rational::from_int(2)).unwrap(),
        HighwayConfig::l1(Rational::from_int(5)).unwrap(),
        HighwayConfig::l1(Rational::from_int(100)).unwrap(),
        HighwayConfig::L2Inf,
    ];
    let mut bad = 0;
    for trial in 0..200 {
        let cfg = &cfgs[trial % cfgs.len()];
        let n = rng.gen_range(2..=30);
        let pts = random_hx(&mut rng, n);
        let (hx, _) = decompose(&pts);
        let fast = OraclePartition::normalized(
            build_side_clusters(&hx, cfg)
                .clusters
                .into_iter()
                .map(|c| c.members)
                .collect(),
        );
        let slow = oracle_clusters(&pts, cfg);
        if fast != slow {
            bad += 1;
            eprintln!(
                "mismatch trial {trial} {cfg:?}\n fast {:?}\n slow {:?}",
                fast.blocks, slow.blocks
            );
        }
    }
    assert_eq!(bad, 0);
}
