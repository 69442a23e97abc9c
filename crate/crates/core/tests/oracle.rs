mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{oracle_case, oracle_patch};

#[test]
fn operator_algebra_matches_dense_matrices() {
    let patch = oracle_patch();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    for case in 0..1000 {
        let k = rng.random_range(1..=10);
        if let Err(what) = oracle_case(&mut rng, &patch, k) {
            panic!("case {case} on {k} edges: {what}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
}
