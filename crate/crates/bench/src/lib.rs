//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unitexp::algebra::{AlgebraElement, GroupAlgebra};
use unitexp::catalog::builtin;
use unitexp::engine::random_unit;
use unitexp::group::Group;

pub fn group(name: &str) -> Arc<Group> {
    builtin(name).expect("builtin group").group
}

/// `n` seeded random units of `F₂G`.
pub fn units(name: &str, n: usize, seed: u64) -> Vec<AlgebraElement> {
    let alg = GroupAlgebra::new(group(name));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_unit(&alg, &mut rng)).collect()
}
