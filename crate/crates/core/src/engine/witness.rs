//! Search for units of large order.
//!
//! Sparse candidates come first: sums of three distinct elements of the pool
//! `{1} ∪ generators ∪ {g_i g_j : i ≠ j}` (single pool elements are group
//! elements and are tried before that). Seeded random units follow.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_unit, unit_order_fast, EngineError};
use crate::algebra::{AlgebraElement, GroupAlgebra};
use crate::group::{Elem, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    SparseFirst,
    Random,
}

#[derive(Clone, Debug)]
pub struct WitnessBudget {
    pub sparse: u64,
    pub random: u64,
    pub seed: u64,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget {
            sparse: 100_000,
            random: 1_000_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub target: u64,
    pub witness: Option<AlgebraElement>,
    pub order: Option<u64>,
    /// Candidates tried, including the successful one.
    pub candidates: u64,
    pub from_sparse: bool,
}

/// `{1} ∪ generators ∪ pairwise products`, duplicates removed, in that order.
pub fn sparse_pool(g: &Group) -> Vec<Elem> {
    let gens = g.generators();
    let mut pool = vec![Elem::IDENTITY];
    let mut push = |e: Elem| {
        if !pool.contains(&e) {
            pool.push(e);
        }
    };
    for &a in gens {
        push(a);
    }
    for &a in gens {
        for &b in gens {
            if a != b {
                push(g.mul(a, b));
            }
        }
    }
    pool
}

/// First unit found with order at least `target` (a power of two, `≥ 2`).
pub fn find_order_witness(
    g: &Arc<Group>,
    target: u64,
    strategy: Strategy,
    budget: &WitnessBudget,
) -> Result<WitnessSearch, EngineError> {
    assert!(
        target.is_power_of_two() && target >= 2,
        "target must be a power of two >= 2"
    );
    let alg = GroupAlgebra::new(Arc::clone(g));
    let mut tried = 0u64;
    let found = |x: AlgebraElement, tried: u64, sparse: bool| {
        let order = unit_order_fast(&x);
        (order >= target).then(|| WitnessSearch {
            target,
            witness: Some(x),
            order: Some(order),
            candidates: tried,
            from_sparse: sparse,
        })
    };

    if strategy == Strategy::SparseFirst {
        let pool = sparse_pool(g);
        'sparse: {
            for &a in &pool {
                if tried >= budget.sparse {
                    break 'sparse;
                }
                tried += 1;
                if let Some(w) = found(alg.basis(a), tried, true) {
                    return Ok(w);
                }
            }
            for i in 0..pool.len() {
                for j in i + 1..pool.len() {
                    for k in j + 1..pool.len() {
                        if tried >= budget.sparse {
                            break 'sparse;
                        }
                        tried += 1;
                        if let Some(w) = found(alg.sum(&[pool[i], pool[j], pool[k]]), tried, true) {
                            return Ok(w);
                        }
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.random {
        tried += 1;
        if let Some(w) = found(random_unit(&alg, &mut rng), tried, false) {
            return Ok(w);
        }
    }
    Ok(WitnessSearch {
        target,
        witness: None,
        order: None,
        candidates: tried,
        from_sparse: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    #[test]
    fn d8_has_no_order_eight_unit() {
        let g = builtin("D8").unwrap().group;
        let budget = WitnessBudget {
            random: 2000,
            ..WitnessBudget::default()
        };
        let r = find_order_witness(&g, 8, Strategy::SparseFirst, &budget).unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.candidates, 5 + 10 + 2000);
    }

    #[test]
    fn sparse_witness_in_g32_6() {
        let g = builtin("G32_6").unwrap().group;
        let r =
            find_order_witness(&g, 8, Strategy::SparseFirst, &WitnessBudget::default()).unwrap();
        let w = r.witness.unwrap();
        assert!(r.from_sparse);
        assert_eq!(w.weight(), 3);
        assert_eq!(r.order, Some(8));
        assert!(!w.pow(4).is_one());
    }

    #[test]
    fn random_strategy_skips_sparse_phase() {
        let g = builtin("C8").unwrap().group;
        let r = find_order_witness(&g, 8, Strategy::Random, &WitnessBudget::default()).unwrap();
        assert!(!r.from_sparse);
        assert_eq!(r.order, Some(8));
    }
}
