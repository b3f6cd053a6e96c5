//! Exact exponent from low-weight elements of the augmentation ideal.
//!
//! With `b_i = 1 + g_i` (`g_i ≠ 1`) as a basis of `ω(F₂G)`, each coordinate of
//! `z^(2^k)` for `z = Σ c_i b_i` is a polynomial of degree at most `2^k` in
//! the bits `c_i`. A multilinear polynomial over `F₂` of degree at most `d`
//! that vanishes on every point of weight at most `d` vanishes everywhere
//! (its coefficients are sums of values at points of weight at most `d`).
//! So `z^(2^k) = 0` on all of `ω` iff it holds for sums of at most `2^k`
//! basis elements, and since `(1 + z)^(2^k) = 1 + z^(2^k)` the exponent of
//! `V(F₂G)` is the least such `2^k`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::{EngineConfig, EngineError, ExponentResult, ExponentValue, Method};
use crate::algebra::{GroupAlgebra, Kernel64, KERNEL_MAX_ORDER};
use crate::group::Group;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Number of nonempty subsets of size at most `d` from `m` elements,
/// saturating.
pub fn low_weight_count(m: u64, d: u64) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for j in 1..=d.min(m) {
        c = match c.checked_mul(m - j + 1) {
            Some(v) => v / j,
            None => return u64::MAX,
        };
        total = total.saturating_add(c);
    }
    total
}

#[derive(Clone, Debug)]
pub struct LowWeightCheck {
    pub power: u64,
    pub holds: bool,
    /// The first `z` in search order with `z^power ≠ 0`, as a bit word.
    pub counterexample: Option<u64>,
    pub nodes: u64,
}

fn pow2k(k: &Kernel64, mut z: u64, log: u32) -> u64 {
    for _ in 0..log {
        z = k.square(z);
    }
    z
}

/// Whether `z^(2^log) = 0` for every `z ∈ ω(F₂G)`, `|G| ≤ 64`.
pub fn power_vanishes(
    g: &Arc<Group>,
    log: u32,
    cfg: &EngineConfig,
) -> Result<LowWeightCheck, EngineError> {
    assert!(g.order() <= KERNEL_MAX_ORDER);
    let alg = GroupAlgebra::new(Arc::clone(g));
    let k = alg.kernel().expect("order within kernel range");
    let n = g.order();
    let d = 1usize << log;
    let first_bad = AtomicUsize::new(usize::MAX);

    // subsets grouped by their smallest basis index
    let per_first = cfg.install(|| {
        (1..n)
            .into_par_iter()
            .map(|i| {
                if first_bad.load(Ordering::Relaxed) < i {
                    return (0, None);
                }
                let mut nodes = 0u64;
                let mut bad = None;
                let mut stack: Vec<(u64, usize, usize)> = vec![(1 | 1 << i, i + 1, 1)];
                while let Some((z, next, size)) = stack.pop() {
                    nodes += 1;
                    if pow2k(k, z, log) != 0 {
                        bad = Some(z);
                        first_bad.fetch_min(i, Ordering::Relaxed);
                        break;
                    }
                    if size < d {
                        for j in (next..n).rev() {
                            stack.push((z ^ (1 | 1 << j), j + 1, size + 1));
                        }
                    }
                    if nodes.is_multiple_of(4096) && first_bad.load(Ordering::Relaxed) < i {
                        break;
                    }
                }
                (nodes, bad)
            })
            .collect::<Vec<_>>()
    })?;
    let mut nodes = 0;
    let mut counterexample = None;
    for (c, bad) in per_first {
        nodes += c;
        if counterexample.is_none() {
            counterexample = bad;
        }
    }
    Ok(LowWeightCheck {
        power: d as u64,
        holds: counterexample.is_none(),
        counterexample,
        nodes,
    })
}

/// Exact `exp V(F₂G)` for `|G| ≤ 64`, or `None` if some level would visit
/// more than `budget` subsets.
pub fn exponent_low_weight(
    g: &Arc<Group>,
    cfg: &EngineConfig,
    budget: u64,
) -> Result<Option<ExponentResult>, EngineError> {
    if g.order() > KERNEL_MAX_ORDER {
        return Ok(None);
    }
    let start = Instant::now();
    let alg = GroupAlgebra::new(Arc::clone(g));
    let m = g.order() as u64 - 1;
    let mut witness = alg.one();
    let mut nodes = 0;
    for log in 0..=6u32 {
        if low_weight_count(m, 1 << log) > budget {
            return Ok(None);
        }
        let c = power_vanishes(g, log, cfg)?;
        nodes += c.nodes;
        match c.counterexample {
            None => {
                return Ok(Some(ExponentResult {
                    group_label: g.label().to_string(),
                    method: Method::LowWeight,
                    exponent: ExponentValue::Exact(1 << log),
                    witness: Some(witness),
                    samples: nodes,
                    seed: None,
                    wall_time: start.elapsed(),
                }))
            }
            Some(z) => witness = alg.from_u64(z ^ 1).expect("in range"),
        }
    }
    unreachable!("z^64 vanishes on the augmentation ideal of a group of order at most 64")
}
