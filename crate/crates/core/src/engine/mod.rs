//! Exponent of the normalized unit group `V(F₂G)`.
//!
//! Exact values come from an exhaustive Gray-code walk (order ≤ 32) or from a
//! witness matched by a quotient upper bound; sampling and witness search
//! give lower bounds.

mod lowweight;
mod walk;
mod witness;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, GroupAlgebra, KERNEL_MAX_ORDER};
use crate::group::{Elem, Group, GroupError};

pub use lowweight::{
    exponent_low_weight, low_weight_count, power_vanishes, LowWeightCheck, DEFAULT_NODE_BUDGET,
};
pub use witness::{find_order_witness, Strategy, WitnessBudget, WitnessSearch};

use walk::{checkpoints, order_from_square, walk_shard, Layout};

pub const MAX_EXHAUSTIVE_ORDER: usize = 32;
pub const DEFAULT_SHARD_BITS: u32 = 8;
pub const DEFAULT_CHECKPOINTS: u64 = 100_000;
const SAMPLE_CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(
        "{label}: order {order} exceeds the exhaustive limit {limit}; use sampling or witness search"
    )]
    SizeLimit {
        label: String,
        order: usize,
        limit: usize,
    },
    #[error(
        "{label}: incremental square diverged from recomputation in shard {shard} at step {step}"
    )]
    WalkMismatch {
        label: String,
        shard: usize,
        step: u64,
    },
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Exhaustive,
    BoundedExhaustive,
    Sampled,
    Witness,
    /// A witness whose order meets the bound `2·exp V(F[G/⟨c⟩])` for a central
    /// involution `c`.
    QuotientBound,
    /// `z^(2^k) = 0` checked on all sums of at most `2^k` basis elements of
    /// the augmentation ideal; exact.
    LowWeight,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::BoundedExhaustive => "bounded-exhaustive",
            Method::Sampled => "sampled",
            Method::Witness => "witness",
            Method::QuotientBound => "quotient-bound",
            Method::LowWeight => "low-weight",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExponentValue {
    Exact(u64),
    AtLeast(u64),
    /// The exponent divides the value (bounded check that passed).
    AtMost(u64),
}

impl ExponentValue {
    pub fn exact(self) -> Option<u64> {
        match self {
            ExponentValue::Exact(e) => Some(e),
            _ => None,
        }
    }

    /// `Some(true)` if the exponent is certainly 4, `Some(false)` if certainly
    /// not, `None` if the value leaves it open.
    pub fn is_four(self) -> Option<bool> {
        match self {
            ExponentValue::Exact(e) => Some(e == 4),
            ExponentValue::AtLeast(e) if e > 4 => Some(false),
            ExponentValue::AtMost(e) if e < 4 => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Exact(e) => write!(f, "{e}"),
            ExponentValue::AtLeast(e) => write!(f, ">={e}"),
            ExponentValue::AtMost(e) => write!(f, "<={e}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExponentResult {
    pub group_label: String,
    pub method: Method,
    pub exponent: ExponentValue,
    /// A unit of order `exponent` (or of the lower bound).
    pub witness: Option<AlgebraElement>,
    /// Units examined.
    pub samples: u64,
    pub seed: Option<u64>,
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    pub shard_bits: u32,
    /// Total Gray-walk checkpoints per run.
    pub checkpoints: u64,
    pub checkpoint_seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            threads: 0,
            shard_bits: DEFAULT_SHARD_BITS,
            checkpoints: DEFAULT_CHECKPOINTS,
            checkpoint_seed: 0x5eed,
        }
    }
}

impl EngineConfig {
    pub fn with_threads(threads: usize) -> EngineConfig {
        EngineConfig {
            threads,
            ..EngineConfig::default()
        }
    }

    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, EngineError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| EngineError::ThreadPool(e.to_string()))?;
        Ok(pool.install(f))
    }
}

fn exhaustive_cap(g: &Group) -> Result<(), EngineError> {
    if g.order() > MAX_EXHAUSTIVE_ORDER {
        return Err(EngineError::SizeLimit {
            label: g.label().to_string(),
            order: g.order(),
            limit: MAX_EXHAUSTIVE_ORDER,
        });
    }
    Ok(())
}

fn mismatch(g: &Group, shard: usize, m: walk::Mismatch) -> EngineError {
    EngineError::WalkMismatch {
        label: g.label().to_string(),
        shard,
        step: m.step,
    }
}

/// Exact `exp V(F₂G)` by visiting all `2^(|G|-1)` units. The witness is the
/// first unit of maximal order in (shard, Gray step) order, so the result
/// does not depend on the thread count.
pub fn exponent_exhaustive(
    g: &Arc<Group>,
    cfg: &EngineConfig,
) -> Result<ExponentResult, EngineError> {
    exhaustive_cap(g)?;
    let start = Instant::now();
    let alg = GroupAlgebra::new(Arc::clone(g));
    let k = alg.kernel().expect("order within kernel range");
    let layout = Layout::new(g.order(), cfg.shard_bits);
    let per_shard = cfg.install(|| {
        (0..layout.shards)
            .into_par_iter()
            .map(|s| {
                let cps = checkpoints(&layout, cfg.checkpoints, cfg.checkpoint_seed, s);
                let mut best = (0u64, 0u64);
                walk_shard(
                    k,
                    &layout,
                    s,
                    &cps,
                    || true,
                    |x, sq| {
                        // orders 1 and 2 need no further squaring
                        let o = if sq == 1 {
                            if x == 1 {
                                1
                            } else {
                                2
                            }
                        } else {
                            order_from_square(k, x, sq)
                        };
                        if o > best.0 {
                            best = (o, x);
                        }
                        true
                    },
                )
                .map(|_| best)
                .map_err(|m| mismatch(g, s, m))
            })
            .collect::<Vec<_>>()
    })?;
    let mut best = (0u64, 0u64);
    for r in per_shard {
        let r = r?;
        if r.0 > best.0 {
            best = r;
        }
    }
    Ok(ExponentResult {
        group_label: g.label().to_string(),
        method: Method::Exhaustive,
        exponent: ExponentValue::Exact(best.0),
        witness: Some(alg.from_u64(best.1).expect("walk stays in range")),
        samples: layout.total_units(),
        seed: None,
        wall_time: start.elapsed(),
    })
}

#[derive(Clone, Debug)]
pub struct DividesFour {
    pub group_label: String,
    pub holds: bool,
    /// `1 + z` for the first augmentation-0 `z` with `z⁴ ≠ 0`.
    pub counterexample: Option<AlgebraElement>,
    pub units_checked: u64,
    pub wall_time: Duration,
}

/// Whether every unit satisfies `x⁴ = 1`, i.e. `z⁴ = 0` on the augmentation
/// ideal. Stops at the first violation; the reported counterexample is the
/// first one in (shard, Gray step) order regardless of threads.
pub fn check_exponent_divides_4(
    g: &Arc<Group>,
    cfg: &EngineConfig,
) -> Result<DividesFour, EngineError> {
    exhaustive_cap(g)?;
    let start = Instant::now();
    let alg = GroupAlgebra::new(Arc::clone(g));
    let k = alg.kernel().expect("order within kernel range");
    let layout = Layout::new(g.order(), cfg.shard_bits);
    let first_bad = AtomicUsize::new(usize::MAX);
    let per_shard = cfg.install(|| {
        (0..layout.shards)
            .into_par_iter()
            .map(|s| {
                if first_bad.load(Ordering::Relaxed) < s {
                    return Ok((0, None));
                }
                let cps = checkpoints(&layout, cfg.checkpoints, cfg.checkpoint_seed, s);
                let mut bad = None;
                let visited = walk_shard(
                    k,
                    &layout,
                    s,
                    &cps,
                    || first_bad.load(Ordering::Relaxed) > s,
                    |x, sq| {
                        if k.square(sq) != 1 {
                            bad = Some(x);
                            first_bad.fetch_min(s, Ordering::Relaxed);
                            return false;
                        }
                        true
                    },
                )
                .map_err(|m| mismatch(g, s, m))?;
                Ok((visited, bad))
            })
            .collect::<Vec<Result<(u64, Option<u64>), EngineError>>>()
    })?;
    let mut checked = 0;
    let mut counterexample = None;
    for r in per_shard {
        let (n, bad) = r?;
        checked += n;
        if counterexample.is_none() {
            counterexample = bad;
        }
    }
    Ok(DividesFour {
        group_label: g.label().to_string(),
        holds: counterexample.is_none(),
        counterexample: counterexample.map(|x| alg.from_u64(x).expect("walk stays in range")),
        units_checked: checked,
        wall_time: start.elapsed(),
    })
}

/// A uniformly random unit: random coefficients with the identity bit fixed
/// to make the augmentation 1.
pub fn random_unit(alg: &Arc<GroupAlgebra>, rng: &mut impl Rng) -> AlgebraElement {
    let n = alg.order();
    let mut bits: Vec<u64> = (0..n.div_ceil(64)).map(|_| rng.random()).collect();
    if !n.is_multiple_of(64) {
        *bits.last_mut().unwrap() &= (1u64 << (n % 64)) - 1;
    }
    let parity: u32 = bits.iter().map(|w| w.count_ones()).sum::<u32>() - (bits[0] & 1) as u32;
    bits[0] = (bits[0] & !1) | (1 ^ (parity as u64 & 1));
    alg.from_bits(bits).expect("masked to group order")
}

/// Lower bound on `exp V(F₂G)` from `n` random units. Sample `i` comes from
/// chunk `i / 4096`, each chunk an independent ChaCha stream of `seed`, so
/// the result depends only on `(n, seed)`.
pub fn exponent_sampled(
    g: &Arc<Group>,
    n: u64,
    seed: u64,
    cfg: &EngineConfig,
) -> Result<ExponentResult, EngineError> {
    let start = Instant::now();
    let alg = GroupAlgebra::new(Arc::clone(g));
    let chunks = n.div_ceil(SAMPLE_CHUNK);
    let per_chunk = cfg.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c);
                let count = SAMPLE_CHUNK.min(n - c * SAMPLE_CHUNK);
                let mut best: Option<(u64, AlgebraElement)> = None;
                for _ in 0..count {
                    let x = random_unit(&alg, &mut rng);
                    let o = unit_order_fast(&x);
                    if best.as_ref().is_none_or(|b| o > b.0) {
                        best = Some((o, x));
                    }
                }
                best
            })
            .collect::<Vec<_>>()
    })?;
    let mut best: Option<(u64, AlgebraElement)> = None;
    for b in per_chunk.into_iter().flatten() {
        if best.as_ref().is_none_or(|cur| b.0 > cur.0) {
            best = Some(b);
        }
    }
    let (order, witness) = match best {
        Some((o, x)) => (o, Some(x)),
        None => (1, None),
    };
    Ok(ExponentResult {
        group_label: g.label().to_string(),
        method: Method::Sampled,
        exponent: ExponentValue::AtLeast(order),
        witness,
        samples: n,
        seed: Some(seed),
        wall_time: start.elapsed(),
    })
}

pub(crate) fn unit_order_fast(x: &AlgebraElement) -> u64 {
    match (x.algebra().kernel(), x.as_u64()) {
        (Some(k), Some(w)) => order_from_square(k, w, k.square(w)),
        _ => x.unit_order().expect("augmentation-1 element"),
    }
}

/// `2 · exp V(F₂[G/⟨c⟩])` minimised over central involutions `c`, for
/// `|G| ≤ 64`. Valid because the kernel
/// of `V(FG) → V(F[G/⟨c⟩])` is `1 + (1+c)FG`, of exponent 2.
pub fn quotient_upper_bound(
    g: &Arc<Group>,
    cfg: &EngineConfig,
) -> Result<Option<(Elem, u64)>, EngineError> {
    if g.order() > KERNEL_MAX_ORDER || g.order() < 2 {
        return Ok(None);
    }
    let mut best: Option<(Elem, u64)> = None;
    let z = g.center();
    for &c in z.members() {
        if g.element_order(c) != 2 {
            continue;
        }
        let n = g.subgroup_generated(&[c]);
        let q = Arc::new(g.quotient(&n)?);
        let r = match exponent_low_weight(&q, cfg, DEFAULT_NODE_BUDGET)? {
            Some(r) => r,
            None => exponent_exhaustive(&q, cfg)?,
        };
        let e = r.exponent.exact().expect("both methods are exact");
        if best.is_none_or(|b| 2 * e < b.1) {
            best = Some((c, 2 * e));
        }
    }
    Ok(best)
}

/// Exact exponent without walking all of `V(F₂G)`: a sparse-first witness
/// search for a unit of order `2·e` where `2·e` is the quotient bound.
/// `None` when no central involution gives a bound or the search comes up
/// short of it.
pub fn exponent_by_quotient_bound(
    g: &Arc<Group>,
    cfg: &EngineConfig,
    budget: &WitnessBudget,
) -> Result<Option<ExponentResult>, EngineError> {
    let start = Instant::now();
    let Some((_, bound)) = quotient_upper_bound(g, cfg)? else {
        return Ok(None);
    };
    let search = find_order_witness(g, bound, Strategy::SparseFirst, budget)?;
    let Some(w) = search.witness else {
        return Ok(None);
    };
    let order = unit_order_fast(&w);
    debug_assert_eq!(order, bound);
    Ok(Some(ExponentResult {
        group_label: g.label().to_string(),
        method: Method::QuotientBound,
        exponent: ExponentValue::Exact(order),
        witness: Some(w),
        samples: search.candidates,
        seed: Some(budget.seed),
        wall_time: start.elapsed(),
    }))
}

/// Extrapolated duration of a full walk, from timing a short prefix.
pub fn estimate_walk_time(g: &Arc<Group>, cfg: &EngineConfig) -> Result<Duration, EngineError> {
    exhaustive_cap(g)?;
    let alg = GroupAlgebra::new(Arc::clone(g));
    let k = alg.kernel().expect("order within kernel range");
    let layout = Layout::new(g.order(), cfg.shard_bits);
    let probe = layout.steps_per_shard().min(1 << 18);
    let start = Instant::now();
    let mut acc = 0u64;
    let mut left = probe;
    walk_shard(
        k,
        &layout,
        0,
        &[],
        || true,
        |_, sq| {
            acc ^= k.square(sq);
            left -= 1;
            left > 0
        },
    )
    .map_err(|m| mismatch(g, 0, m))?;
    std::hint::black_box(acc);
    let per_step = start.elapsed().as_secs_f64() / probe as f64;
    let threads = if cfg.threads == 0 {
        rayon::current_num_threads()
    } else {
        cfg.threads
    };
    Ok(Duration::from_secs_f64(
        per_step * layout.total_units() as f64 / threads.max(1) as f64,
    ))
}

/// Walks all units comparing the incremental square against recomputation
/// at `count` seeded checkpoints. Returns the number of checkpoints compared.
pub fn verify_gray_walk(g: &Arc<Group>, count: u64, seed: u64) -> Result<u64, EngineError> {
    exhaustive_cap(g)?;
    debug_assert!(g.order() <= KERNEL_MAX_ORDER);
    let alg = GroupAlgebra::new(Arc::clone(g));
    let k = alg.kernel().expect("order within kernel range");
    let layout = Layout::new(g.order(), DEFAULT_SHARD_BITS);
    let mut compared = 0;
    for s in 0..layout.shards {
        let cps = checkpoints(&layout, count, seed, s);
        compared += cps.len() as u64;
        walk_shard(k, &layout, s, &cps, || true, |_, _| true).map_err(|m| mismatch(g, s, m))?;
    }
    Ok(compared)
}
