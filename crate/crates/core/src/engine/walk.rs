//! Reflected Gray-code walk over the augmentation-1 units of `F₂G`,
//! `|G| ≤ 64`, maintaining `x` and `x²` incrementally.
//!
//! Bit 0 (the identity) is not free: it is `1 XOR parity` of the others, so
//! flipping free bit `p` replaces `x` by `x + 1 + g_p` and
//! `(x + 1 + g_p)² = x² + 1 + g_p² + (x g_p + g_p x)`.
//!
//! The free bits are split into a high part fixed per shard and a low part
//! walked in Gray order, so shards are independent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Kernel64;

pub(crate) const POLL_INTERVAL: u64 = 1 << 16;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    pub free_bits: u32,
    pub low_bits: u32,
    pub shards: usize,
}

impl Layout {
    pub fn new(order: usize, shard_bits: u32) -> Layout {
        let free_bits = order as u32 - 1;
        let high = shard_bits.min(free_bits);
        Layout {
            free_bits,
            low_bits: free_bits - high,
            shards: 1 << high,
        }
    }

    pub fn steps_per_shard(&self) -> u64 {
        1u64 << self.low_bits
    }

    pub fn total_units(&self) -> u64 {
        1u64 << self.free_bits
    }

    /// Starting unit of a shard: the high free bits are the shard index, the
    /// low ones are clear.
    pub fn start(&self, shard: usize) -> u64 {
        let free = (shard as u64) << self.low_bits;
        (free << 1) | (1 ^ (free.count_ones() as u64 & 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Mismatch {
    pub step: u64,
}

/// Checkpoint step indices for one shard, sorted and deduplicated.
pub(crate) fn checkpoints(layout: &Layout, total: u64, seed: u64, shard: usize) -> Vec<u64> {
    let steps = layout.steps_per_shard();
    let per_shard = total.div_ceil(layout.shards as u64);
    if per_shard >= steps {
        return (0..steps).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    let mut v: Vec<u64> = (0..per_shard).map(|_| rng.random_range(0..steps)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Walks one shard, calling `visit(x, x²)` on every unit in Gray order until
/// it returns `false`. `keep_going` is polled every [`POLL_INTERVAL`] steps.
/// At each checkpoint step the incremental square is compared against a
/// fresh one. Returns the number of units visited.
pub(crate) fn walk_shard(
    k: &Kernel64,
    layout: &Layout,
    shard: usize,
    checkpoints: &[u64],
    keep_going: impl Fn() -> bool,
    mut visit: impl FnMut(u64, u64) -> bool,
) -> Result<u64, Mismatch> {
    let mut x = layout.start(shard);
    let mut sq = k.square(x);
    let steps = layout.steps_per_shard();
    let mut cps = checkpoints.iter().copied().peekable();
    let mut t = 0u64;
    loop {
        if cps.peek() == Some(&t) {
            cps.next();
            if sq != k.square(x) {
                return Err(Mismatch { step: t });
            }
        }
        if !visit(x, sq) {
            return Ok(t + 1);
        }
        t += 1;
        if t == steps {
            return Ok(t);
        }
        if t.is_multiple_of(POLL_INTERVAL) && !keep_going() {
            return Ok(t);
        }
        let pos = t.trailing_zeros() as usize + 1;
        sq ^= 1 ^ k.square_of_basis(pos) ^ k.anticommutator_with(x, pos);
        x ^= 1 | (1 << pos);
    }
}

/// Order of the unit `x` given `x²`, by continued squaring.
#[inline]
pub(crate) fn order_from_square(k: &Kernel64, x: u64, sq: u64) -> u64 {
    if x == 1 {
        return 1;
    }
    let mut order = 2;
    let mut y = sq;
    while y != 1 {
        y = k.square(y);
        order *= 2;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    #[test]
    fn walk_visits_every_unit_once() {
        let g = builtin("D8").unwrap().group;
        let k = Kernel64::new(&g);
        for shard_bits in [0, 2, 7, 9] {
            let layout = Layout::new(8, shard_bits);
            let mut seen = std::collections::HashSet::new();
            for s in 0..layout.shards {
                let cps = checkpoints(&layout, u64::MAX, 0, s);
                let n = walk_shard(
                    &k,
                    &layout,
                    s,
                    &cps,
                    || true,
                    |x, sq| {
                        assert_eq!(x.count_ones() % 2, 1);
                        assert_eq!(sq, k.square(x));
                        assert!(seen.insert(x));
                        true
                    },
                )
                .unwrap();
                assert_eq!(n, layout.steps_per_shard());
            }
            assert_eq!(seen.len(), 128);
        }
    }

    #[test]
    fn trivial_group_has_one_unit() {
        let g = builtin("C1").unwrap().group;
        let k = Kernel64::new(&g);
        let layout = Layout::new(1, 8);
        assert_eq!(layout.shards, 1);
        let mut units = vec![];
        walk_shard(
            &k,
            &layout,
            0,
            &[],
            || true,
            |x, _| {
                units.push(x);
                true
            },
        )
        .unwrap();
        assert_eq!(units, vec![1]);
    }

    #[test]
    fn checkpoints_are_sorted_and_in_range() {
        let layout = Layout::new(32, 8);
        let cps = checkpoints(&layout, 100_000, 3, 5);
        assert!(cps.windows(2).all(|w| w[0] < w[1]));
        assert!(cps.iter().all(|&c| c < layout.steps_per_shard()));
        assert!(cps.len() > 380);
        assert_eq!(cps, checkpoints(&layout, 100_000, 3, 5));
    }
}
