//! Byte-chunked lookup tables for `FG` arithmetic when `|G| ≤ 64`, where an
//! algebra element fits in one `u64`.
//!
//! Every table is indexed by `(row, chunk, byte)`: the XOR of some per-element
//! mask over the set bits of one byte of an operand. Multiplying or squaring
//! then costs one lookup per (set bit, chunk) instead of one per pair of bits.

use crate::group::{Elem, Group};

pub const KERNEL_MAX_ORDER: usize = 64;

pub struct Kernel64 {
    n: usize,
    chunks: usize,
    /// `left[i][c][b]` = `g_i · (bits of b in chunk c)`.
    left: Vec<u64>,
    /// `upper[i][c][b]` = XOR over `j > i` in the chunk of `g_ig_j + g_jg_i`.
    upper: Vec<u64>,
    /// `column[k][c][b]` = XOR over `i` in the chunk of `g_ig_k + g_kg_i`.
    column: Vec<u64>,
    /// `squares[c][b]` = XOR over `i` in the chunk of `g_i²`.
    squares: Vec<u64>,
    square_bit: Vec<u64>,
}

#[inline]
fn bit(e: Elem) -> u64 {
    1u64 << e.index()
}

impl Kernel64 {
    pub fn new(g: &Group) -> Kernel64 {
        let n = g.order();
        assert!(n <= KERNEL_MAX_ORDER, "kernel needs order <= 64");
        let chunks = n.div_ceil(8);
        let e = Elem::new;
        let pair = |i: usize, j: usize| bit(g.mul(e(i), e(j))) ^ bit(g.mul(e(j), e(i)));

        let build = |rows: usize, item: &dyn Fn(usize, usize) -> u64| {
            let mut t = vec![0u64; rows * chunks * 256];
            for r in 0..rows {
                for c in 0..chunks {
                    let base = (r * chunks + c) * 256;
                    for v in 1..256usize {
                        let low = v.trailing_zeros() as usize;
                        let j = c * 8 + low;
                        let add = if j < n { item(r, j) } else { 0 };
                        t[base + v] = t[base + (v & (v - 1))] ^ add;
                    }
                }
            }
            t
        };

        let left = build(n, &|i, j| bit(g.mul(e(i), e(j))));
        let upper = build(n, &|i, j| if j > i { pair(i, j) } else { 0 });
        let column = build(n, &|k, i| pair(i, k));
        let squares = build(1, &|_, i| bit(g.mul(e(i), e(i))));
        let square_bit = (0..n).map(|i| bit(g.mul(e(i), e(i)))).collect();
        Kernel64 {
            n,
            chunks,
            left,
            upper,
            column,
            squares,
            square_bit,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn lookup(&self, table: &[u64], row: usize, x: u64) -> u64 {
        let base = row * self.chunks * 256;
        let mut acc = 0;
        for c in 0..self.chunks {
            acc ^= table[base + c * 256 + ((x >> (8 * c)) & 0xff) as usize];
        }
        acc
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let mut acc = 0;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc ^= self.lookup(&self.left, i, y);
        }
        acc
    }

    /// `x² = Σ x_i g_i² + Σ_{i<j} x_i x_j (g_ig_j + g_jg_i)`.
    #[inline]
    pub fn square(&self, x: u64) -> u64 {
        let mut acc = self.lookup(&self.squares, 0, x);
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let base = i * self.chunks * 256;
            for c in i / 8..self.chunks {
                acc ^= self.upper[base + c * 256 + ((x >> (8 * c)) & 0xff) as usize];
            }
        }
        acc
    }

    /// `x·g_k + g_k·x`, the cross term when `g_k` is added to `x` before
    /// squaring.
    #[inline]
    pub fn anticommutator_with(&self, x: u64, k: usize) -> u64 {
        self.lookup(&self.column, k, x)
    }

    /// Bit of `g_k²`.
    #[inline]
    pub fn square_of_basis(&self, k: usize) -> u64 {
        self.square_bit[k]
    }
}
