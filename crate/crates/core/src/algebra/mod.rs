//! The group algebra `F₂G`.
//!
//! Elements are bit vectors indexed by group element; addition is XOR and
//! the product is convolution over the Cayley table. Groups of order at most
//! 64 additionally get a [`Kernel64`] so the hot paths work on a single word.

mod brauer;
mod kernel;

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

pub use brauer::{brauer_square, CosetDecomposition};
pub use kernel::{Kernel64, KERNEL_MAX_ORDER};

use crate::group::{Elem, Group};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operands belong to different group algebras")]
    GroupMismatch,
    #[error("element has augmentation 0 and is not a unit")]
    NotUnit,
    #[error("element is not nilpotent within {bound} powers")]
    NotNilpotent { bound: usize },
    #[error("subgroup is not central")]
    NotCentral,
    #[error("subgroup belongs to a different group")]
    ForeignSubgroup,
    #[error("expected {expected} coefficient bits, got {got}")]
    Length { expected: usize, got: usize },
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

/// `F₂G` for one group. Cheap to share behind an `Arc`.
pub struct GroupAlgebra {
    id: u64,
    group: Arc<Group>,
    words: usize,
    kernel: OnceLock<Option<Kernel64>>,
}

impl fmt::Debug for GroupAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[{}]", self.group.label())
    }
}

impl GroupAlgebra {
    pub fn new(group: Arc<Group>) -> Arc<GroupAlgebra> {
        let words = group.order().div_ceil(64);
        Arc::new(GroupAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            group,
            words,
            kernel: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Lookup tables for single-word arithmetic; `None` above order 64.
    /// Built on first use.
    pub fn kernel(&self) -> Option<&Kernel64> {
        self.kernel
            .get_or_init(|| (self.order() <= KERNEL_MAX_ORDER).then(|| Kernel64::new(&self.group)))
            .as_ref()
    }

    fn same(&self, other: &GroupAlgebra) -> bool {
        self.id == other.id
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement {
            algebra: Arc::clone(self),
            bits: vec![0; self.words],
        }
    }

    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        self.basis(Elem::IDENTITY)
    }

    pub fn basis(self: &Arc<Self>, g: Elem) -> AlgebraElement {
        let mut x = self.zero();
        x.flip(g);
        x
    }

    /// Sum of basis elements; repeated elements cancel.
    pub fn sum(self: &Arc<Self>, elems: &[Elem]) -> AlgebraElement {
        let mut x = self.zero();
        for &g in elems {
            x.flip(g);
        }
        x
    }

    /// Element whose bit `i` is bit `i` of `word`; bits at or above the
    /// group order must be clear.
    pub fn from_u64(self: &Arc<Self>, word: u64) -> Result<AlgebraElement, AlgebraError> {
        let mut bits = vec![0; self.words];
        bits[0] = word;
        self.from_bits(bits)
    }

    pub fn from_bits(self: &Arc<Self>, bits: Vec<u64>) -> Result<AlgebraElement, AlgebraError> {
        let n = self.order();
        let extra = if n.is_multiple_of(64) {
            0
        } else {
            !0u64 << (n % 64)
        };
        if bits.len() != self.words || bits.last().is_some_and(|w| w & extra != 0) {
            let got = bits.len() * 64 - bits.last().map_or(0, |w| w.leading_zeros() as usize);
            return Err(AlgebraError::Length { expected: n, got });
        }
        Ok(AlgebraElement {
            algebra: Arc::clone(self),
            bits,
        })
    }
}

/// An element of `F₂G`.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Arc<GroupAlgebra>,
    bits: Vec<u64>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.bits == other.bits
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.algebra
    }

    pub fn group(&self) -> &Group {
        self.algebra.group()
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    /// The single-word form, available when the group order is at most 64.
    pub fn as_u64(&self) -> Option<u64> {
        (self.bits.len() == 1).then(|| self.bits[0])
    }

    pub fn coefficient(&self, g: Elem) -> bool {
        self.bits[g.index() / 64] >> (g.index() % 64) & 1 == 1
    }

    pub fn flip(&mut self, g: Elem) {
        self.bits[g.index() / 64] ^= 1 << (g.index() % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.bits[0] == 1 && self.bits[1..].iter().all(|&w| w == 0)
    }

    /// Group elements with coefficient 1, in index order.
    pub fn support(&self) -> Vec<Elem> {
        let mut out = Vec::new();
        for (w, &word) in self.bits.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                out.push(Elem::new(w * 64 + rest.trailing_zeros() as usize));
                rest &= rest - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Sum of coefficients in `F₂`.
    pub fn augmentation(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// `FG` is local for a finite 2-group, so units are exactly the elements
    /// of augmentation 1.
    pub fn is_unit(&self) -> bool {
        self.augmentation()
    }

    fn check(&self, other: &AlgebraElement) -> Result<(), AlgebraError> {
        if self.algebra.same(&other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::GroupMismatch)
        }
    }

    fn with_bits(&self, bits: Vec<u64>) -> AlgebraElement {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            bits,
        }
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(other)?;
        Ok(self.with_bits(
            self.bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        ))
    }

    pub fn try_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(other)?;
        if let (Some(k), Some(x), Some(y)) = (self.algebra.kernel(), self.as_u64(), other.as_u64())
        {
            return Ok(self.with_bits(vec![k.mul(x, y)]));
        }
        let g = self.group();
        let ys = other.support();
        let mut out = vec![0u64; self.bits.len()];
        for a in self.support() {
            let row = g.row(a);
            for &b in &ys {
                let c = row[b.index()] as usize;
                out[c / 64] ^= 1 << (c % 64);
            }
        }
        Ok(self.with_bits(out))
    }

    /// `x²` via `Σ x_i g_i² + Σ_{i<j} x_i x_j (g_ig_j + g_jg_i)`.
    pub fn square(&self) -> AlgebraElement {
        if let (Some(k), Some(x)) = (self.algebra.kernel(), self.as_u64()) {
            return self.with_bits(vec![k.square(x)]);
        }
        let g = self.group();
        let s = self.support();
        let mut out = vec![0u64; self.bits.len()];
        let mut flip = |c: Elem| out[c.index() / 64] ^= 1 << (c.index() % 64);
        for (i, &a) in s.iter().enumerate() {
            flip(g.mul(a, a));
            for &b in &s[i + 1..] {
                flip(g.mul(a, b));
                flip(g.mul(b, a));
            }
        }
        self.with_bits(out)
    }

    /// `xᵏ` by square-and-multiply; `x⁰ = 1`.
    pub fn pow(&self, mut k: u64) -> AlgebraElement {
        let mut base = self.clone();
        let mut acc = self.algebra.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative order of a unit. Always a power of two; found by
    /// repeated squaring, giving up after `2·|G|` squarings.
    pub fn unit_order(&self) -> Result<u64, AlgebraError> {
        if !self.is_unit() {
            return Err(AlgebraError::NotUnit);
        }
        let mut x = self.clone();
        let mut order = 1u64;
        let cap = 2 * self.algebra.order();
        for _ in 0..=cap {
            if x.is_one() {
                return Ok(order);
            }
            x = x.square();
            order = order.saturating_mul(2);
        }
        Err(AlgebraError::NotNilpotent { bound: cap })
    }

    /// Least `k ≥ 1` with `zᵏ = 0`.
    pub fn nilpotency_index(&self) -> Result<usize, AlgebraError> {
        let bound = self.algebra.order() + 1;
        if self.augmentation() {
            return Err(AlgebraError::NotNilpotent { bound });
        }
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_zero() {
            if k >= bound {
                return Err(AlgebraError::NotNilpotent { bound });
            }
            p = &p * self;
            k += 1;
        }
        Ok(k)
    }

    /// `xy + yx`, the additive commutator (sign-free in characteristic 2).
    pub fn lie_bracket(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.try_mul(other)?.try_add(&other.try_mul(self)?)
    }

    /// `x·g`.
    pub fn right_translate(&self, g: Elem) -> AlgebraElement {
        let grp = self.group();
        self.permuted(|a| grp.mul(a, g))
    }

    /// `g·x`.
    pub fn left_translate(&self, g: Elem) -> AlgebraElement {
        let grp = self.group();
        self.permuted(|a| grp.mul(g, a))
    }

    fn permuted(&self, f: impl Fn(Elem) -> Elem) -> AlgebraElement {
        let mut out = self.algebra.zero();
        for a in self.support() {
            out.flip(f(a));
        }
        out
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    /// Panics on operands from different algebras; see [`AlgebraElement::try_add`].
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("group algebra mismatch")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    /// Panics on operands from different algebras; see [`AlgebraElement::try_mul`].
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_mul(rhs).expect("group algebra mismatch")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.support();
        if s.is_empty() {
            return write!(f, "0");
        }
        for (i, g) in s.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if g.is_identity() {
                write!(f, "1")?;
            } else {
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {self}", self.algebra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use proptest::prelude::*;

    fn alg(name: &str) -> Arc<GroupAlgebra> {
        GroupAlgebra::new(builtin(name).unwrap().group)
    }

    /// Convolution straight from the definition, as an oracle.
    fn convolve(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let g = x.group();
        let mut out = x.algebra().zero();
        for a in g.elements() {
            for b in g.elements() {
                if x.coefficient(a) && y.coefficient(b) {
                    out.flip(g.mul(a, b));
                }
            }
        }
        out
    }

    fn gens(a: &Arc<GroupAlgebra>) -> (Elem, Elem) {
        let g = a.group().generators();
        (g[0], g[1])
    }

    #[test]
    fn characteristic_two_addition() {
        let a = alg("D8");
        let (g, h) = gens(&a);
        let x = a.sum(&[Elem::IDENTITY, g]);
        let y = a.sum(&[Elem::IDENTITY, h]);
        assert_eq!(&x + &y, a.sum(&[g, h]));
        assert!((&x + &x).is_zero());
        assert_eq!(&x + &a.zero(), x);
    }

    #[test]
    fn square_of_one_plus_r() {
        let a = alg("D8");
        let (r, _) = gens(&a);
        let x = a.sum(&[Elem::IDENTITY, r]);
        let r2 = a.group().mul(r, r);
        assert_eq!(&x * &x, a.sum(&[Elem::IDENTITY, r2]));
        assert_eq!(x.square(), a.sum(&[Elem::IDENTITY, r2]));
    }

    #[test]
    fn case_a_unit_has_order_four() {
        let a = alg("G16_3");
        let (g, h) = gens(&a);
        let x = a.sum(&[Elem::IDENTITY, g, h]);
        assert!(x.is_unit());
        assert_eq!(x.pow(4), a.one());
        assert_eq!(x.unit_order(), Ok(4));
    }

    #[test]
    fn augmentation_and_units() {
        let a = alg("D8");
        let (g, h) = gens(&a);
        assert!(!a.zero().augmentation());
        assert!(a.one().is_unit());
        assert!(!a.sum(&[Elem::IDENTITY, g]).is_unit());
        assert_eq!(
            a.sum(&[Elem::IDENTITY, g]).unit_order(),
            Err(AlgebraError::NotUnit)
        );
        let gh = a.group().mul(g, h);
        assert!(a.sum(&[Elem::IDENTITY, g, gh]).augmentation());
        assert_eq!(a.one().unit_order(), Ok(1));
    }

    #[test]
    fn nilpotency() {
        let a = alg("D8");
        let (g, _) = gens(&a);
        let c = a.group().mul(g, g);
        assert_eq!(a.zero().nilpotency_index(), Ok(1));
        assert_eq!(a.sum(&[Elem::IDENTITY, c]).nilpotency_index(), Ok(2));
        assert!(a.one().nilpotency_index().is_err());
        let v = alg("C2xC2");
        let all: Vec<u64> = (0..16)
            .filter(|w: &u64| w.count_ones().is_multiple_of(2))
            .collect();
        for w in all {
            let z = v.from_u64(w).unwrap();
            assert!(z.nilpotency_index().unwrap() <= 3, "{z}");
        }
    }

    #[test]
    fn lie_brackets() {
        let a = alg("D8");
        let (g, h) = gens(&a);
        let x = a.sum(&[g, h]);
        assert!(x.lie_bracket(&x).unwrap().is_zero());
        assert!(x.lie_bracket(&a.one()).unwrap().is_zero());
        let bg = a.basis(g).lie_bracket(&a.basis(h)).unwrap();
        assert_eq!(bg, a.sum(&[a.group().mul(g, h), a.group().mul(h, g)]));
        assert!(!bg.is_zero());
    }

    #[test]
    fn mismatched_algebras() {
        let a = alg("D8");
        let b = alg("D8");
        assert_eq!(a.one().try_add(&b.one()), Err(AlgebraError::GroupMismatch));
        assert_eq!(a.one().try_mul(&b.one()), Err(AlgebraError::GroupMismatch));
        assert!(a.from_u64(1 << 9).is_err());
    }

    #[test]
    fn translations() {
        let a = alg("Q8");
        let (g, h) = gens(&a);
        let x = a.sum(&[Elem::IDENTITY, g, h]);
        assert_eq!(x.right_translate(h), &x * &a.basis(h));
        assert_eq!(x.left_translate(h), &a.basis(h) * &x);
    }

    #[test]
    fn multiword_arithmetic_matches_oracle() {
        let a = alg("D8xD8xC2");
        assert_eq!(a.order(), 128);
        assert!(a.kernel().is_none());
        let g = a.group().generators().to_vec();
        let x = a.sum(&[
            Elem::IDENTITY,
            g[0],
            g[1],
            a.group().mul(g[2], g[3]),
            Elem::new(127),
        ]);
        let y = a.sum(&[g[4], Elem::new(77), Elem::new(64)]);
        assert_eq!(&x * &y, convolve(&x, &y));
        assert_eq!(x.square(), convolve(&x, &x));
        assert_eq!(x.unit_order(), Ok(x.unit_order().unwrap()));
        assert!(x.pow(x.unit_order().unwrap()).is_one());
    }

    #[test]
    fn commutator_factorisation() {
        // [g_i, g_j] = g_i g_j (1 + (g_j, g_i))
        for name in ["D8", "Q8", "G16_3", "D16", "G32_6"] {
            let a = alg(name);
            let grp = a.group();
            for x in grp.elements() {
                for y in grp.elements() {
                    let lhs = a.basis(x).lie_bracket(&a.basis(y)).unwrap();
                    let c = grp.commutator(y, x);
                    let rhs = &a.basis(grp.mul(x, y)) * &a.sum(&[Elem::IDENTITY, c]);
                    assert_eq!(lhs, rhs, "{name} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn abelian_exponent_law_small() {
        for name in ["C2", "C4", "C2xC2", "C4xC2", "C8"] {
            let a = alg(name);
            let n = a.order();
            let mut best = 1;
            for w in 0..1u64 << n {
                let x = a.from_u64(w).unwrap();
                if x.is_unit() {
                    best = best.max(x.unit_order().unwrap());
                }
            }
            assert_eq!(best, a.group().exponent() as u64, "{name}");
        }
    }

    fn word_strategy(n: usize) -> impl Strategy<Value = u64> {
        let mask = if n == 64 { !0 } else { (1u64 << n) - 1 };
        any::<u64>().prop_map(move |w| w & mask)
    }

    const SMALL: [&str; 8] = ["D8", "Q8", "G16_3", "G16_4", "D16", "G32_2", "G32_6", "E64"];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn square_is_self_product(idx in 0..SMALL.len(), w in word_strategy(64)) {
            let a = alg(SMALL[idx]);
            let n = a.order();
            let w = if n == 64 { w } else { w & ((1 << n) - 1) };
            let x = a.from_u64(w).unwrap();
            prop_assert_eq!(x.square(), convolve(&x, &x));
            prop_assert_eq!(&x * &x, x.square());
        }

        #[test]
        fn product_is_associative(w in proptest::array::uniform3(word_strategy(32))) {
            let a = alg("G32_6");
            let [x, y, z] = w.map(|w| a.from_u64(w).unwrap());
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn freshman_fourth_power(idx in 0..SMALL.len(), w in word_strategy(64)) {
            let a = alg(SMALL[idx]);
            let n = a.order();
            let mut w = if n == 64 { w } else { w & ((1 << n) - 1) };
            if w.count_ones() % 2 == 1 {
                w ^= 1;
            }
            let z = a.from_u64(w).unwrap();
            let x = &a.one() + &z;
            prop_assert_eq!(x.pow(4), &a.one() + &z.pow(4));
        }

        #[test]
        fn units_reach_one_and_invert(idx in 0..SMALL.len(), w in word_strategy(64)) {
            let a = alg(SMALL[idx]);
            let n = a.order();
            let mut w = if n == 64 { w } else { w & ((1 << n) - 1) };
            if w.count_ones() % 2 == 0 {
                w ^= 1;
            }
            let x = a.from_u64(w).unwrap();
            let k = x.unit_order().unwrap();
            prop_assert!(k.is_power_of_two());
            prop_assert!(x.pow(k).is_one());
            let inv = x.pow(k - 1);
            prop_assert!((&x * &inv).is_one());
            if k > 1 {
                prop_assert!(!x.pow(k / 2).is_one());
            }
        }
    }
}
