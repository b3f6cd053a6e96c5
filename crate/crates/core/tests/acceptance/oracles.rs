//! Slow reference implementations that share nothing with the library beyond
//! the Cayley table: group-algebra products by direct convolution, unit
//! orders by repeated multiplication, element orders by iteration.

use unitexp::algebra::AlgebraElement;
use unitexp::group::{Elem, Group};

pub type Coeffs = Vec<bool>;

pub fn coeffs(x: &AlgebraElement) -> Coeffs {
    let g = x.group();
    g.elements().map(|e| x.coefficient(e)).collect()
}

pub fn from_word(n: usize, word: u64) -> Coeffs {
    (0..n).map(|i| word >> i & 1 == 1).collect()
}

pub fn one(n: usize) -> Coeffs {
    let mut v = vec![false; n];
    v[0] = true;
    v
}

pub fn mul(g: &Group, x: &[bool], y: &[bool]) -> Coeffs {
    let n = g.order();
    let mut out = vec![false; n];
    for (i, _) in x.iter().enumerate().filter(|(_, &b)| b) {
        for (j, _) in y.iter().enumerate().filter(|(_, &b)| b) {
            let k = g.mul(Elem::new(i), Elem::new(j)).index();
            out[k] ^= true;
        }
    }
    out
}

/// Least `k ≥ 1` with `x^k = 1`, by multiplying one factor at a time.
pub fn unit_order_by_products(g: &Group, x: &[bool]) -> u64 {
    let id = one(g.order());
    let mut p = x.to_vec();
    let mut k = 1;
    while p != id {
        p = mul(g, &p, x);
        k += 1;
        assert!(k <= 2 * g.order() as u64, "not a unit of a 2-group algebra");
    }
    k
}

/// Order of a unit whose order is a power of two, by squaring.
pub fn unit_order_by_squares(g: &Group, x: &[bool]) -> u64 {
    let id = one(g.order());
    let mut p = x.to_vec();
    let mut k = 1;
    while p != id {
        p = mul(g, &p, &p);
        k *= 2;
        assert!(k <= 2 * g.order() as u64, "not a unit of a 2-group algebra");
    }
    k
}

/// Largest order over all augmentation-1 elements; repeated multiplication
/// when `by_products`, squaring otherwise.
pub fn max_unit_order(g: &Group, by_products: bool) -> u64 {
    let n = g.order();
    let mut best = 1;
    for w in 0..1u64 << n {
        if w.count_ones() % 2 == 0 {
            continue;
        }
        let x = from_word(n, w);
        let o = if by_products {
            unit_order_by_products(g, &x)
        } else {
            unit_order_by_squares(g, &x)
        };
        best = best.max(o);
    }
    best
}

pub fn group_exponent(g: &Group) -> u64 {
    let mut e = 1;
    for a in g.elements() {
        let mut p = a;
        let mut k = 1u64;
        while !p.is_identity() {
            p = g.mul(p, a);
            k += 1;
        }
        e = lcm(e, k);
    }
    e
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// `a⁻¹b⁻¹ab` from the table alone.
pub fn commutator(g: &Group, a: Elem, b: Elem) -> Elem {
    let inv = |x: Elem| g.elements().find(|&y| g.mul(x, y).is_identity()).unwrap();
    g.mul(g.mul(inv(a), inv(b)), g.mul(a, b))
}
