//! Squaring through a decomposition over cosets of a central subgroup `N`.
//!
//! Writing `u = Σ g_i u_i` with `u_i ∈ FN` and `N` central, every `u_i` is
//! central in `FG`, so
//! `u² = Σ g_i² u_i² + Σ_{i<j} (g_ig_j + g_jg_i) u_i u_j`.

use super::{AlgebraElement, AlgebraError};
use crate::group::{Elem, Subgroup};

/// `x = Σ_i transversal[i] · components[i]`, each component supported on `N`.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    pub transversal: Vec<Elem>,
    pub subgroup: Vec<Elem>,
    pub components: Vec<AlgebraElement>,
}

impl CosetDecomposition {
    /// Splits `x` over the cosets `g·N`, taking the smallest index in each
    /// coset as its representative (so the first is the identity).
    pub fn new(x: &AlgebraElement, n: &Subgroup<'_>) -> Result<CosetDecomposition, AlgebraError> {
        let g = x.group();
        if n.parent() != g {
            return Err(AlgebraError::ForeignSubgroup);
        }
        let alg = x.algebra();
        let mut seen = vec![false; g.order()];
        let mut transversal = Vec::new();
        let mut components = Vec::new();
        for t in g.elements() {
            if seen[t.index()] {
                continue;
            }
            let mut u = alg.zero();
            for &m in n.members() {
                let tm = g.mul(t, m);
                seen[tm.index()] = true;
                if x.coefficient(tm) {
                    u.flip(m);
                }
            }
            transversal.push(t);
            components.push(u);
        }
        Ok(CosetDecomposition {
            transversal,
            subgroup: n.members().to_vec(),
            components,
        })
    }

    pub fn recombine(&self) -> AlgebraElement {
        let mut out = self.components[0].algebra().zero();
        for (&t, u) in self.transversal.iter().zip(&self.components) {
            out = &out + &u.left_translate(t);
        }
        out
    }
}

/// `x²` evaluated coset by coset. Requires `N` central.
pub fn brauer_square(x: &AlgebraElement, n: &Subgroup<'_>) -> Result<AlgebraElement, AlgebraError> {
    if !n.is_central() {
        return Err(AlgebraError::NotCentral);
    }
    let d = CosetDecomposition::new(x, n)?;
    let g = x.group();
    let alg = x.algebra();
    let m = d.transversal.len();
    let mut out = alg.zero();
    for i in 0..m {
        let gi = d.transversal[i];
        let ui = &d.components[i];
        if ui.is_zero() {
            continue;
        }
        out = &out + &ui.square().left_translate(g.mul(gi, gi));
        for j in i + 1..m {
            let uj = &d.components[j];
            if uj.is_zero() {
                continue;
            }
            let gj = d.transversal[j];
            let bracket = alg.sum(&[g.mul(gi, gj), g.mul(gj, gi)]);
            out = &out + &(&bracket * &(ui * uj));
        }
    }
    Ok(out)
}
