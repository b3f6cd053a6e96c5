//! Isomorphism testing by invariant fingerprints and backtracking over the
//! images of a minimal generating set.

use super::{Elem, Group, GroupError, Subgroup, MAX_ISOMORPHISM_ORDER};

/// Isomorphism invariants compared before any search is attempted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub order_profile: Vec<(u32, usize)>,
    pub center: usize,
    pub derived: usize,
    pub frattini: usize,
    pub exponent: u32,
    pub class: usize,
    pub abelianization: Vec<u32>,
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    Fingerprint {
        order: g.order(),
        order_profile: g.order_profile(),
        center: g.center().order(),
        derived: g.derived_subgroup().order(),
        frattini: g.frattini().order(),
        exponent: g.exponent(),
        class: g.nilpotency_class(),
        abelianization: abelian_invariants(g),
    }
}

/// Orders of the cyclic factors of `G/G'`, largest first.
pub fn abelian_invariants(g: &Group) -> Vec<u32> {
    invariants_modulo(g, &g.derived_subgroup())
}

/// Cyclic factor orders of the abelian quotient `G/N` (requires `N ⊇ G'`).
///
/// If `c_k` counts cosets killed by `2^k`, the number of factors of order at
/// least `2^k` is `log₂ c_k − log₂ c_{k−1}`.
pub(crate) fn invariants_modulo(g: &Group, n: &Subgroup<'_>) -> Vec<u32> {
    let index = g.order() / n.order();
    let mut log_counts = vec![0u32];
    let mut k = 0u32;
    while 1usize << log_counts[k as usize] < index {
        k += 1;
        let killed = g
            .elements()
            .filter(|&x| n.contains(g.pow(x, 1i64 << k)))
            .count()
            / n.order();
        log_counts.push(killed.trailing_zeros());
    }
    let mut invariants = Vec::new();
    for k in 1..log_counts.len() {
        let at_least_k = log_counts[k] - log_counts[k - 1];
        let at_least_next = log_counts
            .get(k + 1)
            .map_or(0, |&next| next - log_counts[k]);
        for _ in 0..(at_least_k - at_least_next) {
            invariants.push(1u32 << k);
        }
    }
    invariants.sort_unstable_by(|a, b| b.cmp(a));
    invariants
}

fn check_size(g: &Group) -> Result<(), GroupError> {
    if g.order() > MAX_ISOMORPHISM_ORDER {
        return Err(GroupError::SizeLimit {
            operation: "isomorphism search",
            order: g.order(),
            limit: MAX_ISOMORPHISM_ORDER,
        });
    }
    Ok(())
}

/// Per-element invariants preserved by every isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementClass {
    order: u32,
    centralizer: usize,
    square_roots: usize,
    central: bool,
    in_derived: bool,
    in_frattini: bool,
}

fn element_classes(g: &Group) -> Vec<ElementClass> {
    let z = g.center();
    let d = g.derived_subgroup();
    let phi = g.frattini();
    let mut roots = vec![0usize; g.order()];
    for y in g.elements() {
        roots[g.mul(y, y).index()] += 1;
    }
    g.elements()
        .map(|x| ElementClass {
            order: g.element_order(x),
            centralizer: g.elements().filter(|&y| g.commutes(x, y)).count(),
            square_roots: roots[x.index()],
            central: z.contains(x),
            in_derived: d.contains(x),
            in_frattini: phi.contains(x),
        })
        .collect()
}

struct Search<'a> {
    a: &'a Group,
    b: &'a Group,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    images: Vec<Elem>,
    collect_all: bool,
    found: Vec<Vec<Elem>>,
}

impl Search<'_> {
    /// Extends the assignment on the first `k` generators to a map on the
    /// subgroup they generate, failing on any inconsistency or collision.
    fn extend(&self, k: usize) -> Option<Vec<Elem>> {
        const UNSET: Elem = Elem(u16::MAX);
        let mut map = vec![UNSET; self.a.order()];
        let mut used = vec![false; self.b.order()];
        map[0] = Elem::IDENTITY;
        used[0] = true;
        let mut queue = vec![Elem::IDENTITY];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&s, &img) in self.gens[..k].iter().zip(&self.images[..k]) {
                let y = self.a.mul(x, s);
                let target = self.b.mul(map[x.index()], img);
                let slot = &mut map[y.index()];
                if *slot == UNSET {
                    if used[target.index()] {
                        return None;
                    }
                    used[target.index()] = true;
                    *slot = target;
                    queue.push(y);
                } else if *slot != target {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.gens.len() {
            let map = self.extend(depth).expect("checked at previous depth");
            debug_assert!(map.iter().all(|m| m.0 != u16::MAX));
            self.found.push(map);
            return !self.collect_all;
        }
        for i in 0..self.candidates[depth].len() {
            let c = self.candidates[depth][i];
            self.images.push(c);
            let ok = self.extend(depth + 1).is_some();
            if ok && self.run(depth + 1) {
                return true;
            }
            self.images.pop();
        }
        false
    }
}

fn search(a: &Group, b: &Group, collect_all: bool) -> Result<Vec<Vec<Elem>>, GroupError> {
    check_size(a)?;
    check_size(b)?;
    if fingerprint(a) != fingerprint(b) {
        return Ok(Vec::new());
    }
    let class_a = element_classes(a);
    let class_b = element_classes(b);
    let mut class_count = std::collections::HashMap::new();
    for c in &class_a {
        *class_count.entry(*c).or_insert(0usize) += 1;
    }
    // rare classes first keeps the branching factor small
    let mut preference: Vec<Elem> = a.elements().collect();
    preference.sort_by_key(|x| (class_count[&class_a[x.index()]], x.index()));
    let gens = a.minimal_generating_set_by(&preference);
    let candidates = gens
        .iter()
        .map(|g| {
            b.elements()
                .filter(|y| class_b[y.index()] == class_a[g.index()])
                .collect()
        })
        .collect();
    let mut s = Search {
        a,
        b,
        gens,
        candidates,
        images: Vec::new(),
        collect_all,
        found: Vec::new(),
    };
    s.run(0);
    Ok(s.found)
}

/// An isomorphism `a → b` as the image of every element of `a`, if one exists.
pub fn find_isomorphism(a: &Group, b: &Group) -> Result<Option<Vec<Elem>>, GroupError> {
    Ok(search(a, b, false)?.pop())
}

pub fn is_isomorphic(a: &Group, b: &Group) -> Result<bool, GroupError> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// Every automorphism of `g`, each as a permutation of its elements.
pub fn automorphisms(g: &Group) -> Result<Vec<Vec<Elem>>, GroupError> {
    search(g, g, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, semidirect_product};

    fn d8() -> Group {
        let c4 = cyclic(4).unwrap();
        let inv: Vec<Elem> = c4.elements().map(|x| c4.inv(x)).collect();
        semidirect_product(&c4, 2, &inv).unwrap()
    }

    #[test]
    fn abelian_invariants_of_products() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        let g = direct_product(&direct_product(&c4, &c2).unwrap(), &c2).unwrap();
        assert_eq!(abelian_invariants(&g), vec![4, 2, 2]);
        assert_eq!(abelian_invariants(&d8()), vec![2, 2]);
        assert_eq!(abelian_invariants(&cyclic(1).unwrap()), Vec::<u32>::new());
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let g = d8();
        // conjugate the table by a permutation fixing 0
        let n = g.order();
        let perm: Vec<usize> = std::iter::once(0).chain((1..n).rev()).collect();
        let mut inv_perm = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv_perm[p] = i;
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = g.mul(Elem::new(inv_perm[a]), Elem::new(inv_perm[b]));
                table[a * n + b] = perm[c.index()] as u16;
            }
        }
        let h = Group::from_table("D8'", n, table).unwrap();
        let map = find_isomorphism(&g, &h).unwrap().unwrap();
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(
                    map[g.mul(x, y).index()],
                    h.mul(map[x.index()], map[y.index()])
                );
            }
        }
    }

    #[test]
    fn non_isomorphic_same_order() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        let a = direct_product(&c4, &c2).unwrap();
        assert!(!is_isomorphic(&a, &d8()).unwrap());
        assert!(!is_isomorphic(&a, &cyclic(8).unwrap()).unwrap());
    }

    #[test]
    fn automorphism_counts() {
        // |Aut(D8)| = 8, |Aut(C2×C2)| = 6, |Aut(C8)| = 4
        assert_eq!(automorphisms(&d8()).unwrap().len(), 8);
        let c2 = cyclic(2).unwrap();
        assert_eq!(
            automorphisms(&direct_product(&c2, &c2).unwrap())
                .unwrap()
                .len(),
            6
        );
        assert_eq!(automorphisms(&cyclic(8).unwrap()).unwrap().len(), 4);
    }

    #[test]
    fn size_cap() {
        let g = cyclic(512).unwrap();
        assert!(matches!(
            is_isomorphic(&g, &g),
            Err(GroupError::SizeLimit { .. })
        ));
    }
}
