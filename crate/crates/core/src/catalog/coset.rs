//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy).
//!
//! Cosets are defined while scanning every relator from every live coset;
//! coincidences are merged with a union-find queue that replays the table
//! rows of the discarded coset.

use std::collections::VecDeque;

use super::word::{Letter, Presentation};
use super::CatalogError;
use crate::group::{Elem, Group, MAX_GROUP_ORDER};

pub const DEFAULT_COSET_CAP: usize = 65536;

const NONE: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    rows: Vec<usize>,
    parent: Vec<usize>,
    cap: usize,
    queue: Vec<usize>,
}

impl CosetTable {
    fn new(num_generators: usize, cap: usize) -> CosetTable {
        let cols = 2 * num_generators;
        CosetTable {
            cols,
            rows: vec![NONE; cols],
            parent: vec![0],
            cap,
            queue: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> usize {
        self.rows[c * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, v: usize) {
        self.rows[c * self.cols + col] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, col: usize) -> Result<usize, CatalogError> {
        let d = self.len();
        if d >= self.cap {
            return Err(CatalogError::Enumeration { cap: self.cap });
        }
        self.parent.push(d);
        self.rows.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = c;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[drop] = keep;
            self.queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let target = self.get(dead, col);
                if target == NONE {
                    continue;
                }
                self.set(target, col ^ 1, NONE);
                let mu = self.rep(dead);
                let nu = self.rep(target);
                let mu_next = self.get(mu, col);
                let nu_back = self.get(nu, col ^ 1);
                if mu_next != NONE {
                    self.merge(nu, mu_next);
                } else if nu_back != NONE {
                    self.merge(mu, nu_back);
                } else {
                    self.set(mu, col, nu);
                    self.set(nu, col ^ 1, mu);
                }
            }
        }
    }

    /// Scans `word` from coset `c`, defining new cosets to complete it and
    /// recording the deduction or coincidence it closes with.
    fn scan_and_fill(&mut self, c: usize, word: &[Letter]) -> Result<(), CatalogError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        let col = |k: isize| word[k as usize].column();
        loop {
            while i <= j && self.get(f, col(i)) != NONE {
                f = self.get(f, col(i));
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, col(j) ^ 1) != NONE {
                b = self.get(b, col(j) ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.set(f, col(i), b);
                self.set(b, col(i) ^ 1, f);
                return Ok(());
            }
            self.define(f, col(i))?;
        }
    }
}

/// The finite group defined by `p`, with elements numbered in breadth-first
/// discovery order over the columns `g1, G1, g2, G2, …` and the identity
/// first. The group's generators are the images of the presentation
/// generators.
pub fn enumerate(p: &Presentation, label: &str, coset_cap: usize) -> Result<Group, CatalogError> {
    let cap = coset_cap.max(1);
    let mut t = CosetTable::new(p.num_generators, cap);
    let relators: Vec<&[Letter]> = p.relators.iter().map(|r| r.letters()).collect();

    let mut c = 0;
    while c < t.len() {
        if t.is_live(c) {
            for r in &relators {
                t.scan_and_fill(c, r)?;
                if !t.is_live(c) {
                    break;
                }
            }
            if t.is_live(c) {
                for col in 0..t.cols {
                    if t.get(c, col) == NONE {
                        t.define(c, col)?;
                    }
                }
            }
        }
        c += 1;
    }

    // renumber live cosets breadth-first from the coset of the identity
    let mut number = vec![NONE; t.len()];
    let mut order_of_discovery = vec![0usize];
    let mut tree: Vec<(usize, usize)> = vec![(NONE, NONE)];
    number[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for col in 0..t.cols {
            let y = t.get(x, col);
            debug_assert!(y != NONE && t.is_live(y), "coset table incomplete");
            if number[y] == NONE {
                number[y] = order_of_discovery.len();
                order_of_discovery.push(y);
                tree.push((number[x], col));
                queue.push_back(y);
            }
        }
    }
    let n = order_of_discovery.len();
    if n > MAX_GROUP_ORDER {
        return Err(CatalogError::Group(crate::group::GroupError::SizeLimit {
            operation: "coset enumeration",
            order: n,
            limit: MAX_GROUP_ORDER,
        }));
    }
    let act = |e: usize, col: usize| number[t.get(order_of_discovery[e], col)];

    // element b is tree parent(b) times one letter, so a·b follows from a·parent(b)
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        table[a * n] = a as u16;
        for b in 1..n {
            let (pb, col) = tree[b];
            let prev = table[a * n + pb] as usize;
            table[a * n + b] = act(prev, col) as u16;
        }
    }
    let generators: Vec<Elem> = (0..p.num_generators)
        .map(|g| Elem::new(act(0, 2 * g)))
        .collect();
    let group = Group::from_table(label, n, table)?;
    if n == 1 {
        return Ok(group);
    }
    Ok(group.with_generators(generators)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(gens: usize, rels: &[&str]) -> usize {
        let p = Presentation::parse(gens, rels).unwrap();
        enumerate(&p, "t", DEFAULT_COSET_CAP).unwrap().order()
    }

    #[test]
    fn trivial_presentation() {
        assert_eq!(order_of(1, &["g1"]), 1);
        assert_eq!(order_of(2, &["g1", "g2"]), 1);
    }

    #[test]
    fn cyclic_and_dihedral() {
        assert_eq!(order_of(1, &["g1^8"]), 8);
        assert_eq!(order_of(2, &["g1^4", "g2^2", "(g1g2)^2"]), 8);
        assert_eq!(order_of(2, &["g1^8", "g2^2", "(g1g2)^2"]), 16);
    }

    #[test]
    fn quaternion() {
        assert_eq!(order_of(2, &["g1^4", "g1^2 = g2^2", "G2 g1 g2 = G1"]), 8);
    }

    #[test]
    fn collapse_through_coincidences() {
        // g1^2 and g1^3 force g1 = 1
        assert_eq!(order_of(1, &["g1^2", "g1^3"]), 1);
        assert_eq!(
            order_of(2, &["g1^4", "g2^4", "g1 g2 = g2 g1^2", "g2 g1 = g1 g2^2"]),
            1
        );
    }

    #[test]
    fn infinite_group_hits_the_cap() {
        let p = Presentation::parse(2, &["[g1,g2]"]).unwrap();
        assert!(matches!(
            enumerate(&p, "Z2", 1000),
            Err(CatalogError::Enumeration { cap: 1000 })
        ));
    }

    #[test]
    fn numbering_is_deterministic() {
        let p = Presentation::parse(2, &["g1^4", "g2^4", "(g1g2)^2", "[g1^2,g2]", "[g1,g2^2]"])
            .unwrap();
        let a = enumerate(&p, "x", DEFAULT_COSET_CAP).unwrap();
        let b = enumerate(&p, "x", DEFAULT_COSET_CAP).unwrap();
        assert_eq!(a.table(), b.table());
        assert_eq!(a.generators(), &[Elem::new(1), Elem::new(3)]);
    }
}
