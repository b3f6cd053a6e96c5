//! Finite 2-groups stored as dense Cayley tables.
//!
//! A [`Group`] owns an `order × order` multiplication table with the identity
//! pinned at index 0, plus cached inverses and element orders. Subgroups are
//! sorted member sets borrowed from their parent group. Everything here is
//! immutable after construction, so groups can be shared freely between
//! threads.

mod construct;
mod iso;
mod lattice;

pub use construct::{cyclic, direct_product, semidirect_product};
pub use iso::{
    abelian_invariants, automorphisms, find_isomorphism, fingerprint, is_isomorphic, Fingerprint,
};
pub use lattice::all_subgroups;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Largest group order accepted by any table-backed operation.
pub const MAX_GROUP_ORDER: usize = 4096;
/// Largest order handled by the isomorphism search.
pub const MAX_ISOMORPHISM_ORDER: usize = 256;
/// Largest order for which full subgroup enumeration is attempted.
pub const MAX_SUBGROUP_ENUMERATION_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("{operation}: group order {order} exceeds the limit of {limit}")]
    SizeLimit {
        operation: &'static str,
        order: usize,
        limit: usize,
    },
    #[error("table is not a group: {0}")]
    Validation(String),
    #[error("not a finite 2-group: {0}")]
    NotTwoGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
}

/// A group element, identified by its row in the Cayley table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u16);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn new(index: usize) -> Elem {
        assert!(index < MAX_GROUP_ORDER, "element index {index} too large");
        Elem(index as u16)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone)]
pub struct Group {
    label: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    orders: Vec<u32>,
    generators: Vec<Elem>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Group {
    /// Tables are compared verbatim; labels are ignored.
    fn eq(&self, other: &Group) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl Group {
    /// Builds a group from a row-major multiplication table, checking the
    /// group axioms and that the result is a 2-group.
    ///
    /// Associativity is checked with Light's test against a generating set,
    /// which is equivalent to checking every triple.
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        table: Vec<u16>,
    ) -> Result<Group, GroupError> {
        if order == 0 {
            return Err(GroupError::Validation("order must be positive".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::SizeLimit {
                operation: "group construction",
                order,
                limit: MAX_GROUP_ORDER,
            });
        }
        if table.len() != order * order {
            return Err(GroupError::Validation(format!(
                "expected {} table entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v as usize >= order) {
            return Err(GroupError::Validation(format!(
                "entry {} at row {} column {} is out of range",
                table[pos],
                pos / order,
                pos % order
            )));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for b in 0..order {
            if at(0, b) != b || at(b, 0) != b {
                return Err(GroupError::Validation(format!(
                    "index 0 is not an identity: 0*{b} = {}, {b}*0 = {}",
                    at(0, b),
                    at(b, 0)
                )));
            }
        }

        let generators = spanning_set(order, &table);
        for &s in &generators {
            let s = s.index();
            for x in 0..order {
                let xs = at(x, s);
                for y in 0..order {
                    let lhs = at(xs, y);
                    let rhs = at(x, at(s, y));
                    if lhs != rhs {
                        return Err(GroupError::Validation(format!(
                            "associativity fails for ({x}, {s}, {y}): ({x}*{s})*{y} = {lhs} but {x}*({s}*{y}) = {rhs}"
                        )));
                    }
                }
            }
        }

        let mut inverse = vec![0u16; order];
        for (a, inv) in inverse.iter_mut().enumerate() {
            let b = (0..order).find(|&b| at(a, b) == 0).ok_or_else(|| {
                GroupError::Validation(format!("element {a} has no right inverse"))
            })?;
            if at(b, a) != 0 {
                return Err(GroupError::Validation(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
            *inv = b as u16;
        }

        if !order.is_power_of_two() {
            return Err(GroupError::NotTwoGroup(format!(
                "order {order} is not a power of 2"
            )));
        }

        let mut orders = vec![0u32; order];
        for (a, slot) in orders.iter_mut().enumerate() {
            let mut p = a;
            let mut k = 1u32;
            while p != 0 {
                p = at(p, a);
                k += 1;
            }
            *slot = k;
        }

        Ok(Group {
            label: label.into(),
            order,
            table,
            inverse,
            orders,
            generators,
        })
    }

    /// Replaces the distinguished generating set, e.g. with the images of
    /// presentation generators.
    pub fn with_generators(mut self, generators: Vec<Elem>) -> Result<Group, GroupError> {
        for g in &generators {
            self.check(*g)?;
        }
        if self.subgroup_generated(&generators).order() != self.order {
            return Err(GroupError::Validation(
                "supplied generators do not generate the group".into(),
            ));
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    /// The generating set recorded at construction (presentation generators,
    /// product factors' generators, or a greedy spanning set).
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(|i| Elem(i as u16))
    }

    /// Row `a` of the Cayley table: entry `b` is `a·b`.
    pub fn row(&self, a: Elem) -> &[u16] {
        let start = a.index() * self.order;
        &self.table[start..start + self.order]
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn check(&self, a: Elem) -> Result<Elem, GroupError> {
        if a.index() < self.order {
            Ok(a)
        } else {
            Err(GroupError::IndexOutOfRange {
                index: a.index(),
                order: self.order,
            })
        }
    }

    /// Table lookup. Panics if either index is out of range.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.table[a.index() * self.order + b.index()])
    }

    pub fn checked_mul(&self, a: Elem, b: Elem) -> Result<Elem, GroupError> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    /// Left-to-right product of a sequence of elements.
    pub fn product(&self, factors: &[Elem]) -> Elem {
        factors
            .iter()
            .fold(Elem::IDENTITY, |acc, &x| self.mul(acc, x))
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inverse[a.index()])
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let ord = self.element_order(a) as i64;
        let mut e = k.rem_euclid(ord);
        let mut base = a;
        let mut acc = Elem::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.orders[a.index()]
    }

    /// `(a, b) = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `a^b = b⁻¹ab`.
    pub fn conjugate(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, &a)| {
            self.generators[i + 1..]
                .iter()
                .all(|&b| self.commutes(a, b))
        })
    }

    /// Maximum element order (the lcm of orders in a 2-group).
    pub fn exponent(&self) -> u32 {
        self.orders.iter().copied().max().unwrap_or(1)
    }

    /// Number of elements of each order, sorted by order.
    pub fn order_profile(&self) -> Vec<(u32, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *counts.entry(o).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup::from_sorted(self, self.elements().collect())
    }

    pub fn trivial(&self) -> Subgroup<'_> {
        Subgroup::from_sorted(self, vec![Elem::IDENTITY])
    }

    /// Smallest subgroup containing `gens`, by breadth-first closure under
    /// right multiplication.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup<'_> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([Elem::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    queue.push_back(y);
                }
            }
        }
        let members = seen
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| Elem(i as u16))
            .collect();
        Subgroup::from_sorted(self, members)
    }

    /// `[A, B]`, generated by all `(a, b)` with `a ∈ A`, `b ∈ B`.
    pub fn commutator_subgroup(&self, a: &Subgroup<'_>, b: &Subgroup<'_>) -> Subgroup<'_> {
        let mut gens = Vec::new();
        let mut hit = vec![false; self.order];
        for &x in a.members() {
            for &y in b.members() {
                let c = self.commutator(x, y);
                if !hit[c.index()] {
                    hit[c.index()] = true;
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup<'_> {
        let whole = self.whole();
        self.commutator_subgroup(&whole, &whole)
    }

    pub fn center(&self) -> Subgroup<'_> {
        let members = self
            .elements()
            .filter(|&z| self.generators.iter().all(|&g| self.commutes(z, g)))
            .collect();
        Subgroup::from_sorted(self, members)
    }

    pub fn centralizer(&self, a: Elem) -> Subgroup<'_> {
        let members = self.elements().filter(|&z| self.commutes(z, a)).collect();
        Subgroup::from_sorted(self, members)
    }

    /// Subgroup generated by all `k`-th powers.
    pub fn agemo(&self, k: u32) -> Subgroup<'_> {
        let powers: Vec<Elem> = self.elements().map(|g| self.pow(g, k as i64)).collect();
        self.subgroup_generated(&powers)
    }

    /// `Φ(G) = G'·℧₁(G)` (Burnside basis theorem for 2-groups).
    pub fn frattini(&self) -> Subgroup<'_> {
        let mut gens: Vec<Elem> = self.derived_subgroup().members().to_vec();
        gens.extend(self.elements().map(|g| self.mul(g, g)));
        gens.sort_unstable();
        gens.dedup();
        self.subgroup_generated(&gens)
    }

    /// `γ₁ = G, γ_{i+1} = [γ_i, G]`, ending with the first trivial term.
    pub fn lower_central_series(&self) -> Vec<Subgroup<'_>> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().expect("series is non-empty");
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup(last, &whole);
            // a 2-group is nilpotent, so the series strictly descends
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Nilpotency class; 0 for the trivial group, 1 for nontrivial abelian.
    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    /// A minimal generating set: lifts of a basis of `G/Φ(G)`.
    ///
    /// Candidates are tried in the order given by `preference`, so callers can
    /// bias the choice (the isomorphism search prefers rare element classes).
    pub fn minimal_generating_set_by(&self, preference: &[Elem]) -> Vec<Elem> {
        let phi = self.frattini();
        let mut gens: Vec<Elem> = Vec::new();
        let mut span = phi.clone();
        for &x in preference {
            if span.order() == self.order {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                let mut with_phi = phi.members().to_vec();
                with_phi.extend_from_slice(&gens);
                span = self.subgroup_generated(&with_phi);
            }
        }
        gens
    }

    pub fn minimal_generating_set(&self) -> Vec<Elem> {
        let all: Vec<Elem> = self.elements().collect();
        self.minimal_generating_set_by(&all)
    }

    /// Rank of `G/Φ(G)`, the size of every minimal generating set.
    pub fn generator_rank(&self) -> usize {
        (self.order / self.frattini().order()).trailing_zeros() as usize
    }

    /// The quotient `G/N` with cosets numbered by their smallest member.
    pub fn quotient(&self, n: &Subgroup<'_>) -> Result<Group, GroupError> {
        if !n.is_normal() {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g.index()] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &m in n.members() {
                coset_of[self.mul(g, m).index()] = id;
            }
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b).index()] as u16);
            }
        }
        let label = format!("{}/N{}", self.label, n.order());
        let q = Group::from_table(label, k, table)?;
        let gens: Vec<Elem> = self
            .generators
            .iter()
            .map(|g| Elem(coset_of[g.index()] as u16))
            .collect();
        q.with_generators(gens)
    }

    /// Every distinct subgroup `⟨a, b⟩` with `(a, b) ≠ 1`.
    pub fn two_generated_nonabelian_subgroups(&self) -> Result<Vec<Subgroup<'_>>, GroupError> {
        if self.order > MAX_SUBGROUP_ENUMERATION_ORDER {
            return Err(GroupError::SizeLimit {
                operation: "two-generated subgroup enumeration",
                order: self.order,
                limit: MAX_SUBGROUP_ENUMERATION_ORDER,
            });
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements().skip(a.index() + 1) {
                if self.commutes(a, b) {
                    continue;
                }
                let h = self.subgroup_generated(&[a, b]);
                if seen.insert(h.members().to_vec()) {
                    out.push(h);
                }
            }
        }
        out.sort_by(|x, y| x.cmp_canonical(y));
        Ok(out)
    }
}

/// Greedy generating set: add the first element not yet reached by the
/// right-multiplication closure of the current set.
fn spanning_set(order: usize, table: &[u16]) -> Vec<Elem> {
    let mut seen = vec![false; order];
    seen[0] = true;
    let mut reached = 1;
    let mut gens: Vec<Elem> = Vec::new();
    while reached < order {
        let g = seen.iter().position(|&s| !s).expect("unreached element");
        gens.push(Elem(g as u16));
        // every reached element must be multiplied by the new generator, and
        // every newly reached element by all generators
        let mut queue: VecDeque<usize> = (0..order).filter(|&x| seen[x]).collect();
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = table[x * order + s.index()] as usize;
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

/// A subgroup as a sorted member set borrowed from its parent.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g Group,
    members: Vec<Elem>,
    mask: Vec<u64>,
}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.label)
            .field("members", &self.members)
            .finish()
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl<'g> Subgroup<'g> {
    pub(crate) fn from_sorted(parent: &'g Group, members: Vec<Elem>) -> Subgroup<'g> {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let mut mask = vec![0u64; parent.order.div_ceil(64)];
        for m in &members {
            mask[m.index() / 64] |= 1 << (m.index() % 64);
        }
        Subgroup {
            parent,
            members,
            mask,
        }
    }

    /// Builds a subgroup from an arbitrary member list, checking closure.
    pub fn from_members(
        parent: &'g Group,
        mut members: Vec<Elem>,
    ) -> Result<Subgroup<'g>, GroupError> {
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            parent.check(m)?;
        }
        let s = Subgroup::from_sorted(parent, members);
        if !s.contains(Elem::IDENTITY) {
            return Err(GroupError::Validation("subgroup lacks the identity".into()));
        }
        for &a in &s.members {
            for &b in &s.members {
                if !s.contains(parent.mul(a, b)) {
                    return Err(GroupError::Validation(format!(
                        "member set not closed: {a}*{b} missing"
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn parent(&self) -> &'g Group {
        self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        let i = x.index();
        i < self.parent.order && self.mask[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order
    }

    pub fn is_subset_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.parent;
        self.members
            .iter()
            .enumerate()
            .all(|(i, &a)| self.members[i + 1..].iter().all(|&b| g.commutes(a, b)))
    }

    /// Every member commutes with every element of the parent.
    pub fn is_central(&self) -> bool {
        let g = self.parent;
        self.members
            .iter()
            .all(|&z| g.generators.iter().all(|&x| g.commutes(z, x)))
    }

    pub fn is_normal(&self) -> bool {
        let g = self.parent;
        g.generators.iter().all(|&x| {
            self.members
                .iter()
                .all(|&m| self.contains(g.conjugate(m, x)))
        })
    }

    pub fn exponent(&self) -> u32 {
        self.members
            .iter()
            .map(|&m| self.parent.element_order(m))
            .max()
            .unwrap_or(1)
    }

    /// Abelian with every non-identity element of order 2.
    pub fn is_elementary_abelian(&self) -> bool {
        self.exponent() <= 2 && self.is_abelian()
    }

    pub fn intersection(&self, other: &Subgroup<'g>) -> Subgroup<'g> {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        Subgroup::from_sorted(self.parent, members)
    }

    /// Ordering by size, then lexicographically by member list.
    pub fn cmp_canonical(&self, other: &Subgroup<'_>) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }

    /// Position of `x` within the sorted member list, which is the element's
    /// index in [`Subgroup::to_group`].
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// The subgroup as a standalone group; member `i` becomes element `i`.
    pub fn to_group(&self, label: impl Into<String>) -> Group {
        let k = self.members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.members {
            for &b in &self.members {
                let p = self
                    .position(self.parent.mul(a, b))
                    .expect("subgroup is closed");
                table.push(p as u16);
            }
        }
        Group::from_table(label, k, table).expect("a subgroup of a group is a group")
    }
}
