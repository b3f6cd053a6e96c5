use std::collections::HashSet;

use super::{Elem, Group, GroupError, Subgroup, MAX_SUBGROUP_ENUMERATION_ORDER};

/// Every subgroup of `g`, sorted by size and then by member list.
///
/// Each subgroup is a join of cyclic subgroups, so the lattice is grown from
/// the trivial subgroup by repeatedly adjoining one cyclic subgroup at a time.
pub fn all_subgroups(g: &Group) -> Result<Vec<Subgroup<'_>>, GroupError> {
    let n = g.order();
    if n > MAX_SUBGROUP_ENUMERATION_ORDER {
        return Err(GroupError::SizeLimit {
            operation: "subgroup enumeration",
            order: n,
            limit: MAX_SUBGROUP_ENUMERATION_ORDER,
        });
    }

    let mut cyclic: Vec<(u64, Elem)> = Vec::new();
    let mut cyclic_seen = HashSet::new();
    for x in g.elements().skip(1) {
        let m = closure(g, 1, &[x]);
        if cyclic_seen.insert(m) {
            cyclic.push((m, x));
        }
    }

    let mut seen: HashSet<u64> = HashSet::from([1u64]);
    let mut found: Vec<(u64, Vec<Elem>)> = vec![(1, Vec::new())];
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (mask, gens) in &frontier {
            for &(cmask, c) in &cyclic {
                if cmask & !mask == 0 {
                    continue;
                }
                let mut gens2 = gens.clone();
                gens2.push(c);
                let joined = closure(g, *mask, &gens2);
                if seen.insert(joined) {
                    next.push((joined, gens2));
                }
            }
        }
        found.extend(next.iter().cloned());
        frontier = next;
    }

    let mut subgroups: Vec<Subgroup<'_>> = found
        .into_iter()
        .map(|(mask, _)| {
            let members = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(Elem::new)
                .collect();
            Subgroup::from_sorted(g, members)
        })
        .collect();
    subgroups.sort_by(|a, b| a.cmp_canonical(b));
    Ok(subgroups)
}

/// Closure of `start ∪ gens` under right multiplication by `gens`, where
/// `start` is already closed under all but possibly the last generator.
fn closure(g: &Group, start: u64, gens: &[Elem]) -> u64 {
    let mut mask = start;
    let mut queue: Vec<Elem> = (0..g.order())
        .filter(|&i| start >> i & 1 == 1)
        .map(Elem::new)
        .collect();
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            let bit = 1u64 << y.index();
            if mask & bit == 0 {
                mask |= bit;
                queue.push(y);
            }
        }
    }
    mask
}
