use super::{Elem, Group, GroupError, MAX_GROUP_ORDER};

/// The cyclic group of order `n` (a power of 2).
pub fn cyclic(n: usize) -> Result<Group, GroupError> {
    if n > MAX_GROUP_ORDER {
        return Err(GroupError::SizeLimit {
            operation: "cyclic group",
            order: n,
            limit: MAX_GROUP_ORDER,
        });
    }
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u16))
        .collect();
    let g = Group::from_table(format!("C{n}"), n, table)?;
    let gens = if n > 1 { vec![Elem::new(1)] } else { vec![] };
    g.with_generators(gens)
}

/// `A × B` with element `(a, b)` stored at index `a·|B| + b`.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group, GroupError> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > MAX_GROUP_ORDER {
        return Err(GroupError::SizeLimit {
            operation: "direct product",
            order: n,
            limit: MAX_GROUP_ORDER,
        });
    }
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            let za = a.mul(Elem::new(xa), Elem::new(ya)).index();
            let zb = b.mul(Elem::new(xb), Elem::new(yb)).index();
            table.push((za * nb + zb) as u16);
        }
    }
    let label = format!("{}x{}", a.label(), b.label());
    let g = Group::from_table(label, n, table)?;
    let gens = a
        .generators()
        .iter()
        .map(|s| Elem::new(s.index() * nb))
        .chain(b.generators().iter().map(|s| Elem::new(s.index())))
        .collect();
    g.with_generators(gens)
}

/// `N ⋊ C_m` where the generator of `C_m` acts on `N` by the automorphism
/// `phi` (given as the image of each element of `N`). Element `(x, i)` is
/// stored at index `i·|N| + x` and `(x, i)(y, j) = (x·φⁱ(y), i + j)`.
pub fn semidirect_product(n: &Group, m: usize, phi: &[Elem]) -> Result<Group, GroupError> {
    let k = n.order();
    if phi.len() != k {
        return Err(GroupError::Validation(
            "automorphism must list an image for every element".into(),
        ));
    }
    let total = k * m;
    if total > MAX_GROUP_ORDER {
        return Err(GroupError::SizeLimit {
            operation: "semidirect product",
            order: total,
            limit: MAX_GROUP_ORDER,
        });
    }
    // powers[i][y] = φⁱ(y)
    let mut powers: Vec<Vec<Elem>> = vec![n.elements().collect()];
    for i in 1..=m {
        let prev = &powers[i - 1];
        powers.push(prev.iter().map(|&y| phi[y.index()]).collect());
    }
    if powers[m]
        .iter()
        .enumerate()
        .any(|(y, &img)| img.index() != y)
    {
        return Err(GroupError::Validation(format!(
            "action does not have order dividing {m}"
        )));
    }
    let mut table = Vec::with_capacity(total * total);
    for p in 0..total {
        let (i, x) = (p / k, p % k);
        for q in 0..total {
            let (j, y) = (q / k, q % k);
            let z = n.mul(Elem::new(x), powers[i][y]);
            table.push((((i + j) % m) * k + z.index()) as u16);
        }
    }
    let label = format!("({})x|C{m}", n.label());
    let g = Group::from_table(label, total, table)?;
    let mut gens: Vec<Elem> = n.generators().to_vec();
    if m > 1 {
        gens.push(Elem::new(k));
    }
    g.with_generators(gens)
}
