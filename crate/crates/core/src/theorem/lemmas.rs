use std::sync::{Arc, OnceLock};
use std::time::Instant;

use super::{CheckConfig, Outcome};
use crate::algebra::GroupAlgebra;
use crate::catalog::builtin;
use crate::engine::{
    check_exponent_divides_4, exponent_by_quotient_bound, exponent_exhaustive, exponent_low_weight,
    exponent_sampled, find_order_witness, EngineError, ExponentResult, ExponentValue, Method,
    Strategy, WitnessSearch,
};
use crate::group::{
    cyclic, direct_product, find_isomorphism, fingerprint, Elem, Fingerprint, Group, GroupError,
};

/// The two-generator groups allowed when `exp V(F₂G) = 4`.
pub const LEMMA1_NAMES: [&str; 5] = ["D8", "Q8", "G16_3", "G16_4", "G32_2"];

fn lemma1_references() -> &'static [(&'static str, Group, Fingerprint)] {
    static REFS: OnceLock<Vec<(&'static str, Group, Fingerprint)>> = OnceLock::new();
    REFS.get_or_init(|| {
        LEMMA1_NAMES
            .iter()
            .map(|&n| {
                let g = (*builtin(n).expect("builtin").group).clone();
                let f = fingerprint(&g);
                (n, g, f)
            })
            .collect()
    })
}

/// `G' ≤ Φ(G) ≤ ζ(G)`, `Φ(G)` elementary abelian, class 2. Only meaningful
/// when `exp V(F₂G) = 4` is known (`exp_is_4 == Some(true)`).
pub fn corollary1_check(g: &Group, exp_is_4: Option<bool>) -> Outcome {
    if exp_is_4 != Some(true) {
        return Outcome::NotApplicable("exp V(FG) = 4 not established".into());
    }
    let d = g.derived_subgroup();
    let phi = g.frattini();
    let z = g.center();
    let mut failed = Vec::new();
    if !d.is_subset_of(&phi) {
        failed.push("G' not in Phi(G)");
    }
    if !phi.is_subset_of(&z) {
        failed.push("Phi(G) not central");
    }
    if !phi.is_elementary_abelian() {
        failed.push("Phi(G) not elementary abelian");
    }
    if g.nilpotency_class() != 2 {
        failed.push("class is not 2");
    }
    Outcome::from_bool(failed.is_empty(), || failed.join("; "))
}

#[derive(Clone, Debug)]
pub struct Lemma1Report {
    pub outcome: Outcome,
    /// Counts of two-generated nonabelian subgroups by isomorphism type;
    /// unmatched ones are listed by order.
    pub types: Vec<(String, usize)>,
}

/// Every two-generated nonabelian subgroup is one of [`LEMMA1_NAMES`] and
/// satisfies `H' ⊆ Φ(H) ⊆ ζ(H)`.
pub fn lemma1_subgroup_classification(
    g: &Group,
    exp_is_4: Option<bool>,
) -> Result<Lemma1Report, GroupError> {
    if exp_is_4 != Some(true) {
        return Ok(Lemma1Report {
            outcome: Outcome::NotApplicable("exp V(FG) = 4 not established".into()),
            types: Vec::new(),
        });
    }
    let refs = lemma1_references();
    let mut types: Vec<(String, usize)> = Vec::new();
    let mut problems = Vec::new();
    for sub in g.two_generated_nonabelian_subgroups()? {
        let h = sub.to_group("H");
        let f = fingerprint(&h);
        let mut name = None;
        for (n, r, rf) in refs {
            if *rf == f && find_isomorphism(&h, r)?.is_some() {
                name = Some(n.to_string());
                break;
            }
        }
        let name = name.unwrap_or_else(|| {
            problems.push(format!("unlisted subgroup of order {}", h.order()));
            format!("unlisted{}", h.order())
        });
        let (d, phi, z) = (h.derived_subgroup(), h.frattini(), h.center());
        if !(d.is_subset_of(&phi) && phi.is_subset_of(&z)) {
            problems.push(format!("{name} subgroup violates H' <= Phi(H) <= Z(H)"));
        }
        match types.iter_mut().find(|(n, _)| *n == name) {
            Some(entry) => entry.1 += 1,
            None => types.push((name, 1)),
        }
    }
    types.sort();
    Ok(Lemma1Report {
        outcome: Outcome::from_bool(problems.is_empty(), || problems.join("; ")),
        types,
    })
}

/// Whether every product of three elements of `ω(F₂D)` vanishes.
pub fn omega_cube_vanishes(d: &Arc<Group>) -> bool {
    let alg = GroupAlgebra::new(Arc::clone(d));
    let n = d.order();
    let ideal: Vec<_> = (0..1u64 << n)
        .filter(|w| w.count_ones() % 2 == 0 && *w != 0)
        .map(|w| alg.from_u64(w).expect("in range"))
        .collect();
    ideal.iter().all(|a| {
        ideal.iter().all(|b| {
            let ab = a * b;
            ideal.iter().all(|c| (&ab * c).is_zero())
        })
    })
}

#[derive(Clone, Debug)]
pub struct Lemma2Report {
    pub outcome: Outcome,
    pub exponent: Option<ExponentResult>,
    /// The exponent was settled exactly rather than by failing to refute.
    pub exact: bool,
    /// `(1 + c)² = 0` for every commutator `c`.
    pub commutator_index_ok: bool,
    /// `ω(F₂G')³ = 0`, checked when `G' ≅ C2 × C2`.
    pub omega_cube: Option<bool>,
}

fn lemma2_hypothesis(g: &Group) -> Result<(), String> {
    let phi = g.frattini();
    let d = g.derived_subgroup();
    if g.is_abelian() {
        return Err("G is abelian".into());
    }
    if !(phi.is_central() && phi.is_elementary_abelian()) {
        return Err("Phi(G) is not central elementary abelian".into());
    }
    if !d.is_subset_of(&phi) {
        return Err("G' not in Phi(G)".into());
    }
    if d.order() > 4 {
        return Err(format!("|G'| = {} > 4", d.order()));
    }
    Ok(())
}

/// Exact exponent where some method allows, in order of preference:
/// exhaustive walk (up to `max_exhaustive_order`), low-weight certificate,
/// then `None`.
pub fn exact_exponent(
    g: &Arc<Group>,
    cfg: &CheckConfig,
) -> Result<Option<ExponentResult>, EngineError> {
    if g.order() <= cfg.max_exhaustive_order {
        return exponent_exhaustive(g, &cfg.engine).map(Some);
    }
    exponent_low_weight(g, &cfg.engine, cfg.node_budget)
}

/// Best available exponent: [`exact_exponent`], then a quotient bound met by
/// a witness, then a witness of order 8 (lower bound), then sampling.
pub fn determine_exponent(
    g: &Arc<Group>,
    cfg: &CheckConfig,
) -> Result<ExponentResult, EngineError> {
    if let Some(r) = exact_exponent(g, cfg)? {
        return Ok(r);
    }
    if let Some(r) = exponent_by_quotient_bound(g, &cfg.engine, &cfg.witness)? {
        return Ok(r);
    }
    let start = Instant::now();
    let w = find_order_witness(g, 8, Strategy::SparseFirst, &cfg.witness)?;
    if let Some(x) = w.witness {
        return Ok(ExponentResult {
            group_label: g.label().to_string(),
            method: Method::Witness,
            exponent: ExponentValue::AtLeast(w.order.unwrap_or(8)),
            witness: Some(x),
            samples: w.candidates,
            seed: Some(cfg.witness.seed),
            wall_time: start.elapsed(),
        });
    }
    exponent_sampled(g, cfg.samples, cfg.seed, &cfg.engine)
}

/// Under the hypothesis, `exp V(F₂G) = 4`; also checks the two facts the
/// argument relies on.
pub fn lemma2_check(g: &Arc<Group>, cfg: &CheckConfig) -> Result<Lemma2Report, EngineError> {
    if let Err(why) = lemma2_hypothesis(g) {
        return Ok(lemma2_not_applicable(why));
    }
    let r = determine_exponent(g, cfg)?;
    Ok(lemma2_given(g, r))
}

/// [`lemma2_check`] with the exponent already computed.
pub fn lemma2_check_with(g: &Arc<Group>, exponent: ExponentResult) -> Lemma2Report {
    match lemma2_hypothesis(g) {
        Err(why) => lemma2_not_applicable(why),
        Ok(()) => lemma2_given(g, exponent),
    }
}

fn lemma2_not_applicable(why: String) -> Lemma2Report {
    Lemma2Report {
        outcome: Outcome::NotApplicable(why),
        exponent: None,
        exact: false,
        commutator_index_ok: false,
        omega_cube: None,
    }
}

fn lemma2_given(g: &Arc<Group>, exponent: ExponentResult) -> Lemma2Report {
    let alg = GroupAlgebra::new(Arc::clone(g));
    let d = g.derived_subgroup();
    let commutator_index_ok = d.members().iter().all(|&c| {
        alg.sum(&[Elem::IDENTITY, c])
            .nilpotency_index()
            .is_ok_and(|k| k <= 2)
    });
    let omega_cube = (d.order() == 4 && d.is_elementary_abelian())
        .then(|| omega_cube_vanishes(&Arc::new(d.to_group("G'"))));

    let exact = exponent.exponent.is_four().is_some();
    let mut problems = Vec::new();
    match exponent.exponent {
        ExponentValue::Exact(4) => {}
        ExponentValue::AtLeast(e) | ExponentValue::AtMost(e) if e <= 4 && !exact => {}
        other => problems.push(format!("exp V(FG) is {other}, expected 4")),
    }
    if !commutator_index_ok {
        problems.push("some 1 + (a,b) has nilpotency index above 2".into());
    }
    if omega_cube == Some(false) {
        problems.push("omega(FG')^3 is nonzero".into());
    }
    Lemma2Report {
        outcome: Outcome::from_bool(problems.is_empty(), || problems.join("; ")),
        exponent: Some(exponent),
        exact,
        commutator_index_ok,
        omega_cube,
    }
}

#[derive(Clone, Debug)]
pub struct Lemma3Report {
    pub outcome: Outcome,
    pub product_label: String,
    pub method: Option<Method>,
    /// False when only sampling was possible.
    pub exact: bool,
}

/// With `exp V(F₂H) = 4` and `k ∈ {2, 4}`, checks `exp V(F₂[H × C_k]) = 4`:
/// by the bounded walk when `|H|·k` is within `max_exhaustive_order`, by the
/// low-weight certificate otherwise, and by sampling as a last resort.
pub fn lemma3_closure_check(
    h: &Arc<Group>,
    k: usize,
    cfg: &CheckConfig,
) -> Result<Lemma3Report, EngineError> {
    let label = format!("{}xC{k}", h.label());
    let na = |why: String| Lemma3Report {
        outcome: Outcome::NotApplicable(why),
        product_label: label.clone(),
        method: None,
        exact: false,
    };
    if k != 2 && k != 4 {
        return Ok(na(format!("cyclic order {k} does not divide 4")));
    }
    match exact_exponent(
        h,
        &CheckConfig {
            max_exhaustive_order: 16,
            ..cfg.clone()
        },
    )? {
        Some(r) if r.exponent == ExponentValue::Exact(4) => {}
        Some(r) => return Ok(na(format!("exp V(FH) = {}", r.exponent))),
        None => {}
    }
    let c = cyclic(k)?;
    let g = Arc::new(direct_product(h, &c)?.with_label(label.clone()));
    if g.order() <= cfg.max_exhaustive_order {
        let d = check_exponent_divides_4(&g, &cfg.engine)?;
        return Ok(Lemma3Report {
            outcome: Outcome::from_bool(d.holds, || {
                format!(
                    "unit {} has order above 4",
                    d.counterexample.as_ref().unwrap()
                )
            }),
            product_label: label,
            method: Some(Method::BoundedExhaustive),
            exact: true,
        });
    }
    if let Some(r) = exponent_low_weight(&g, &cfg.engine, cfg.node_budget)? {
        return Ok(Lemma3Report {
            outcome: Outcome::from_bool(r.exponent == ExponentValue::Exact(4), || {
                format!("exp V(FG) = {}", r.exponent)
            }),
            product_label: label,
            method: Some(Method::LowWeight),
            exact: true,
        });
    }
    let r = exponent_sampled(&g, cfg.samples, cfg.seed, &cfg.engine)?;
    Ok(Lemma3Report {
        outcome: Outcome::from_bool(r.exponent == ExponentValue::AtLeast(4), || {
            format!("sampled exponent {}", r.exponent)
        }),
        product_label: label,
        method: Some(Method::Sampled),
        exact: false,
    })
}

#[derive(Clone, Debug)]
pub struct Lemma4Report {
    pub outcome: Outcome,
    pub search: Option<WitnessSearch>,
}

/// With `G'` central elementary abelian of order at least 8, a unit of
/// order at least 8 must exist; not finding one is an anomaly.
pub fn lemma4_witness(g: &Arc<Group>, cfg: &CheckConfig) -> Result<Lemma4Report, EngineError> {
    let d = g.derived_subgroup();
    if !(d.is_central() && d.is_elementary_abelian()) {
        return Ok(Lemma4Report {
            outcome: Outcome::NotApplicable("G' is not central elementary abelian".into()),
            search: None,
        });
    }
    if d.order() < 8 {
        return Ok(Lemma4Report {
            outcome: Outcome::NotApplicable(format!("|G'| = {} < 8", d.order())),
            search: None,
        });
    }
    let s = find_order_witness(g, 8, Strategy::SparseFirst, &cfg.witness)?;
    let outcome = if s.witness.is_some() {
        Outcome::Pass
    } else {
        Outcome::Anomaly(format!(
            "no unit of order >= 8 among {} candidates",
            s.candidates
        ))
    };
    Ok(Lemma4Report {
        outcome,
        search: Some(s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> Arc<Group> {
        builtin(name).unwrap().group
    }

    #[test]
    fn corollary_one() {
        assert_eq!(corollary1_check(&group("G16_3"), Some(true)), Outcome::Pass);
        assert_eq!(corollary1_check(&group("G32_2"), Some(true)), Outcome::Pass);
        assert!(matches!(
            corollary1_check(&group("G32_6"), Some(false)),
            Outcome::NotApplicable(_)
        ));
        assert!(corollary1_check(&group("D16"), Some(true)).is_failure());
    }

    #[test]
    fn lemma_one() {
        let r = lemma1_subgroup_classification(&group("D8"), Some(true)).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.types, vec![("D8".to_string(), 1)]);
        let r = lemma1_subgroup_classification(&group("G32_2"), Some(true)).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(r.types.iter().any(|(n, _)| n == "G32_2"));
        let r = lemma1_subgroup_classification(&group("D8xC2"), Some(true)).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(r.types.iter().all(|(n, _)| n == "D8"));
        let r = lemma1_subgroup_classification(&group("D16"), Some(true)).unwrap();
        assert!(r.outcome.is_failure());
    }

    #[test]
    fn lemma_two() {
        let cfg = CheckConfig::default();
        let r = lemma2_check(&group("G16_4"), &cfg).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(r.exact && r.commutator_index_ok);
        let r = lemma2_check(&group("D8xD8"), &cfg).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.omega_cube, Some(true));
        let r = lemma2_check(&group("G32_6"), &cfg).unwrap();
        assert!(matches!(r.outcome, Outcome::NotApplicable(_)));
        assert!(omega_cube_vanishes(&group("C2xC2")));
        assert!(!omega_cube_vanishes(&group("C4")));
    }

    #[test]
    fn lemma_three_small() {
        let cfg = CheckConfig::default();
        for h in ["D8", "Q8"] {
            let r = lemma3_closure_check(&group(h), 2, &cfg).unwrap();
            assert_eq!(r.outcome, Outcome::Pass, "{h}");
            assert!(r.exact);
        }
        let r = lemma3_closure_check(&group("D8"), 4, &cfg).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.method, Some(Method::LowWeight));
        assert!(matches!(
            lemma3_closure_check(&group("D8"), 8, &cfg).unwrap().outcome,
            Outcome::NotApplicable(_)
        ));
        assert!(matches!(
            lemma3_closure_check(&group("D16"), 2, &cfg)
                .unwrap()
                .outcome,
            Outcome::NotApplicable(_)
        ));
    }

    #[test]
    fn lemma_four() {
        let cfg = CheckConfig::default();
        let r = lemma4_witness(&group("E64"), &cfg).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(r.search.unwrap().from_sparse);
        assert!(matches!(
            lemma4_witness(&group("D8"), &cfg).unwrap().outcome,
            Outcome::NotApplicable(_)
        ));
    }
}
