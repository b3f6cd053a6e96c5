//! The classification predicate for `exp V(F₂G) = 4` and checks of the
//! supporting lemmas against computed ground truth.
//!
//! The predicate is evaluated in flattened form: `G` has class 2, `Φ(G)` is
//! central and elementary abelian, and `|G'| ≤ 4`. [`decomposition_search`]
//! looks for the product form `G = H × W` directly, so the two can be
//! compared.

mod cases;
mod lemmas;

use std::fmt;

use crate::engine::{
    EngineConfig, ExponentResult, ExponentValue, Method, WitnessBudget, DEFAULT_NODE_BUDGET,
};
use crate::group::{all_subgroups, Group, GroupError, Subgroup, MAX_SUBGROUP_ENUMERATION_ORDER};

pub use cases::{
    case74_witness_in_g32_6, case_findings, proof_case_witnesses, semidirect_realizations,
    structure_identifications,
};
pub use lemmas::{
    corollary1_check, determine_exponent, exact_exponent, lemma1_subgroup_classification,
    lemma2_check, lemma2_check_with, lemma3_closure_check, lemma4_witness, omega_cube_vanishes,
    Lemma1Report, Lemma2Report, Lemma3Report, Lemma4Report, LEMMA1_NAMES,
};

/// Budgets shared by the checks that compute exponents.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub engine: EngineConfig,
    /// Largest order for the full Gray-code walk.
    pub max_exhaustive_order: usize,
    /// Subset budget for the low-weight certificate.
    pub node_budget: u64,
    pub samples: u64,
    pub seed: u64,
    pub witness: WitnessBudget,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            engine: EngineConfig::default(),
            max_exhaustive_order: 16,
            node_budget: DEFAULT_NODE_BUDGET,
            samples: 10_000,
            seed: 1,
            witness: WitnessBudget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    NotApplicable(String),
    /// A result that contradicts a proven statement rather than a
    /// computation.
    Anomaly(String),
}

impl Outcome {
    pub fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(why())
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::Fail(_) | Outcome::Anomaly(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::NotApplicable(_) => "n/a",
            Outcome::Anomaly(_) => "anomaly",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Outcome::Pass => "",
            Outcome::Fail(m) | Outcome::NotApplicable(m) | Outcome::Anomaly(m) => m,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => f.write_str("pass"),
            other => write!(f, "{}: {}", other.tag(), other.message()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: String,
    pub outcome: Outcome,
}

impl NamedCheck {
    pub fn new(name: impl Into<String>, outcome: Outcome) -> NamedCheck {
        NamedCheck {
            name: name.into(),
            outcome,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateVerdict {
    pub group_label: String,
    pub order: usize,
    pub class: usize,
    pub derived_order: usize,
    pub frattini_order: usize,
    pub is_nonabelian: bool,
    pub class2: bool,
    pub frattini_central: bool,
    pub frattini_elem_abelian: bool,
    pub predicted_exp4: bool,
    pub computed_exponent: Option<ExponentValue>,
    pub method: Option<Method>,
    /// Whether the prediction matches the computed exponent. Absent for
    /// abelian groups and when the computed value cannot decide "= 4".
    pub agreement: Option<bool>,
}

impl PredicateVerdict {
    pub fn with_exponent(mut self, r: &ExponentResult) -> PredicateVerdict {
        self.computed_exponent = Some(r.exponent);
        self.method = Some(r.method);
        self.agreement = if self.is_nonabelian {
            r.exponent.is_four().map(|four| four == self.predicted_exp4)
        } else {
            None
        };
        self
    }
}

/// Flattened predicate. Abelian groups are outside the classification and
/// always predict `false`.
pub fn theorem_predicate(g: &Group) -> PredicateVerdict {
    let d = g.derived_subgroup();
    let phi = g.frattini();
    let is_nonabelian = !g.is_abelian();
    let class = g.nilpotency_class();
    let class2 = class == 2;
    let frattini_central = phi.is_central();
    let frattini_elem_abelian = phi.is_elementary_abelian();
    PredicateVerdict {
        group_label: g.label().to_string(),
        order: g.order(),
        class,
        derived_order: d.order(),
        frattini_order: phi.order(),
        is_nonabelian,
        class2,
        frattini_central,
        frattini_elem_abelian,
        predicted_exp4: is_nonabelian
            && class2
            && frattini_central
            && frattini_elem_abelian
            && d.order() <= 4,
        computed_exponent: None,
        method: None,
        agreement: None,
    }
}

/// Conditions on the nonabelian factor `H`.
pub fn satisfies_h_conditions(h: &Group) -> bool {
    let phi = h.frattini();
    !h.is_abelian()
        && h.nilpotency_class() == 2
        && phi.is_central()
        && phi.is_elementary_abelian()
        && h.derived_subgroup().order() <= 4
}

/// Looks for `G = H × W` with `H` meeting [`satisfies_h_conditions`] and `W`
/// abelian of exponent at most 4. `W` must centralise `H` and itself, so it
/// is taken from the central subgroups. Candidates are tried in canonical
/// subgroup order (by size, then members), `W` outermost, so the trivial `W`
/// comes first.
pub fn decomposition_search(g: &Group) -> Result<Option<(Subgroup<'_>, Subgroup<'_>)>, GroupError> {
    if g.order() > MAX_SUBGROUP_ENUMERATION_ORDER {
        return Err(GroupError::SizeLimit {
            operation: "decomposition search",
            order: g.order(),
            limit: MAX_SUBGROUP_ENUMERATION_ORDER,
        });
    }
    if g.is_abelian() {
        return Ok(None);
    }
    let subs = all_subgroups(g)?;
    let ws = subs.iter().filter(|w| w.is_central() && w.exponent() <= 4);
    for w in ws {
        let need = g.order() / w.order();
        for h in subs.iter().filter(|h| h.order() == need) {
            if !h.is_normal() || !h.intersection(w).is_trivial() {
                continue;
            }
            if satisfies_h_conditions(&h.to_group("H")) {
                return Ok(Some((h.clone(), w.clone())));
            }
        }
    }
    Ok(None)
}

/// Checks a claimed decomposition from scratch.
pub fn is_valid_decomposition(g: &Group, h: &Subgroup<'_>, w: &Subgroup<'_>) -> bool {
    let n = g.order();
    h.is_normal()
        && w.is_normal()
        && h.intersection(w).is_trivial()
        && h.order() * w.order() == n
        && h.members()
            .iter()
            .all(|&a| w.members().iter().all(|&b| g.commutes(a, b)))
        && w.is_abelian()
        && w.exponent() <= 4
        && satisfies_h_conditions(&h.to_group("H"))
}
