//! Verification driver: loads the catalog, runs the selected suites in a
//! fixed order and collects a report whose rendering depends only on the
//! configuration and seed.

mod render;

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::catalog::{builtin, default_catalog, load_file, CatalogEntry, CatalogError};
use crate::engine::{
    estimate_walk_time, EngineConfig, EngineError, ExponentResult, ExponentValue, WitnessBudget,
    DEFAULT_NODE_BUDGET,
};
use crate::group::{all_subgroups, Group, MAX_SUBGROUP_ENUMERATION_ORDER};
use crate::theorem::{
    case74_witness_in_g32_6, case_findings, corollary1_check, decomposition_search,
    determine_exponent, is_valid_decomposition, lemma1_subgroup_classification, lemma2_check_with,
    lemma3_closure_check, lemma4_witness, omega_cube_vanishes, proof_case_witnesses,
    structure_identifications, theorem_predicate, CheckConfig, NamedCheck, Outcome,
    PredicateVerdict,
};

pub use render::{emit_report, render, TSV_COLUMNS};

pub const TOOL_NAME: &str = "verify";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Orders above this get a time estimate before an exhaustive walk.
const QUIET_WALK_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Structure,
    Exponent,
    Theorem,
    Lemmas,
    Witnesses,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Structure,
        Suite::Exponent,
        Suite::Theorem,
        Suite::Lemmas,
        Suite::Witnesses,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Exponent => "exponent",
            Suite::Theorem => "theorem",
            Suite::Lemmas => "lemmas",
            Suite::Witnesses => "witnesses",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s.trim())
            .ok_or_else(|| {
                format!("unknown suite '{s}' (expected structure, exponent, theorem, lemmas or witnesses)")
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Tsv,
    Jsonl,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Tsv => "tsv",
            Format::Jsonl => "jsonl",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "jsonl" | "json-lines" => Ok(Format::Jsonl),
            _ => Err(format!("unknown format '{s}' (expected tsv or jsonl)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suites: BTreeSet<Suite>,
    /// 8, 16 or 32; 32 walks all `2^31` units of order-32 groups.
    pub max_exhaustive_order: usize,
    pub sample_count: u64,
    pub seed: u64,
    pub threads: usize,
    /// Extra Cayley-table or presentation files added to the builtin catalog.
    pub catalog_paths: Vec<PathBuf>,
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suites: Suite::ALL.into_iter().collect(),
            max_exhaustive_order: 16,
            sample_count: 10_000,
            seed: 1,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            catalog_paths: Vec::new(),
            output_path: None,
            format: Format::Tsv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ReportError> {
        if ![8, 16, 32].contains(&self.max_exhaustive_order) {
            return Err(ReportError::Config(format!(
                "max exhaustive order must be 8, 16 or 32, got {}",
                self.max_exhaustive_order
            )));
        }
        if self.threads == 0 {
            return Err(ReportError::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    pub fn check_config(&self) -> CheckConfig {
        CheckConfig {
            engine: EngineConfig::with_threads(self.threads),
            max_exhaustive_order: self.max_exhaustive_order,
            node_budget: DEFAULT_NODE_BUDGET,
            samples: self.sample_count,
            seed: self.seed,
            witness: WitnessBudget {
                seed: self.seed,
                ..WitnessBudget::default()
            },
        }
    }

    pub fn is_heavy(&self) -> bool {
        self.max_exhaustive_order > QUIET_WALK_ORDER
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    CatalogFile { path: PathBuf, source: CatalogError },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<EngineError> for ReportError {
    fn from(e: EngineError) -> Self {
        ReportError::Internal(e.to_string())
    }
}

impl ReportError {
    /// 2 for configuration and file problems, 3 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Config(_) | ReportError::CatalogFile { .. } | ReportError::Io { .. } => 2,
            ReportError::Internal(_) => 3,
        }
    }
}

fn internal(e: impl fmt::Display) -> ReportError {
    ReportError::Internal(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub max_exhaustive_order: usize,
    pub samples: u64,
    /// `builtin` followed by the extra catalog paths as given.
    pub catalog: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub suite: Suite,
    pub name: String,
    /// `None` for checks not tied to a catalog group.
    pub group: Option<String>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub header: Header,
    /// Sorted by (order, label).
    pub rows: Vec<PredicateVerdict>,
    pub checks: Vec<CheckEntry>,
    pub findings: Vec<Finding>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.outcome.is_failure())
    }

    pub fn count(&self, tag: &str) -> usize {
        self.checks
            .iter()
            .filter(|c| c.outcome.tag() == tag)
            .count()
    }

    /// 0 when every check passed, 3 on any anomaly, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.count("anomaly") > 0 {
            3
        } else if self.count("fail") > 0 {
            1
        } else {
            0
        }
    }
}

/// [`run_with_progress`] without progress output.
pub fn run(cfg: &RunConfig) -> Result<VerificationReport, ReportError> {
    run_with_progress(cfg, &mut |_| {})
}

/// Runs the suites in the order structure, exponent, theorem, lemmas,
/// witnesses. `progress` receives time estimates for long walks; none of it
/// ends up in the report.
pub fn run_with_progress(
    cfg: &RunConfig,
    progress: &mut dyn FnMut(&str),
) -> Result<VerificationReport, ReportError> {
    cfg.validate()?;
    let mut entries: Vec<CatalogEntry> = Vec::new();
    if !cfg.suites.is_empty() {
        entries = default_catalog().map_err(internal)?;
        for p in &cfg.catalog_paths {
            let entry = load_file(p).map_err(|source| match source {
                CatalogError::Io { source, .. } => ReportError::Io {
                    path: p.clone(),
                    source,
                },
                source => ReportError::CatalogFile {
                    path: p.clone(),
                    source,
                },
            })?;
            entries.push(entry);
        }
        entries.sort_by(|a, b| (a.order(), a.group.label()).cmp(&(b.order(), b.group.label())));
    }
    let mut d = Driver {
        cfg,
        check: cfg.check_config(),
        groups: entries.into_iter().map(|e| e.group).collect(),
        exponents: Vec::new(),
        checks: Vec::new(),
        findings: Vec::new(),
        progress,
    };
    d.exponents = vec![None; d.groups.len()];

    let has = |s| cfg.suites.contains(&s);
    let mut rows = Vec::new();
    if has(Suite::Structure) || has(Suite::Exponent) || has(Suite::Theorem) {
        rows = d.groups.iter().map(|g| theorem_predicate(g)).collect();
    }
    if has(Suite::Structure) {
        d.structure()?;
    }
    if has(Suite::Exponent) || has(Suite::Theorem) {
        for (i, row) in rows.iter_mut().enumerate() {
            let r = d.exponent(i)?;
            let mut v = row.clone().with_exponent(&r);
            if !has(Suite::Theorem) {
                v.agreement = None;
            }
            *row = v;
        }
    }
    if has(Suite::Exponent) {
        d.exponent_suite()?;
    }
    if has(Suite::Theorem) {
        d.theorem(&rows)?;
    }
    if has(Suite::Lemmas) {
        d.lemmas()?;
    }
    if has(Suite::Witnesses) {
        d.witnesses()?;
    }

    let mut catalog = vec!["builtin".to_string()];
    catalog.extend(cfg.catalog_paths.iter().map(|p| p.display().to_string()));
    Ok(VerificationReport {
        header: Header {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            seed: cfg.seed,
            suites: cfg.suites.iter().copied().collect(),
            max_exhaustive_order: cfg.max_exhaustive_order,
            samples: cfg.sample_count,
            catalog,
        },
        rows,
        checks: d.checks,
        findings: d.findings,
    })
}

struct Driver<'a> {
    cfg: &'a RunConfig,
    check: CheckConfig,
    groups: Vec<Arc<Group>>,
    exponents: Vec<Option<ExponentResult>>,
    checks: Vec<CheckEntry>,
    findings: Vec<Finding>,
    progress: &'a mut dyn FnMut(&str),
}

impl Driver<'_> {
    fn push(&mut self, suite: Suite, name: &str, group: Option<&Group>, outcome: Outcome) {
        self.checks.push(CheckEntry {
            suite,
            name: name.to_string(),
            group: group.map(|g| g.label().to_string()),
            outcome,
        });
    }

    fn push_named(&mut self, suite: Suite, list: Vec<NamedCheck>) {
        for c in list {
            self.push(suite, &c.name, None, c.outcome);
        }
    }

    fn announce_walk(&mut self, g: &Arc<Group>) -> Result<(), ReportError> {
        if g.order() > QUIET_WALK_ORDER && g.order() <= self.cfg.max_exhaustive_order {
            let t = estimate_walk_time(g, &self.check.engine)?;
            (self.progress)(&format!(
                "{}: walking 2^{} units, estimated {:.0} s",
                g.label(),
                g.order() - 1,
                t.as_secs_f64()
            ));
        }
        Ok(())
    }

    fn exponent(&mut self, i: usize) -> Result<ExponentResult, ReportError> {
        if let Some(r) = &self.exponents[i] {
            return Ok(r.clone());
        }
        let g = Arc::clone(&self.groups[i]);
        self.announce_walk(&g)?;
        let r = determine_exponent(&g, &self.check)?;
        self.exponents[i] = Some(r.clone());
        Ok(r)
    }

    fn structure(&mut self) -> Result<(), ReportError> {
        for i in 0..self.groups.len() {
            let g = Arc::clone(&self.groups[i]);
            if g.order() <= MAX_SUBGROUP_ENUMERATION_ORDER {
                let o = frattini_matches_maximal_intersection(&g)?;
                self.push(
                    Suite::Structure,
                    "frattini_is_maximal_intersection",
                    Some(&g),
                    o,
                );
            }
        }
        let ids = structure_identifications().map_err(internal)?;
        self.push_named(Suite::Structure, ids);
        for (name, value) in case_findings().map_err(internal)? {
            self.findings.push(Finding { name, value });
        }
        Ok(())
    }

    fn exponent_suite(&mut self) -> Result<(), ReportError> {
        for i in 0..self.groups.len() {
            let g = Arc::clone(&self.groups[i]);
            let r = self.exponent(i)?;
            if let Some(w) = &r.witness {
                let order = w.unit_order().map_err(internal)?;
                let ok = match r.exponent {
                    ExponentValue::Exact(e) | ExponentValue::AtLeast(e) => order == e,
                    ExponentValue::AtMost(e) => order <= e,
                };
                let o = Outcome::from_bool(ok, || {
                    format!(
                        "witness {w} has order {order}, exponent reported {}",
                        r.exponent
                    )
                });
                self.push(Suite::Exponent, "witness_order", Some(&g), o);
            }
            if g.is_abelian() {
                let o = match r.exponent.exact() {
                    Some(e) => Outcome::from_bool(e == g.exponent() as u64, || {
                        format!("exp V(FG) = {e}, exp G = {}", g.exponent())
                    }),
                    None => Outcome::NotApplicable(format!("exponent {} not exact", r.exponent)),
                };
                self.push(Suite::Exponent, "abelian_law", Some(&g), o);
            }
        }
        Ok(())
    }

    fn theorem(&mut self, rows: &[PredicateVerdict]) -> Result<(), ReportError> {
        for (i, v) in rows.iter().enumerate() {
            let g = Arc::clone(&self.groups[i]);
            if g.is_abelian() {
                continue;
            }
            let o = match v.agreement {
                Some(ok) => Outcome::from_bool(ok, || {
                    format!(
                        "predicted exp 4 = {}, computed exponent {}",
                        v.predicted_exp4,
                        v.computed_exponent.expect("set with agreement")
                    )
                }),
                None => Outcome::NotApplicable(format!(
                    "exponent {} does not decide",
                    v.computed_exponent.map_or("-".into(), |e| e.to_string())
                )),
            };
            self.push(Suite::Theorem, "agreement", Some(&g), o);
            if g.order() <= MAX_SUBGROUP_ENUMERATION_ORDER {
                let found = decomposition_search(&g).map_err(internal)?;
                let ok = match &found {
                    Some((h, w)) => v.predicted_exp4 && is_valid_decomposition(&g, h, w),
                    None => !v.predicted_exp4,
                };
                let o = Outcome::from_bool(ok, || {
                    format!(
                        "flattened predicate {} but product decomposition {}",
                        v.predicted_exp4,
                        if found.is_some() { "found" } else { "absent" }
                    )
                });
                self.push(Suite::Theorem, "product_form", Some(&g), o);
            }
        }
        Ok(())
    }

    fn lemmas(&mut self) -> Result<(), ReportError> {
        for i in 0..self.groups.len() {
            let g = Arc::clone(&self.groups[i]);
            if g.is_abelian() {
                continue;
            }
            let r = self.exponent(i)?;
            let four = r.exponent.is_four();
            if four == Some(true) {
                let o = corollary1_check(&g, four);
                self.push(Suite::Lemmas, "frattini_central_elementary", Some(&g), o);
                if g.order() <= MAX_SUBGROUP_ENUMERATION_ORDER {
                    let rep = lemma1_subgroup_classification(&g, four).map_err(internal)?;
                    self.push(
                        Suite::Lemmas,
                        "two_generated_subgroups",
                        Some(&g),
                        rep.outcome,
                    );
                }
            }
            let l2 = lemma2_check_with(&g, r.clone());
            if !matches!(l2.outcome, Outcome::NotApplicable(_)) {
                self.push(
                    Suite::Lemmas,
                    "exponent_four_sufficient",
                    Some(&g),
                    l2.outcome,
                );
            }
            if g.order() <= 16 && r.exponent == ExponentValue::Exact(4) {
                for k in [2, 4] {
                    if g.order() * k > QUIET_WALK_ORDER
                        && g.order() * k <= self.cfg.max_exhaustive_order
                    {
                        (self.progress)(&format!(
                            "{}xC{k}: bounded walk over 2^{} units",
                            g.label(),
                            g.order() * k - 1
                        ));
                    }
                    let rep = lemma3_closure_check(&g, k, &self.check)?;
                    let name = format!("product_with_C{k}");
                    self.push(Suite::Lemmas, &name, Some(&g), rep.outcome);
                }
            }
            let l4 = lemma4_witness(&g, &self.check)?;
            if !matches!(l4.outcome, Outcome::NotApplicable(_)) {
                self.push(
                    Suite::Lemmas,
                    "large_derived_subgroup_witness",
                    Some(&g),
                    l4.outcome,
                );
            }
        }
        let v4 = builtin("C2xC2").map_err(internal)?.group;
        let o = Outcome::from_bool(omega_cube_vanishes(&v4), || {
            "a triple product is nonzero".into()
        });
        self.push(Suite::Lemmas, "omega_cube_C2xC2", None, o);
        Ok(())
    }

    fn witnesses(&mut self) -> Result<(), ReportError> {
        let list = proof_case_witnesses().map_err(internal)?;
        self.push_named(Suite::Witnesses, list);
        let w = case74_witness_in_g32_6().map_err(internal)?;
        let order = w.unit_order().map_err(internal)?;
        let o = Outcome::from_bool(order == 8, || format!("{w} has order {order}"));
        self.push(Suite::Witnesses, "case_74_witness_in_G32_6", None, o);
        Ok(())
    }
}

/// `Φ(G)` against the intersection of the index-2 subgroups, which are the
/// maximal ones in a 2-group.
fn frattini_matches_maximal_intersection(g: &Group) -> Result<Outcome, ReportError> {
    let phi = g.frattini();
    let subs = all_subgroups(g).map_err(internal)?;
    let mut meet = g.whole();
    for m in subs.iter().filter(|s| 2 * s.order() == g.order()) {
        meet = meet.intersection(m);
    }
    Ok(Outcome::from_bool(
        meet.is_subset_of(&phi) && phi.is_subset_of(&meet),
        || {
            format!(
                "|Phi(G)| = {}, intersection of maximal subgroups has order {}",
                phi.order(),
                meet.order()
            )
        },
    ))
}
