//! Named groups built from presentations, direct-product expressions and
//! Cayley-table files.

mod coset;
mod io;
mod word;

pub use coset::{enumerate, DEFAULT_COSET_CAP};
pub use io::{
    load_cayley_table, load_file, load_presentation, parse_cayley_table, parse_presentation,
    render_cayley_table, save_cayley_table,
};
pub use word::{parse_relator, parse_word, Letter, Presentation, Word};

use std::path::PathBuf;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{direct_product, Group, GroupError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error(
        "coset enumeration exceeded {cap} cosets (group may be infinite or the cap too small)"
    )]
    Enumeration { cap: usize },
    #[error("unknown catalog group '{0}'")]
    UnknownName(String),
    #[error("{name}: expected order {expected}, enumeration gave {actual}")]
    OrderMismatch {
        name: String,
        expected: usize,
        actual: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Presentation,
    Product(Vec<String>),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub source: Source,
    pub group: Arc<Group>,
    pub expected_order: Option<usize>,
    pub expected_structure: Option<String>,
}

impl CatalogEntry {
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// A group given by a presentation over generators `g1, g2, …`.
struct Definition {
    name: &'static str,
    generators: usize,
    relators: &'static [&'static str],
    order: Option<usize>,
    structure: Option<&'static str>,
}

const fn def(
    name: &'static str,
    generators: usize,
    relators: &'static [&'static str],
    order: Option<usize>,
    structure: Option<&'static str>,
) -> Definition {
    Definition {
        name,
        generators,
        relators,
        order,
        structure,
    }
}

/// Presentations use `g1 = g`, `g2 = h` (and `g3` where present).
const DEFINITIONS: &[Definition] = &[
    def("C1", 1, &["g1"], Some(1), Some("1")),
    def("C2", 1, &["g1^2"], Some(2), Some("C2")),
    def("C4", 1, &["g1^4"], Some(4), Some("C4")),
    def("C8", 1, &["g1^8"], Some(8), Some("C8")),
    def(
        "C2xC2",
        2,
        &["g1^2", "g2^2", "[g1,g2]"],
        Some(4),
        Some("C2 x C2"),
    ),
    def(
        "C4xC2",
        2,
        &["g1^4", "g2^2", "[g1,g2]"],
        Some(8),
        Some("C4 x C2"),
    ),
    def(
        "C4xC4",
        2,
        &["g1^4", "g2^4", "[g1,g2]"],
        Some(16),
        Some("C4 x C4"),
    ),
    def(
        "D8",
        2,
        &["g1^4", "g2^2", "g2 g1 g2 = g1^3"],
        Some(8),
        Some("D8"),
    ),
    def(
        "Q8",
        2,
        &["g1^4", "g1^2 = g2^2", "G2 g1 g2 = g1^3"],
        Some(8),
        Some("Q8"),
    ),
    def(
        "D16",
        2,
        &["g1^8", "g2^2", "g2 g1 g2 = g1^7"],
        Some(16),
        Some("D16"),
    ),
    def(
        "Q16",
        2,
        &["g1^8", "g1^4 = g2^2", "G2 g1 g2 = g1^7"],
        Some(16),
        Some("Q16"),
    ),
    def(
        "SD16",
        2,
        &["g1^8", "g2^2", "g2 g1 g2 = g1^3"],
        Some(16),
        Some("SD16"),
    ),
    def(
        "M16",
        2,
        &["g1^8", "g2^2", "g2 g1 g2 = g1^5"],
        Some(16),
        Some("C8 :| C2 (modular)"),
    ),
    def(
        "C4oD8",
        3,
        &[
            "g1^4",
            "g2^2",
            "(g1g2)^2",
            "g3^2 = g1^2",
            "[g3,g1]",
            "[g3,g2]",
        ],
        Some(16),
        Some("C4 o D8 (Pauli)"),
    ),
    def(
        "G16_3",
        2,
        &["g1^4", "g2^2", "[g1^2,g2]", "(g1g2)^3 = g2 g1^3"],
        Some(16),
        Some("(C4 x C2) :| C2"),
    ),
    def(
        "G16_4",
        2,
        &["g1^4", "g2^4", "G2 g1 g2 = g1^3"],
        Some(16),
        Some("C4 :| C4"),
    ),
    def(
        "G32_2",
        2,
        &["g1^4", "g2^4", "[g1,g2]^2", "[[g1,g2],g1]", "[[g1,g2],g2]"],
        Some(32),
        Some("(C4 x C2) :| C4"),
    ),
    // C2^3 :| C4 with the generator acting as a 3x3 unipotent Jordan block
    def(
        "G32_6",
        2,
        &[
            "g1^4",
            "g2^2",
            "[g2, G1 g2 g1]",
            "[g2, G1^2 g2 g1^2]",
            "G1^3 g2 g1^3 = g2 (G1 g2 g1) (G1^2 g2 g1^2)",
        ],
        Some(32),
        Some("((C4 x C2) :| C2) :| C2"),
    ),
    // verbatim variants of the order-32 presentations that use the relators
    // (gh)^2 and (g^3h)^2 together with central g^2, h^2; both collapse to
    // order 16
    def(
        "G32_2_printed",
        2,
        &["g1^4", "g2^4", "(g1g2)^2", "[g1^2,g2]", "[g1,g2^2]"],
        None,
        Some("printed as (C4 x C2) :| C4"),
    ),
    def(
        "G32_6_printed",
        2,
        &["g1^4", "g2^4", "(g1^3g2)^2", "[g1^2,g2]", "[g1,g2^2]"],
        None,
        Some("printed as ((C4 x C2) :| C2) :| C2"),
    ),
    def(
        "E64",
        3,
        &[
            "g1^2",
            "g2^2",
            "g3^2",
            "[[g1,g2],g1]",
            "[[g1,g2],g2]",
            "[[g1,g2],g3]",
            "[[g1,g3],g1]",
            "[[g1,g3],g2]",
            "[[g1,g3],g3]",
            "[[g2,g3],g1]",
            "[[g2,g3],g2]",
            "[[g2,g3],g3]",
        ],
        Some(64),
        Some("3 involutions, central commutators; G' = C2^3"),
    ),
    // groups named by the case analysis of the two-generator classification
    def(
        "CaseA",
        2,
        &["g1^4", "g2^2", "[g1^2,g2]", "(g1g2)^4"],
        None,
        Some("claimed G16_3"),
    ),
    def(
        "CaseB",
        2,
        &["g1^4", "g2^4", "(g1g2)^2", "[g1^2,g2]"],
        None,
        Some("claimed G16_3"),
    ),
    def(
        "Case2",
        2,
        &[
            "g1^4",
            "g2^4",
            "[g1,g2^2]",
            "[g1^2,g2]",
            "(g1g2)^2 = (g2g1)^2",
        ],
        None,
        Some("claimed G32_2"),
    ),
    def(
        "Case4",
        2,
        &["g1^4", "g2^4", "g1^2 = g2^2", "(g1g2)^2 = (g2g1)^2"],
        None,
        Some("claimed G16_4"),
    ),
    def(
        "Case74",
        2,
        &["g1^4", "g2^4", "(g1^3g2)^2", "g1g2g1^2 = g2g1g2^2"],
        None,
        Some("claimed G32_6"),
    ),
];

/// Names accepted by [`builtin`] besides `x`-separated product expressions.
pub fn builtin_names() -> Vec<&'static str> {
    DEFINITIONS.iter().map(|d| d.name).collect()
}

fn from_definition(d: &Definition) -> Result<CatalogEntry, CatalogError> {
    let p = Presentation::parse(d.generators, d.relators)?;
    let group = enumerate(&p, d.name, DEFAULT_COSET_CAP)?;
    if let Some(expected) = d.order {
        if group.order() != expected {
            return Err(CatalogError::OrderMismatch {
                name: d.name.into(),
                expected,
                actual: group.order(),
            });
        }
    }
    Ok(CatalogEntry {
        name: d.name.into(),
        source: Source::Presentation,
        group: Arc::new(group),
        expected_order: d.order,
        expected_structure: d.structure.map(str::to_string),
    })
}

/// The presentation behind a builtin name.
pub fn builtin_presentation(name: &str) -> Option<Presentation> {
    DEFINITIONS.iter().find(|d| d.name == name).map(|d| {
        Presentation::parse(d.generators, d.relators).expect("builtin presentations parse")
    })
}

/// Looks up a builtin group, or a direct product such as `D8xC2` or
/// `D8xD8xD8` whose factors are builtins.
pub fn builtin(name: &str) -> Result<CatalogEntry, CatalogError> {
    if let Some(d) = DEFINITIONS.iter().find(|d| d.name == name) {
        return from_definition(d);
    }
    let factors = split_product(name).ok_or_else(|| CatalogError::UnknownName(name.into()))?;
    let mut group: Option<Group> = None;
    for f in &factors {
        let entry = builtin(f)?;
        group = Some(match group {
            None => (*entry.group).clone(),
            Some(acc) => direct_product(&acc, &entry.group)?,
        });
    }
    let group = group.expect("at least two factors").with_label(name);
    let mut expected = 1;
    for f in &factors {
        expected *= builtin(f)?.order();
    }
    Ok(CatalogEntry {
        name: name.into(),
        source: Source::Product(factors),
        group: Arc::new(group),
        expected_order: Some(expected),
        expected_structure: None,
    })
}

/// Splits `AxBxC` into builtin factor names, preferring the longest builtin
/// prefix at each step so that `C2xC2xD8` parses as `C2xC2`, `D8`.
fn split_product(name: &str) -> Option<Vec<String>> {
    fn go(rest: &str, out: &mut Vec<String>) -> bool {
        if rest.is_empty() {
            return true;
        }
        let mut cuts: Vec<usize> = rest
            .match_indices('x')
            .map(|(i, _)| i)
            .chain(std::iter::once(rest.len()))
            .collect();
        cuts.reverse();
        for cut in cuts {
            let head = &rest[..cut];
            if DEFINITIONS.iter().any(|d| d.name == head) {
                let tail = rest.get(cut + 1..).unwrap_or("");
                if cut < rest.len() && tail.is_empty() {
                    continue;
                }
                out.push(head.to_string());
                if go(tail, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    let mut out = Vec::new();
    (go(name, &mut out) && out.len() >= 2).then_some(out)
}

/// The catalog used by the verification driver.
pub const DEFAULT_CATALOG: &[&str] = &[
    "C1",
    "C2",
    "C4",
    "C8",
    "C2xC2",
    "C4xC2",
    "C2xC2xC2",
    "C4xC4",
    "C8xC2",
    "C4xC2xC2",
    "C2xC2xC2xC2",
    "D8",
    "Q8",
    "D16",
    "Q16",
    "SD16",
    "M16",
    "C4oD8",
    "G16_3",
    "G16_4",
    "D8xC2",
    "Q8xC2",
    "CaseB",
    "G32_2",
    "G32_6",
    "D8xC4",
    "Q8xC4",
    "D8xC2xC2",
    "G16_3xC2",
    "G16_4xC2",
    "E64",
    "D8xD8",
    "D8xQ8",
    "G32_2xC2",
];

pub fn default_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    DEFAULT_CATALOG.iter().map(|n| builtin(n)).collect()
}
