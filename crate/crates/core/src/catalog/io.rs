//! Text formats for Cayley tables and presentations.
//!
//! Cayley table:
//!
//! ```text
//! order N
//! label <string>        (optional)
//! N lines of N space-separated 0-based indices; row a, column b = a·b
//! ```
//!
//! Presentation:
//!
//! ```text
//! gens k
//! label <string>        (optional)
//! one relator per line, over g1..gk / G1..Gk
//! ```
//!
//! Blank lines and lines starting with `#` are ignored in presentations.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::coset::{enumerate, DEFAULT_COSET_CAP};
use super::word::{parse_relator, Presentation};
use super::{CatalogEntry, CatalogError, Source};
use crate::group::{Group, MAX_GROUP_ORDER};

fn parse_err(line: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, CatalogError> {
    std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "unnamed".into())
}

/// Parses and validates a Cayley table; the label defaults to `default_label`.
pub fn parse_cayley_table(text: &str, default_label: &str) -> Result<Group, CatalogError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, first) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let n: usize = first
        .strip_prefix("order ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| parse_err(ln, "expected 'order N'"))?;
    if n == 0 || n > MAX_GROUP_ORDER {
        return Err(parse_err(
            ln,
            format!("order {n} outside 1..={MAX_GROUP_ORDER}"),
        ));
    }
    let mut label = default_label.to_string();
    let mut table = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (ln, line) in lines {
        if rows == 0 && table.is_empty() {
            if let Some(l) = line.strip_prefix("label ") {
                label = l.to_string();
                continue;
            }
        }
        if line.trim().is_empty() {
            if rows == n {
                continue;
            }
            return Err(parse_err(ln, "unexpected blank line"));
        }
        if rows == n {
            return Err(parse_err(ln, format!("more than {n} table rows")));
        }
        let before = table.len();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| parse_err(ln, format!("'{tok}' is not an index")))?;
            if v >= n {
                return Err(parse_err(
                    ln,
                    format!("index {v} out of range for order {n}"),
                ));
            }
            table.push(v as u16);
        }
        if table.len() - before != n {
            return Err(parse_err(
                ln,
                format!("expected {n} entries, found {}", table.len() - before),
            ));
        }
        rows += 1;
    }
    if rows != n {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {n} table rows, found {rows}"),
        ));
    }
    Ok(Group::from_table(label, n, table)?)
}

/// Canonical text form; `parse_cayley_table` of this string reproduces the
/// same table and label.
pub fn render_cayley_table(g: &Group) -> String {
    let n = g.order();
    let mut out = String::with_capacity(n * n * 3 + 32);
    writeln!(out, "order {n}").unwrap();
    if !g.label().is_empty() {
        writeln!(out, "label {}", g.label()).unwrap();
    }
    for a in g.elements() {
        let row = g.row(a);
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn load_cayley_table(path: &Path) -> Result<CatalogEntry, CatalogError> {
    let g = parse_cayley_table(&read(path)?, &stem(path))?;
    Ok(file_entry(g, path))
}

pub fn save_cayley_table(entry: &CatalogEntry, path: &Path) -> Result<(), CatalogError> {
    std::fs::write(path, render_cayley_table(&entry.group)).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a presentation file, returning it with its label (if any).
pub fn parse_presentation(text: &str) -> Result<(Presentation, Option<String>), CatalogError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, first) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let k: usize = first
        .strip_prefix("gens ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| parse_err(ln, "expected 'gens k'"))?;
    if k == 0 {
        return Err(parse_err(ln, "need at least one generator"));
    }
    let mut label = None;
    let mut relators = Vec::new();
    for (ln, line) in lines {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(l) = t.strip_prefix("label ") {
            if relators.is_empty() && label.is_none() {
                label = Some(l.trim().to_string());
                continue;
            }
        }
        let w = parse_relator(t, k).map_err(|m| parse_err(ln, m))?;
        if !w.is_empty() {
            relators.push(w);
        }
    }
    Ok((Presentation::new(k, relators)?, label))
}

pub fn load_presentation(path: &Path, coset_cap: usize) -> Result<CatalogEntry, CatalogError> {
    let (p, label) = parse_presentation(&read(path)?)?;
    let label = label.unwrap_or_else(|| stem(path));
    let g = enumerate(&p, &label, coset_cap)?;
    Ok(file_entry(g, path))
}

/// Loads either file kind, dispatching on the first line.
pub fn load_file(path: &Path) -> Result<CatalogEntry, CatalogError> {
    let text = read(path)?;
    if text.starts_with("gens") {
        let (p, label) = parse_presentation(&text)?;
        let label = label.unwrap_or_else(|| stem(path));
        let g = enumerate(&p, &label, DEFAULT_COSET_CAP)?;
        Ok(file_entry(g, path))
    } else {
        let g = parse_cayley_table(&text, &stem(path))?;
        Ok(file_entry(g, path))
    }
}

fn file_entry(g: Group, path: &Path) -> CatalogEntry {
    CatalogEntry {
        name: g.label().to_string(),
        source: Source::File(PathBuf::from(path)),
        group: Arc::new(g),
        expected_order: None,
        expected_structure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::group::GroupError;

    #[test]
    fn round_trip_is_bit_exact() {
        let d8 = builtin("D8").unwrap();
        let text = render_cayley_table(&d8.group);
        let back = parse_cayley_table(&text, "x").unwrap();
        assert_eq!(back.label(), "D8");
        assert_eq!(back, *d8.group);
        assert_eq!(render_cayley_table(&back), text);
    }

    #[test]
    fn non_associative_latin_square() {
        // a loop of order 5 with identity 0 that is not associative
        let text = "order 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        match parse_cayley_table(text, "L5") {
            Err(CatalogError::Group(GroupError::Validation(m))) => {
                assert!(m.contains("associativity fails"), "{m}")
            }
            other => panic!("expected validation error, got {other:?}"),
        }
        let text = "order 3\n1 2 0\n2 0 1\n0 1 2\n";
        assert!(matches!(
            parse_cayley_table(text, "L3"),
            Err(CatalogError::Group(GroupError::Validation(_)))
        ));
    }

    #[test]
    fn odd_order_group_is_a_domain_error() {
        let text = "order 3\n0 1 2\n1 2 0\n2 0 1\n";
        assert!(matches!(
            parse_cayley_table(text, "C3"),
            Err(CatalogError::Group(GroupError::NotTwoGroup(_)))
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("ordr 2\n0 1\n1 0\n", 1),
            ("order 2\n0 1\n1 x\n", 3),
            ("order 2\n0 1\n1 0 1\n", 3),
            ("order 2\n0 1\n", 2),
            ("order 2\n0 1\n1 2\n", 3),
            ("order 2\nlabel c\n0 1\n1 0\n0 1\n", 5),
        ];
        for (text, line) in cases {
            match parse_cayley_table(text, "t") {
                Err(CatalogError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn presentation_file() {
        let text = "gens 2\nlabel D8\n# dihedral\ng1^4\ng2^2\n\ng2 g1 g2 = G1\n";
        let (p, label) = parse_presentation(text).unwrap();
        assert_eq!(label.as_deref(), Some("D8"));
        assert_eq!(p.relators.len(), 3);
        let g = enumerate(&p, "D8", DEFAULT_COSET_CAP).unwrap();
        assert_eq!(g.order(), 8);
        match parse_presentation("gens 2\ng1^4\ng3\n") {
            Err(CatalogError::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
