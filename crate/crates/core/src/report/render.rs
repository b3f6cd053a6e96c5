//! TSV and JSON-lines rendering. Both carry the same fields; timing and the
//! thread count are left out so output is reproducible.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{CheckEntry, Finding, Format, ReportError, VerificationReport};
use crate::theorem::PredicateVerdict;

pub const TSV_COLUMNS: [&str; 11] = [
    "label",
    "order",
    "class",
    "|G'|",
    "|Φ|",
    "Φ_central",
    "Φ_elem_ab",
    "predicted_exp4",
    "method",
    "exponent",
    "agreement",
];

#[derive(Serialize)]
struct HeaderLine<'a> {
    kind: &'static str,
    tool: &'a str,
    version: &'a str,
    seed: u64,
    suites: Vec<&'static str>,
    max_exhaustive_order: usize,
    samples: u64,
    catalog: &'a [String],
}

#[derive(Serialize)]
struct GroupLine<'a> {
    kind: &'static str,
    label: &'a str,
    order: usize,
    class: usize,
    derived_order: usize,
    frattini_order: usize,
    frattini_central: bool,
    frattini_elem_abelian: bool,
    predicted_exp4: bool,
    method: Option<&'static str>,
    exponent: Option<String>,
    agreement: Option<bool>,
}

#[derive(Serialize)]
struct CheckLine<'a> {
    kind: &'static str,
    suite: &'static str,
    check: &'a str,
    group: Option<&'a str>,
    outcome: &'static str,
    detail: &'a str,
}

#[derive(Serialize)]
struct FindingLine<'a> {
    kind: &'static str,
    name: &'a str,
    value: &'a str,
}

#[derive(Serialize)]
struct SummaryLine {
    kind: &'static str,
    pass: usize,
    fail: usize,
    anomaly: usize,
    not_applicable: usize,
}

fn group_line(v: &PredicateVerdict) -> GroupLine<'_> {
    GroupLine {
        kind: "group",
        label: &v.group_label,
        order: v.order,
        class: v.class,
        derived_order: v.derived_order,
        frattini_order: v.frattini_order,
        frattini_central: v.frattini_central,
        frattini_elem_abelian: v.frattini_elem_abelian,
        predicted_exp4: v.predicted_exp4,
        method: v.method.map(|m| m.as_str()),
        exponent: v.computed_exponent.map(|e| e.to_string()),
        agreement: v.agreement,
    }
}

fn check_line(c: &CheckEntry) -> CheckLine<'_> {
    CheckLine {
        kind: "check",
        suite: c.suite.as_str(),
        check: &c.name,
        group: c.group.as_deref(),
        outcome: c.outcome.tag(),
        detail: c.outcome.message(),
    }
}

fn summary(r: &VerificationReport) -> SummaryLine {
    SummaryLine {
        kind: "summary",
        pass: r.count("pass"),
        fail: r.count("fail"),
        anomaly: r.count("anomaly"),
        not_applicable: r.count("n/a"),
    }
}

fn cell(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

fn or_dash<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn render_tsv(r: &VerificationReport) -> String {
    let h = &r.header;
    let suites: Vec<_> = h.suites.iter().map(|s| s.as_str()).collect();
    let mut out = format!(
        "# {} {}\n# seed={} suites={} max_exhaustive_order={} samples={}\n# catalog={}\n",
        h.tool,
        h.version,
        h.seed,
        suites.join(","),
        h.max_exhaustive_order,
        h.samples,
        h.catalog
            .iter()
            .map(|c| cell(c))
            .collect::<Vec<_>>()
            .join(","),
    );
    if h.suites.is_empty() {
        return out;
    }
    if !r.rows.is_empty() {
        out.push_str(&TSV_COLUMNS.join("\t"));
        out.push('\n');
        for v in &r.rows {
            let fields = [
                cell(&v.group_label),
                v.order.to_string(),
                v.class.to_string(),
                v.derived_order.to_string(),
                v.frattini_order.to_string(),
                v.frattini_central.to_string(),
                v.frattini_elem_abelian.to_string(),
                v.predicted_exp4.to_string(),
                or_dash(v.method.map(|m| m.as_str())),
                or_dash(v.computed_exponent),
                or_dash(v.agreement),
            ];
            out.push_str(&fields.join("\t"));
            out.push('\n');
        }
    }
    if !r.checks.is_empty() {
        out.push_str("# checks\nsuite\tcheck\tgroup\toutcome\tdetail\n");
        for c in &r.checks {
            let fields = [
                c.suite.as_str().to_string(),
                cell(&c.name),
                cell(c.group.as_deref().unwrap_or("-")),
                c.outcome.tag().to_string(),
                cell(c.outcome.message()),
            ];
            out.push_str(&fields.join("\t"));
            out.push('\n');
        }
    }
    if !r.findings.is_empty() {
        out.push_str("# findings\nname\tvalue\n");
        for Finding { name, value } in &r.findings {
            out.push_str(&format!("{}\t{}\n", cell(name), cell(value)));
        }
    }
    let s = summary(r);
    out.push_str(&format!(
        "# summary pass={} fail={} anomaly={} n/a={}\n",
        s.pass, s.fail, s.anomaly, s.not_applicable
    ));
    out
}

fn json<T: Serialize>(out: &mut String, x: &T) {
    out.push_str(&serde_json::to_string(x).expect("plain data serializes"));
    out.push('\n');
}

fn render_jsonl(r: &VerificationReport) -> String {
    let h = &r.header;
    let mut out = String::new();
    json(
        &mut out,
        &HeaderLine {
            kind: "header",
            tool: h.tool,
            version: h.version,
            seed: h.seed,
            suites: h.suites.iter().map(|s| s.as_str()).collect(),
            max_exhaustive_order: h.max_exhaustive_order,
            samples: h.samples,
            catalog: &h.catalog,
        },
    );
    if h.suites.is_empty() {
        return out;
    }
    for v in &r.rows {
        json(&mut out, &group_line(v));
    }
    for c in &r.checks {
        json(&mut out, &check_line(c));
    }
    for f in &r.findings {
        json(
            &mut out,
            &FindingLine {
                kind: "finding",
                name: &f.name,
                value: &f.value,
            },
        );
    }
    json(&mut out, &summary(r));
    out
}

pub fn render(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Tsv => render_tsv(r),
        Format::Jsonl => render_jsonl(r),
    }
}

/// Writes the whole report in one call; `None` means standard output.
pub fn emit_report(
    r: &VerificationReport,
    format: Format,
    path: Option<&Path>,
) -> Result<(), ReportError> {
    let text = render(r, format);
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| ReportError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| ReportError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
