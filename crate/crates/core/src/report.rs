//! Human-readable and machine (JSON) forms of a [`UsageReport`].

use std::fmt::Write;

use crate::model::UsageLabel;
use crate::usage::UsageReport;

fn label_title(l: UsageLabel) -> &'static str {
    match l.code() {
        "ud" => "used direct",
        "ui" => "used inherited",
        "ut" => "used transitive",
        "bd" => "bloated direct",
        "bi" => "bloated inherited",
        _ => "bloated transitive",
    }
}

/// Structured text: counts, dependencies grouped by label, actions, warnings.
pub fn render_text(r: &UsageReport) -> String {
    let mut out = String::new();
    let total = r.counts.total();
    let bloated = r.counts.bloated();
    let _ = writeln!(out, "Dependency usage of {}", r.root);
    let _ = writeln!(
        out,
        "{total} dependencies: {} used, {bloated} bloated (tree height {}{})",
        total - bloated,
        r.tree_height,
        if r.multimodule { ", multi-module" } else { "" }
    );
    for (label, n) in r.counts.iter() {
        let _ = writeln!(out, "\n[{}] {} ({n})", label.code(), label_title(label));
        for u in r.with_label(label) {
            let _ = write!(out, "  {}:{}", u.ga, u.version);
            if u.forced {
                out.push_str("  (ignore-list)");
            } else if !u.used_classes.is_empty() {
                let n = u.used_classes.len();
                let _ = write!(
                    out,
                    "  ({n} {} used)",
                    if n == 1 { "class" } else { "classes" }
                );
            }
            out.push('\n');
        }
    }
    if !r.actions.is_empty() {
        out.push_str("\nActions:\n");
        for a in &r.actions {
            let _ = writeln!(out, "  {a}");
        }
    }
    if !r.warnings.is_empty() {
        out.push_str("\nWarnings:\n");
        for w in &r.warnings {
            let _ = writeln!(out, "  {w}");
        }
    }
    out
}

pub fn to_machine(r: &UsageReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

pub fn from_machine(text: &str) -> Result<UsageReport, serde_json::Error> {
    serde_json::from_str(text)
}
