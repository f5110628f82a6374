//! Versioned reports and their text rendering.

use std::collections::BTreeSet;
use std::fmt::Write;

use charlab::blocks::ProfileRow;
use charlab::lab::{AuditReport, AuditStatus, ConjectureVerdict, Status, Witness};
use serde::Serialize;

pub const REPORT_SCHEMA: &str = "charlab-report/1";

/// How `sigma_alpha` acts; stated in every report.
pub const SIGMA_CONVENTION: &str =
    "sigma_alpha raises p-power roots of unity to the (1+p^alpha)-th power and fixes p'-roots of unity";

#[derive(Clone, Debug, Serialize)]
pub struct Profile {
    pub rows: Vec<ProfileRow>,
    pub level_spectrum_all: BTreeSet<u32>,
    pub level_spectrum_b0: BTreeSet<u32>,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub group: String,
    pub order: u64,
    pub classes: usize,
    pub p: u64,
    pub sigma_convention: &'static str,
    pub profile: Profile,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<ConjectureVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    /// Names of false verdicts and of audits with counterexamples.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .verdicts
            .iter()
            .filter(|v| v.status == Status::Fails)
            .map(|v| v.name.clone())
            .collect();
        if let Some(a) = &self.audit {
            out.extend(a.entries.iter().filter(|e| !e.ok()).map(|e| format!("audit:{}", e.id)));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub group: String,
    pub p: u64,
    pub check: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupError {
    pub group: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub primes: Vec<u64>,
    pub failures: Vec<Failure>,
    pub errors: Vec<GroupError>,
    pub reports: Vec<Report>,
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn set_text(s: &BTreeSet<u32>) -> String {
    let v: Vec<String> = s.iter().map(u32::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "FAILS",
        Status::NotApplicable => "n/a",
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::MissingLevel { beta } => format!("missing level {beta}"),
        Witness::Row {
            row,
            degree,
            conductor,
            level,
        } => format!("row {row} (degree {degree}, conductor {conductor}, level {level})"),
        Witness::LocalY { y, a, b, detail } => {
            let mut s = format!("y = {y}: (ii.a) {a}, (ii.b) {b}");
            if let Some(d) = detail {
                let _ = write!(s, "; {d}");
            }
            s
        }
        Witness::SubFlags { i, ii_a, ii_b } => format!("(i) {i}, (ii.a) {ii_a}, (ii.b) {ii_b}"),
        Witness::MultisetDifference {
            level,
            in_b0,
            global,
            local,
        } => format!("level {level}, in B0 {in_b0}: {global} in G vs {local} in N_G(P)"),
        Witness::Exponent {
            expected_level,
            max_level,
            attained_in_b0,
        } => format!(
            "expected level {expected_level}, max level {max_level}, attained in B0 {attained_in_b0}"
        ),
    }
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "group {}  order {}  classes {}  p = {}",
        r.group, r.order, r.classes, r.p
    );
    let _ = writeln!(s, "{:>5} {:>7} {:>10} {:>6} {:>4} {:>4}", "row", "degree", "conductor", "level", "p'", "B0");
    for row in &r.profile.rows {
        let _ = writeln!(
            s,
            "{:>5} {:>7} {:>10} {:>6} {:>4} {:>4}",
            row.index,
            row.degree,
            row.conductor,
            row.p_level,
            yes(row.p_prime_degree),
            yes(row.in_b0)
        );
    }
    let _ = writeln!(
        s,
        "p'-levels: all {}  B0 {}",
        set_text(&r.profile.level_spectrum_all),
        set_text(&r.profile.level_spectrum_b0)
    );
    for v in &r.verdicts {
        let _ = writeln!(s, "{:<18} {}", v.name, status_text(v.status));
        for w in &v.witnesses {
            let _ = writeln!(s, "    {}", witness_text(w));
        }
        for n in &v.notes {
            let _ = writeln!(s, "    note: {n}");
        }
    }
    if let Some(a) = &r.audit {
        for e in &a.entries {
            let status = match e.status {
                AuditStatus::Applied => "applied",
                AuditStatus::Partial => "partial",
                AuditStatus::Skipped => "skipped",
            };
            let _ = writeln!(
                s,
                "audit {:<28} {:<8} {}/{}",
                e.id, status, e.passed, e.tried
            );
            for c in &e.counterexamples {
                let _ = writeln!(s, "    counterexample rows {:?}: {}", c.rows, c.detail);
            }
        }
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(s, "time {t:.1} ms");
    }
    s
}

pub fn render_aggregate(a: &Aggregate) -> String {
    let mut s = String::new();
    for f in &a.failures {
        let _ = writeln!(s, "FALSE {} p={} {}", f.group, f.p, f.check);
    }
    for e in &a.errors {
        let _ = writeln!(s, "ERROR {}: {}", e.group, e.message);
    }
    for r in &a.reports {
        let fails = r.failures();
        let _ = writeln!(
            s,
            "{:<16} p={} order {:>5} classes {:>3}  {}",
            r.group,
            r.p,
            r.order,
            r.classes,
            if fails.is_empty() { "ok".to_string() } else { fails.join(", ") }
        );
    }
    let _ = writeln!(
        s,
        "{} reports, {} false verdicts, {} errors",
        a.reports.len(),
        a.failures.len(),
        a.errors.len()
    );
    s
}
