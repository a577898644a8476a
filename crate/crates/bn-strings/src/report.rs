//! The report document: a serializable mirror of one verification run.
//! The structured form is the contract — stable field order, sorted lists,
//! group orders as decimal strings — and identical runs serialize
//! byte-identically. Timings are attached only on request, since they vary
//! from run to run. Text output is a rendering of the same document and
//! never carries information absent from it.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::verify::{
    CollapseWitness, FailureWitness, QuotientVerdict, UnravelledReport, VerificationReport,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportDocument {
    pub tool_version: String,
    pub family: String,
    pub n: usize,
    pub rank: usize,
    pub degree: usize,
    pub group_order: String,
    pub ambient: Option<AmbientDoc>,
    pub schlafli: Vec<u64>,
    pub cstring: Vec<CStringDoc>,
    pub parabolic_fingerprints: Vec<ParabolicDoc>,
    pub identities: Vec<IdentityDoc>,
    pub unravelled: Option<UnravelledDoc>,
    pub expected_unravelled: Option<bool>,
    pub all_passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<PhaseDoc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AmbientDoc {
    pub n: usize,
    pub expected_order: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessDoc {
    pub j_set: Vec<usize>,
    pub k_set: Vec<usize>,
    pub element: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CStringDoc {
    pub method: String,
    pub is_cstring: bool,
    pub failure_witness: Option<WitnessDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrderCountDoc {
    pub element_order: u64,
    pub count: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ParabolicDoc {
    pub indices: Vec<usize>,
    pub order: String,
    pub center_order: String,
    pub derived_order: String,
    pub element_orders: Option<Vec<OrderCountDoc>>,
    pub reference: String,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdentityDoc {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CollapseDoc {
    pub kind: String,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuotientDoc {
    pub label: String,
    pub expected_index: String,
    pub verdict: String,
    pub collapse: Option<CollapseDoc>,
    pub failure_witness: Option<WitnessDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct UnravelledDoc {
    pub checks: Vec<QuotientDoc>,
    pub unravelled: bool,
    pub assumption: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PhaseDoc {
    pub phase: String,
    pub seconds: f64,
}

fn witness_doc(witness: &FailureWitness) -> WitnessDoc {
    WitnessDoc {
        j_set: witness.j_set.clone(),
        k_set: witness.k_set.clone(),
        element: witness.element.format_cycles(),
    }
}

fn unravelled_doc(report: &UnravelledReport) -> UnravelledDoc {
    UnravelledDoc {
        checks: report
            .checks
            .iter()
            .map(|c| {
                let (collapse, failure_witness) = match &c.verdict {
                    QuotientVerdict::Collapsed(CollapseWitness::TrivialImage { index }) => (
                        Some(CollapseDoc {
                            kind: "trivial-image".to_owned(),
                            indices: vec![*index],
                        }),
                        None,
                    ),
                    QuotientVerdict::Collapsed(CollapseWitness::EqualImages { left, right }) => (
                        Some(CollapseDoc {
                            kind: "equal-images".to_owned(),
                            indices: vec![*left, *right],
                        }),
                        None,
                    ),
                    QuotientVerdict::NotCString(w) => (None, Some(witness_doc(w))),
                    QuotientVerdict::IsCString => (None, None),
                };
                QuotientDoc {
                    label: c.label.as_str().to_owned(),
                    expected_index: c.expected_index.to_string(),
                    verdict: c.verdict.token().to_owned(),
                    collapse,
                    failure_witness,
                }
            })
            .collect(),
        unravelled: report.unravelled,
        assumption: report.assumption.to_owned(),
    }
}

impl ReportDocument {
    pub fn from_report(report: &VerificationReport, include_timing: bool) -> Self {
        ReportDocument {
            tool_version: TOOL_VERSION.to_owned(),
            family: report.family.as_str().to_owned(),
            n: report.n,
            rank: report.rank,
            degree: report.degree,
            group_order: report.group_order.to_string(),
            ambient: report.ambient.map(|a| AmbientDoc {
                n: a.n,
                expected_order: a.expected_order.to_string(),
                matches: a.matches,
            }),
            schlafli: report.schlafli.entries().to_vec(),
            cstring: report
                .cstring
                .iter()
                .map(|v| CStringDoc {
                    method: v.method.as_str().to_owned(),
                    is_cstring: v.is_cstring,
                    failure_witness: v.failure_witness.as_ref().map(witness_doc),
                })
                .collect(),
            parabolic_fingerprints: report
                .parabolics
                .iter()
                .map(|p| ParabolicDoc {
                    indices: p.indices.clone(),
                    order: p.fingerprint.order.to_string(),
                    center_order: p.fingerprint.center_order.to_string(),
                    derived_order: p.fingerprint.derived_order.to_string(),
                    element_orders: p.fingerprint.element_orders.as_ref().map(|h| {
                        h.iter()
                            .map(|(&element_order, &count)| OrderCountDoc {
                                element_order,
                                count: count.to_string(),
                            })
                            .collect()
                    }),
                    reference: p.reference.clone(),
                    consistent: p.consistent,
                })
                .collect(),
            identities: report
                .identities
                .iter()
                .map(|c| IdentityDoc {
                    name: c.name.to_owned(),
                    holds: c.holds,
                })
                .collect(),
            unravelled: report.unravelled.as_ref().map(unravelled_doc),
            expected_unravelled: report.expected_unravelled,
            all_passed: report.all_passed(),
            timing: include_timing.then(|| {
                report
                    .timings
                    .iter()
                    .map(|t| PhaseDoc {
                        phase: t.phase.to_owned(),
                        seconds: t.seconds,
                    })
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("the document serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Renders the document for a terminal. Every line restates a field of
    /// the structured form.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "bn-strings {}", self.tool_version);
        let _ = writeln!(
            w,
            "family {}, n = {} (rank {}, degree {})",
            self.family, self.n, self.rank, self.degree
        );
        let _ = writeln!(w, "group order {}", self.group_order);
        if let Some(a) = &self.ambient {
            let _ = writeln!(
                w,
                "ambient B_{}: expected order {} — {}",
                a.n,
                a.expected_order,
                if a.matches { "match" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(w, "schlafli {}", format_list(&self.schlafli));
        for v in &self.cstring {
            match &v.failure_witness {
                None => {
                    let _ = writeln!(
                        w,
                        "cstring ({}): {}",
                        v.method,
                        if v.is_cstring { "yes" } else { "no" }
                    );
                }
                Some(witness) => {
                    let _ = writeln!(
                        w,
                        "cstring ({}): no — J={} K={} share {}",
                        v.method,
                        format_set(&witness.j_set),
                        format_set(&witness.k_set),
                        witness.element
                    );
                }
            }
        }
        for p in &self.parabolic_fingerprints {
            let _ = writeln!(
                w,
                "parabolic {}: order {}, center {}, derived {} vs {} — {}",
                format_set(&p.indices),
                p.order,
                p.center_order,
                p.derived_order,
                p.reference,
                if p.consistent {
                    "consistent"
                } else {
                    "INCONSISTENT"
                }
            );
        }
        for c in &self.identities {
            let _ = writeln!(
                w,
                "identity {}: {}",
                c.name,
                if c.holds { "holds" } else { "FAILS" }
            );
        }
        if let Some(u) = &self.unravelled {
            let _ = writeln!(
                w,
                "unravelled: {}",
                if u.unravelled { "yes" } else { "no" }
            );
            for c in &u.checks {
                let _ = write!(
                    w,
                    "  {} (index {}): {}",
                    c.label, c.expected_index, c.verdict
                );
                if let Some(collapse) = &c.collapse {
                    let _ = write!(
                        w,
                        " ({} at {})",
                        collapse.kind,
                        format_set(&collapse.indices)
                    );
                }
                if let Some(witness) = &c.failure_witness {
                    let _ = write!(
                        w,
                        " (J={} K={} share {})",
                        format_set(&witness.j_set),
                        format_set(&witness.k_set),
                        witness.element
                    );
                }
                let _ = writeln!(w);
            }
            let _ = writeln!(w, "  assumption: {}", u.assumption);
        }
        if let Some(expected) = self.expected_unravelled {
            let _ = writeln!(
                w,
                "expected unravelled: {}",
                if expected { "yes" } else { "no" }
            );
        }
        if let Some(timing) = &self.timing {
            for t in timing {
                let _ = writeln!(w, "phase {}: {:.3}s", t.phase, t.seconds);
            }
        }
        let _ = writeln!(
            w,
            "overall: {}",
            if self.all_passed { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// The `unravel` command's document: just the quotient verdicts and the
/// overall decision, without the rest of a verification report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct UnravelDocument {
    pub tool_version: String,
    pub family: String,
    pub n: usize,
    pub unravelled: UnravelledDoc,
    pub expected_unravelled: Option<bool>,
}

impl UnravelDocument {
    /// Extracts the unravel portion of a verification report, which must
    /// have been produced without `skip_unravel`.
    pub fn from_report(report: &VerificationReport) -> Self {
        let unravelled = report
            .unravelled
            .as_ref()
            .expect("the unravel command never skips the quotient checks");
        UnravelDocument {
            tool_version: TOOL_VERSION.to_owned(),
            family: report.family.as_str().to_owned(),
            n: report.n,
            unravelled: unravelled_doc(unravelled),
            expected_unravelled: report.expected_unravelled,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("the document serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "bn-strings {}", self.tool_version);
        let _ = writeln!(w, "family {}, n = {}", self.family, self.n);
        let _ = writeln!(
            w,
            "unravelled: {}",
            if self.unravelled.unravelled {
                "yes"
            } else {
                "no"
            }
        );
        for c in &self.unravelled.checks {
            let _ = writeln!(
                w,
                "  {} (index {}): {}",
                c.label, c.expected_index, c.verdict
            );
        }
        if !self.unravelled.unravelled {
            let offending: Vec<&str> = self
                .unravelled
                .checks
                .iter()
                .filter(|c| c.verdict == "quotient-is-cstring")
                .map(|c| c.label.as_str())
                .collect();
            let _ = writeln!(w, "obstruction: {}", offending.join(", "));
        }
        let _ = writeln!(w, "assumption: {}", self.unravelled.assumption);
        if let Some(expected) = self.expected_unravelled {
            let _ = writeln!(
                w,
                "expected unravelled: {}",
                if expected { "yes" } else { "no" }
            );
        }
        out
    }
}

fn format_list(entries: &[u64]) -> String {
    let inner = entries
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("[{inner}]")
}

fn format_set(indices: &[usize]) -> String {
    let inner = indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("{{{inner}}}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;
    use crate::verify::{verify_theorem, verify_theorem_with, MethodSelection, VerifyOptions};

    #[test]
    fn documents_round_trip() {
        let report = verify_theorem(Family::Thm12, 5).unwrap();
        for include_timing in [false, true] {
            let doc = ReportDocument::from_report(&report, include_timing);
            let json = doc.to_json();
            let back = ReportDocument::from_json(&json).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), json);
        }
    }

    #[test]
    fn identical_runs_serialize_byte_identically() {
        let options = VerifyOptions {
            method: MethodSelection::Both,
            skip_unravel: false,
        };
        let a = verify_theorem_with(Family::Thm12, 5, &options).unwrap();
        let b = verify_theorem_with(Family::Thm12, 5, &options).unwrap();
        let json_a = ReportDocument::from_report(&a, false).to_json();
        let json_b = ReportDocument::from_report(&b, false).to_json();
        assert_eq!(json_a, json_b);
    }

    #[test]
    fn orders_are_decimal_strings() {
        let report = verify_theorem(Family::Thm12, 5).unwrap();
        let doc = ReportDocument::from_report(&report, false);
        assert_eq!(doc.group_order, "3840");
        assert_eq!(doc.ambient.as_ref().unwrap().expected_order, "3840");
        assert!(doc
            .parabolic_fingerprints
            .iter()
            .any(|p| p.order == "240" && p.center_order == "2"));
    }

    #[test]
    fn text_rendering_restates_the_document() {
        let report = verify_theorem(Family::Thm12, 5).unwrap();
        let doc = ReportDocument::from_report(&report, false);
        let text = doc.render_text();
        assert!(text.contains("schlafli [6, 6, 4]"));
        assert!(text.contains("group order 3840"));
        assert!(text.contains("unravelled: no"));
        assert!(text.contains("omega0 (index 1920): quotient-is-cstring"));
        assert!(text.contains("overall: PASS"));
        assert!(!text.contains("phase "));

        let timed = ReportDocument::from_report(&report, true);
        assert!(timed.render_text().contains("phase construction:"));
    }

    #[test]
    fn timing_is_attached_only_on_request() {
        let report = verify_theorem(Family::Thm12, 5).unwrap();
        let bare = ReportDocument::from_report(&report, false);
        assert!(bare.timing.is_none());
        assert!(!bare.to_json().contains("\"timing\""));
        let timed = ReportDocument::from_report(&report, true);
        let phases: Vec<&str> = timed
            .timing
            .as_ref()
            .unwrap()
            .iter()
            .map(|t| t.phase.as_str())
            .collect();
        assert_eq!(
            phases,
            vec![
                "construction",
                "cstring-full",
                "cstring-inductive",
                "parabolics",
                "identities",
                "unravel"
            ]
        );
    }
}
