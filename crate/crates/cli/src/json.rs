//! Serializable documents for traces, certificates, and solutions.
//!
//! Output is byte-stable across runs: every collection is ordered, every
//! value is a canonical string rendering, and nothing time- or
//! environment-dependent is ever embedded.

use std::collections::BTreeMap;

use gasing_core::derive::{DerivationTrace, Formula, Law};
use gasing_core::proofs::ProofCertificate;
use gasing_core::solver::Solution;
use gasing_core::trigexpr::SideCondition;
use serde::Serialize;

#[derive(Serialize)]
pub struct StepDoc {
    pub description: String,
    pub rule: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize)]
pub struct TraceDocument {
    pub operation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    pub steps: Vec<StepDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub side_conditions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactors: Option<BTreeMap<String, String>>,
}

fn steps_of(trace: &DerivationTrace) -> Vec<StepDoc> {
    trace
        .steps
        .iter()
        .map(|s| StepDoc {
            description: s.description.clone(),
            rule: s.rule.clone(),
            lhs: s.lhs.to_string(),
            rhs: s.rhs.to_string(),
        })
        .collect()
}

fn conditions_of(conditions: &[SideCondition]) -> Vec<String> {
    conditions.iter().map(|c| c.to_string()).collect()
}

impl TraceDocument {
    pub fn for_certificate(cert: &ProofCertificate) -> Self {
        TraceDocument {
            operation: format!("prove {}", cert.case_id),
            claim: Some(cert.claim.clone()),
            steps: steps_of(&cert.trace),
            results: vec![format!("{} = {}", cert.lhs, cert.rhs)],
            side_conditions: conditions_of(&cert.conditions),
            verdict: Some(cert.verdict.to_string()),
            cofactors: Some(
                cert.cofactors
                    .iter()
                    .map(|(a, p)| (a.to_string(), p.to_string()))
                    .collect(),
            ),
        }
    }

    pub fn for_formulas(
        operation: &str,
        formulas: &[Formula],
        trace: &DerivationTrace,
        extra_conditions: &[SideCondition],
    ) -> Self {
        let mut side_conditions = Vec::new();
        for rendered in formulas
            .iter()
            .flat_map(|f| f.conditions.iter().map(|c| c.to_string()))
            .chain(extra_conditions.iter().map(|c| c.to_string()))
        {
            if !side_conditions.contains(&rendered) {
                side_conditions.push(rendered);
            }
        }
        TraceDocument {
            operation: operation.to_string(),
            claim: None,
            steps: steps_of(trace),
            results: formulas.iter().map(|f| f.to_string()).collect(),
            side_conditions,
            verdict: None,
            cofactors: None,
        }
    }

    pub fn for_law(operation: &str, law: &Law) -> Self {
        TraceDocument {
            operation: operation.to_string(),
            claim: None,
            steps: steps_of(&law.trace),
            results: vec![format!("{} = {}", law.lhs, law.rhs)],
            side_conditions: conditions_of(&law.conditions),
            verdict: None,
            cofactors: None,
        }
    }

    pub fn for_solution(sol: &Solution) -> Self {
        TraceDocument {
            operation: format!("solve: {}", sol.problem),
            claim: None,
            steps: steps_of(&sol.trace),
            results: vec![
                format!("{}", sol.value),
                format!("~ {}", sol.value.to_float()),
            ],
            side_conditions: Vec::new(),
            verdict: None,
            cofactors: None,
        }
    }
}

/// Pretty-print one document or a batch; always newline-terminated.
pub fn render_documents(docs: &[TraceDocument]) -> String {
    let body = if docs.len() == 1 {
        serde_json::to_string_pretty(&docs[0]).expect("plain string fields cannot fail")
    } else {
        serde_json::to_string_pretty(&docs).expect("plain string fields cannot fail")
    };
    body + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use gasing_core::proofs::prove_main;

    #[test]
    fn certificate_documents_are_stable_across_renders() {
        let cert = prove_main().unwrap();
        let one = render_documents(&[TraceDocument::for_certificate(&cert)]);
        let cert_again = prove_main().unwrap();
        let two = render_documents(&[TraceDocument::for_certificate(&cert_again)]);
        assert_eq!(one, two);
        assert!(one.contains("\"verdict\": \"verified\""));
        assert!(one.ends_with('\n'));
    }

    #[test]
    fn empty_sections_are_omitted() {
        let sol = gasing_core::solver::showcase().unwrap().remove(0);
        let doc = render_documents(&[TraceDocument::for_solution(&sol)]);
        assert!(!doc.contains("side_conditions"));
        assert!(!doc.contains("cofactors"));
        assert!(doc.contains("sqrt(3)/2"));
    }
}
