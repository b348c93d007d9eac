//! Command results and their two renderings.

use std::collections::BTreeMap;

use kohnsym::algebra::StructureConstants;
use kohnsym::poly::rat_string;
use kohnsym::{BasisTag, Mono, Rat, VField};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub xi: String,
    pub phi: String,
    pub tau: String,
    pub alpha: String,
    pub beta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl GeneratorRecord {
    pub fn new(name: impl Into<String>, v: &VField, verified: Option<bool>) -> Self {
        let [xi, phi, tau, alpha, beta] = v.components().map(|c| c.canonical_string());
        GeneratorRecord {
            name: name.into(),
            xi,
            phi,
            tau,
            alpha,
            beta,
            verified,
        }
    }

    fn text(&self) -> String {
        let mark = match self.verified {
            Some(true) => "  [verified]",
            Some(false) => "  [NOT a symmetry]",
            None => "",
        };
        format!(
            "{}: xi = {}; phi = {}; tau = {}; alpha = {}; beta = {}{mark}",
            self.name, self.xi, self.phi, self.tau, self.alpha, self.beta
        )
    }
}

#[derive(Debug, Serialize)]
pub struct DefectTerm {
    pub tag: String,
    pub monomial: String,
    pub coeff: String,
}

pub fn defect_terms(cert: &[(BasisTag, Mono, Rat)]) -> Vec<DefectTerm> {
    cert.iter()
        .map(|(t, m, c)| DefectTerm {
            tag: t.to_string(),
            monomial: m.to_string(),
            coeff: rat_string(c),
        })
        .collect()
}

/// One JSON document per invocation; field order is the declaration order.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub f: Option<String>,
    pub degree: Option<u32>,
    pub dimension: Option<usize>,
    pub generators: Vec<GeneratorRecord>,
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub defect: Vec<DefectTerm>,
    #[serde(flatten)]
    pub extra: BTreeMap<&'static str, Value>,
    /// Human-readable lines printed after the generators.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            f: None,
            degree: None,
            dimension: None,
            generators: Vec::new(),
            structure_constants: Vec::new(),
            defect: Vec::new(),
            extra: BTreeMap::new(),
            lines: Vec::new(),
        }
    }

    pub fn set_constants(&mut self, sc: &StructureConstants) {
        self.structure_constants = sc
            .constants
            .iter()
            .filter(|((i, j, _), _)| i < j)
            .map(|((i, j, k), c)| (*i, *j, *k, rat_string(c)))
            .collect();
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn text(&self) -> String {
        let mut out = Vec::new();
        let mut head = vec![self.command.to_string()];
        if let Some(f) = &self.f {
            head.push(format!("f = {f}"));
        }
        if let Some(d) = self.degree {
            head.push(format!("degree {d}"));
        }
        if let Some(n) = self.dimension {
            head.push(format!("dimension {n}"));
        }
        out.push(head.join(", "));
        out.extend(self.generators.iter().map(GeneratorRecord::text));
        out.extend(self.lines.iter().cloned());
        if !self.defect.is_empty() {
            out.push("defect:".into());
            for d in &self.defect {
                out.push(format!("  [{}] {} : {}", d.tag, d.monomial, d.coeff));
            }
        }
        out.join("\n")
    }
}
