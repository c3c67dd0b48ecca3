//! Machine-readable verification reports.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::build::ExpectedK;
use crate::equi::{decide, enumerate_duples, CompensationCertificate, EdgeFaceDuple, GraphError};
use crate::kernel::{Tolerance, Vec3};
use crate::poly::{FaceId, Polyhedron, VertexId};
use crate::shadow::{measure_k, ShadowError, Verdict};

/// A duple as ((edge endpoints), face), endpoints in ascending order.
pub type DupleRef = ((VertexId, VertexId), FaceId);

pub fn duple_ref(p: &Polyhedron, d: &EdgeFaceDuple) -> DupleRef {
    let [a, b] = p.edge(d.edge).vertices;
    ((a, b), d.face)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateJson {
    Certificate(Vec<(DupleRef, DupleRef)>),
    Refutation { component: Vec<DupleRef>, cycle: bool },
}

impl CertificateJson {
    pub fn new(p: &Polyhedron, c: &CompensationCertificate) -> Self {
        match c {
            CompensationCertificate::Certificate { pairs } => {
                CertificateJson::Certificate(pairs.iter().map(|(x, y)| (duple_ref(p, x), duple_ref(p, y))).collect())
            }
            CompensationCertificate::Refutation { component, cycle } => CertificateJson::Refutation {
                component: component.iter().map(|d| duple_ref(p, d)).collect(),
                cycle: *cycle,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub direction: Vec3,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadowSummary {
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[Sample; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub duples: usize,
    #[serde(flatten)]
    pub certificate: CertificateJson,
    pub shadow: ShadowSummary,
    pub expected_k: Option<ExpectedK>,
    pub pass: bool,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Shadow(#[from] ShadowError),
}

/// Run both the recognizer and the sampled shadow count.
pub fn verify(
    name: &str,
    p: &Polyhedron,
    expected_k: Option<ExpectedK>,
    samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<VerifyReport, VerifyError> {
    let cert = decide(p, tol)?;
    let shadow = measure_k(p, samples, seed, tol)?;
    let summary = match shadow.verdict {
        Verdict::ConstantK(k) => ShadowSummary { samples, k: Some(k), witness: None },
        Verdict::NonConstant { witness: [a, b] } => ShadowSummary {
            samples,
            k: None,
            witness: Some([Sample { direction: a.0, count: a.1 }, Sample { direction: b.0, count: b.1 }]),
        },
    };
    let pass = cert.is_certificate()
        && match (summary.k, expected_k) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(k), Some(ExpectedK::K(e))) => k == e,
            (Some(_), Some(ExpectedK::NotEquiprojective)) => false,
        };
    Ok(VerifyReport {
        name: name.to_string(),
        duples: enumerate_duples(p).len(),
        certificate: CertificateJson::new(p, &cert),
        shadow: summary,
        expected_k,
        pass,
    })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "solid:       {}", self.name)?;
        writeln!(f, "duples:      {}", self.duples)?;
        match &self.certificate {
            CertificateJson::Certificate(pairs) => {
                writeln!(f, "recognizer:  certificate, {} compensating pairs", pairs.len())?
            }
            CertificateJson::Refutation { component, cycle } => writeln!(
                f,
                "recognizer:  refuted, odd {} of {} duples starting at {:?}",
                if *cycle { "cycle" } else { "path" },
                component.len(),
                component.first()
            )?,
        }
        match (&self.shadow.k, &self.shadow.witness) {
            (Some(k), _) => writeln!(f, "shadow:      k = {k} over {} directions", self.shadow.samples)?,
            (None, Some([a, b])) => writeln!(
                f,
                "shadow:      not constant: {} edges along {:?}, {} edges along {:?}",
                a.count, a.direction, b.count, b.direction
            )?,
            (None, None) => writeln!(f, "shadow:      no verdict")?,
        }
        match self.expected_k {
            Some(ExpectedK::K(k)) => writeln!(f, "expected:    k = {k}")?,
            Some(ExpectedK::NotEquiprojective) => writeln!(f, "expected:    not equiprojective")?,
            None => {}
        }
        write!(f, "result:      {}", if self.pass { "PASS" } else { "FAIL" })
    }
}
