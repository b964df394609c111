//! Report types. JSON rationals are always `"p/q"`, integers included.

use serde::Serialize;
use std::fmt::Write;

use ciperiod_core::deformation::PeriodMatrix;
use ciperiod_core::linalg::Matrix;
use ciperiod_core::superalgebra::scalar::format_scalar;
use ciperiod_core::verify::VerifyReport;
use ciperiod_core::{Scalar, SuperElement};

pub fn rational(q: &Scalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rationals(v: &[Scalar]) -> Vec<String> {
    v.iter().map(rational).collect()
}

fn matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| rationals(r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WeightGroup {
    pub weight: u32,
    pub monomials: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BasisReport {
    #[serde(rename = "cG")]
    pub c_g: i64,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub by_weight: Vec<WeightGroup>,
    pub hodge: Vec<usize>,
    /// Cumulative counts by weight.
    pub filtration: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateTerm {
    pub q: Vec<u32>,
    pub eta: Vec<usize>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub rendered: String,
    pub terms: Vec<CertificateTerm>,
}

impl Certificate {
    pub fn of(a: &SuperElement) -> Self {
        let terms = a
            .terms()
            .map(|(m, c)| {
                let r = m.to_record();
                CertificateTerm {
                    q: r.q,
                    eta: r.eta,
                    coefficient: rational(c),
                }
            })
            .collect();
        Self {
            rendered: ciperiod_core::polyparse::render(a),
            terms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReduceReport {
    pub input: String,
    pub basis: Vec<String>,
    pub coeffs: Vec<String>,
    pub certificate: Certificate,
    #[serde(skip)]
    pub exact_coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesEntry {
    /// 1-based, as in `T^rho`.
    pub rho: usize,
    pub exponent: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LadderStep {
    pub order: usize,
    pub matrix: Vec<Vec<String>>,
}

impl LadderStep {
    pub fn new(order: usize, m: &Matrix) -> Self {
        Self {
            order,
            matrix: matrix(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeformReport {
    #[serde(rename = "cG")]
    pub c_g: i64,
    pub order: u32,
    pub factor: String,
    pub u_basis: Vec<String>,
    /// 1-based positions of the `y_i H_i F` entries.
    pub i_prime: Vec<usize>,
    pub series: Vec<SeriesEntry>,
    pub d_ladder: Vec<LadderStep>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TransportStep {
    pub order: usize,
    pub omega: serde_json::Value,
    #[serde(skip)]
    pub matrix: PeriodMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TransportReport {
    pub exact: bool,
    pub size: usize,
    pub ladder: Vec<TransportStep>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Report {
    Basis(BasisReport),
    Reduce(ReduceReport),
    Deform(DeformReport),
    Transport(TransportReport),
    Verify(VerifyReport),
}

impl Report {
    /// A failed verification still yields a report but a nonzero exit.
    pub fn failed(&self) -> bool {
        matches!(self, Report::Verify(v) if !v.passed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Basis(r) => {
                let _ = writeln!(s, "c_G = {}", r.c_g);
                let _ = writeln!(s, "dimension {}", r.dimension);
                let _ = writeln!(s, "hodge {:?}", r.hodge);
                let _ = writeln!(s, "filtration {:?}", r.filtration);
                for g in &r.by_weight {
                    let _ = writeln!(s, "weight {}: {}", g.weight, g.monomials.join(", "));
                }
            }
            Report::Reduce(r) => {
                let _ = writeln!(s, "input {}", r.input);
                for (i, (b, c)) in r.basis.iter().zip(&r.exact_coeffs).enumerate() {
                    let _ = writeln!(s, "e{} = {b}: {}", i + 1, format_scalar(c));
                }
                let _ = writeln!(s, "certificate {}", r.certificate.rendered);
            }
            Report::Deform(r) => {
                let _ = writeln!(s, "c_G = {}, order {}", r.c_g, r.order);
                let _ = writeln!(s, "factor {}", r.factor);
                for (i, u) in r.u_basis.iter().enumerate() {
                    let mark = if r.i_prime.contains(&(i + 1)) { " (I')" } else { "" };
                    let _ = writeln!(s, "u{} = {u}{mark}", i + 1);
                }
                for e in &r.series {
                    let _ = writeln!(s, "T^{} t^{:?}: {}", e.rho, e.exponent, e.coefficient);
                }
                for step in &r.d_ladder {
                    let _ = writeln!(s, "D_{}:", step.order);
                    for row in &step.matrix {
                        let _ = writeln!(s, "  [{}]", row.join(", "));
                    }
                }
            }
            Report::Transport(r) => {
                let _ = writeln!(
                    s,
                    "{} transport, size {}",
                    if r.exact { "exact" } else { "floating" },
                    r.size
                );
                for step in &r.ladder {
                    let _ = writeln!(s, "order {}:", step.order);
                    for row in step.matrix.rows() {
                        let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
                        let _ = writeln!(s, "  [{}]", parts.join(", "));
                    }
                }
            }
            Report::Verify(r) => {
                let _ = writeln!(s, "seed {}, {} iterations", r.seed, r.iterations);
                for f in &r.families {
                    match &f.failure {
                        None => {
                            let _ = writeln!(s, "PASS {} ({} checks)", f.name, f.checks);
                        }
                        Some(c) => {
                            let _ = writeln!(s, "FAIL {} after {} checks: {c}", f.name, f.checks);
                        }
                    }
                }
            }
        }
        s
    }
}
