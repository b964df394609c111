//! Versioned JSON form of a [`QuotientPresentation`].

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

use super::presentation::QuotientPresentation;
use super::solver::WeightSolver;
use crate::error::Error;
use crate::operators::DworkData;
use crate::polyparse::{parse, render};
use crate::superalgebra::scalar::serde_scalar;
use crate::superalgebra::{MonomialRecord, Scalar, SuperElement, SuperMonomial, VariableContext};

pub const PRESENTATION_FORMAT: &str = "ciperiod-presentation";
pub const PRESENTATION_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub q: Vec<u32>,
    pub eta: Vec<usize>,
    #[serde(with = "serde_scalar")]
    pub coefficient: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PivotRecord {
    pub column: MonomialRecord,
    pub row: Vec<TermRecord>,
    pub preimage: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightRecord {
    pub weight: u32,
    pub complement: Vec<MonomialRecord>,
    pub pivots: Vec<PivotRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDocument {
    pub format: String,
    pub version: u32,
    pub context: VariableContext,
    pub polynomials: Vec<String>,
    pub background_charge: i64,
    pub slack: u32,
    pub basis: Vec<MonomialRecord>,
    pub weights: Vec<WeightRecord>,
}

fn terms(a: &SuperElement) -> Vec<TermRecord> {
    a.terms()
        .map(|(m, c)| {
            let MonomialRecord { q, eta } = m.to_record();
            TermRecord {
                q,
                eta,
                coefficient: c.clone(),
            }
        })
        .collect()
}

fn element(ctx: &Arc<VariableContext>, records: &[TermRecord]) -> Result<SuperElement, Error> {
    let mut out = SuperElement::zero(ctx);
    for t in records {
        let m = SuperMonomial::new(ctx, t.q.clone(), t.eta.clone())?;
        if t.coefficient.is_zero() || !out.coefficient(&m).is_zero() {
            return Err(Error::Document("zero or repeated term".into()));
        }
        out.add_term(m, t.coefficient.clone());
    }
    Ok(out)
}

impl QuotientPresentation {
    /// Snapshot of the eagerly built weights `0..=n-k+slack`.
    pub fn to_document(&self) -> PresentationDocument {
        let d = self.dwork();
        let weights = self
            .built_solvers()
            .iter()
            .map(|s| WeightRecord {
                weight: s.weight(),
                complement: s.complement().iter().map(SuperMonomial::to_record).collect(),
                pivots: s
                    .pivots()
                    .map(|(col, p)| PivotRecord {
                        column: col.to_record(),
                        row: terms(&s.row_element(d, &p.row)),
                        preimage: terms(&s.preimage_element(d, &p.preimage)),
                    })
                    .collect(),
            })
            .collect();
        PresentationDocument {
            format: PRESENTATION_FORMAT.to_string(),
            version: PRESENTATION_VERSION,
            context: self.context().as_ref().clone(),
            polynomials: d.polys().iter().map(render).collect(),
            background_charge: self.background_charge(),
            slack: self.slack(),
            basis: self.basis().iter().map(SuperMonomial::to_record).collect(),
            weights,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents always serialize")
    }

    /// Rebuilds a presentation, re-checking every stored pivot row against
    /// `Q_G` of its preimage and the spanning of the full image.
    pub fn from_document(doc: &PresentationDocument) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Document(msg.to_string());
        if doc.format != PRESENTATION_FORMAT {
            return Err(bad("unknown document format"));
        }
        if doc.version != PRESENTATION_VERSION {
            return Err(Error::Document(format!("unsupported version {}", doc.version)));
        }
        let ctx = Arc::new(VariableContext::new(doc.context.n(), doc.context.degrees().to_vec())?);
        if doc.background_charge != ctx.background_charge() {
            return Err(bad("background charge does not match the context"));
        }
        if doc.slack > 16 {
            return Err(bad("slack out of range"));
        }
        let polys = doc
            .polynomials
            .iter()
            .map(|g| parse(g, &ctx))
            .collect::<Result<Vec<_>, _>>()?;
        let d = DworkData::new(&ctx, polys)?;
        let top = ctx.dimension() as u32 + doc.slack;
        if doc.weights.len() != top as usize + 1 {
            return Err(bad("wrong number of weight records"));
        }
        let mut solvers = BTreeMap::new();
        for (w, rec) in doc.weights.iter().enumerate() {
            if rec.weight != w as u32 {
                return Err(bad("weight records out of order"));
            }
            let mut pivots = Vec::with_capacity(rec.pivots.len());
            for p in &rec.pivots {
                pivots.push((
                    SuperMonomial::from_record(&ctx, &p.column)?,
                    element(&ctx, &p.row)?,
                    element(&ctx, &p.preimage)?,
                ));
            }
            let complement = rec
                .complement
                .iter()
                .map(|m| SuperMonomial::from_record(&ctx, m))
                .collect::<Result<Vec<_>, _>>()?;
            solvers.insert(
                rec.weight,
                Arc::new(WeightSolver::from_parts(&d, rec.weight, pivots, complement)?),
            );
        }
        let p = Self::assemble(d, doc.slack, solvers)?;
        let basis: Vec<MonomialRecord> = p.basis().iter().map(SuperMonomial::to_record).collect();
        if basis != doc.basis {
            return Err(bad("basis does not match the weight complements"));
        }
        let again = p.to_document();
        if &again != doc {
            return Err(bad("document is not in canonical form"));
        }
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: PresentationDocument = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_document(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::build_presentation;

    fn cubic() -> QuotientPresentation {
        let ctx = Arc::new(VariableContext::new(2, vec![3]).unwrap());
        let d = DworkData::new(&ctx, vec![parse("x0^3 + x1^3 + x2^3", &ctx).unwrap()]).unwrap();
        build_presentation(&d).unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let p = cubic();
        let text = p.to_json();
        let q = QuotientPresentation::from_json(&text).unwrap();
        assert_eq!(q.to_json(), text);
        assert_eq!(q.basis(), p.basis());
        let f = parse("y1^2*x0^3*x1^3", p.context()).unwrap();
        assert_eq!(q.reduce(&f).unwrap(), p.reduce(&f).unwrap());
    }

    #[test]
    fn tampering_is_detected() {
        let p = cubic();
        let mut doc = p.to_document();
        doc.weights[1].pivots[0].preimage[0].coefficient = Scalar::from_integer(5.into());
        assert!(matches!(
            QuotientPresentation::from_document(&doc),
            Err(Error::Document(_))
        ));

        let mut doc = p.to_document();
        let dropped = doc.weights[1].pivots.pop().unwrap();
        doc.weights[1].complement.push(dropped.column);
        assert!(QuotientPresentation::from_document(&doc).is_err());

        let mut doc = p.to_document();
        doc.version = 9;
        assert!(QuotientPresentation::from_document(&doc).is_err());
        assert!(QuotientPresentation::from_json("{").is_err());
        assert!(QuotientPresentation::from_json("{\"format\": 1}").is_err());
    }
}
