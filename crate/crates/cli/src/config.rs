//! The job file: one JSON object describing the complete intersection and
//! what to compute.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::sync::Arc;

use ciperiod_core::operators::DworkData;
use ciperiod_core::polyparse::parse;
use ciperiod_core::{SuperElement, VariableContext};

use crate::error::{CliError, ErrorKind};

pub const DEFAULT_ORDER: u32 = 6;

/// Only the canonical monomial order is implemented.
pub const CANONICAL_ORDER: &str = "canonical";

/// Where each report goes when `--out` is absent; unset means stdout.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub basis: Option<PathBuf>,
    pub reduce: Option<PathBuf>,
    pub deform: Option<PathBuf>,
    pub transport: Option<PathBuf>,
    pub verify: Option<PathBuf>,
    /// Presentation document written by `basis`.
    pub presentation: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct JobConfig {
    pub n: usize,
    pub k: usize,
    pub degrees: Vec<u32>,
    #[serde(rename = "G")]
    pub g: Vec<String>,
    #[serde(rename = "H", default)]
    pub h: Option<Vec<String>>,
    #[serde(default = "default_order")]
    pub truncation_order: u32,
    #[serde(default)]
    pub monomial_order_override: Option<String>,
    /// Charge factor override, used only when `c_G != 0`.
    #[serde(rename = "h", default)]
    pub factor: Option<String>,
    #[serde(default)]
    pub outputs: Outputs,
}

fn default_order() -> u32 {
    DEFAULT_ORDER
}

/// A checked job: every polynomial parsed against its context.
#[derive(Clone, Debug)]
pub struct Problem {
    pub dwork: DworkData,
    pub h: Option<Vec<SuperElement>>,
    pub factor: Option<SuperElement>,
    pub order: u32,
}

impl Problem {
    pub fn context(&self) -> &Arc<VariableContext> {
        self.dwork.context()
    }
}

fn parse_in(ctx: &Arc<VariableContext>, label: &str, text: &str) -> Result<SuperElement, CliError> {
    parse(text, ctx).map_err(|e| CliError::new(ErrorKind::Parse, format!("{label}: {e}")))
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }

    /// Arity and degree coherence, then parsing; nothing expensive runs here.
    pub fn problem(&self) -> Result<Problem, CliError> {
        if self.k != self.degrees.len() {
            return Err(CliError::config(format!(
                "k = {} but {} degrees given",
                self.k,
                self.degrees.len()
            )));
        }
        if self.g.len() != self.k {
            return Err(CliError::config(format!(
                "k = {} but {} polynomials in G",
                self.k,
                self.g.len()
            )));
        }
        if let Some(h) = &self.h {
            if h.len() != self.k {
                return Err(CliError::config(format!(
                    "k = {} but {} polynomials in H",
                    self.k,
                    h.len()
                )));
            }
        }
        if self.truncation_order == 0 {
            return Err(CliError::config("truncationOrder must be at least 1"));
        }
        if let Some(o) = &self.monomial_order_override {
            if o != CANONICAL_ORDER {
                return Err(CliError::config(format!(
                    "unsupported monomial order {o:?}; only {CANONICAL_ORDER:?} is available"
                )));
            }
        }
        let ctx =
            Arc::new(VariableContext::new(self.n, self.degrees.clone()).map_err(|e| CliError::config(e.to_string()))?);
        let g = self
            .g
            .iter()
            .enumerate()
            .map(|(i, s)| parse_in(&ctx, &format!("G[{i}]"), s))
            .collect::<Result<Vec<_>, _>>()?;
        let dwork = DworkData::new(&ctx, g)?;
        let h = match &self.h {
            None => None,
            Some(h) => Some(
                h.iter()
                    .enumerate()
                    .map(|(i, s)| parse_in(&ctx, &format!("H[{i}]"), s))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let factor = self.factor.as_deref().map(|s| parse_in(&ctx, "h", s)).transpose()?;
        Ok(Problem {
            dwork,
            h,
            factor,
            order: self.truncation_order,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBIC: &str = r#"{"n": 2, "k": 1, "degrees": [3], "G": ["x0^3 + x1^3 + x2^3"]}"#;

    #[test]
    fn defaults() {
        let c = JobConfig::from_json(CUBIC).unwrap();
        assert_eq!(c.truncation_order, 6);
        assert_eq!(c.h, None);
        assert_eq!(c.outputs, Outputs::default());
        let p = c.problem().unwrap();
        assert_eq!(p.context().background_charge(), 0);
    }

    #[test]
    fn h_and_capital_h_are_distinct() {
        let c = JobConfig::from_json(
            r#"{"n": 4, "k": 1, "degrees": [5], "G": ["x0^5+x1^5+x2^5+x3^5+x4^5"], "H": ["x0*x1*x2*x3*x4"], "h": "x0^0"}"#,
        )
        .unwrap();
        assert_eq!(c.h.as_deref(), Some(&["x0*x1*x2*x3*x4".to_string()][..]));
        assert_eq!(c.factor.as_deref(), Some("x0^0"));
    }

    #[test]
    fn coherence_errors() {
        let bad = [
            r#"{"n": 2, "k": 2, "degrees": [3], "G": ["x0^3"]}"#,
            r#"{"n": 2, "k": 1, "degrees": [3], "G": []}"#,
            r#"{"n": 2, "k": 1, "degrees": [3], "G": ["x0^3"], "H": []}"#,
            r#"{"n": 2, "k": 1, "degrees": [3], "G": ["x0^3"], "truncationOrder": 0}"#,
            r#"{"n": 2, "k": 1, "degrees": [3], "G": ["x0^3"], "monomialOrderOverride": "lex"}"#,
            r#"{"n": 2, "k": 1, "degrees": [3], "G": ["x0^2"]}"#,
        ];
        for text in bad {
            let e = JobConfig::from_json(text).and_then(|c| c.problem()).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{text}: {e}");
        }
        let e = JobConfig::from_json(r#"{"n": 2, "k": 1, "degrees": [3], "G": ["x0 x1"]}"#)
            .unwrap()
            .problem()
            .unwrap_err();
        assert_eq!(e.kind, ErrorKind::Parse);
        assert!(JobConfig::from_json(r#"{"n": 2, "k": 1, "degrees": [3], "G": [], "extra": 1}"#).is_err());
    }
}
