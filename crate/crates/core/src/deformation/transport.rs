use num_traits::{One, Signed, ToPrimitive};
use serde_json::Value;
use std::fmt;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::superalgebra::scalar::{format_scalar, parse_scalar};
use crate::superalgebra::Scalar;

/// An entry of a user-supplied period matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Exact(Scalar),
    Float(f64),
}

impl Entry {
    fn to_f64(&self) -> f64 {
        match self {
            Entry::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Entry::Float(x) => *x,
        }
    }

    /// JSON form: `"p/q"` for exact entries, a number otherwise.
    pub fn to_json(&self) -> Value {
        match self {
            Entry::Exact(q) => Value::String(format_scalar(q)),
            Entry::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
        }
    }

    fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = || Error::InvalidInput(format!("unreadable matrix entry {v}"));
        match v {
            Value::String(s) => match parse_scalar(s) {
                Ok(q) => Ok(Entry::Exact(q)),
                Err(_) => {
                    let x: f64 = s.trim().parse().map_err(|_| bad())?;
                    x.is_finite().then_some(Entry::Float(x)).ok_or_else(bad)
                }
            },
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(Entry::Exact(Scalar::from_integer(i.into()))),
                None => n.as_f64().filter(|x| x.is_finite()).map(Entry::Float).ok_or_else(bad),
            },
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Exact(q) => write!(f, "{}", format_scalar(q)),
            Entry::Float(x) => write!(f, "{x:e}"),
        }
    }
}

/// A square period matrix: row `beta` is a basis element, column `alpha` a cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMatrix {
    rows: Vec<Vec<Entry>>,
}

impl PeriodMatrix {
    pub fn new(rows: Vec<Vec<Entry>>) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("period matrix must be square and nonempty".into()));
        }
        Ok(Self { rows })
    }

    pub fn exact(m: &Matrix) -> Result<Self, Error> {
        Self::new(
            m.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(Entry::Exact).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn is_exact(&self) -> bool {
        self.rows.iter().flatten().all(|e| matches!(e, Entry::Exact(_)))
    }

    /// Reads a JSON array of rows whose entries are `"p/q"` or decimal
    /// strings (exact) or JSON numbers (exact if integral).
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::new(
            rows_of(&v)?
                .iter()
                .map(|r| r.iter().map(Entry::from_json).collect())
                .collect::<Result<_, _>>()?,
        )
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Array(r.iter().map(Entry::to_json).collect()))
                .collect(),
        )
    }
}

fn rows_of(v: &Value) -> Result<Vec<&Vec<Value>>, Error> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of rows".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::InvalidInput("expected each row to be an array".into()))
        })
        .collect()
}

/// Base change between integral cycle bases.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseChange {
    matrix: Matrix,
    integral: bool,
}

impl BaseChange {
    /// When `integral`, entries must be integers and the determinant `+-1`.
    pub fn new(matrix: Matrix, integral: bool) -> Result<Self, Error> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Dimension("base change must be square and nonempty".into()));
        }
        if integral {
            if matrix.to_rows().iter().flatten().any(|q| !q.is_integer()) {
                return Err(Error::InvalidInput(
                    "integral base change has a non-integer entry".into(),
                ));
            }
            let det = matrix.determinant()?;
            if det.abs() != Scalar::one() {
                return Err(Error::InvalidInput(format!(
                    "integral base change has determinant {}, not +-1",
                    format_scalar(&det)
                )));
            }
        }
        Ok(Self { matrix, integral })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: Matrix::identity(n),
            integral: true,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    /// Accepts a bare array of rows (integral) or
    /// `{"integral": bool, "matrix": [[..]]}` with exact entries.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let (rows, integral) = match &v {
            Value::Object(map) => {
                if map.keys().any(|k| k != "integral" && k != "matrix") {
                    return Err(Error::InvalidInput("unknown field in base change".into()));
                }
                let integral = match map.get("integral") {
                    None => true,
                    Some(Value::Bool(b)) => *b,
                    Some(_) => return Err(Error::InvalidInput("`integral` must be a boolean".into())),
                };
                let m = map
                    .get("matrix")
                    .ok_or_else(|| Error::InvalidInput("missing `matrix`".into()))?;
                (rows_of(m)?, integral)
            }
            _ => (rows_of(&v)?, true),
        };
        let mut exact = Vec::with_capacity(rows.len());
        for r in rows {
            let mut row = Vec::with_capacity(r.len());
            for e in r {
                match Entry::from_json(e)? {
                    Entry::Exact(q) => row.push(q),
                    Entry::Float(_) => return Err(Error::InvalidInput("base change entries must be exact".into())),
                }
            }
            exact.push(row);
        }
        Self::new(Matrix::from_rows(exact)?, integral)
    }
}

/// `D * Omega * B`, exact when `Omega` is, floating otherwise.
pub fn period_transport(d: &Matrix, omega: &PeriodMatrix, b: &BaseChange) -> Result<PeriodMatrix, Error> {
    let n = omega.size();
    if !d.is_square() || d.rows() != n || b.matrix.rows() != n {
        return Err(Error::Dimension(format!(
            "D is {}x{}, Omega is {n}x{n}, B is {}x{}",
            d.rows(),
            d.cols(),
            b.matrix.rows(),
            b.matrix.cols()
        )));
    }
    if omega.is_exact() {
        let rows = omega
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        Entry::Exact(q) => q.clone(),
                        Entry::Float(_) => unreachable!("checked exact"),
                    })
                    .collect()
            })
            .collect();
        let product = d.mul(&Matrix::from_rows(rows)?)?.mul(&b.matrix)?;
        return PeriodMatrix::exact(&product);
    }
    let to_f = |m: &Matrix| -> Vec<Vec<f64>> {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    };
    let mul = |a: &[Vec<f64>], c: &[Vec<f64>]| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * c[k][j]).sum()).collect())
            .collect()
    };
    let om: Vec<Vec<f64>> = omega
        .rows
        .iter()
        .map(|r| r.iter().map(Entry::to_f64).collect())
        .collect();
    let product = mul(&mul(&to_f(d), &om), &to_f(&b.matrix));
    PeriodMatrix::new(
        product
            .into_iter()
            .map(|r| r.into_iter().map(Entry::Float).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::scalar::{int, ratio};

    fn exact(rows: &[&[Scalar]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn exact_product() {
        let d = exact(&[&[int(1), int(0)], &[ratio(-1, 54), int(1)]]);
        let omega = PeriodMatrix::from_json(r#"[["1", "2"], [3, "4.0"]]"#).unwrap();
        assert!(omega.is_exact());
        let out = period_transport(&d, &omega, &BaseChange::identity(2)).unwrap();
        let expected = exact(&[&[int(1), int(2)], &[int(3) - ratio(1, 54), int(4) - ratio(2, 54)]]);
        assert_eq!(out, PeriodMatrix::exact(&expected).unwrap());
    }

    #[test]
    fn identity_echoes() {
        let omega = PeriodMatrix::from_json(r#"[["1/3", "-0.25"], ["7", "2/9"]]"#).unwrap();
        let out = period_transport(&Matrix::identity(2), &omega, &BaseChange::identity(2)).unwrap();
        assert_eq!(out, omega);
    }

    #[test]
    fn floating_entries() {
        let omega = PeriodMatrix::from_json(r#"[[1.5, 0], [0, "2.5e0"]]"#).unwrap();
        assert!(!omega.is_exact());
        let b = BaseChange::from_json("[[0, 1], [1, 0]]").unwrap();
        let out = period_transport(&Matrix::identity(2), &omega, &b).unwrap();
        assert_eq!(out.rows()[0], vec![Entry::Float(0.0), Entry::Float(1.5)]);
        assert_eq!(out.rows()[1], vec![Entry::Float(2.5), Entry::Float(0.0)]);
    }

    #[test]
    fn size_and_unimodularity_errors() {
        assert!(PeriodMatrix::from_json(r#"[[1, 2], [3, 4], [5, 6]]"#).is_err());
        assert!(PeriodMatrix::from_json("[]").is_err());
        assert!(PeriodMatrix::from_json(r#"[["x"]]"#).is_err());
        assert!(BaseChange::from_json("[[2, 0], [0, 1]]").is_err());
        assert!(BaseChange::from_json(r#"{"integral": false, "matrix": [[2, 0], [0, 1]]}"#).is_ok());
        assert!(BaseChange::from_json(r#"[["1/2", 0], [0, 2]]"#).is_err());
        let omega = PeriodMatrix::from_json("[[1, 2], [3, 4]]").unwrap();
        assert!(period_transport(&Matrix::identity(3), &omega, &BaseChange::identity(2)).is_err());
        assert!(period_transport(&Matrix::identity(2), &omega, &BaseChange::identity(3)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let omega = PeriodMatrix::from_json(r#"[["1/3", 0.5], [2, "-7"]]"#).unwrap();
        let again = PeriodMatrix::from_json(&omega.to_json().to_string()).unwrap();
        assert_eq!(again, omega);
    }
}
