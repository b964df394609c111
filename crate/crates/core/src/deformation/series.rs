use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use super::data::DeformationData;
use super::ubasis::UBasis;
use crate::cohomology::QuotientPresentation;
use crate::error::Error;
use crate::linalg::Matrix;
use crate::superalgebra::{Scalar, SuperElement};

/// Largest number of `t`-monomials a series may expand.
pub const MAX_SERIES_TERMS: u128 = 100_000;

/// One `t`-monomial of the right side and its reduction:
/// `rhs = sum_rho coefficients[rho] e_rho + K_G(certificate)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerm {
    pub exponent: Vec<u32>,
    pub rhs: SuperElement,
    pub coefficients: Vec<Scalar>,
    pub certificate: SuperElement,
}

/// `T^rho(t)` truncated at a total degree in `t`.
///
/// Variables are indexed by the `u`-basis; the first `leading` of them
/// belong to `I'`. Only `t`-monomials with a nonzero right side are kept.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationSeries {
    dimension: usize,
    leading: usize,
    order: u32,
    terms: Vec<SeriesTerm>,
}

/// `(rho, exponent, p, q)` for one nonzero coefficient `p/q`; `rho` is 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesRecord {
    pub rho: usize,
    pub exponent: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

/// All exponent vectors of length `len` and total `total`, lexicographically decreasing.
fn exponents(len: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == len {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=total).rev() {
            prefix.push(a);
            go(len, total - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(len, total, &mut Vec::new(), &mut out);
    out
}

fn count_exponents(len: usize, order: u32) -> u128 {
    // C(len + order, order)
    (1..=order as u128).fold(1u128, |acc, i| acc.saturating_mul(len as u128 + i) / i)
}

/// `prod_a g_a^{e_a} / e_a!` for every `e` of total at most `order`, built
/// from `e - 1_a` with `a` the last nonzero index.
fn divided_monomials(gens: &[SuperElement], one: &SuperElement, order: u32) -> HashMap<Vec<u32>, SuperElement> {
    let mut out = HashMap::new();
    out.insert(vec![0; gens.len()], one.clone());
    for total in 1..=order {
        for e in exponents(gens.len(), total) {
            let a = e.iter().rposition(|&v| v > 0).expect("total is positive");
            let mut prev = e.clone();
            prev[a] -= 1;
            let inv = Scalar::one() / Scalar::from_integer(e[a].into());
            let value = (&out[&prev] * &gens[a]).scale(&inv);
            out.insert(e, value);
        }
    }
    out
}

/// Expands the defining right side to total `t`-degree `order` and reduces
/// each coefficient with `P_G`.
///
/// For `c_G = 0` the right side is `exp(sum t^a u_a) - 1`. Otherwise it is
/// `(F + sum_{b not in I'} t^b u_b) exp(sum_{i in I'} t^i y_i H_i)` with `F`
/// the charge factor, whose constant term `F` is kept at order 0.
pub fn t_series(
    def: &DeformationData,
    p_g: &QuotientPresentation,
    u: &UBasis,
    order: u32,
) -> Result<DeformationSeries, Error> {
    if order == 0 {
        return Err(Error::InvalidInput("truncation order must be at least 1".into()));
    }
    if p_g.dwork() != def.base() {
        return Err(Error::InvalidInput(
            "presentation does not match the deformation".into(),
        ));
    }
    let dim = u.dimension();
    if dim != p_g.dimension() {
        return Err(Error::Dimension("u-basis and G-basis sizes differ".into()));
    }
    if count_exponents(dim, order) > MAX_SERIES_TERMS {
        return Err(Error::InvalidInput(format!(
            "{dim} variables to order {order} exceed {MAX_SERIES_TERMS} t-monomials"
        )));
    }
    let ctx = def.context();
    let one = SuperElement::one(ctx);
    let ell = u.leading();
    let mut rhs_terms: Vec<(Vec<u32>, SuperElement)> = Vec::new();
    if p_g.background_charge() == 0 {
        let table = divided_monomials(&u.elements, &one, order);
        for total in 1..=order {
            for e in exponents(dim, total) {
                rhs_terms.push((e.clone(), table[&e].clone()));
            }
        }
    } else {
        let gens: Vec<SuperElement> = u
            .i_prime
            .iter()
            .map(|&i| Ok(&SuperElement::q_var(ctx, ctx.y(i + 1))? * &def.h()[i]))
            .collect::<Result<_, Error>>()?;
        let table = divided_monomials(&gens, &one, order);
        for total in 0..=order {
            for e in exponents(dim, total) {
                let (lead, rest) = e.split_at(ell);
                let outside: u32 = rest.iter().sum();
                let value = match outside {
                    0 => &u.factor * &table[lead],
                    1 => {
                        let b = ell + rest.iter().position(|&v| v == 1).expect("one entry is 1");
                        &u.elements[b] * &table[lead]
                    }
                    _ => continue,
                };
                rhs_terms.push((e, value));
            }
        }
    }
    let mut terms = Vec::with_capacity(rhs_terms.len());
    for (exponent, rhs) in rhs_terms {
        if rhs.is_zero() {
            continue;
        }
        let r = p_g.reduce(&rhs)?;
        terms.push(SeriesTerm {
            exponent,
            rhs,
            coefficients: r.coefficients,
            certificate: r.certificate,
        });
    }
    Ok(DeformationSeries {
        dimension: dim,
        leading: ell,
        order,
        terms,
    })
}

impl DeformationSeries {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn leading(&self) -> usize {
        self.leading
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Terms by increasing total degree, then decreasing exponent.
    pub fn terms(&self) -> &[SeriesTerm] {
        &self.terms
    }

    /// Coefficient of `t^exponent` in `T^rho`.
    pub fn coefficient(&self, rho: usize, exponent: &[u32]) -> Scalar {
        self.terms
            .iter()
            .find(|t| t.exponent == exponent)
            .map_or_else(Scalar::zero, |t| t.coefficients[rho].clone())
    }

    /// Re-checks `rhs - sum c_rho e_rho = K_G(certificate)` for every term.
    pub fn verify(&self, p_g: &QuotientPresentation) -> Result<(), Error> {
        for t in &self.terms {
            let mut residual = t.rhs.clone();
            for (rho, c) in t.coefficients.iter().enumerate() {
                residual.add_scaled(&p_g.basis_element(rho), &-c.clone());
            }
            if residual != p_g.dwork().apply_k(&t.certificate) {
                return Err(Error::Internal(format!(
                    "series coefficient at exponent {:?} is not certified",
                    t.exponent
                )));
            }
        }
        Ok(())
    }

    /// `D_m[beta][rho]`: `d/dt^beta T^rho` at `t = 1` on `I'` and `0` off it,
    /// summed over terms of total degree at most `m`, for `m = 1..=order`.
    pub fn d_ladder(&self) -> Vec<Matrix> {
        let n = self.dimension;
        let mut out = Vec::with_capacity(self.order as usize);
        let mut acc = Matrix::zeros(n, n);
        for m in 1..=self.order {
            for t in self.terms.iter().filter(|t| t.exponent.iter().sum::<u32>() == m) {
                for beta in 0..n {
                    let e_beta = t.exponent[beta];
                    if e_beta == 0 {
                        continue;
                    }
                    // the rest of the monomial must survive t = 0 off I'
                    let off = (self.leading..n).any(|a| t.exponent[a] > u32::from(a == beta));
                    if off {
                        continue;
                    }
                    let w = Scalar::from_integer(e_beta.into());
                    for (rho, c) in t.coefficients.iter().enumerate() {
                        if !c.is_zero() {
                            acc[(beta, rho)] += &w * c;
                        }
                    }
                }
            }
            out.push(acc.clone());
        }
        out
    }

    pub fn to_records(&self) -> Vec<SeriesRecord> {
        let mut out = Vec::new();
        for t in &self.terms {
            for (rho, c) in t.coefficients.iter().enumerate() {
                if !c.is_zero() {
                    out.push(SeriesRecord {
                        rho,
                        exponent: t.exponent.clone(),
                        numerator: c.numer().to_string(),
                        denominator: c.denom().to_string(),
                    });
                }
            }
        }
        out
    }
}
