use serde::{Deserialize, Serialize};

use super::context::VariableContext;
use crate::error::Error;

/// A monomial `q^v eta_T` with `T` stored as a strictly increasing index list.
///
/// The derived ordering is the canonical monomial order: weight first, then
/// total `q`-degree, then the exponent vector lexicographically
/// (`y_1 > ... > y_k > x_0 > ... > x_n`), then the sorted `eta` index list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    weight: u32,
    q_degree: u32,
    exps: Box<[u32]>,
    eta: Box<[u16]>,
}

impl SuperMonomial {
    /// Builds a monomial; `eta` may be given in any order but must not repeat.
    /// Returns the Koszul sign of sorting `eta` along with the monomial.
    pub fn with_sign(ctx: &VariableContext, exps: Vec<u32>, eta: Vec<usize>) -> Result<(Self, i8), Error> {
        let n_vars = ctx.num_vars();
        if exps.len() != n_vars {
            return Err(Error::InvalidMonomial(format!(
                "expected {n_vars} exponents, got {}",
                exps.len()
            )));
        }
        if let Some(&bad) = eta.iter().find(|&&i| i >= n_vars) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: n_vars,
            });
        }
        let mut sorted = eta.clone();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMonomial("repeated odd variable".into()));
        }
        let weight = exps
            .iter()
            .enumerate()
            .map(|(mu, &e)| ctx.q_weight(mu) * e)
            .sum::<u32>()
            + sorted.iter().map(|&mu| ctx.eta_weight(mu)).sum::<u32>();
        let q_degree = exps.iter().sum();
        Ok((
            Self {
                weight,
                q_degree,
                exps: exps.into_boxed_slice(),
                eta: sorted.into_iter().map(|i| i as u16).collect(),
            },
            sign,
        ))
    }

    /// Builds a monomial whose `eta` list is already strictly increasing.
    pub fn new(ctx: &VariableContext, exps: Vec<u32>, eta: Vec<usize>) -> Result<Self, Error> {
        if eta.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMonomial("eta indices must be strictly increasing".into()));
        }
        Self::with_sign(ctx, exps, eta).map(|(m, _)| m)
    }

    pub fn one(ctx: &VariableContext) -> Self {
        Self {
            weight: 0,
            q_degree: 0,
            exps: vec![0; ctx.num_vars()].into_boxed_slice(),
            eta: Box::new([]),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn eta(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.eta.iter().map(|&i| i as usize)
    }

    pub fn eta_len(&self) -> usize {
        self.eta.len()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn q_degree(&self) -> u32 {
        self.q_degree
    }

    /// Cohomological degree `-|T|`.
    pub fn degree(&self) -> i32 {
        -(self.eta.len() as i32)
    }

    pub fn is_even(&self) -> bool {
        self.eta.len().is_multiple_of(2)
    }

    pub fn has_eta(&self, mu: usize) -> bool {
        self.eta.binary_search(&(mu as u16)).is_ok()
    }

    pub fn charge(&self, ctx: &VariableContext) -> i64 {
        self.exps
            .iter()
            .enumerate()
            .map(|(mu, &e)| ctx.q_charge(mu) * e as i64)
            .sum::<i64>()
            + self.eta.iter().map(|&mu| ctx.eta_charge(mu as usize)).sum::<i64>()
    }

    /// Product with Koszul sign; `None` when an odd variable repeats.
    pub fn mul(&self, other: &Self) -> Option<(Self, i8)> {
        let mut eta = Vec::with_capacity(self.eta.len() + other.eta.len());
        let (mut i, mut j) = (0, 0);
        let mut swaps = 0usize;
        while i < self.eta.len() && j < other.eta.len() {
            match self.eta[i].cmp(&other.eta[j]) {
                std::cmp::Ordering::Less => {
                    eta.push(self.eta[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // other.eta[j] jumps over the remaining left factors
                    swaps += self.eta.len() - i;
                    eta.push(other.eta[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        eta.extend_from_slice(&self.eta[i..]);
        eta.extend_from_slice(&other.eta[j..]);
        let exps = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((
            Self {
                weight: self.weight + other.weight,
                q_degree: self.q_degree + other.q_degree,
                exps,
                eta: eta.into_boxed_slice(),
            },
            sign,
        ))
    }

    /// `d/dq_mu`: returns the multiplicity and the lowered monomial.
    pub fn diff_q(&self, ctx: &VariableContext, mu: usize) -> Option<(u32, Self)> {
        let e = self.exps[mu];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[mu] -= 1;
        Some((
            e,
            Self {
                weight: self.weight - ctx.q_weight(mu),
                q_degree: self.q_degree - 1,
                exps,
                eta: self.eta.clone(),
            },
        ))
    }

    /// Left derivative `d/deta_mu`: sign `(-1)^(p-1)` for 1-based position `p`.
    pub fn diff_eta(&self, ctx: &VariableContext, mu: usize) -> Option<(i8, Self)> {
        let pos = self.eta.binary_search(&(mu as u16)).ok()?;
        let mut eta = self.eta.to_vec();
        eta.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        Some((
            sign,
            Self {
                weight: self.weight - ctx.eta_weight(mu),
                q_degree: self.q_degree,
                exps: self.exps.clone(),
                eta: eta.into_boxed_slice(),
            },
        ))
    }

    /// Drops the odd part, keeping `q^v`.
    pub fn q_part(&self, ctx: &VariableContext) -> Self {
        Self::new(ctx, self.exps.to_vec(), Vec::new()).expect("valid exponents")
    }

    pub fn to_record(&self) -> MonomialRecord {
        MonomialRecord {
            q: self.exps.to_vec(),
            eta: self.eta().collect(),
        }
    }

    pub fn from_record(ctx: &VariableContext, rec: &MonomialRecord) -> Result<Self, Error> {
        Self::new(ctx, rec.q.clone(), rec.eta.clone())
    }
}

/// Serialized form of a monomial: exponent vector over `q_1..q_N` and the
/// 0-based `eta` indices in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub q: Vec<u32>,
    pub eta: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> VariableContext {
        VariableContext::new(2, vec![3]).unwrap()
    }

    #[test]
    fn sorting_sign_matches_transposition_count() {
        let c = ctx();
        let (_, s) = SuperMonomial::with_sign(&c, vec![0; 4], vec![1, 0]).unwrap();
        assert_eq!(s, -1);
        let (_, s) = SuperMonomial::with_sign(&c, vec![0; 4], vec![2, 0, 1]).unwrap();
        assert_eq!(s, 1);
        assert!(SuperMonomial::with_sign(&c, vec![0; 4], vec![1, 1]).is_err());
    }

    #[test]
    fn order_is_weight_then_degree_then_lex() {
        let c = ctx();
        let y = SuperMonomial::new(&c, vec![1, 0, 0, 0], vec![]).unwrap();
        let x03 = SuperMonomial::new(&c, vec![0, 3, 0, 0], vec![]).unwrap();
        let x0 = SuperMonomial::new(&c, vec![0, 1, 0, 0], vec![]).unwrap();
        let x1 = SuperMonomial::new(&c, vec![0, 0, 1, 0], vec![]).unwrap();
        assert!(y > x03);
        assert!(x03 > x0);
        assert!(x0 > x1);
    }

    #[test]
    fn charge_and_weight() {
        let c = ctx();
        let m = SuperMonomial::new(&c, vec![1, 1, 1, 1], vec![]).unwrap();
        assert_eq!(m.charge(&c), 0);
        assert_eq!(m.weight(), 1);
        let e = SuperMonomial::new(&c, vec![0, 1, 0, 0], vec![0, 1]).unwrap();
        // x0 * eta_y * eta_x0: charge 1 + 3 - 1, weight 0 + 0 + 1
        assert_eq!(e.charge(&c), 3);
        assert_eq!(e.weight(), 1);
        assert_eq!(e.degree(), -2);
    }
}
