use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::Error;

/// Variables `q_1..q_N` with `q_1..q_k = y_1..y_k` and `q_{k+1}..q_N = x_0..x_n`,
/// together with their odd partners `eta_1..eta_N`.
///
/// Indices in the Rust API are 0-based: `q` index `i < k` is `y_{i+1}`, and
/// `q` index `k + j` is `x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableContext {
    n: usize,
    degrees: Vec<u32>,
}

/// Variable limit; keeps graded pieces enumerable and indices small.
pub const MAX_VARIABLES: usize = 64;

impl VariableContext {
    pub fn new(n: usize, degrees: Vec<u32>) -> Result<Self, Error> {
        let k = degrees.len();
        if k == 0 {
            return Err(Error::InvalidContext("at least one defining degree is required".into()));
        }
        if n < k {
            return Err(Error::InvalidContext(format!("need n >= k, got n = {n}, k = {k}")));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidContext("degrees must be positive".into()));
        }
        if n + k + 1 > MAX_VARIABLES {
            return Err(Error::InvalidContext(format!(
                "at most {MAX_VARIABLES} variables supported"
            )));
        }
        Ok(Self { n, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Total number of even variables `N = n + k + 1`.
    pub fn num_vars(&self) -> usize {
        self.n + self.k() + 1
    }

    /// `q` index of `y_i` for 1-based `i`.
    pub fn y(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.k(), "y index out of range");
        i - 1
    }

    /// `q` index of `x_j` for 0-based `j`.
    pub fn x(&self, j: usize) -> usize {
        assert!(j <= self.n, "x index out of range");
        self.k() + j
    }

    pub fn is_y(&self, mu: usize) -> bool {
        mu < self.k()
    }

    pub fn q_charge(&self, mu: usize) -> i64 {
        if self.is_y(mu) {
            -(self.degrees[mu] as i64)
        } else {
            1
        }
    }

    pub fn q_weight(&self, mu: usize) -> u32 {
        u32::from(self.is_y(mu))
    }

    pub fn eta_charge(&self, mu: usize) -> i64 {
        -self.q_charge(mu)
    }

    pub fn eta_weight(&self, mu: usize) -> u32 {
        1 - self.q_weight(mu)
    }

    /// `c_G = sum d_i - n - 1`.
    pub fn background_charge(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64).sum::<i64>() - self.n as i64 - 1
    }

    /// Dimension `n - k` of the complete intersection.
    pub fn dimension(&self) -> usize {
        self.n - self.k()
    }

    /// Surface name of `q_mu`: `y1`, ..., `x0`, ...
    pub fn q_name(&self, mu: usize) -> String {
        if self.is_y(mu) {
            format!("y{}", mu + 1)
        } else {
            format!("x{}", mu - self.k())
        }
    }

    /// Surface name of `eta_mu`: `e1`, ..., `eN`.
    pub fn eta_name(&self, mu: usize) -> String {
        format!("e{}", mu + 1)
    }
}

impl fmt::Display for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} degrees={:?}", self.n, self.k(), self.degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradings_follow_the_variable_rules() {
        let ctx = VariableContext::new(2, vec![3]).unwrap();
        assert_eq!(ctx.num_vars(), 4);
        assert_eq!(ctx.q_charge(ctx.y(1)), -3);
        assert_eq!(ctx.q_charge(ctx.x(2)), 1);
        assert_eq!(ctx.q_weight(ctx.y(1)), 1);
        assert_eq!(ctx.q_weight(ctx.x(0)), 0);
        for mu in 0..ctx.num_vars() {
            assert_eq!(ctx.q_charge(mu) + ctx.eta_charge(mu), 0);
            assert_eq!(ctx.q_weight(mu) + ctx.eta_weight(mu), 1);
        }
        assert_eq!(ctx.background_charge(), 0);
        assert_eq!(ctx.q_name(1), "x0");
        assert_eq!(ctx.eta_name(1), "e2");
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(VariableContext::new(2, vec![]).is_err());
        assert!(VariableContext::new(1, vec![2, 2]).is_err());
        assert!(VariableContext::new(3, vec![0]).is_err());
        assert!(VariableContext::new(70, vec![2]).is_err());
    }

    #[test]
    fn background_charge_examples() {
        assert_eq!(VariableContext::new(3, vec![4]).unwrap().background_charge(), 0);
        assert_eq!(VariableContext::new(3, vec![3]).unwrap().background_charge(), -1);
        assert_eq!(VariableContext::new(3, vec![2, 2]).unwrap().background_charge(), 0);
        assert_eq!(VariableContext::new(2, vec![5]).unwrap().background_charge(), 2);
    }
}
