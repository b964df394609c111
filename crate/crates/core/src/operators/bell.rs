//! Complete and partial Bell polynomials, evaluated through their recurrences.
//!
//! Both numeric evaluation (over [`Scalar`]) and symbolic expansion (integer
//! polynomials in `x_1..x_n`) share the same recurrence code via [`BellRing`].

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::Error;
use crate::superalgebra::scalar::binomial;
use crate::superalgebra::Scalar;

/// The operations the recurrences need.
pub trait BellRing: Clone {
    fn empty_sum() -> Self;
    fn empty_product() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigInt) -> Self;
}

impl BellRing for Scalar {
    fn empty_sum() -> Self {
        Zero::zero()
    }
    fn empty_product() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigInt) -> Self {
        self * Scalar::from_integer(c.clone())
    }
}

/// Integer polynomial in `x_1, x_2, ...`, keyed by exponent vectors
/// (index `i` holds the exponent of `x_{i+1}`; trailing zeros trimmed).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly(pub BTreeMap<Vec<u32>, BigInt>);

impl IntPoly {
    /// The generator `x_i` for 1-based `i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Self(BTreeMap::from([(e, BigInt::one())]))
    }

    pub fn from_terms(terms: &[(&[u32], i64)]) -> Self {
        let mut p = Self::default();
        for (e, c) in terms {
            p.push(trim(e.to_vec()), BigInt::from(*c));
        }
        p
    }

    fn push(&mut self, e: Vec<u32>, c: BigInt) {
        let slot = self.0.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    /// Evaluates at the given point.
    pub fn eval(&self, xs: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.0 {
            let mut t = Scalar::from_integer(c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &xs[i];
                }
            }
            acc += t;
        }
        acc
    }
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl BellRing for IntPoly {
    fn empty_sum() -> Self {
        Self::default()
    }
    fn empty_product() -> Self {
        Self(BTreeMap::from([(Vec::new(), BigInt::one())]))
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.push(e.clone(), c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &other.0 {
                let len = ea.len().max(eb.len());
                let e: Vec<u32> = (0..len)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.push(trim(e), ca * cb);
            }
        }
        out
    }
    fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::default();
        for (e, v) in &self.0 {
            out.push(e.clone(), v * c);
        }
        out
    }
}

/// All complete Bell polynomials `B_0..B_n` at `xs[0..n]` via
/// `B_{m+1} = sum_i C(m, i) B_{m-i} x_{i+1}`.
pub fn bell_complete_all<T: BellRing>(n: usize, xs: &[T]) -> Vec<T> {
    assert!(xs.len() >= n, "need at least n arguments");
    let mut b = Vec::with_capacity(n + 1);
    b.push(T::empty_product());
    for m in 0..n {
        let mut acc = T::empty_sum();
        for i in 0..=m {
            let term = b[m - i].mul(&xs[i]).scale(&binomial(m as u32, i as u32));
            acc = acc.add(&term);
        }
        b.push(acc);
    }
    b
}

/// Complete Bell polynomial `B_n(x_1..x_n)`.
pub fn bell_complete<T: BellRing>(n: usize, xs: &[T]) -> T {
    bell_complete_all(n, xs).pop().unwrap()
}

/// Partial Bell polynomial `B_{n,j}(x_1..x_{n-j+1})` via
/// `B_{n,j} = sum_{i=1}^{n-j+1} C(n-1, i-1) x_i B_{n-i,j-1}`.
pub fn bell_partial<T: BellRing>(n: usize, j: usize, xs: &[T]) -> Result<T, Error> {
    if j > n {
        return Err(Error::InvalidInput(format!(
            "partial Bell needs j <= n, got j = {j}, n = {n}"
        )));
    }
    if xs.len() < n + 1 - j.max(1) {
        return Err(Error::InvalidInput(
            "too few arguments for partial Bell polynomial".into(),
        ));
    }
    // table[a][b] = B_{a,b}
    let mut table: Vec<Vec<T>> = vec![vec![T::empty_sum(); j + 1]; n + 1];
    table[0][0] = T::empty_product();
    for a in 1..=n {
        for b in 1..=j.min(a) {
            if a - b > n - j {
                continue;
            }
            let mut acc = T::empty_sum();
            for i in 1..=(a + 1 - b) {
                let term = xs[i - 1]
                    .mul(&table[a - i][b - 1])
                    .scale(&binomial(a as u32 - 1, i as u32 - 1));
                acc = acc.add(&term);
            }
            table[a][b] = acc;
        }
    }
    Ok(table[n][j].clone())
}

/// Symbolic `B_n` as an integer polynomial.
pub fn bell_complete_expansion(n: usize) -> IntPoly {
    let vars: Vec<IntPoly> = (1..=n.max(1)).map(IntPoly::var).collect();
    bell_complete(n, &vars)
}
