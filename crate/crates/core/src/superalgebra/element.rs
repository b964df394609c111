use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use super::context::VariableContext;
use super::monomial::SuperMonomial;
use super::scalar::Scalar;
use crate::error::Error;

/// A finite `Q`-linear combination of super-monomials.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// elements. The zero element is the empty term map.
#[derive(Clone, Debug)]
pub struct SuperElement {
    ctx: Arc<VariableContext>,
    terms: BTreeMap<SuperMonomial, Scalar>,
}

/// One tri-homogeneous piece returned by [`SuperElement::grade`].
#[derive(Clone, Debug, PartialEq)]
pub struct GradedComponent {
    pub charge: i64,
    pub weight: u32,
    pub degree: i32,
    pub component: SuperElement,
}

impl SuperElement {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Self::constant(ctx, Scalar::one())
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: Scalar) -> Self {
        Self::from_monomial(ctx, SuperMonomial::one(ctx), c)
    }

    pub fn from_monomial(ctx: &Arc<VariableContext>, m: SuperMonomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(ctx: &Arc<VariableContext>, terms: I) -> Self
    where
        I: IntoIterator<Item = (SuperMonomial, Scalar)>,
    {
        let mut out = Self::zero(ctx);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// The even generator `q_mu`.
    pub fn q_var(ctx: &Arc<VariableContext>, mu: usize) -> Result<Self, Error> {
        let n = ctx.num_vars();
        if mu >= n {
            return Err(Error::IndexOutOfRange { index: mu, len: n });
        }
        let mut exps = vec![0; n];
        exps[mu] = 1;
        let m = SuperMonomial::new(ctx, exps, vec![])?;
        Ok(Self::from_monomial(ctx, m, Scalar::one()))
    }

    /// The odd generator `eta_mu`.
    pub fn eta_var(ctx: &Arc<VariableContext>, mu: usize) -> Result<Self, Error> {
        let m = SuperMonomial::new(ctx, vec![0; ctx.num_vars()], vec![mu])?;
        Ok(Self::from_monomial(ctx, m, Scalar::one()))
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SuperMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<SuperMonomial, Scalar> {
        self.terms
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest monomial in canonical order.
    pub fn leading(&self) -> Option<(&SuperMonomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SuperElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Self {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn check_context(&self, other: &Self) -> Result<(), Error> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Super-commutative product; `eta` factors merge with their Koszul sign.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_context(other)?;
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_context(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in `q_mu`.
    pub fn partial_q(&self, mu: usize) -> Result<Self, Error> {
        let n = self.ctx.num_vars();
        if mu >= n {
            return Err(Error::IndexOutOfRange { index: mu, len: n });
        }
        Ok(self.diff_q(mu))
    }

    pub(crate) fn diff_q(&self, mu: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.diff_q(&self.ctx, mu) {
                out.add_term(lowered, c * Scalar::from_integer(e.into()));
            }
        }
        out
    }

    /// Left odd derivative in `eta_mu`.
    pub fn partial_eta(&self, mu: usize) -> Result<Self, Error> {
        let n = self.ctx.num_vars();
        if mu >= n {
            return Err(Error::IndexOutOfRange { index: mu, len: n });
        }
        Ok(self.diff_eta(mu))
    }

    pub(crate) fn diff_eta(&self, mu: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if let Some((sign, lowered)) = m.diff_eta(&self.ctx, mu) {
                out.add_term(lowered, if sign < 0 { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Decomposition into (charge, weight, degree)-homogeneous components,
    /// ordered by that key.
    pub fn grade(&self) -> Vec<GradedComponent> {
        let mut parts: BTreeMap<(i64, u32, i32), SuperElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = (m.charge(&self.ctx), m.weight(), m.degree());
            parts
                .entry(key)
                .or_insert_with(|| Self::zero(&self.ctx))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|((charge, weight, degree), component)| GradedComponent {
                charge,
                weight,
                degree,
                component,
            })
            .collect()
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&SuperMonomial) -> bool) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Cohomological degree if every term shares it (zero counts as homogeneous of degree 0).
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|e| e == d).then_some(d),
        }
    }

    pub fn homogeneous_charge(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.charge(&self.ctx));
        match it.next() {
            None => None,
            Some(d) => it.all(|e| e == d).then_some(d),
        }
    }

    /// Parity if every term shares it (`true` for odd; zero is even).
    pub fn is_odd(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| !m.is_even());
        match it.next() {
            None => Some(false),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    pub fn is_eta_free(&self) -> bool {
        self.terms.keys().all(|m| m.eta_len() == 0)
    }
}

impl PartialEq for SuperElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
    }
}

impl Eq for SuperElement {}

impl Hash for SuperElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for SuperElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SuperElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.cmp(&other.terms)
    }
}

impl<'a> Add<&'a SuperElement> for &'a SuperElement {
    type Output = SuperElement;
    fn add(self, rhs: &SuperElement) -> SuperElement {
        self.checked_add(rhs).expect("context mismatch in addition")
    }
}

impl<'a> Sub<&'a SuperElement> for &'a SuperElement {
    type Output = SuperElement;
    fn sub(self, rhs: &SuperElement) -> SuperElement {
        self.check_context(rhs).expect("context mismatch in subtraction");
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl<'a> Mul<&'a SuperElement> for &'a SuperElement {
    type Output = SuperElement;
    /// Panics on context mismatch; use [`SuperElement::checked_mul`] otherwise.
    fn mul(self, rhs: &SuperElement) -> SuperElement {
        self.checked_mul(rhs).expect("context mismatch in product")
    }
}

impl Neg for &SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        self.scale(&-Scalar::one())
    }
}

impl AddAssign<&SuperElement> for SuperElement {
    fn add_assign(&mut self, rhs: &SuperElement) {
        self.check_context(rhs).expect("context mismatch in addition");
        self.add_scaled(rhs, &Scalar::one());
    }
}

impl SubAssign<&SuperElement> for SuperElement {
    fn sub_assign(&mut self, rhs: &SuperElement) {
        self.check_context(rhs).expect("context mismatch in subtraction");
        self.add_scaled(rhs, &-Scalar::one());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::scalar::int;

    fn ctx() -> Arc<VariableContext> {
        Arc::new(VariableContext::new(2, vec![3]).unwrap())
    }

    fn eta(c: &Arc<VariableContext>, mu: usize) -> SuperElement {
        SuperElement::eta_var(c, mu).unwrap()
    }

    fn q(c: &Arc<VariableContext>, mu: usize) -> SuperElement {
        SuperElement::q_var(c, mu).unwrap()
    }

    /// Sign of sorting a word of odd generators by adjacent transpositions;
    /// zero when an index repeats.
    fn bubble_sign(word: &[usize]) -> i32 {
        let mut w = word.to_vec();
        let mut sign = 1;
        for i in 0..w.len() {
            for j in 0..w.len() - 1 - i {
                if w[j] == w[j + 1] {
                    return 0;
                }
                if w[j] > w[j + 1] {
                    w.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if w.windows(2).any(|p| p[0] == p[1]) {
            0
        } else {
            sign
        }
    }

    #[test]
    fn odd_generators_anticommute() {
        let c = ctx();
        let e12 = &eta(&c, 0) * &eta(&c, 1);
        let e21 = &eta(&c, 1) * &eta(&c, 0);
        assert_eq!(e21, -&e12);
        assert!((&eta(&c, 0) * &eta(&c, 0)).is_zero());
    }

    #[test]
    fn product_sign_matches_transposition_oracle() {
        let c = ctx();
        // (y1 eta_1) * (x0 eta_2): eta_1 eta_2 already sorted.
        let a = &q(&c, 0) * &eta(&c, 0);
        let b = &q(&c, 1) * &eta(&c, 1);
        let prod = &a * &b;
        let (m, coef) = prod.terms().next().unwrap();
        assert_eq!(m.exps(), &[1, 1, 0, 0]);
        assert_eq!(*coef, int(bubble_sign(&[0, 1]) as i64));
        assert_eq!(*coef, int(1));

        for word in [[3usize, 1, 2], [2, 0, 3], [1, 3, 0]] {
            let mut acc = SuperElement::one(&c);
            for &mu in &word {
                acc = &acc * &eta(&c, mu);
            }
            let (_, coef) = acc.terms().next().unwrap();
            assert_eq!(*coef, int(bubble_sign(&word) as i64), "{word:?}");
        }
    }

    #[test]
    fn derivatives() {
        let c = ctx();
        let x0 = q(&c, 1);
        let x0_3 = x0.pow(3);
        assert_eq!(x0_3.partial_q(1).unwrap(), x0.pow(2).scale(&int(3)));
        let y_x0_e1 = &(&q(&c, 0) * &x0) * &eta(&c, 0);
        assert_eq!(y_x0_e1.partial_q(0).unwrap(), &x0 * &eta(&c, 0));
        assert!((&q(&c, 0) * &x0_3).partial_q(2).unwrap().is_zero());

        let e12 = &eta(&c, 0) * &eta(&c, 1);
        assert_eq!(e12.partial_eta(0).unwrap(), eta(&c, 1));
        assert_eq!(e12.partial_eta(1).unwrap(), -&eta(&c, 0));
        assert!(e12.partial_eta(2).unwrap().is_zero());
        assert!(e12.partial_eta(4).is_err());
        assert!(e12.partial_q(9).is_err());
    }

    #[test]
    fn grading_of_examples() {
        let c = ctx();
        let cubic = &(&q(&c, 1).pow(3) + &q(&c, 2).pow(3)) + &q(&c, 3).pow(3);
        let s = &q(&c, 0) * &cubic;
        let g = s.grade();
        assert_eq!(g.len(), 1);
        assert_eq!((g[0].charge, g[0].weight, g[0].degree), (0, 1, 0));

        let g = SuperElement::one(&c).grade();
        assert_eq!((g[0].charge, g[0].weight, g[0].degree), (0, 0, 0));

        let g = (&q(&c, 0) + &q(&c, 1)).grade();
        let charges: Vec<i64> = g.iter().map(|p| p.charge).collect();
        assert_eq!(charges, vec![-3, 1]);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = SuperElement::one(&ctx());
        let other = Arc::new(VariableContext::new(3, vec![4]).unwrap());
        let b = SuperElement::one(&other);
        assert!(matches!(a.checked_mul(&b), Err(Error::ContextMismatch)));
    }
}
