use num_traits::Zero;
use std::collections::HashMap;

use super::partition::separating_two_block;
use crate::error::Error;
use crate::superalgebra::{Scalar, SuperElement};

/// A `Q`-linear map from the algebra to `Q`.
///
/// Implementations are expected to vanish outside cohomological degree 0.
/// Cochain functionals additionally vanish on the image of `K_G`.
pub trait LinearFunctional {
    fn evaluate(&self, a: &SuperElement) -> Scalar;
}

impl<F> LinearFunctional for F
where
    F: Fn(&SuperElement) -> Scalar,
{
    fn evaluate(&self, a: &SuperElement) -> Scalar {
        self(a)
    }
}

/// Evaluates the descendant maps `phi_m^f` with a memo shared across calls.
pub struct DescendantMaps<'a, F: LinearFunctional + ?Sized> {
    f: &'a F,
    memo: HashMap<Vec<SuperElement>, Scalar>,
}

impl<'a, F: LinearFunctional + ?Sized> DescendantMaps<'a, F> {
    pub fn new(f: &'a F) -> Self {
        Self {
            f,
            memo: HashMap::new(),
        }
    }

    /// `phi_m(x_1..x_m)`; `phi_1 = f`.
    pub fn phi(&mut self, args: &[SuperElement]) -> Result<Scalar, Error> {
        if args.is_empty() {
            return Err(Error::InvalidInput("phi_n needs n >= 1".into()));
        }
        Ok(self.eval(args))
    }

    fn key(args: &[SuperElement]) -> Vec<SuperElement> {
        let mut key = args.to_vec();
        // symmetric on even arguments: memoize on the multiset
        if key.iter().all(|a| a.is_odd() == Some(false)) {
            key.sort();
        }
        key
    }

    fn eval(&mut self, args: &[SuperElement]) -> Scalar {
        let m = args.len();
        if m == 1 {
            return self.f.evaluate(&args[0]);
        }
        let key = Self::key(args);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut merged = args[..m - 2].to_vec();
        merged.push(&args[m - 2] * &args[m - 1]);
        let mut value = self.eval(&merged);
        for (b1, b2) in separating_two_block(m) {
            let x1: Vec<SuperElement> = b1.iter().map(|&i| args[i].clone()).collect();
            let x2: Vec<SuperElement> = b2.iter().map(|&i| args[i].clone()).collect();
            let p1 = self.eval(&x1);
            if p1.is_zero() {
                continue;
            }
            value -= p1 * self.eval(&x2);
        }
        self.memo.insert(key, value.clone());
        value
    }
}

/// One-shot `phi_n^f(args)`.
pub fn phi_n<F: LinearFunctional + ?Sized>(f: &F, args: &[SuperElement]) -> Result<Scalar, Error> {
    DescendantMaps::new(f).phi(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::partition::set_partitions;
    use crate::polyparse::parse;
    use crate::superalgebra::scalar::int;
    use crate::superalgebra::VariableContext;
    use std::sync::Arc;

    fn ctx() -> Arc<VariableContext> {
        Arc::new(VariableContext::new(2, vec![3]).unwrap())
    }

    /// A nonlinear-enough test functional: weighted sum of coefficients.
    fn functional(a: &SuperElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in a.terms() {
            if m.eta_len() > 0 {
                continue;
            }
            let w: i64 = m
                .exps()
                .iter()
                .enumerate()
                .map(|(i, &e)| (i as i64 + 2) * e as i64)
                .sum();
            acc += c * int(w * w - 3 * w + 1);
        }
        acc
    }

    /// Brute-force unrolling of the recursion, written directly over the
    /// partition lattice: phi_m(x) = sum over partitions pi of
    /// mu(pi) prod f(x_B), with the Moebius weights (-1)^(|pi|-1) (|pi|-1)!.
    fn cumulant_oracle(f: &dyn Fn(&SuperElement) -> Scalar, xs: &[SuperElement]) -> Scalar {
        let mut total = Scalar::zero();
        for p in set_partitions(xs.len()) {
            let blocks = p.len() as i64;
            let mut fact = 1i64;
            for i in 1..blocks {
                fact *= i;
            }
            let sign = if blocks % 2 == 1 { 1 } else { -1 };
            let mut term = int(sign * fact);
            for b in &p {
                let mut prod = SuperElement::one(xs[0].context());
                for &i in b {
                    prod = &prod * &xs[i];
                }
                term *= f(&prod);
            }
            total += term;
        }
        total
    }

    #[test]
    fn low_order_formulas() {
        let c = ctx();
        let a = parse("x0 + 2*y1", &c).unwrap();
        let b = parse("x1^2 - x0", &c).unwrap();
        let d = parse("3 + x2*y1", &c).unwrap();
        let f = functional;
        assert_eq!(phi_n(&f, std::slice::from_ref(&a)).unwrap(), f(&a));
        assert_eq!(
            phi_n(&f, &[a.clone(), b.clone()]).unwrap(),
            f(&(&a * &b)) - f(&a) * f(&b)
        );
        let abc = &(&a * &b) * &d;
        let expected = f(&abc) - f(&a) * f(&(&b * &d)) - f(&b) * f(&(&a * &d)) - f(&(&a * &b)) * f(&d)
            + int(2) * f(&a) * f(&b) * f(&d);
        assert_eq!(phi_n(&f, &[a.clone(), b.clone(), d.clone()]).unwrap(), expected);
        assert!(phi_n(&f, &[]).is_err());
    }

    #[test]
    fn recursion_matches_partition_oracle() {
        let c = ctx();
        let xs: Vec<SuperElement> = ["x0 + 1", "y1*x1 - 2", "x2^2 + x0*x1", "1/2*y1 + x2", "x0 - x1 + 3"]
            .iter()
            .map(|s| parse(s, &c).unwrap())
            .collect();
        for m in 1..=5 {
            let got = phi_n(&functional, &xs[..m]).unwrap();
            assert_eq!(got, cumulant_oracle(&functional, &xs[..m]), "m = {m}");
        }
    }
}
