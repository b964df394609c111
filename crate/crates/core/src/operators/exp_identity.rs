//! Order-by-order checks of the exponential identities relating `K`, the
//! descendant brackets and the descendant maps.
//!
//! `Gamma` is scaled by a formal even marker `eps` with `eps^{order+1} = 0`;
//! entry `m - 1` of each side holds the coefficient of `eps^m`.

use num_traits::Zero;

use super::bell::bell_complete;
use super::descendant::{DescendantMaps, LinearFunctional};
use super::dwork::DworkData;
use crate::error::Error;
use crate::superalgebra::scalar::factorial;
use crate::superalgebra::{Scalar, SuperElement};

/// Both sides of an identity, one entry per power of the marker.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpIdentity<T> {
    pub lhs: Vec<T>,
    pub rhs: Vec<T>,
}

impl<T: PartialEq> ExpIdentity<T> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn check_gamma(gamma: &SuperElement, order: usize) -> Result<(), Error> {
    if order == 0 {
        return Err(Error::InvalidInput("truncation order must be at least 1".into()));
    }
    if gamma.terms().any(|(m, _)| !m.is_even()) {
        return Err(Error::InvalidInput("Gamma must be even".into()));
    }
    Ok(())
}

/// `Gamma^m / m!` for `m = 0..=order`.
fn divided_powers(gamma: &SuperElement, order: usize) -> Vec<SuperElement> {
    let mut out = vec![SuperElement::one(gamma.context())];
    for m in 1..=order {
        let next = &out[m - 1] * gamma;
        out.push(next.scale(&(Scalar::from_integer(1.into()) / Scalar::from_integer((m as i64).into()))));
    }
    out
}

fn inv_factorial(n: usize) -> Scalar {
    Scalar::from_integer(1.into()) / factorial(n as u32)
}

/// `K(e^Gamma - 1)` against `L^K(Gamma) e^Gamma`, with
/// `L^K(Gamma) = sum_n l_n(Gamma, .., Gamma) / n!`.
pub fn exp_identity_mc(d: &DworkData, gamma: &SuperElement, order: usize) -> Result<ExpIdentity<SuperElement>, Error> {
    check_gamma(gamma, order)?;
    let pows = divided_powers(gamma, order);
    let brackets: Vec<SuperElement> = (1..=order)
        .map(|n| d.ell_n(&vec![gamma.clone(); n]))
        .collect::<Result<_, _>>()?;
    let mut lhs = Vec::with_capacity(order);
    let mut rhs = Vec::with_capacity(order);
    for m in 1..=order {
        lhs.push(d.apply_k(&pows[m]));
        let mut acc = SuperElement::zero(d.context());
        for n in 1..=m {
            let term = &brackets[n - 1] * &pows[m - n];
            acc.add_scaled(&term, &inv_factorial(n));
        }
        rhs.push(acc);
    }
    Ok(ExpIdentity { lhs, rhs })
}

/// `K(lambda e^Gamma)` against
/// `L^K_Gamma(lambda) e^Gamma + (-1)^|lambda| lambda K(e^Gamma - 1)`, with
/// `L^K_Gamma(lambda) = K lambda + sum_{n>=2} l_n(Gamma, .., Gamma, lambda) / (n-1)!`.
///
/// Entry `m` (starting at 0) holds the coefficient of `eps^m`.
pub fn exp_identity_lambda(
    d: &DworkData,
    gamma: &SuperElement,
    lambda: &SuperElement,
    order: usize,
) -> Result<ExpIdentity<SuperElement>, Error> {
    check_gamma(gamma, order)?;
    let lambda_odd = lambda.is_odd().ok_or(Error::Inhomogeneous("parity"))?;
    let pows = divided_powers(gamma, order);
    // twisted[a] = coefficient of eps^a in L^K_Gamma(lambda)
    let mut twisted = vec![d.apply_k(lambda)];
    for n in 2..=order + 1 {
        let mut args = vec![gamma.clone(); n - 1];
        args.push(lambda.clone());
        twisted.push(d.ell_n(&args)?.scale(&inv_factorial(n - 1)));
    }
    let mut lhs = Vec::with_capacity(order + 1);
    let mut rhs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        lhs.push(d.apply_k(&(lambda * &pows[m])));
        let mut acc = SuperElement::zero(d.context());
        for a in 0..=m {
            acc += &(&twisted[a] * &pows[m - a]);
        }
        if m >= 1 {
            let tail = lambda * &d.apply_k(&pows[m]);
            if lambda_odd {
                acc -= &tail;
            } else {
                acc += &tail;
            }
        }
        rhs.push(acc);
    }
    Ok(ExpIdentity { lhs, rhs })
}

/// `f(e^Gamma - 1)` against `e^{Phi^f(Gamma)} - 1`, entry `m - 1` for `eps^m`.
pub fn functional_identity_mc<F: LinearFunctional + ?Sized>(
    f: &F,
    gamma: &SuperElement,
    order: usize,
) -> Result<ExpIdentity<Scalar>, Error> {
    check_gamma(gamma, order)?;
    let pows = divided_powers(gamma, order);
    let mut maps = DescendantMaps::new(f);
    let phis: Vec<Scalar> = (1..=order)
        .map(|n| maps.phi(&vec![gamma.clone(); n]))
        .collect::<Result<_, _>>()?;
    let lhs = (1..=order).map(|m| f.evaluate(&pows[m])).collect();
    let rhs = (1..=order)
        .map(|m| bell_complete(m, &phis) * inv_factorial(m))
        .collect();
    Ok(ExpIdentity { lhs, rhs })
}

/// `f(lambda e^Gamma)` against `Phi^f_Gamma(lambda) e^{Phi^f(Gamma)}`, entry `m` for `eps^m`.
pub fn functional_identity_lambda<F: LinearFunctional + ?Sized>(
    f: &F,
    gamma: &SuperElement,
    lambda: &SuperElement,
    order: usize,
) -> Result<ExpIdentity<Scalar>, Error> {
    check_gamma(gamma, order)?;
    let pows = divided_powers(gamma, order);
    let mut maps = DescendantMaps::new(f);
    let phis: Vec<Scalar> = (1..=order)
        .map(|n| maps.phi(&vec![gamma.clone(); n]))
        .collect::<Result<_, _>>()?;
    let mut twisted = Vec::with_capacity(order + 1);
    for a in 0..=order {
        let mut args = vec![gamma.clone(); a];
        args.push(lambda.clone());
        twisted.push(maps.phi(&args)? * inv_factorial(a));
    }
    let exp_coeffs: Vec<Scalar> = (0..=order)
        .map(|b| bell_complete(b, &phis) * inv_factorial(b))
        .collect();
    let mut lhs = Vec::with_capacity(order + 1);
    let mut rhs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        lhs.push(f.evaluate(&(lambda * &pows[m])));
        let mut acc = Scalar::zero();
        for a in 0..=m {
            acc += &twisted[a] * &exp_coeffs[m - a];
        }
        rhs.push(acc);
    }
    Ok(ExpIdentity { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyparse::parse;
    use crate::superalgebra::VariableContext;
    use std::sync::Arc;

    fn fermat() -> DworkData {
        let ctx = Arc::new(VariableContext::new(2, vec![3]).unwrap());
        let g = parse("x0^3 + x1^3 + x2^3", &ctx).unwrap();
        DworkData::new(&ctx, vec![g]).unwrap()
    }

    #[test]
    fn eta_free_gamma_gives_zero_sides() {
        let d = fermat();
        let gamma = parse("y1*x0*x1*x2", d.context()).unwrap();
        let id = exp_identity_mc(&d, &gamma, 4).unwrap();
        assert!(id.lhs.iter().all(SuperElement::is_zero));
        assert!(id.rhs.iter().all(SuperElement::is_zero));
    }

    #[test]
    fn order_one_is_k_gamma() {
        let d = fermat();
        let gamma = parse("x0*e1*e2 + y1*x1*e2*e3", d.context()).unwrap();
        let id = exp_identity_mc(&d, &gamma, 1).unwrap();
        assert_eq!(id.lhs, vec![d.apply_k(&gamma)]);
        assert_eq!(id.rhs, vec![d.apply_k(&gamma)]);
    }

    #[test]
    fn identities_hold_with_odd_content() {
        let d = fermat();
        let gamma = parse("x0*e1*e2 + 1/2*y1*x1*e2*e3 + x2^2*y1", d.context()).unwrap();
        assert!(exp_identity_mc(&d, &gamma, 3).unwrap().holds());
        for lambda in ["x1*e2", "y1*x0^2 + x2", "e3*e4 - x0*e1*e2"] {
            let lambda = parse(lambda, d.context()).unwrap();
            assert!(exp_identity_lambda(&d, &gamma, &lambda, 3).unwrap().holds());
        }
    }

    #[test]
    fn rejects_odd_gamma() {
        let d = fermat();
        let gamma = parse("x0*e1", d.context()).unwrap();
        assert!(exp_identity_mc(&d, &gamma, 2).is_err());
        assert!(exp_identity_mc(&d, &parse("x0", d.context()).unwrap(), 0).is_err());
    }
}
