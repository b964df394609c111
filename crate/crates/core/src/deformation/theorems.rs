use num_traits::{One, Zero};

use crate::cohomology::QuotientPresentation;
use crate::error::Error;
use crate::operators::{bell_complete_all, DescendantMaps, LinearFunctional};
use crate::superalgebra::scalar::factorial;
use crate::superalgebra::{Scalar, SuperElement};

/// `Gamma^m / m!` for `m = 0..=order`.
fn divided_powers(gamma: &SuperElement, order: usize) -> Vec<SuperElement> {
    let mut out = vec![SuperElement::one(gamma.context())];
    for m in 1..=order {
        let inv = Scalar::one() / Scalar::from_integer(m.into());
        let next = (&out[m - 1] * gamma).scale(&inv);
        out.push(next);
    }
    out
}

fn check_u(p: &QuotientPresentation, u: &SuperElement) -> Result<(), Error> {
    if !u.is_eta_free() {
        return Err(Error::InvalidInput("u must be free of odd variables".into()));
    }
    let c_g = p.background_charge();
    if !u.is_zero() && u.homogeneous_charge() != Some(c_g) {
        return Err(Error::Charge(format!("u must be homogeneous of charge {c_g}")));
    }
    Ok(())
}

fn check_gamma(gamma: &SuperElement) -> Result<(), Error> {
    if !gamma.is_eta_free() {
        return Err(Error::InvalidInput("Gamma must be free of odd variables".into()));
    }
    Ok(())
}

/// Cumulative reductions of `sum_{m <= M} u Gamma^m / m!` for `M = 0..=order`.
pub fn thm1_coefficients(
    p_g: &QuotientPresentation,
    gamma: &SuperElement,
    u: &SuperElement,
    order: usize,
) -> Result<Vec<Vec<Scalar>>, Error> {
    check_u(p_g, u)?;
    check_gamma(gamma)?;
    let mut acc = vec![Scalar::zero(); p_g.dimension()];
    let mut out = Vec::with_capacity(order + 1);
    for g in divided_powers(gamma, order) {
        let r = p_g.reduce(&(u * &g))?;
        for (a, c) in acc.iter_mut().zip(r.coefficients) {
            *a += c;
        }
        out.push(acc.clone());
    }
    Ok(out)
}

/// Partial sums for `M = 0..=order` of
/// `f(u) + sum_{1 <= m <= M} sum_{j+k=m} B_j(phi_1(Gamma), .., phi_j(Gamma^j)) phi_{k+1}(Gamma^k, u) / (j! k!)`.
pub fn thm2_eval<F: LinearFunctional + ?Sized>(
    f: &F,
    gamma: &SuperElement,
    u: &SuperElement,
    order: usize,
) -> Result<Vec<Scalar>, Error> {
    check_gamma(gamma)?;
    let mut phi = DescendantMaps::new(f);
    // xs[i] = phi_{i+1}(Gamma, .., Gamma)
    let mut xs = Vec::with_capacity(order);
    for i in 1..=order {
        xs.push(phi.phi(&vec![gamma.clone(); i])?);
    }
    let bell = bell_complete_all(order, &xs);
    // ys[k] = phi_{k+1}(Gamma^k, u)
    let mut ys = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut args = vec![gamma.clone(); k];
        args.push(u.clone());
        ys.push(phi.phi(&args)?);
    }
    let mut out = Vec::with_capacity(order + 1);
    let mut acc = ys[0].clone();
    out.push(acc.clone());
    for m in 1..=order {
        for (j, b) in bell.iter().enumerate().take(m + 1) {
            let k = m - j;
            let w = factorial(j as u32) * factorial(k as u32);
            acc += b * &ys[k] / w;
        }
        out.push(acc.clone());
    }
    Ok(out)
}

/// Partial sums of `f(u Gamma^m / m!)` for `M = 0..=order`.
pub fn thm2_direct<F: LinearFunctional + ?Sized>(
    f: &F,
    gamma: &SuperElement,
    u: &SuperElement,
    order: usize,
) -> Result<Vec<Scalar>, Error> {
    check_gamma(gamma)?;
    let mut acc = Scalar::zero();
    Ok(divided_powers(gamma, order)
        .iter()
        .map(|g| {
            acc += f.evaluate(&(u * g));
            acc.clone()
        })
        .collect())
}

/// `v . reduce(a)` on the charge-`c_G`, degree-0 part of `a`; the rest is
/// `K_G`-exact and contributes nothing. A cochain functional on `P_G`.
pub struct ReductionFunctional<'a> {
    pub presentation: &'a QuotientPresentation,
    pub row: Vec<Scalar>,
}

impl LinearFunctional for ReductionFunctional<'_> {
    fn evaluate(&self, a: &SuperElement) -> Scalar {
        let c_g = self.presentation.background_charge();
        let part = a.filter(|m| m.eta_len() == 0 && m.charge(self.presentation.context()) == c_g);
        if part.is_zero() {
            return Scalar::zero();
        }
        let r = self
            .presentation
            .reduce(&part)
            .expect("charge-c_G elements without odd variables always reduce");
        r.coefficients.iter().zip(&self.row).map(|(c, v)| c * v).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::build_presentation;
    use crate::operators::DworkData;
    use crate::polyparse::parse;
    use crate::superalgebra::scalar::{int, ratio};
    use crate::superalgebra::VariableContext;
    use std::sync::Arc;

    fn cubic() -> QuotientPresentation {
        let ctx = Arc::new(VariableContext::new(2, vec![3]).unwrap());
        let d = DworkData::new(&ctx, vec![parse("x0^3 + x1^3 + x2^3", &ctx).unwrap()]).unwrap();
        build_presentation(&d).unwrap()
    }

    #[test]
    fn thm1_hesse() {
        let p = cubic();
        let ctx = p.context().clone();
        let gamma = parse("y1*x0*x1*x2", &ctx).unwrap();
        let one = SuperElement::one(&ctx);
        let seq = thm1_coefficients(&p, &gamma, &one, 3).unwrap();
        assert_eq!(seq[0], [int(1), int(0)]);
        assert_eq!(seq[1], [int(1), int(1)]);
        assert_eq!(seq[2], [int(1), int(1)]);
        assert_eq!(seq[3], [int(1) + ratio(-1, 162), int(1)]);
        let seq = thm1_coefficients(&p, &gamma, &gamma, 0).unwrap();
        assert_eq!(seq, [[int(0), int(1)]]);
        assert!(matches!(
            thm1_coefficients(&p, &gamma, &parse("x0", &ctx).unwrap(), 2),
            Err(Error::Charge(_))
        ));
    }

    #[test]
    fn thm1_constant_without_deformation() {
        let p = cubic();
        let ctx = p.context().clone();
        let u = parse("y1*x0^3 + 2", &ctx).unwrap();
        let seq = thm1_coefficients(&p, &SuperElement::zero(&ctx), &u, 4).unwrap();
        assert!(seq.iter().all(|v| v == &seq[0]));
        assert_eq!(seq[0], p.reduce(&u).unwrap().coefficients);
    }

    #[test]
    fn bell_route_matches_direct_route() {
        let p = cubic();
        let ctx = p.context().clone();
        let gamma = parse("y1*x0*x1*x2", &ctx).unwrap();
        let f = ReductionFunctional {
            presentation: &p,
            row: vec![ratio(3, 7), ratio(-2, 5)],
        };
        for u in ["1", "y1*x0*x1*x2"] {
            let u = parse(u, &ctx).unwrap();
            let bell = thm2_eval(&f, &gamma, &u, 5).unwrap();
            let direct = thm2_direct(&f, &gamma, &u, 5).unwrap();
            assert_eq!(bell, direct);
        }
    }

    #[test]
    fn order_one_expansion() {
        let p = cubic();
        let ctx = p.context().clone();
        let gamma = parse("y1*x0*x1*x2 + y1*x0^3", &ctx).unwrap();
        let u = SuperElement::one(&ctx);
        let f = ReductionFunctional {
            presentation: &p,
            row: vec![int(1), int(1)],
        };
        let s = thm2_eval(&f, &gamma, &u, 1).unwrap();
        assert_eq!(s[1], f.evaluate(&u) + f.evaluate(&(&u * &gamma)));
    }

    #[test]
    fn zero_gamma_is_constant() {
        let p = cubic();
        let ctx = p.context().clone();
        let f = ReductionFunctional {
            presentation: &p,
            row: vec![int(2), int(-1)],
        };
        let u = parse("y1*x0*x1*x2", &ctx).unwrap();
        let s = thm2_eval(&f, &SuperElement::zero(&ctx), &u, 4).unwrap();
        assert!(s.iter().all(|v| v == &int(-1)));
    }
}
