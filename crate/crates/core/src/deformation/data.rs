use num_traits::One;
use std::sync::Arc;

use crate::cohomology::{build_presentation, QuotientPresentation};
use crate::error::Error;
use crate::operators::DworkData;
use crate::polyparse::render;
use crate::superalgebra::{Scalar, SuperElement, VariableContext};

/// A deformation `G -> U = G + H` with `Gamma = sum y_i H_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationData {
    base: DworkData,
    h: Vec<SuperElement>,
    gamma: SuperElement,
    deformed: DworkData,
    i_prime: Vec<usize>,
}

impl DeformationData {
    /// Each `H_i` is zero or a form of degree `d_i` in `x`.
    pub fn new(base: &DworkData, h: Vec<SuperElement>) -> Result<Self, Error> {
        let ctx = base.context();
        if h.len() != ctx.k() {
            return Err(Error::InvalidInput(format!(
                "expected {} deformation polynomials, got {}",
                ctx.k(),
                h.len()
            )));
        }
        let mut gamma = SuperElement::zero(ctx);
        let mut deformed_polys = Vec::with_capacity(h.len());
        let mut i_prime = Vec::new();
        for (i, hi) in h.iter().enumerate() {
            if hi.context().as_ref() != ctx.as_ref() {
                return Err(Error::ContextMismatch);
            }
            crate::operators::check_form(ctx, hi, ctx.degrees()[i], &format!("H{}", i + 1))?;
            if !hi.is_zero() {
                i_prime.push(i);
            }
            let y = SuperElement::q_var(ctx, ctx.y(i + 1))?;
            gamma += &(&y * hi);
            deformed_polys.push(&base.polys()[i] + hi);
        }
        let deformed = DworkData::new(ctx, deformed_polys)?;
        mc_check(base, &gamma)?;
        if deformed.potential() != &(base.potential() + &gamma) {
            return Err(Error::Internal("deformed potential differs from S + Gamma".into()));
        }
        Ok(Self {
            base: base.clone(),
            h,
            gamma,
            deformed,
            i_prime,
        })
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        self.base.context()
    }

    pub fn base(&self) -> &DworkData {
        &self.base
    }

    pub fn h(&self) -> &[SuperElement] {
        &self.h
    }

    pub fn gamma(&self) -> &SuperElement {
        &self.gamma
    }

    pub fn deformed(&self) -> &DworkData {
        &self.deformed
    }

    /// 0-based indices `i` with `H_i != 0`.
    pub fn i_prime(&self) -> &[usize] {
        &self.i_prime
    }

    /// `K_Gamma(lambda) = K_G(lambda) + l_2(Gamma, lambda)`.
    pub fn k_gamma(&self, lambda: &SuperElement) -> SuperElement {
        k_gamma(&self.base, &self.gamma, lambda)
    }

    /// Presentation of the deformed quotient; fails the guard when `U` is singular.
    pub fn deformed_presentation(&self) -> Result<QuotientPresentation, Error> {
        build_presentation(&self.deformed)
    }
}

/// Builds the deformation and the presentation of its quotient.
pub fn build_deformation(
    base: &DworkData,
    h: Vec<SuperElement>,
) -> Result<(DeformationData, QuotientPresentation), Error> {
    let data = DeformationData::new(base, h)?;
    let p = data.deformed_presentation()?;
    Ok((data, p))
}

/// `K_G(Gamma) + l_2(Gamma, Gamma) / 2 = 0` for an even `Gamma`; the
/// error names the leading residual term.
pub fn mc_check(d: &DworkData, gamma: &SuperElement) -> Result<(), Error> {
    if gamma.homogeneous_degree() != Some(0) {
        return Err(Error::InvalidInput("Gamma must have cohomological degree 0".into()));
    }
    let mut residual = d.apply_k(gamma);
    let half = Scalar::one() / Scalar::from_integer(2.into());
    residual.add_scaled(&d.ell2(gamma, gamma)?, &half);
    match residual.leading() {
        None => Ok(()),
        Some((m, c)) => {
            let term = SuperElement::from_monomial(d.context(), m.clone(), c.clone());
            Err(Error::MaurerCartan(format!(
                "residual has {} terms, leading {}",
                residual.len(),
                render(&term)
            )))
        }
    }
}

/// `K_G(lambda) + l_2(Gamma, lambda)` for an even `Gamma`.
pub fn k_gamma(d: &DworkData, gamma: &SuperElement, lambda: &SuperElement) -> SuperElement {
    let mut out = d.apply_k(lambda);
    let mut bracket = d.apply_k(&(gamma * lambda));
    bracket -= &(&d.apply_k(gamma) * lambda);
    bracket -= &(gamma * &d.apply_k(lambda));
    out += &bracket;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyparse::parse;

    fn cubic() -> DworkData {
        let ctx = Arc::new(VariableContext::new(2, vec![3]).unwrap());
        DworkData::new(&ctx, vec![parse("x0^3 + x1^3 + x2^3", &ctx).unwrap()]).unwrap()
    }

    #[test]
    fn hesse_member() {
        let g = cubic();
        let ctx = g.context().clone();
        let (def, p) = build_deformation(&g, vec![parse("x0*x1*x2", &ctx).unwrap()]).unwrap();
        assert_eq!(
            def.deformed().polys()[0],
            parse("x0^3 + x1^3 + x2^3 + x0*x1*x2", &ctx).unwrap()
        );
        assert_eq!(def.i_prime(), &[0]);
        assert_eq!(p.dimension(), 2);
        let gr = def.gamma().grade();
        assert_eq!((gr.len(), gr[0].charge, gr[0].weight, gr[0].degree), (1, 0, 1, 0));

        let lambda = parse("x0*e2", &ctx).unwrap();
        assert_eq!(def.k_gamma(&lambda), def.deformed().apply_k(&lambda));
        assert_eq!(
            def.k_gamma(&lambda),
            parse("1 + 3*y1*x0^3 + y1*x0*x1*x2", &ctx).unwrap()
        );
        assert!(def.k_gamma(&parse("y1*x0^2*x2", &ctx).unwrap()).is_zero());
    }

    #[test]
    fn zero_deformation() {
        let g = cubic();
        let ctx = g.context().clone();
        let def = DeformationData::new(&g, vec![SuperElement::zero(&ctx)]).unwrap();
        assert!(def.gamma().is_zero());
        assert!(def.i_prime().is_empty());
        assert_eq!(def.deformed(), &g);
        let lambda = parse("x1^2*e3 + y1*e1", &ctx).unwrap();
        assert_eq!(def.k_gamma(&lambda), g.apply_k(&lambda));
    }

    #[test]
    fn rejects_bad_input() {
        let g = cubic();
        let ctx = g.context().clone();
        let x03 = parse("x0^3", &ctx).unwrap();
        assert!(DeformationData::new(&g, vec![x03.clone(), x03.clone()]).is_err());
        // U = 0 is not a complete intersection
        assert!(DeformationData::new(&g, vec![-&g.polys()[0]]).is_err());
        assert!(DeformationData::new(&g, vec![parse("x0^2", &ctx).unwrap()]).is_err());
        assert!(mc_check(&g, &parse("y1*x0^3", &ctx).unwrap()).is_ok());
        assert!(mc_check(&g, &parse("x0*e2", &ctx).unwrap()).is_err());
        assert!(matches!(
            mc_check(&g, &parse("x0*x1*e2*e3", &ctx).unwrap()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            mc_check(&g, &parse("x0*e1*e2 + y1*x0", &ctx).unwrap()),
            Err(Error::InvalidInput(_))
        ));
    }
}
