use num_traits::{One, Zero};

use super::data::DeformationData;
use crate::cohomology::QuotientPresentation;
use crate::error::Error;
use crate::linalg::Matrix;
use crate::polyparse::render;
use crate::superalgebra::scalar::format_scalar;
use crate::superalgebra::{Scalar, SuperElement, SuperMonomial};

/// Representatives `u_alpha` of a basis of the deformed quotient.
///
/// The first `i_prime.len()` elements are `y_i H_i` times the charge factor,
/// one per nonzero `H_i`; the rest are `G`-basis monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct UBasis {
    pub elements: Vec<SuperElement>,
    /// 0-based `i` of each leading element.
    pub i_prime: Vec<usize>,
    /// `1`, `h` or `y_j^m h` according to the sign of `c_G`.
    pub factor: SuperElement,
    /// `G`-basis position of each element past the leading ones.
    pub extension: Vec<usize>,
}

impl UBasis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// Number of leading elements, `|I'|`.
    pub fn leading(&self) -> usize {
        self.i_prime.len()
    }
}

/// Smallest monomial `x^a` of degree `deg`.
fn smallest_x_monomial(p: &QuotientPresentation, deg: u32) -> Result<SuperMonomial, Error> {
    let ctx = p.context();
    let mut exps = vec![0; ctx.num_vars()];
    // the largest exponent on the last x is smallest lexicographically
    exps[ctx.x(ctx.n())] = deg;
    SuperMonomial::new(ctx, exps, vec![])
}

/// The factor completing `y_i H_i` to charge `c_G`.
///
/// For `c_G < 0` it is `y_j^m h` with `m d_j` minimal among `m_i d_i >= -c_G`,
/// ties going to the smallest `y_j^m`.
pub fn charge_factor(p: &QuotientPresentation) -> Result<SuperElement, Error> {
    let ctx = p.context();
    let c_g = p.background_charge();
    if c_g >= 0 {
        let h = smallest_x_monomial(p, c_g as u32)?;
        return Ok(SuperElement::from_monomial(ctx, h, Scalar::one()));
    }
    let need = (-c_g) as u32;
    let mut best: Option<(u32, SuperMonomial)> = None;
    for (i, &d) in ctx.degrees().iter().enumerate() {
        let m = need.div_ceil(d);
        let mut exps = vec![0; ctx.num_vars()];
        exps[ctx.y(i + 1)] = m;
        let ym = SuperMonomial::new(ctx, exps, vec![])?;
        let cost = m * d;
        if best.as_ref().is_none_or(|(c, b)| cost < *c || (cost == *c && ym < *b)) {
            best = Some((cost, ym));
        }
    }
    let (cost, ym) = best.ok_or_else(|| Error::Internal("no y variables".into()))?;
    let h = smallest_x_monomial(p, cost - need)?;
    let (m, _) = ym
        .mul(&h)
        .ok_or_else(|| Error::Internal("even monomials always multiply".into()))?;
    Ok(SuperElement::from_monomial(ctx, m, Scalar::one()))
}

/// Builds `{u_alpha}`: the `I'` elements, checked independent modulo
/// `K_U`, then `G`-basis monomials appended greedily while they stay
/// independent.
///
/// `factor` overrides the charge factor when `c_G != 0`; it must be free of
/// odd variables and of charge `c_G`.
pub fn u_basis(
    def: &DeformationData,
    p_g: &QuotientPresentation,
    p_u: &QuotientPresentation,
    factor: Option<SuperElement>,
) -> Result<UBasis, Error> {
    let ctx = def.context();
    if p_g.dwork() != def.base() || p_u.dwork() != def.deformed() {
        return Err(Error::InvalidInput("presentations do not match the deformation".into()));
    }
    if p_g.dimension() != p_u.dimension() {
        return Err(Error::Dimension(format!(
            "quotients of G and U have dimensions {} and {}",
            p_g.dimension(),
            p_u.dimension()
        )));
    }
    let c_g = p_g.background_charge();
    let factor = match factor {
        None => charge_factor(p_g)?,
        Some(_) if c_g == 0 => {
            return Err(Error::InvalidInput("no charge factor is used when c_G = 0".into()));
        }
        Some(f) => {
            if f.is_zero() || !f.is_eta_free() || f.homogeneous_charge() != Some(c_g) {
                return Err(Error::Charge(format!(
                    "the factor must be a nonzero even element of charge {c_g}"
                )));
            }
            f
        }
    };
    let dim = p_g.dimension();
    let ell = def.i_prime().len();
    if ell >= dim {
        return Err(Error::Dimension(format!(
            "the basis has {dim} elements but {ell} polynomials are deformed"
        )));
    }

    let mut elements = Vec::with_capacity(dim);
    let mut rows = Vec::with_capacity(dim);
    for &i in def.i_prime() {
        let y = SuperElement::q_var(ctx, ctx.y(i + 1))?;
        let u = &(&y * &def.h()[i]) * &factor;
        rows.push(p_u.reduce(&u)?.coefficients);
        elements.push(u);
    }
    let m = Matrix::from_rows(rows.clone())?;
    if m.rank() < ell {
        return Err(Error::Dependent(dependency(&m, &elements)));
    }

    let mut extension = Vec::new();
    for rho in 0..dim {
        if elements.len() == dim {
            break;
        }
        let e = p_g.basis_element(rho);
        let mut trial = rows.clone();
        trial.push(p_u.reduce(&e)?.coefficients);
        if Matrix::from_rows(trial.clone())?.rank() == trial.len() {
            rows = trial;
            elements.push(e);
            extension.push(rho);
        }
    }
    if elements.len() != dim {
        return Err(Error::Internal("basis extension stopped short".into()));
    }
    Ok(UBasis {
        elements,
        i_prime: def.i_prime().to_vec(),
        factor,
        extension,
    })
}

/// Renders one relation among the reduced rows of `m`.
fn dependency(m: &Matrix, elements: &[SuperElement]) -> String {
    let relation = m.transpose().nullspace().into_iter().next().unwrap_or_default();
    let terms: Vec<String> = relation
        .iter()
        .zip(elements)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, u)| format!("({})*({})", format_scalar(c), render(u)))
        .collect();
    format!("{} lies in the image of K_U", terms.join(" + "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::build_presentation;
    use crate::deformation::build_deformation;
    use crate::operators::DworkData;
    use crate::polyparse::parse;
    use crate::superalgebra::VariableContext;
    use std::sync::Arc;

    fn setup(
        n: usize,
        degrees: Vec<u32>,
        g: &[&str],
        h: &[&str],
    ) -> (DeformationData, QuotientPresentation, QuotientPresentation) {
        let ctx = Arc::new(VariableContext::new(n, degrees).unwrap());
        let polys = g.iter().map(|s| parse(s, &ctx).unwrap()).collect();
        let base = DworkData::new(&ctx, polys).unwrap();
        let h = h.iter().map(|s| parse(s, &ctx).unwrap()).collect();
        let (def, p_u) = build_deformation(&base, h).unwrap();
        let p_g = build_presentation(&base).unwrap();
        (def, p_g, p_u)
    }

    #[test]
    fn hesse() {
        let (def, p_g, p_u) = setup(2, vec![3], &["x0^3 + x1^3 + x2^3"], &["x0*x1*x2"]);
        let u = u_basis(&def, &p_g, &p_u, None).unwrap();
        let rendered: Vec<String> = u.elements.iter().map(render).collect();
        assert_eq!(rendered, ["y1*x0*x1*x2", "1"]);
        assert_eq!(u.extension, [0]);
        assert_eq!(u.leading(), 1);
    }

    #[test]
    fn zero_deformation_keeps_the_basis() {
        let (def, p_g, p_u) = setup(2, vec![3], &["x0^3 + x1^3 + x2^3"], &["0"]);
        let u = u_basis(&def, &p_g, &p_u, None).unwrap();
        let e: Vec<SuperElement> = (0..p_g.dimension()).map(|r| p_g.basis_element(r)).collect();
        assert_eq!(u.elements, e);
        assert_eq!(u.extension, [0, 1]);
    }

    #[test]
    fn positive_charge_factor() {
        let (def, p_g, p_u) = setup(2, vec![5], &["x0^5 + x1^5 + x2^5"], &["x0^2*x1^2*x2"]);
        assert_eq!(p_g.background_charge(), 2);
        let u = u_basis(&def, &p_g, &p_u, None).unwrap();
        assert_eq!(render(&u.factor), "x2^2");
        assert_eq!(u.elements[0].homogeneous_charge(), Some(2));
        assert_eq!(render(&u.elements[0]), "y1*x0^2*x1^2*x2^3");
        assert_eq!(u.dimension(), p_g.dimension());

        let bad = parse("x0", p_g.context()).unwrap();
        assert!(matches!(u_basis(&def, &p_g, &p_u, Some(bad)), Err(Error::Charge(_))));
        let other = parse("x0*x1", p_g.context()).unwrap();
        let u = u_basis(&def, &p_g, &p_u, Some(other)).unwrap();
        assert_eq!(render(&u.elements[0]), "y1*x0^3*x1^3*x2");
    }

    #[test]
    fn negative_charge_factor() {
        let (def, p_g, p_u) = setup(3, vec![3], &["x0^3 + x1^3 + x2^3 + x3^3"], &["x0*x1*x3"]);
        assert_eq!(p_g.background_charge(), -1);
        let f = charge_factor(&p_g).unwrap();
        assert_eq!(render(&f), "y1*x3^2");
        let u = u_basis(&def, &p_g, &p_u, None).unwrap();
        assert_eq!(u.elements[0].homogeneous_charge(), Some(-1));
        assert_eq!(u.dimension(), 6);

        // without x3 in H the default factor y1*x3^2 makes u exact
        let (def, p_g, p_u) = setup(3, vec![3], &["x0^3 + x1^3 + x2^3 + x3^3"], &["x0*x1*x2"]);
        assert!(matches!(u_basis(&def, &p_g, &p_u, None), Err(Error::Dependent(_))));
    }

    #[test]
    fn dependent_leading_elements() {
        let (def, p_g, p_u) = setup(2, vec![5], &["x0^5 + x1^5 + x2^5"], &["x0^4*x1"]);
        // u = (y1*x0^7*x1) * y1*dU/dx2 / 5 with no x2 in the cofactor, so u = K_U(c * y1*x0^7*x1*e3)
        let f = parse("y1*x0^3*x2^4", p_g.context()).unwrap();
        match u_basis(&def, &p_g, &p_u, Some(f)) {
            Err(Error::Dependent(msg)) => assert!(msg.contains("y1^2*x0^7*x1*x2^4"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let (def, p_g, p_u) = setup(2, vec![3], &["x0^3 + x1^3 + x2^3"], &["x0*x1*x2"]);
        let one = SuperElement::one(p_g.context());
        assert!(matches!(
            u_basis(&def, &p_g, &p_u, Some(one)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn every_basis_element_deformed() {
        let (def, p_g, p_u) = setup(
            3,
            vec![2, 2],
            &["x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2"],
            &["x0*x1", "x2*x3"],
        );
        assert_eq!(p_g.dimension(), 2);
        assert!(matches!(u_basis(&def, &p_g, &p_u, None), Err(Error::Dimension(_))));
    }
}
