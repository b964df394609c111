use num_traits::{One, Signed};

use crate::superalgebra::scalar::format_scalar;
use crate::superalgebra::{SuperElement, SuperMonomial, VariableContext};

/// Factors of a monomial joined by `*`: `y`s, then `x`s, then `e`s.
/// The unit monomial renders as the empty string.
pub fn render_monomial(ctx: &VariableContext, m: &SuperMonomial) -> String {
    let mut parts = Vec::new();
    for (mu, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.q_name(mu)),
            _ => parts.push(format!("{}^{e}", ctx.q_name(mu))),
        }
    }
    parts.extend(m.eta().map(|mu| ctx.eta_name(mu)));
    parts.join("*")
}

/// Canonical text: terms in decreasing monomial order, `0` for zero.
pub fn render(a: &SuperElement) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let ctx = a.context();
    let mut out = String::new();
    for (i, (m, c)) in a.terms().rev().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = c.abs();
        let factors = render_monomial(ctx, m);
        if factors.is_empty() {
            out.push_str(&format_scalar(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&factors);
        } else {
            out.push_str(&format_scalar(&magnitude));
            out.push('*');
            out.push_str(&factors);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use std::sync::Arc;

    #[test]
    fn canonical_forms() {
        let c = Arc::new(VariableContext::new(2, vec![3]).unwrap());
        assert_eq!(render(&SuperElement::zero(&c)), "0");
        let a = parse("1 - 1/3*x0*e2 + x2*x1*y1", &c).unwrap();
        assert_eq!(render(&a), "y1*x1*x2 - 1/3*x0*e2 + 1");
        assert_eq!(render(&parse("-7/2", &c).unwrap()), "-7/2");
        assert_eq!(render(&parse("e2*e1*x0^2", &c).unwrap()), "-x0^2*e1*e2");
    }
}
