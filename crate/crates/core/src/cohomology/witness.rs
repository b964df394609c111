use num_traits::{One, Zero};

use crate::error::Error;
use crate::operators::DworkData;
use crate::superalgebra::{Scalar, SuperElement};

/// Both sides of `K_G(f R) = (-1)^|f| (lambda - c_G) f + K_G(f) R`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeWitness {
    pub charge: i64,
    pub lhs: SuperElement,
    pub rhs: SuperElement,
    /// `(lambda - c_G)^{-1} f R` when `lambda != c_G`; a `K_G`-preimage of
    /// `(-1)^|f| f` whenever `f` is `K_G`-closed.
    pub witness: Option<SuperElement>,
}

impl ChargeWitness {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates the charge identity for `f`, homogeneous in charge and parity.
pub fn charge_witness_check(d: &DworkData, f: &SuperElement) -> Result<ChargeWitness, Error> {
    let ctx = d.context();
    let charge = if f.is_zero() {
        ctx.background_charge()
    } else {
        f.homogeneous_charge().ok_or(Error::Inhomogeneous("charge"))?
    };
    let odd = f.is_odd().ok_or(Error::Inhomogeneous("parity"))?;
    let r = d.charge_witness_element();
    let fr = f * &r;
    let lhs = d.apply_k(&fr);
    let shift = Scalar::from_integer((charge - ctx.background_charge()).into());
    let mut rhs = &d.apply_k(f) * &r;
    rhs.add_scaled(f, &if odd { -shift.clone() } else { shift.clone() });
    let witness = (!shift.is_zero()).then(|| fr.scale(&(Scalar::one() / &shift)));
    Ok(ChargeWitness {
        charge,
        lhs,
        rhs,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyparse::parse;
    use crate::superalgebra::VariableContext;
    use std::sync::Arc;

    fn fermat() -> DworkData {
        let ctx = Arc::new(VariableContext::new(2, vec![3]).unwrap());
        DworkData::new(&ctx, vec![parse("x0^3 + x1^3 + x2^3", &ctx).unwrap()]).unwrap()
    }

    #[test]
    fn constant_at_background_charge() {
        let d = fermat();
        let w = charge_witness_check(&d, &SuperElement::one(d.context())).unwrap();
        assert!(w.lhs.is_zero() && w.rhs.is_zero());
        assert!(w.witness.is_none());
    }

    #[test]
    fn linear_form() {
        let d = fermat();
        let x0 = parse("x0", d.context()).unwrap();
        let w = charge_witness_check(&d, &x0).unwrap();
        assert_eq!(w.lhs, x0);
        assert!(w.holds());
        assert_eq!(d.apply_k(&w.witness.unwrap()), x0);
    }

    #[test]
    fn odd_and_open_elements() {
        let d = fermat();
        for s in ["x0^2*e3", "y1*x1*e1 + x2^2*e2", "x0*e2*e3 - 2*y1*e1*e3", "y1*x0^2*x1^2"] {
            let f = parse(s, d.context()).unwrap();
            let w = charge_witness_check(&d, &f).unwrap();
            assert!(w.holds(), "{s}");
        }
        let mixed = parse("x0 + x1^2", d.context()).unwrap();
        assert!(charge_witness_check(&d, &mixed).is_err());
    }
}
