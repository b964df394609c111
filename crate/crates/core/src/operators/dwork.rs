use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;
use crate::superalgebra::{Scalar, SuperElement, VariableContext};

/// Defining polynomials `G_1..G_k`, the potential `S = sum y_l G_l` and its
/// gradient `dS/dq_mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct DworkData {
    ctx: Arc<VariableContext>,
    polys: Vec<SuperElement>,
    potential: SuperElement,
    gradient: Vec<SuperElement>,
}

/// Checks that `p` is zero or homogeneous of degree `d` in the `x` variables only.
pub(crate) fn check_form(ctx: &VariableContext, p: &SuperElement, d: u32, label: &str) -> Result<(), Error> {
    for (m, _) in p.terms() {
        if m.eta_len() > 0 {
            return Err(Error::InvalidInput(format!("{label} contains odd variables")));
        }
        if (0..ctx.k()).any(|i| m.exps()[i] > 0) {
            return Err(Error::InvalidInput(format!("{label} must not involve y variables")));
        }
        if m.q_degree() != d {
            return Err(Error::InvalidInput(format!("{label} is not homogeneous of degree {d}")));
        }
    }
    Ok(())
}

impl DworkData {
    /// Builds `S = sum y_l G_l`; each `G_l` must be a nonzero form of degree `d_l` in `x`.
    pub fn new(ctx: &Arc<VariableContext>, polys: Vec<SuperElement>) -> Result<Self, Error> {
        if polys.len() != ctx.k() {
            return Err(Error::InvalidInput(format!(
                "expected {} defining polynomials, got {}",
                ctx.k(),
                polys.len()
            )));
        }
        let mut potential = SuperElement::zero(ctx);
        for (l, g) in polys.iter().enumerate() {
            if g.context().as_ref() != ctx.as_ref() {
                return Err(Error::ContextMismatch);
            }
            if g.is_zero() {
                return Err(Error::InvalidInput(format!("G{} is zero", l + 1)));
            }
            check_form(ctx, g, ctx.degrees()[l], &format!("G{}", l + 1))?;
            let y = SuperElement::q_var(ctx, ctx.y(l + 1))?;
            potential += &(&y * g);
        }
        let gradient = (0..ctx.num_vars()).map(|mu| potential.diff_q(mu)).collect();
        Ok(Self {
            ctx: ctx.clone(),
            polys,
            potential,
            gradient,
        })
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn polys(&self) -> &[SuperElement] {
        &self.polys
    }

    pub fn potential(&self) -> &SuperElement {
        &self.potential
    }

    pub fn gradient(&self) -> &[SuperElement] {
        &self.gradient
    }

    /// `Q_G = sum_mu dS/dq_mu d/deta_mu`.
    pub fn apply_q(&self, a: &SuperElement) -> SuperElement {
        let mut out = SuperElement::zero(&self.ctx);
        for mu in self.eta_support(a) {
            let d = a.diff_eta(mu);
            if !d.is_zero() {
                out += &(&self.gradient[mu] * &d);
            }
        }
        out
    }

    /// `K_G = Q_G + Delta`.
    pub fn apply_k(&self, a: &SuperElement) -> SuperElement {
        let mut out = self.apply_q(a);
        out += &apply_delta(a);
        out
    }

    /// `l_2(a, b) = K(ab) - K(a) b - (-1)^|a| a K(b)`.
    pub fn ell2(&self, a: &SuperElement, b: &SuperElement) -> Result<SuperElement, Error> {
        let odd = a.is_odd().ok_or(Error::Inhomogeneous("parity"))?;
        Ok(self.ell2_unchecked(a, b, odd))
    }

    fn ell2_unchecked(&self, a: &SuperElement, b: &SuperElement, a_odd: bool) -> SuperElement {
        let mut out = self.apply_k(&(a * b));
        out -= &(&self.apply_k(a) * b);
        let t = a * &self.apply_k(b);
        if a_odd {
            out += &t;
        } else {
            out -= &t;
        }
        out
    }

    /// Descendant bracket `l_n`, with `l_1 = K`.
    pub fn ell_n(&self, args: &[SuperElement]) -> Result<SuperElement, Error> {
        if args.is_empty() {
            return Err(Error::InvalidInput("l_n needs n >= 1".into()));
        }
        if args[..args.len() - 1].iter().any(|a| a.is_odd().is_none()) {
            return Err(Error::Inhomogeneous("parity"));
        }
        let mut memo = HashMap::new();
        Ok(self.ell_n_memo(args, &mut memo))
    }

    fn ell_n_memo(&self, args: &[SuperElement], memo: &mut HashMap<Vec<SuperElement>, SuperElement>) -> SuperElement {
        let n = args.len();
        if n == 1 {
            return self.apply_k(&args[0]);
        }
        if let Some(v) = memo.get(args) {
            return v.clone();
        }
        let odd = |a: &SuperElement| a.is_odd().unwrap_or(false);
        let value = if n == 2 {
            self.ell2_unchecked(&args[0], &args[1], odd(&args[0]))
        } else {
            let head = &args[..n - 2];
            let (xa, xb) = (&args[n - 2], &args[n - 1]);

            let mut merged = head.to_vec();
            merged.push(xa * xb);
            let mut out = self.ell_n_memo(&merged, memo);

            let first = self.ell_n_memo(&args[..n - 1], memo);
            out -= &(&first * xb);

            let mut skip = head.to_vec();
            skip.push(xb.clone());
            let second = self.ell_n_memo(&skip, memo);
            let head_parity = head.iter().filter(|a| odd(a)).count() % 2;
            let exponent = usize::from(odd(xa)) * (1 + head_parity);
            let t = xa * &second;
            if exponent % 2 == 1 {
                out += &t;
            } else {
                out -= &t;
            }
            out
        };
        memo.insert(args.to_vec(), value.clone());
        value
    }

    /// `R = sum_mu ch(q_mu) q_mu eta_mu`, the charge witness.
    pub fn charge_witness_element(&self) -> SuperElement {
        let mut r = SuperElement::zero(&self.ctx);
        for mu in 0..self.ctx.num_vars() {
            let q = SuperElement::q_var(&self.ctx, mu).expect("index in range");
            let e = SuperElement::eta_var(&self.ctx, mu).expect("index in range");
            r.add_scaled(&(&q * &e), &Scalar::from_integer(self.ctx.q_charge(mu).into()));
        }
        r
    }

    fn eta_support(&self, a: &SuperElement) -> Vec<usize> {
        let mut seen = vec![false; self.ctx.num_vars()];
        for (m, _) in a.terms() {
            for mu in m.eta() {
                seen[mu] = true;
            }
        }
        (0..seen.len()).filter(|&mu| seen[mu]).collect()
    }
}

/// `Delta = sum_mu d/dq_mu d/deta_mu`.
pub fn apply_delta(a: &SuperElement) -> SuperElement {
    let ctx = a.context().clone();
    let mut out = SuperElement::zero(&ctx);
    for (m, c) in a.terms() {
        for mu in m.eta() {
            let Some((sign, lowered)) = m.diff_eta(&ctx, mu) else {
                continue;
            };
            let Some((e, lowered)) = lowered.diff_q(&ctx, mu) else {
                continue;
            };
            let v = c * Scalar::from_integer(e.into());
            out.add_term(lowered, if sign < 0 { -v } else { v });
        }
    }
    out
}
