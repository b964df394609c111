use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use super::solver::WeightSolver;
use crate::error::Error;
use crate::operators::DworkData;
use crate::superalgebra::{Scalar, SuperElement, SuperMonomial, VariableContext};

/// Weights past `n - k` whose complement must vanish before a presentation is accepted.
pub const DEFAULT_SLACK: u32 = 2;

/// A monomial basis of `A^0_{c_G} / K_G(A^{-1})` with the per-weight
/// solver data used by [`QuotientPresentation::reduce`].
///
/// Basis elements are ordered by weight, then increasing canonical order.
pub struct QuotientPresentation {
    dwork: DworkData,
    slack: u32,
    basis: Vec<SuperMonomial>,
    basis_index: HashMap<SuperMonomial, usize>,
    solvers: RwLock<BTreeMap<u32, Arc<WeightSolver>>>,
}

/// `input = sum_rho coefficients[rho] e_rho + K_G(certificate)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionResult {
    pub coefficients: Vec<Scalar>,
    pub certificate: SuperElement,
}

impl fmt::Debug for QuotientPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientPresentation")
            .field("context", self.context())
            .field("basis", &self.basis)
            .field("slack", &self.slack)
            .finish_non_exhaustive()
    }
}

impl Clone for QuotientPresentation {
    fn clone(&self) -> Self {
        Self {
            dwork: self.dwork.clone(),
            slack: self.slack,
            basis: self.basis.clone(),
            basis_index: self.basis_index.clone(),
            solvers: RwLock::new(self.solvers.read().expect("solver cache poisoned").clone()),
        }
    }
}

/// Builds the presentation with the default guard slack.
pub fn build_presentation(d: &DworkData) -> Result<QuotientPresentation, Error> {
    QuotientPresentation::build(d, DEFAULT_SLACK)
}

impl QuotientPresentation {
    /// Echelonizes weights `0..=n-k+slack`; the complements above `n - k` must be empty.
    pub fn build(d: &DworkData, slack: u32) -> Result<Self, Error> {
        let top = d.context().dimension() as u32;
        let mut solvers = BTreeMap::new();
        for w in 0..=top + slack {
            solvers.insert(w, Arc::new(WeightSolver::build(d, w)?));
        }
        Self::assemble(d.clone(), slack, solvers)
    }

    pub(crate) fn assemble(
        dwork: DworkData,
        slack: u32,
        solvers: BTreeMap<u32, Arc<WeightSolver>>,
    ) -> Result<Self, Error> {
        let top = dwork.context().dimension() as u32;
        let mut basis = Vec::new();
        for w in 0..=top + slack {
            let s = solvers
                .get(&w)
                .ok_or_else(|| Error::Internal(format!("missing solver for weight {w}")))?;
            let mut comp = s.complement();
            if w > top {
                if let Some(m) = comp.first() {
                    return Err(singular(&dwork, w, m));
                }
            }
            comp.sort();
            basis.extend(comp);
        }
        let basis_index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(Self {
            dwork,
            slack,
            basis,
            basis_index,
            solvers: RwLock::new(solvers),
        })
    }

    pub fn dwork(&self) -> &DworkData {
        &self.dwork
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        self.dwork.context()
    }

    pub fn background_charge(&self) -> i64 {
        self.context().background_charge()
    }

    pub fn slack(&self) -> u32 {
        self.slack
    }

    pub fn basis(&self) -> &[SuperMonomial] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis element `e_rho` as an element.
    pub fn basis_element(&self, rho: usize) -> SuperElement {
        SuperElement::from_monomial(self.context(), self.basis[rho].clone(), Scalar::one())
    }

    /// Index of a basis monomial.
    pub fn basis_position(&self, m: &SuperMonomial) -> Option<usize> {
        self.basis_index.get(m).copied()
    }

    /// `h^{n-k-q, q}` for `q = 0..=n-k`: basis counts at weight exactly `q`.
    pub fn hodge_numbers(&self) -> Vec<usize> {
        let mut h = vec![0; self.context().dimension() + 1];
        for m in &self.basis {
            h[m.weight() as usize] += 1;
        }
        h
    }

    /// Cumulative counts `delta_0 <= delta_1 <= ... <= delta_{n-k}`.
    pub fn filtration_dimensions(&self) -> Vec<usize> {
        self.hodge_numbers()
            .iter()
            .scan(0, |acc, &h| {
                *acc += h;
                Some(*acc)
            })
            .collect()
    }

    /// Solver for one weight, built on first use above the eagerly built range.
    pub fn solver(&self, weight: u32) -> Result<Arc<WeightSolver>, Error> {
        if let Some(s) = self.solvers.read().expect("solver cache poisoned").get(&weight) {
            return Ok(s.clone());
        }
        let s = WeightSolver::build(&self.dwork, weight)?;
        if let Some(m) = s.complement().first() {
            return Err(singular(&self.dwork, weight, m));
        }
        let s = Arc::new(s);
        let mut cache = self.solvers.write().expect("solver cache poisoned");
        Ok(cache.entry(weight).or_insert(s).clone())
    }

    pub(crate) fn built_solvers(&self) -> Vec<Arc<WeightSolver>> {
        let top = self.context().dimension() as u32 + self.slack;
        let cache = self.solvers.read().expect("solver cache poisoned");
        (0..=top).map(|w| cache[&w].clone()).collect()
    }

    fn zero_result(&self) -> ReductionResult {
        ReductionResult {
            coefficients: vec![Scalar::zero(); self.dimension()],
            certificate: SuperElement::zero(self.context()),
        }
    }

    /// Writes `f` as a basis combination plus a `K_G`-exact term.
    ///
    /// `f` must be free of odd variables. Parts of charge other than `c_G`
    /// reduce to zero through the charge witness; mixing them with a
    /// charge-`c_G` part is rejected.
    pub fn reduce(&self, f: &SuperElement) -> Result<ReductionResult, Error> {
        let ctx = self.context();
        if f.context().as_ref() != ctx.as_ref() {
            return Err(Error::ContextMismatch);
        }
        if !f.is_eta_free() {
            return Err(Error::InvalidInput(
                "reduce expects an element without odd variables".into(),
            ));
        }
        let c_g = self.background_charge();
        let mut by_charge: BTreeMap<i64, SuperElement> = BTreeMap::new();
        for part in f.grade() {
            *by_charge.entry(part.charge).or_insert_with(|| SuperElement::zero(ctx)) += &part.component;
        }
        if by_charge.len() > 1 && by_charge.contains_key(&c_g) {
            let others: Vec<String> = by_charge.keys().filter(|&&c| c != c_g).map(i64::to_string).collect();
            return Err(Error::Charge(format!(
                "input mixes charge {c_g} with charges {}",
                others.join(", ")
            )));
        }
        let mut out = self.zero_result();
        if !by_charge.contains_key(&c_g) {
            let r = self.dwork.charge_witness_element();
            for (lambda, part) in by_charge {
                let inv = Scalar::one() / Scalar::from_integer((lambda - c_g).into());
                out.certificate.add_scaled(&(&part * &r), &inv);
            }
            return Ok(out);
        }
        let mut cur = f.clone();
        while let Some(w) = cur.max_weight() {
            let top = cur.filter(|m| m.weight() == w);
            let solved = self.solver(w)?.solve(&self.dwork, &top)?;
            for (m, c) in &solved.complement {
                let rho = self
                    .basis_position(m)
                    .ok_or_else(|| Error::Internal("complement monomial missing from the basis".into()))?;
                out.coefficients[rho] += c;
                cur.add_term(m.clone(), -c.clone());
            }
            cur -= &self.dwork.apply_k(&solved.preimage);
            out.certificate += &solved.preimage;
            if cur.max_weight().is_some_and(|v| v >= w) {
                return Err(Error::Internal(format!("reduction did not lower weight {w}")));
            }
        }
        Ok(out)
    }

    /// `sum_rho c_rho e_rho + K_G(certificate)`.
    pub fn reassemble(&self, r: &ReductionResult) -> SuperElement {
        let mut out = self.dwork.apply_k(&r.certificate);
        for (rho, c) in r.coefficients.iter().enumerate() {
            out.add_term(self.basis[rho].clone(), c.clone());
        }
        out
    }
}

fn singular(d: &DworkData, weight: u32, m: &SuperMonomial) -> Error {
    Error::Singular(format!(
        "the quotient does not vanish at weight {weight} (surviving monomial {}); \
         the equations do not cut out a smooth complete intersection",
        crate::polyparse::render_monomial(d.context(), m)
    ))
}
