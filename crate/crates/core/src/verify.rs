//! Seeded invariant suites. Each family draws from its own ChaCha stream so
//! reports are reproducible under a fixed seed.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

use crate::cohomology::{charge_witness_check, enumerate_piece, QuotientPresentation};
use crate::deformation::DeformationData;
use crate::operators::{apply_delta, DworkData};
use crate::polyparse::render;
use crate::superalgebra::{Scalar, SuperElement, SuperMonomial, VariableContext};

/// Deliberate operator corruption for exercising the harness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// `K(a)` is replaced by `(1 + x0) K(a)`.
    CorruptK,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub name: String,
    pub checks: usize,
    /// Rendered counterexample for the first failing check.
    pub failure: Option<String>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub iterations: usize,
    pub families: Vec<FamilyReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }
}

/// Random elements with small exponents and small rational coefficients.
pub struct ElementSampler {
    ctx: Arc<VariableContext>,
    rng: ChaCha8Rng,
}

impl ElementSampler {
    pub fn new(ctx: &Arc<VariableContext>, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { ctx: ctx.clone(), rng }
    }

    pub fn scalar(&mut self) -> Scalar {
        let num: i64 = self.rng.gen_range(-5..=5);
        let den: i64 = self.rng.gen_range(1..=4);
        let v = Scalar::new(num.into(), den.into());
        if v.is_zero() {
            Scalar::one()
        } else {
            v
        }
    }

    fn monomial(&mut self, odd: Option<bool>) -> SuperMonomial {
        let n = self.ctx.num_vars();
        let exps = (0..n)
            .map(|_| {
                if self.rng.gen_bool(0.4) {
                    self.rng.gen_range(1..=2)
                } else {
                    0
                }
            })
            .collect();
        let mut vars: Vec<usize> = (0..n).collect();
        vars.shuffle(&mut self.rng);
        let mut count = self.rng.gen_range(0..=3.min(n));
        if let Some(odd) = odd {
            if (count % 2 == 1) != odd {
                count = if count == 0 { 1 } else { count - 1 };
            }
        }
        let mut eta: Vec<usize> = vars[..count].to_vec();
        eta.sort_unstable();
        SuperMonomial::new(&self.ctx, exps, eta).expect("sampled monomials are in range")
    }

    /// Up to four terms, all of one parity.
    pub fn element(&mut self) -> SuperElement {
        let odd = self.rng.gen_bool(0.5);
        self.element_of_parity(odd)
    }

    pub fn element_of_parity(&mut self, odd: bool) -> SuperElement {
        let terms = self.rng.gen_range(1..=4);
        let mut out = SuperElement::zero(&self.ctx);
        for _ in 0..terms {
            let m = self.monomial(Some(odd));
            let c = self.scalar();
            out.add_term(m, c);
        }
        out
    }

    /// Up to four terms of mixed parity.
    pub fn mixed(&mut self) -> SuperElement {
        let terms = self.rng.gen_range(1..=4);
        let mut out = SuperElement::zero(&self.ctx);
        for _ in 0..terms {
            let m = self.monomial(None);
            let c = self.scalar();
            out.add_term(m, c);
        }
        out
    }

    /// A random combination of monomials from one graded piece; `None` if empty.
    pub fn from_piece(&mut self, charge: i64, weight: u32, eta_count: usize) -> Option<SuperElement> {
        let piece = enumerate_piece(&self.ctx, charge, weight, eta_count);
        if piece.is_empty() {
            return None;
        }
        let terms = self.rng.gen_range(1..=4.min(piece.len()));
        let mut out = SuperElement::zero(&self.ctx);
        for m in piece.monomials.choose_multiple(&mut self.rng, terms) {
            let c = self.scalar();
            out.add_term(m.clone(), c);
        }
        Some(out)
    }

    pub fn gen_range(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.gen_range(lo..=hi)
    }
}

/// `K`, possibly corrupted, and the brackets built from it.
pub struct Operators<'a> {
    d: &'a DworkData,
    fault: Fault,
    x0: SuperElement,
}

impl<'a> Operators<'a> {
    pub fn new(d: &'a DworkData, fault: Fault) -> Self {
        let ctx = d.context();
        let x0 = SuperElement::q_var(ctx, ctx.x(0)).expect("x0 exists");
        Self { d, fault, x0 }
    }

    pub fn k(&self, a: &SuperElement) -> SuperElement {
        let ka = self.d.apply_k(a);
        match self.fault {
            Fault::None => ka,
            Fault::CorruptK => &ka + &(&self.x0 * &ka),
        }
    }

    pub fn q(&self, a: &SuperElement) -> SuperElement {
        self.d.apply_q(a)
    }

    fn sign(odd: bool, a: SuperElement) -> SuperElement {
        if odd {
            -&a
        } else {
            a
        }
    }

    /// `K(ab) - K(a) b - (-1)^|a| a K(b)`.
    pub fn ell2(&self, a: &SuperElement, a_odd: bool, b: &SuperElement) -> SuperElement {
        let mut out = self.k(&(a * b));
        out -= &(&self.k(a) * b);
        out -= &Self::sign(a_odd, a * &self.k(b));
        out
    }

    /// `l_2(a, bc) - l_2(a, b) c - (-1)^{|b|(|a|+1)} b l_2(a, c)`.
    pub fn ell3(&self, a: &SuperElement, a_odd: bool, b: &SuperElement, b_odd: bool, c: &SuperElement) -> SuperElement {
        let mut out = self.ell2(a, a_odd, &(b * c));
        out -= &(&self.ell2(a, a_odd, b) * c);
        out -= &Self::sign(b_odd && !a_odd, b * &self.ell2(a, a_odd, c));
        out
    }
}

struct Family {
    report: FamilyReport,
}

impl Family {
    fn new(name: &str) -> Self {
        Self {
            report: FamilyReport {
                name: name.to_string(),
                checks: 0,
                failure: None,
            },
        }
    }

    /// Records one check; `describe` renders the counterexample.
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok && self.report.failure.is_none() {
            self.report.failure = Some(describe());
        }
    }

    fn done(self) -> FamilyReport {
        self.report
    }
}

fn show(xs: &[&SuperElement]) -> String {
    xs.iter()
        .map(|a| format!("[{}]", render(a)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Nilpotency, anticommutation, super-commutativity, associativity and the
/// bracket laws, `iterations` samples each.
pub fn algebra_laws(d: &DworkData, seed: u64, iterations: usize, fault: Fault) -> Vec<FamilyReport> {
    let ops = Operators::new(d, fault);
    let ctx = d.context();
    let mut out = Vec::new();
    let mut stream = 0u64;
    let sampler = |stream: &mut u64| {
        *stream += 1;
        ElementSampler::new(ctx, seed, *stream)
    };

    let mut s = sampler(&mut stream);
    let mut f = Family::new("delta_squared");
    for _ in 0..iterations {
        let a = s.mixed();
        f.check(apply_delta(&apply_delta(&a)).is_zero(), || show(&[&a]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("q_squared");
    for _ in 0..iterations {
        let a = s.mixed();
        f.check(ops.q(&ops.q(&a)).is_zero(), || show(&[&a]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("k_squared");
    for _ in 0..iterations {
        let a = s.mixed();
        f.check(ops.k(&ops.k(&a)).is_zero(), || show(&[&a]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("delta_q_anticommute");
    for _ in 0..iterations {
        let a = s.mixed();
        let lhs = &apply_delta(&ops.q(&a)) + &ops.q(&apply_delta(&a));
        f.check(lhs.is_zero(), || show(&[&a]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("super_commutativity");
    for _ in 0..iterations {
        let (ao, bo) = (s.gen_range(0, 1) == 1, s.gen_range(0, 1) == 1);
        let (a, b) = (s.element_of_parity(ao), s.element_of_parity(bo));
        let ba = &b * &a;
        let rhs = if ao && bo { -&ba } else { ba };
        f.check(&a * &b == rhs, || show(&[&a, &b]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("associativity");
    for _ in 0..iterations {
        let (a, b, c) = (s.mixed(), s.mixed(), s.mixed());
        f.check(&(&a * &b) * &c == &a * &(&b * &c), || show(&[&a, &b, &c]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("ell2_symmetry");
    for _ in 0..iterations {
        let (ao, bo) = (s.gen_range(0, 1) == 1, s.gen_range(0, 1) == 1);
        let (a, b) = (s.element_of_parity(ao), s.element_of_parity(bo));
        let ba = ops.ell2(&b, bo, &a);
        let rhs = if ao && bo { -&ba } else { ba };
        f.check(ops.ell2(&a, ao, &b) == rhs, || show(&[&a, &b]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("ell2_jacobi");
    for _ in 0..iterations {
        let (ao, bo, co) = (s.gen_range(0, 1) == 1, s.gen_range(0, 1) == 1, s.gen_range(0, 1) == 1);
        let (a, b, c) = (
            s.element_of_parity(ao),
            s.element_of_parity(bo),
            s.element_of_parity(co),
        );
        // l2(a, l2(b, c)) = -(-1)^|a| l2(l2(a, b), c) + (-1)^{(|a|+1)(|b|+1)} l2(b, l2(a, c))
        let lhs = ops.ell2(&a, ao, &ops.ell2(&b, bo, &c));
        let inner = ops.ell2(&ops.ell2(&a, ao, &b), ao == bo, &c);
        let mut rhs = if ao { inner } else { -&inner };
        let t = ops.ell2(&b, bo, &ops.ell2(&a, ao, &c));
        if !ao && !bo {
            rhs -= &t;
        } else {
            rhs += &t;
        }
        f.check(lhs == rhs, || show(&[&a, &b, &c]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("ell2_poisson");
    for _ in 0..iterations {
        let (ao, bo) = (s.gen_range(0, 1) == 1, s.gen_range(0, 1) == 1);
        let (a, b, c) = (s.element_of_parity(ao), s.element_of_parity(bo), s.mixed());
        let lhs = ops.ell2(&a, ao, &(&b * &c));
        let mut rhs = &ops.ell2(&a, ao, &b) * &c;
        let t = &b * &ops.ell2(&a, ao, &c);
        if bo && !ao {
            rhs -= &t;
        } else {
            rhs += &t;
        }
        f.check(lhs == rhs, || show(&[&a, &b, &c]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("ell3_vanishes");
    for _ in 0..iterations {
        let (ao, bo) = (s.gen_range(0, 1) == 1, s.gen_range(0, 1) == 1);
        let (a, b, c) = (s.element_of_parity(ao), s.element_of_parity(bo), s.mixed());
        let ok = ops.ell3(&a, ao, &b, bo, &c).is_zero()
            && (fault != Fault::None || d.ell_n(&[a.clone(), b.clone(), c.clone()]).is_ok_and(|v| v.is_zero()));
        f.check(ok, || show(&[&a, &b, &c]));
    }
    out.push(f.done());

    let mut s = sampler(&mut stream);
    let mut f = Family::new("k_derives_ell2");
    for _ in 0..iterations {
        let (ao, bo) = (s.gen_range(0, 1) == 1, s.gen_range(0, 1) == 1);
        let (a, b) = (s.element_of_parity(ao), s.element_of_parity(bo));
        // K l2(a, b) + l2(K a, b) + (-1)^|a| l2(a, K b) = 0
        let mut sum = ops.k(&ops.ell2(&a, ao, &b));
        sum += &ops.ell2(&ops.k(&a), !ao, &b);
        let t = ops.ell2(&a, ao, &ops.k(&b));
        if ao {
            sum -= &t;
        } else {
            sum += &t;
        }
        f.check(sum.is_zero(), || show(&[&a, &b]));
    }
    out.push(f.done());

    out
}

/// Reassembly of reductions and vanishing on `K_G`-exact input.
pub fn reduction_laws(p: &QuotientPresentation, seed: u64, iterations: usize, fault: Fault) -> Vec<FamilyReport> {
    let d = p.dwork();
    let ops = Operators::new(d, fault);
    let ctx = p.context();
    let c_g = p.background_charge();
    let top = ctx.dimension() as u32 + 1;
    let mut out = Vec::new();

    let mut s = ElementSampler::new(ctx, seed, 101);
    let mut f = Family::new("reduction_soundness");
    for _ in 0..iterations {
        let w = s.gen_range(0, top);
        let Some(a) = s.from_piece(c_g, w, 0) else { continue };
        let ok = p.reduce(&a).is_ok_and(|r| {
            let mut back = ops.k(&r.certificate);
            for (rho, c) in r.coefficients.iter().enumerate() {
                back.add_scaled(&p.basis_element(rho), c);
            }
            back == a
        });
        f.check(ok, || show(&[&a]));
    }
    out.push(f.done());

    let mut s = ElementSampler::new(ctx, seed, 102);
    let mut f = Family::new("reduce_kills_exact");
    for _ in 0..iterations {
        let w = s.gen_range(0, top);
        let Some(xi) = s.from_piece(c_g, w, 1) else { continue };
        let ok = p
            .reduce(&ops.k(&xi))
            .is_ok_and(|r| r.coefficients.iter().all(Zero::is_zero));
        f.check(ok, || show(&[&xi]));
    }
    out.push(f.done());
    out
}

/// `count` closed homogeneous elements of charge `!= c_G`, weight `<= 3`,
/// each with an exact `K`-preimage from the charge witness.
pub fn charge_laws(d: &DworkData, seed: u64, count: usize, fault: Fault) -> FamilyReport {
    let ops = Operators::new(d, fault);
    let ctx = d.context();
    let c_g = ctx.background_charge();
    let mut s = ElementSampler::new(ctx, seed, 201);
    let mut f = Family::new("charge_concentration");
    let mut attempts = 0;
    while f.report.checks < count && attempts < 50 * count.max(1) {
        attempts += 1;
        let shift = s.gen_range(1, 3) as i64 * if s.gen_range(0, 1) == 0 { 1 } else { -1 };
        let w = s.gen_range(0, 3);
        // eta-free elements are closed; so are K-images
        let a = if s.gen_range(0, 1) == 0 {
            s.from_piece(c_g + shift, w, 0)
        } else {
            s.from_piece(c_g + shift, w, 1)
                .map(|xi| ops.k(&xi))
                .filter(|a| !a.is_zero())
        };
        let Some(a) = a else { continue };
        let ok = ops.k(&a).is_zero()
            && charge_witness_check(d, &a).is_ok_and(|w| w.holds() && w.witness.is_some_and(|x| ops.k(&x) == a));
        f.check(ok, || show(&[&a]));
    }
    if f.report.checks < count {
        f.report
            .failure
            .get_or_insert_with(|| format!("only {} closed elements found", f.report.checks));
    }
    f.done()
}

/// Maurer-Cartan for `Gamma` and `K_Gamma = K_U` on random elements.
pub fn deformation_laws(def: &DeformationData, seed: u64, iterations: usize, fault: Fault) -> Vec<FamilyReport> {
    let ops = Operators::new(def.base(), fault);
    let g = def.gamma();
    let mut f = Family::new("maurer_cartan");
    let mut residual = ops.k(g);
    residual.add_scaled(
        &ops.ell2(g, false, g),
        &(Scalar::one() / Scalar::from_integer(2.into())),
    );
    f.check(residual.is_zero(), || show(&[g]));
    let mc = f.done();

    let mut s = ElementSampler::new(def.context(), seed, 301);
    let mut f = Family::new("k_gamma_matches_deformed");
    for _ in 0..iterations {
        let a = s.mixed();
        let kg = &ops.k(&a) + &ops.ell2(g, false, &a);
        f.check(kg == def.deformed().apply_k(&a), || show(&[&a]));
    }
    vec![mc, f.done()]
}

/// Every suite that applies to `p` (and `def`, when given).
pub fn run_all(
    p: &QuotientPresentation,
    def: Option<&DeformationData>,
    seed: u64,
    iterations: usize,
    fault: Fault,
) -> VerifyReport {
    let mut families = algebra_laws(p.dwork(), seed, iterations, fault);
    families.extend(reduction_laws(p, seed, iterations, fault));
    families.push(charge_laws(p.dwork(), seed, iterations.clamp(1, 50), fault));
    if let Some(def) = def {
        families.extend(deformation_laws(def, seed, iterations, fault));
    }
    VerifyReport {
        seed,
        iterations,
        families,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::build_presentation;
    use crate::polyparse::parse;

    fn cubic() -> QuotientPresentation {
        let ctx = Arc::new(VariableContext::new(2, vec![3]).unwrap());
        let d = DworkData::new(&ctx, vec![parse("x0^3 + x1^3 + x2^3", &ctx).unwrap()]).unwrap();
        build_presentation(&d).unwrap()
    }

    #[test]
    fn all_families_pass() {
        let p = cubic();
        let r = run_all(&p, None, 7, 40, Fault::None);
        for fam in &r.families {
            assert!(fam.passed(), "{}: {:?}", fam.name, fam.failure);
            assert!(fam.checks > 0, "{}", fam.name);
        }
    }

    #[test]
    fn deterministic() {
        let p = cubic();
        assert_eq!(
            run_all(&p, None, 3, 10, Fault::None),
            run_all(&p, None, 3, 10, Fault::None)
        );
        let mut a = ElementSampler::new(p.context(), 3, 1);
        let mut b = ElementSampler::new(p.context(), 3, 1);
        assert_eq!(a.mixed(), b.mixed());
    }

    #[test]
    fn corrupted_operator_is_caught() {
        let p = cubic();
        let r = run_all(&p, None, 7, 20, Fault::CorruptK);
        assert!(!r.passed());
        let failed: Vec<&str> = r
            .families
            .iter()
            .filter(|f| !f.passed())
            .map(|f| f.name.as_str())
            .collect();
        assert!(failed.contains(&"k_squared"), "{failed:?}");
        assert!(failed.contains(&"reduction_soundness"), "{failed:?}");
    }

    #[test]
    fn deformation_families() {
        let p = cubic();
        let ctx = p.context().clone();
        let def = DeformationData::new(p.dwork(), vec![parse("x0*x1*x2", &ctx).unwrap()]).unwrap();
        for fam in deformation_laws(&def, 1, 30, Fault::None) {
            assert!(fam.passed(), "{}: {:?}", fam.name, fam.failure);
        }
        assert!(deformation_laws(&def, 1, 30, Fault::CorruptK)
            .iter()
            .any(|f| !f.passed()));
    }
}
