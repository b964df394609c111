use std::path::Path;

use ciperiod_core::cohomology::{build_presentation, QuotientPresentation};
use ciperiod_core::deformation::{
    build_deformation, period_transport, t_series, u_basis, BaseChange, DeformationSeries, PeriodMatrix, UBasis,
};
use ciperiod_core::polyparse::{parse, render, render_monomial};
use ciperiod_core::verify::{self, Fault, VerifyReport};
use ciperiod_core::{Error as CoreError, SuperMonomial, VariableContext};
use num_traits::Zero;

use crate::config::Problem;
use crate::error::{CliError, ErrorKind};
use crate::report::{
    rational, BasisReport, Certificate, DeformReport, LadderStep, ReduceReport, SeriesEntry, TransportReport,
    TransportStep, WeightGroup,
};

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::new(ErrorKind::Io, format!("{}: {e}", path.display())))
}

/// Loads a stored presentation, or builds one. A stored document must
/// describe the same complete intersection as the job.
pub fn presentation(problem: &Problem, stored: Option<&Path>) -> Result<QuotientPresentation, CliError> {
    let Some(path) = stored else {
        return Ok(build_presentation(&problem.dwork)?);
    };
    let p = import_presentation(&read_file(path)?)?;
    if p.context() != problem.context() || p.dwork().polys() != problem.dwork.polys() {
        return Err(CliError::new(
            ErrorKind::Document,
            format!("{} describes a different complete intersection", path.display()),
        ));
    }
    Ok(p)
}

pub fn import_presentation(text: &str) -> Result<QuotientPresentation, CliError> {
    Ok(QuotientPresentation::from_json(text)?)
}

fn monomial(ctx: &VariableContext, m: &SuperMonomial) -> String {
    let s = render_monomial(ctx, m);
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

pub fn basis(p: &QuotientPresentation) -> BasisReport {
    let ctx = p.context();
    let by_weight = (0..=ctx.dimension() as u32)
        .map(|w| WeightGroup {
            weight: w,
            monomials: p
                .basis()
                .iter()
                .filter(|m| m.weight() == w)
                .map(|m| monomial(ctx, m))
                .collect(),
        })
        .collect();
    BasisReport {
        c_g: p.background_charge(),
        dimension: p.dimension(),
        basis: p.basis().iter().map(|m| monomial(ctx, m)).collect(),
        by_weight,
        hodge: p.hodge_numbers(),
        filtration: p.filtration_dimensions(),
    }
}

pub fn reduce(p: &QuotientPresentation, input: &str) -> Result<ReduceReport, CliError> {
    let ctx = p.context();
    let f = parse(input, ctx).map_err(|e| CliError::new(ErrorKind::Parse, e.to_string()))?;
    let c_g = p.background_charge();
    if let Some(part) = f.grade().into_iter().find(|part| part.charge != c_g) {
        return Err(CliError::new(
            ErrorKind::Charge,
            format!(
                "input has a part of charge {} but reduction needs charge {c_g}",
                part.charge
            ),
        ));
    }
    let r = p.reduce(&f)?;
    if p.reassemble(&r) != f {
        return Err(CliError::new(
            ErrorKind::Invariant,
            "certificate does not reassemble the input",
        ));
    }
    Ok(ReduceReport {
        input: render(&f),
        basis: p.basis().iter().map(|m| monomial(ctx, m)).collect(),
        coeffs: r.coefficients.iter().map(rational).collect(),
        certificate: Certificate::of(&r.certificate),
        exact_coeffs: r.coefficients,
    })
}

/// The certified series `T^rho(t)` and the `u`-basis it was built from.
pub fn series(problem: &Problem, p_g: &QuotientPresentation) -> Result<(UBasis, DeformationSeries), CliError> {
    let h = problem
        .h
        .clone()
        .ok_or_else(|| CliError::config("this command needs a deformation H in the job file"))?;
    let (def, p_u) = build_deformation(&problem.dwork, h)?;
    let u = u_basis(&def, p_g, &p_u, problem.factor.clone())?;
    let s = t_series(&def, p_g, &u, problem.order)?;
    s.verify(p_g)
        .map_err(|e: CoreError| CliError::new(ErrorKind::Invariant, e.to_string()))?;
    Ok((u, s))
}

pub fn deform(problem: &Problem, p_g: &QuotientPresentation) -> Result<DeformReport, CliError> {
    let (u, s) = series(problem, p_g)?;
    let mut entries = Vec::new();
    for t in s.terms() {
        for (rho, c) in t.coefficients.iter().enumerate() {
            if !c.is_zero() {
                entries.push(SeriesEntry {
                    rho: rho + 1,
                    exponent: t.exponent.clone(),
                    coefficient: rational(c),
                });
            }
        }
    }
    Ok(DeformReport {
        c_g: p_g.background_charge(),
        order: problem.order,
        factor: render(&u.factor),
        u_basis: u.elements.iter().map(render).collect(),
        i_prime: u.i_prime.iter().map(|i| i + 1).collect(),
        series: entries,
        d_ladder: s
            .d_ladder()
            .iter()
            .enumerate()
            .map(|(m, d)| LadderStep::new(m + 1, d))
            .collect(),
    })
}

pub fn transport(
    problem: &Problem,
    p_g: &QuotientPresentation,
    omega: &str,
    base: Option<&str>,
) -> Result<TransportReport, CliError> {
    let omega = PeriodMatrix::from_json(omega)?;
    let b = match base {
        Some(text) => BaseChange::from_json(text)?,
        None => BaseChange::identity(omega.size()),
    };
    if omega.size() != p_g.dimension() {
        return Err(CliError::new(
            ErrorKind::Dimension,
            format!(
                "Omega is {0}x{0} but the cohomology has dimension {1}",
                omega.size(),
                p_g.dimension()
            ),
        ));
    }
    let (_, s) = series(problem, p_g)?;
    let mut ladder = Vec::new();
    for (m, d) in s.d_ladder().iter().enumerate() {
        let out = period_transport(d, &omega, &b)?;
        ladder.push(TransportStep {
            order: m + 1,
            omega: out.to_json(),
            matrix: out,
        });
    }
    Ok(TransportReport {
        exact: omega.is_exact(),
        size: omega.size(),
        ladder,
    })
}

pub fn verify(
    problem: &Problem,
    p: &QuotientPresentation,
    seed: u64,
    iterations: usize,
    fault: Fault,
) -> Result<VerifyReport, CliError> {
    let def = match &problem.h {
        Some(h) => Some(build_deformation(&problem.dwork, h.clone())?.0),
        None => None,
    };
    Ok(verify::run_all(p, def.as_ref(), seed, iterations, fault))
}
