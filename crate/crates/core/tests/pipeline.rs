use std::sync::Arc;

use ciperiod_core::cohomology::{build_presentation, QuotientPresentation};
use ciperiod_core::deformation::{build_deformation, period_transport, t_series, u_basis, BaseChange, PeriodMatrix};
use ciperiod_core::linalg::Matrix;
use ciperiod_core::operators::DworkData;
use ciperiod_core::polyparse::{parse, render};
use ciperiod_core::{Error, Scalar, VariableContext};

fn cubic() -> DworkData {
    let c = Arc::new(VariableContext::new(2, vec![3]).unwrap());
    DworkData::new(&c, vec![parse("x0^3 + x1^3 + x2^3", &c).unwrap()]).unwrap()
}

#[test]
fn document_round_trip_preserves_reductions() {
    let p = build_presentation(&cubic()).unwrap();
    let q = QuotientPresentation::from_json(&p.to_json()).unwrap();
    assert_eq!(p.basis(), q.basis());
    assert_eq!(p.hodge_numbers(), q.hodge_numbers());
    for s in ["y1^2*x0^3*x1^3", "y1*x0^3 - 5*y1*x0*x1*x2", "y1^3*x0^3*x1^3*x2^3"] {
        let f = parse(s, p.context()).unwrap();
        assert_eq!(p.reduce(&f).unwrap().coefficients, q.reduce(&f).unwrap().coefficients);
    }
}

#[test]
fn tampered_document_is_rejected() {
    let p = build_presentation(&cubic()).unwrap();
    let mut doc = p.to_document();
    doc.polynomials[0] = "x0^3 + x1^3 + 2*x2^3".into();
    assert!(QuotientPresentation::from_document(&doc).is_err());
    let mut doc = p.to_document();
    doc.version += 1;
    assert!(matches!(
        QuotientPresentation::from_document(&doc),
        Err(Error::Document(_))
    ));
    assert!(QuotientPresentation::from_json("{\"format\": 1}").is_err());
}

#[test]
fn singular_input_is_refused() {
    let c = Arc::new(VariableContext::new(2, vec![3]).unwrap());
    let d = DworkData::new(&c, vec![parse("x0^3 + x1^3", &c).unwrap()]).unwrap();
    assert!(build_presentation(&d).is_err());
}

#[test]
fn hesse_transport_end_to_end() {
    let g = cubic();
    let p_g = build_presentation(&g).unwrap();
    let (def, p_u) = build_deformation(&g, vec![parse("x0*x1*x2", g.context()).unwrap()]).unwrap();
    let u = u_basis(&def, &p_g, &p_u, None).unwrap();
    assert_eq!(u.elements.iter().map(render).collect::<Vec<_>>(), ["y1*x0*x1*x2", "1"]);
    let series = t_series(&def, &p_g, &u, 3).unwrap();
    series.verify(&p_g).unwrap();
    let ladder = series.d_ladder();
    assert_eq!(ladder.len(), 3);
    let d3 = ladder.last().unwrap();
    assert_eq!(d3.row(0)[0], Scalar::new((-1).into(), 54.into()));

    let omega = PeriodMatrix::exact(&Matrix::identity(2)).unwrap();
    let out = period_transport(d3, &omega, &BaseChange::identity(2)).unwrap();
    assert_eq!(out, PeriodMatrix::exact(d3).unwrap());
    let swap = BaseChange::from_json("[[0, 1], [1, 0]]").unwrap();
    let swapped = period_transport(d3, &omega, &swap).unwrap();
    assert_eq!(swapped.rows()[0][1], out.rows()[0][0]);
}
