use std::sync::Arc;

use ciperiod_core::polyparse::{parse, render, ParseErrorKind};
use ciperiod_core::{Scalar, SuperElement, SuperMonomial, VariableContext};
use proptest::prelude::*;

fn ctx() -> Arc<VariableContext> {
    Arc::new(VariableContext::new(3, vec![2, 2]).unwrap())
}

fn monomial() -> impl Strategy<Value = (Vec<u32>, Vec<usize>)> {
    let c = ctx();
    let n = c.num_vars();
    (
        prop::collection::vec(0u32..4, n),
        prop::collection::btree_set(0..n, 0..3).prop_map(|s| s.into_iter().collect()),
    )
}

fn element() -> impl Strategy<Value = SuperElement> {
    prop::collection::vec((monomial(), -50i64..50, 1i64..9), 0..6).prop_map(|terms| {
        let c = ctx();
        let mut a = SuperElement::zero(&c);
        for ((exps, eta), num, den) in terms {
            let m = SuperMonomial::new(&c, exps, eta).unwrap();
            a.add_term(m, Scalar::new(num.into(), den.into()));
        }
        a
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(a in element()) {
        let text = render(&a);
        prop_assert_eq!(parse(&text, a.context()).unwrap(), a);
    }

    #[test]
    fn parse_is_total(s in "\\PC{0,64}") {
        let _ = parse(&s, &ctx());
    }

    #[test]
    fn parse_is_total_on_grammar_soup(s in "[xye0-9*^+/() -]{0,48}") {
        if let Ok(a) = parse(&s, &ctx()) {
            prop_assert_eq!(parse(&render(&a), &ctx()).unwrap(), a);
        }
    }

    #[test]
    fn sum_renders_to_parsed_sum(a in element(), b in element()) {
        let text = format!("({}) + ({})", render(&a), render(&b));
        prop_assert_eq!(parse(&text, &ctx()).unwrap(), &a + &b);
    }
}

#[test]
fn positioned_errors() {
    let c = ctx();
    let e = parse("x0 x1", &c).unwrap_err();
    assert_eq!(
        (e.line, e.column, e.kind),
        (1, 4, ParseErrorKind::ImplicitMultiplication)
    );
    let e = parse("x0 +\n  x9", &c).unwrap_err();
    assert_eq!(e.line, 2);
    assert!(matches!(e.kind, ParseErrorKind::VariableOutOfRange { .. }));
    assert!(matches!(
        parse("e1^2", &c).unwrap_err().kind,
        ParseErrorKind::OddPower(_)
    ));
    assert!(matches!(
        parse("1/0", &c).unwrap_err().kind,
        ParseErrorKind::ZeroDenominator
    ));
}

#[test]
fn odd_variables_anticommute() {
    let c = ctx();
    assert_eq!(parse("e2*e1", &c).unwrap(), parse("-e1*e2", &c).unwrap());
    assert!(parse("e1*e1", &c).unwrap().is_zero());
}
