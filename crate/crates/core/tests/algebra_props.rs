use std::sync::{Arc, OnceLock};

use ciperiod_core::cohomology::{build_presentation, QuotientPresentation};
use ciperiod_core::operators::{apply_delta, bell_complete, DworkData};
use ciperiod_core::polyparse::parse;
use ciperiod_core::verify::ElementSampler;
use ciperiod_core::{Scalar, VariableContext};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn quadrics() -> &'static DworkData {
    static D: OnceLock<DworkData> = OnceLock::new();
    D.get_or_init(|| {
        let c = Arc::new(VariableContext::new(3, vec![2, 2]).unwrap());
        let g = ["x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2"];
        DworkData::new(&c, g.iter().map(|s| parse(s, &c).unwrap()).collect()).unwrap()
    })
}

fn cubic() -> &'static QuotientPresentation {
    static P: OnceLock<QuotientPresentation> = OnceLock::new();
    P.get_or_init(|| {
        let c = Arc::new(VariableContext::new(2, vec![3]).unwrap());
        let d = DworkData::new(&c, vec![parse("x0^3 + x1^3 + x2^3", &c).unwrap()]).unwrap();
        build_presentation(&d).unwrap()
    })
}

fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differentials_square_to_zero(seed in any::<u64>()) {
        let d = quadrics();
        let a = ElementSampler::new(d.context(), seed, 0).mixed();
        prop_assert!(apply_delta(&apply_delta(&a)).is_zero());
        prop_assert!(d.apply_q(&d.apply_q(&a)).is_zero());
        prop_assert!(d.apply_k(&d.apply_k(&a)).is_zero());
    }

    #[test]
    fn product_is_associative_and_supercommutative(seed in any::<u64>(), pa: bool, pb: bool) {
        let d = quadrics();
        let mut s = ElementSampler::new(d.context(), seed, 1);
        let (a, b, c) = (s.element_of_parity(pa), s.element_of_parity(pb), s.mixed());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, (&b * &a).scale(&sign(pa && pb)));
    }

    #[test]
    fn ell2_matches_its_defining_formula(seed in any::<u64>(), pa: bool, pb: bool) {
        let d = quadrics();
        let mut s = ElementSampler::new(d.context(), seed, 2);
        let (a, b) = (s.element_of_parity(pa), s.element_of_parity(pb));
        let mut expected = d.apply_k(&(&a * &b));
        expected.add_scaled(&(&d.apply_k(&a) * &b), &-Scalar::one());
        expected.add_scaled(&(&a * &d.apply_k(&b)), &-sign(pa));
        prop_assert_eq!(d.ell2(&a, &b).unwrap(), expected);
    }

    #[test]
    fn reduction_is_linear_and_kills_exact(seed in any::<u64>()) {
        let p = cubic();
        let mut s = ElementSampler::new(p.context(), seed, 3);
        let c_g = p.background_charge();
        let (Some(a), Some(b)) = (s.from_piece(c_g, 1, 0), s.from_piece(c_g, 2, 0)) else {
            return Ok(());
        };
        let t = s.scalar();
        let mut sum = a.clone();
        sum.add_scaled(&b, &t);
        let ra = p.reduce(&a).unwrap().coefficients;
        let rb = p.reduce(&b).unwrap().coefficients;
        let rs = p.reduce(&sum).unwrap().coefficients;
        for i in 0..p.dimension() {
            prop_assert_eq!(&rs[i], &(&ra[i] + &t * &rb[i]));
        }
        if let Some(x) = s.from_piece(c_g, 2, 1) {
            let r = p.reduce(&p.dwork().apply_k(&x)).unwrap();
            prop_assert!(r.coefficients.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn bell_polynomials_match_exponential_series(xs in prop::collection::vec(-5i64..5, 1..7)) {
        // B_n(x_1..x_n) = n! [t^n] exp(sum x_j t^j / j!)
        let n = xs.len();
        let xs: Vec<Scalar> = xs.into_iter().map(|v| Scalar::from_integer(v.into())).collect();
        let mut inner = vec![Scalar::zero(); n + 1];
        let mut fact = Scalar::one();
        for j in 1..=n {
            fact *= Scalar::from_integer(j.into());
            inner[j] = &xs[j - 1] / &fact;
        }
        // exp of a series with zero constant term: E' = inner' E
        let mut e = vec![Scalar::zero(); n + 1];
        e[0] = Scalar::one();
        for m in 1..=n {
            let mut acc = Scalar::zero();
            for j in 1..=m {
                acc += Scalar::from_integer(j.into()) * &inner[j] * &e[m - j];
            }
            e[m] = acc / Scalar::from_integer(m.into());
        }
        prop_assert_eq!(bell_complete(n, &xs), &e[n] * fact);
    }
}
