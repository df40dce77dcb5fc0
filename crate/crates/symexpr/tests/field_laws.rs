//! Field-axiom and derivation laws on random rational functions.

use proptest::prelude::*;
use symexpr::{rat, Chart, Point, Polynomial, Rational, ScalarField};

fn chart3() -> Chart {
    Chart::new(["x", "y", "z"]).unwrap()
}

/// Random sparse polynomial of total degree <= 2 with small integer coefficients.
fn arb_poly(chart: Chart) -> impl Strategy<Value = Polynomial> {
    let dim = chart.dim();
    let term = (proptest::collection::vec(0u32..=2, dim), -3i64..=3).prop_map({
        let chart = chart.clone();
        move |(exps, c)| {
            let exps: Vec<u32> = exps
                .iter()
                .scan(0u32, |total, &e| {
                    let e = e.min(2u32.saturating_sub(*total));
                    *total += e;
                    Some(e)
                })
                .collect();
            Polynomial::from_terms(
                &chart,
                [(symexpr::Monomial::from_exponents(exps), rat(c))],
            )
        }
    });
    proptest::collection::vec(term, 1..=3).prop_map(move |ts| {
        ts.into_iter()
            .fold(Polynomial::zero(&chart), |acc, t| acc.add(&t))
    })
}

fn arb_scalar(chart: Chart) -> impl Strategy<Value = ScalarField> {
    (arb_poly(chart.clone()), arb_poly(chart.clone())).prop_map(move |(n, d)| {
        let den = if d.is_zero() {
            Polynomial::one(&chart)
        } else {
            d
        };
        ScalarField::new(n, den).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity_and_distributivity(
        a in arb_scalar(chart3()),
        b in arb_scalar(chart3()),
        c in arb_scalar(chart3()),
    ) {
        let ab_c = a.add(&b).unwrap().add(&c).unwrap();
        let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);

        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
    }

    #[test]
    fn multiplicative_inverse(a in arb_scalar(chart3())) {
        if !a.is_zero() {
            let prod = a.mul(&a.inverse().unwrap()).unwrap();
            prop_assert!(prod.is_one());
        }
    }

    #[test]
    fn mixed_partials_commute(a in arb_scalar(chart3())) {
        for i in 0..3 {
            for j in (i + 1)..3 {
                let dij = a.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
                let dji = a.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
                prop_assert_eq!(&dij, &dji);
            }
        }
    }

    #[test]
    fn evaluate_is_ring_homomorphism(
        a in arb_scalar(chart3()),
        b in arb_scalar(chart3()),
        c in arb_scalar(chart3()),
        px in -2i64..=2,
        py in -2i64..=2,
        pz in -2i64..=2,
    ) {
        let chart = chart3();
        let p = Point::from_rationals(&chart, vec![rat(px), rat(py), rat(pz)]).unwrap();
        let expr = a.mul(&b).unwrap().add(&c).unwrap();
        let lhs = expr.evaluate(&p);
        let parts = (a.evaluate(&p), b.evaluate(&p), c.evaluate(&p));
        if let (Ok(le), (Ok(av), Ok(bv), Ok(cv))) = (lhs, parts) {
            let (le, av, bv, cv) = match (le, av, bv, cv) {
                (
                    symexpr::PointValue::Exact(l),
                    symexpr::PointValue::Exact(a),
                    symexpr::PointValue::Exact(b),
                    symexpr::PointValue::Exact(c),
                ) => (l, a, b, c),
                _ => unreachable!("exact points evaluate exactly"),
            };
            let rhs: Rational = av * bv + cv;
            prop_assert_eq!(le, rhs);
        }
    }

    #[test]
    fn canonicalization_is_idempotent(a in arb_scalar(chart3())) {
        let again = ScalarField::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(&a, &again);
    }
}
