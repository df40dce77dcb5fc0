//! Exact structural identities of the graded calculus on random inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symexpr::{rat, Chart, Monomial, Polynomial, ScalarField};

use extcalc::{
    exterior_d, interior_product, lichnerowicz_d, lie_derivative, schouten_bracket,
    DifferentialForm, MultiVectorField, PolyMap,
};

fn charts() -> Vec<Chart> {
    vec![
        Chart::new(["x", "y", "z"]).unwrap(),
        Chart::new(["x", "y", "z", "w"]).unwrap(),
        Chart::new(["x", "y", "z", "w", "v"]).unwrap(),
    ]
}

fn random_poly(rng: &mut ChaCha8Rng, chart: &Chart, max_deg: u32, terms: usize) -> ScalarField {
    let dim = chart.dim();
    let mut p = Polynomial::zero(chart);
    for _ in 0..terms {
        let mut exps = vec![0u32; dim];
        let mut left = max_deg;
        for e in exps.iter_mut() {
            let v = rng.gen_range(0..=left.min(2));
            *e = v;
            left -= v;
        }
        let c = rat(rng.gen_range(-2i64..=2));
        p = p.add(&Polynomial::from_terms(
            chart,
            [(Monomial::from_exponents(exps), c)],
        ));
    }
    ScalarField::from_polynomial(p)
}

fn random_form(rng: &mut ChaCha8Rng, chart: &Chart, degree: usize) -> DifferentialForm {
    let mut acc = DifferentialForm::zero(chart, degree);
    for _ in 0..2 {
        let mut idx: Vec<usize> = (0..chart.dim()).collect();
        for i in (1..idx.len()).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        idx.truncate(degree);
        idx.sort_unstable();
        let c = random_poly(rng, chart, 2, 2);
        let term = DifferentialForm::basis(chart, &idx)
            .unwrap()
            .scale(&c)
            .unwrap();
        acc = acc.add(&term).unwrap();
    }
    acc
}

fn random_mv(rng: &mut ChaCha8Rng, chart: &Chart, degree: usize) -> MultiVectorField {
    let mut acc = MultiVectorField::zero(chart, degree);
    for _ in 0..2 {
        let mut idx: Vec<usize> = (0..chart.dim()).collect();
        for i in (1..idx.len()).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        idx.truncate(degree);
        idx.sort_unstable();
        let c = random_poly(rng, chart, 2, 2);
        let term = MultiVectorField::basis(chart, &idx)
            .unwrap()
            .scale(&c)
            .unwrap();
        acc = acc.add(&term).unwrap();
    }
    acc
}

#[test]
fn d_squared_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for chart in charts() {
        for _ in 0..8 {
            let k = rng.gen_range(0..chart.dim());
            let w = random_form(&mut rng, &chart, k);
            let ddw = exterior_d(&exterior_d(&w).unwrap()).unwrap();
            assert!(ddw.is_zero(), "d^2 != 0 on {w}");
        }
    }
}

#[test]
fn graded_commutativity_and_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for chart in charts() {
        for _ in 0..8 {
            let k = rng.gen_range(0..=2.min(chart.dim()));
            let l = rng.gen_range(0..=2.min(chart.dim()));
            let a = random_form(&mut rng, &chart, k);
            let b = random_form(&mut rng, &chart, l);
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            let expect = if (k * l) % 2 == 0 { ba.clone() } else { ba.neg() };
            assert_eq!(ab, expect, "graded commutativity");

            let d_ab = exterior_d(&ab).unwrap();
            let da_b = exterior_d(&a).unwrap().wedge(&b).unwrap();
            let a_db = a.wedge(&exterior_d(&b).unwrap()).unwrap();
            let signed = if k % 2 == 0 { a_db.clone() } else { a_db.neg() };
            assert_eq!(d_ab, da_b.add(&signed).unwrap(), "Leibniz rule");
        }
    }
}

#[test]
fn cartan_on_scalars() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for chart in charts() {
        for _ in 0..8 {
            let x = random_mv(&mut rng, &chart, 1);
            let f = random_poly(&mut rng, &chart, 2, 3);
            let via_lie = lie_derivative(&x, &DifferentialForm::scalar(f.clone())).unwrap();
            let df = DifferentialForm::differential(&f).unwrap();
            let via_pairing = interior_product(&x, &df).unwrap();
            assert_eq!(via_lie, via_pairing, "L_X f = i_X df");
        }
    }
}

#[test]
fn pullback_functoriality_and_naturality() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let chart = Chart::new(["x", "y", "z"]).unwrap();
    for _ in 0..6 {
        // Unipotent shears compose with exact inverses.
        let p1 = random_poly(&mut rng, &chart, 2, 2);
        let phi = PolyMap::new(
            &chart,
            &chart,
            vec![
                ScalarField::coordinate(&chart, 0)
                    .unwrap()
                    .add(&strip_var(&p1, 0))
                    .unwrap(),
                ScalarField::coordinate(&chart, 1).unwrap(),
                ScalarField::coordinate(&chart, 2).unwrap(),
            ],
        )
        .unwrap();
        let p2 = random_poly(&mut rng, &chart, 2, 2);
        let psi = PolyMap::new(
            &chart,
            &chart,
            vec![
                ScalarField::coordinate(&chart, 0).unwrap(),
                ScalarField::coordinate(&chart, 1)
                    .unwrap()
                    .add(&strip_to_var(&p2, 2))
                    .unwrap(),
                ScalarField::coordinate(&chart, 2).unwrap(),
            ],
        )
        .unwrap();
        let k = rng.gen_range(0..=2);
        let w = random_form(&mut rng, &chart, k);
        let composed = phi.compose(&psi).unwrap();
        let lhs = composed.pullback_form(&w).unwrap();
        let rhs = psi.pullback_form(&phi.pullback_form(&w).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "(phi . psi)^* = psi^* . phi^*");

        let dw = exterior_d(&w).unwrap();
        assert_eq!(
            phi.pullback_form(&dw).unwrap(),
            exterior_d(&phi.pullback_form(&w).unwrap()).unwrap(),
            "pullback commutes with d"
        );

        let l = rng.gen_range(0..=1);
        let u = random_form(&mut rng, &chart, l);
        assert_eq!(
            phi.pullback_form(&w.wedge(&u).unwrap()).unwrap(),
            phi.pullback_form(&w)
                .unwrap()
                .wedge(&phi.pullback_form(&u).unwrap())
                .unwrap(),
            "pullback is an algebra map"
        );
    }
}

/// Drop all dependence on coordinate `i` so a shear in `x_i` stays invertible.
fn strip_var(f: &ScalarField, i: usize) -> ScalarField {
    let kept = f
        .numerator()
        .terms()
        .filter(|(m, _)| m.degree_in(i) == 0)
        .map(|(m, c)| (m.clone(), c.clone()));
    ScalarField::from_polynomial(Polynomial::from_terms(f.chart(), kept))
}

/// Keep only terms depending on nothing but coordinate `i`.
fn strip_to_var(f: &ScalarField, i: usize) -> ScalarField {
    let kept = f
        .numerator()
        .terms()
        .filter(|(m, _)| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(j, &e)| j == i || e == 0)
        })
        .map(|(m, c)| (m.clone(), c.clone()));
    ScalarField::from_polynomial(Polynomial::from_terms(f.chart(), kept))
}

#[test]
fn lichnerowicz_square_is_dtheta_wedge() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for chart in charts() {
        for _ in 0..6 {
            let theta = random_form(&mut rng, &chart, 1);
            let k = rng.gen_range(0..=2.min(chart.dim() - 1));
            let w = random_form(&mut rng, &chart, k);
            let twice = lichnerowicz_d(&theta, &lichnerowicz_d(&theta, &w).unwrap()).unwrap();
            let dtheta = exterior_d(&theta).unwrap();
            assert_eq!(twice, dtheta.wedge(&w).unwrap());
        }
    }
}

#[test]
fn schouten_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for chart in charts() {
        let dim = chart.dim();
        for _ in 0..6 {
            let p = rng.gen_range(0..=3.min(dim));
            let q = rng.gen_range(0..=3.min(dim));
            let r = rng.gen_range(0..=3.min(dim));
            let a = random_mv(&mut rng, &chart, p);
            let b = random_mv(&mut rng, &chart, q);
            let c = random_mv(&mut rng, &chart, r);

            // (1) graded antisymmetry
            let ab = schouten_bracket(&a, &b).unwrap();
            let ba = schouten_bracket(&b, &a).unwrap();
            let sign = if ((p + 1) * (q + 1)) % 2 == 0 { 1 } else { -1 };
            let expect = if sign > 0 { ba.neg() } else { ba.clone() };
            assert_eq!(ab, expect, "antisymmetry p={p} q={q}");

            // (2) Leibniz in the second argument:
            // [A, B ^ C] = [A,B] ^ C + (-1)^((p-1) q) B ^ [A,C]
            let lhs = schouten_bracket(&a, &b.wedge(&c).unwrap()).unwrap();
            let t1 = schouten_bracket(&a, &b).unwrap().wedge(&c).unwrap();
            let t2 = b.wedge(&schouten_bracket(&a, &c).unwrap()).unwrap();
            let t2 = if ((p + 1) * q) % 2 == 0 { t2 } else { t2.neg() };
            assert_eq!(lhs, t1.add(&t2).unwrap(), "Leibniz-1 p={p} q={q} r={r}");

            // (2') Leibniz in the first argument:
            // [A ^ B, C] = A ^ [B,C] + (-1)^((r-1) q) [A,C] ^ B
            let lhs = schouten_bracket(&a.wedge(&b).unwrap(), &c).unwrap();
            let t1 = a.wedge(&schouten_bracket(&b, &c).unwrap()).unwrap();
            let t2 = schouten_bracket(&a, &c).unwrap().wedge(&b).unwrap();
            let t2 = if ((r + 1) * q) % 2 == 0 { t2 } else { t2.neg() };
            assert_eq!(lhs, t1.add(&t2).unwrap(), "Leibniz-2 p={p} q={q} r={r}");

            // (3) graded Jacobi identity
            let j1 = schouten_bracket(&a, &schouten_bracket(&b, &c).unwrap()).unwrap();
            let j1 = signed(j1, (p + 1) * (r + 1));
            let j2 = schouten_bracket(&b, &schouten_bracket(&c, &a).unwrap()).unwrap();
            let j2 = signed(j2, (q + 1) * (p + 1));
            let j3 = schouten_bracket(&c, &schouten_bracket(&a, &b).unwrap()).unwrap();
            let j3 = signed(j3, (r + 1) * (q + 1));
            let total = j1.add(&j2).unwrap().add(&j3).unwrap();
            assert!(total.is_zero(), "Jacobi p={p} q={q} r={r}");
        }

        // (4) vector fields: Lie bracket and action on functions.
        for _ in 0..6 {
            let x = random_mv(&mut rng, &chart, 1);
            let y = random_mv(&mut rng, &chart, 1);
            let f = random_poly(&mut rng, &chart, 2, 3);
            let xy = schouten_bracket(&x, &y).unwrap();
            let lie = lie_bracket_reference(&x, &y);
            assert_eq!(xy, lie, "[X,Y] = L_X Y");
            let xf = schouten_bracket(&x, &MultiVectorField::scalar(f.clone())).unwrap();
            assert_eq!(
                xf.as_scalar().unwrap(),
                x.apply_to_scalar(&f).unwrap(),
                "[X,f] = X(f)"
            );
        }
    }
}

fn signed(m: MultiVectorField, exponent: usize) -> MultiVectorField {
    if exponent % 2 == 0 {
        m
    } else {
        m.neg()
    }
}

/// Independent Lie bracket from the component formula
/// `[X,Y]^j = sum_i X^i dY^j/dx_i - Y^i dX^j/dx_i`.
fn lie_bracket_reference(x: &MultiVectorField, y: &MultiVectorField) -> MultiVectorField {
    let chart = x.chart().clone();
    let xs = x.components().unwrap();
    let ys = y.components().unwrap();
    let mut comps = Vec::new();
    for j in 0..chart.dim() {
        let mut acc = ScalarField::zero(&chart);
        for i in 0..chart.dim() {
            acc = acc
                .add(&xs[i].mul(&ys[j].partial_derivative(i).unwrap()).unwrap())
                .unwrap();
            acc = acc
                .sub(&ys[i].mul(&xs[j].partial_derivative(i).unwrap()).unwrap())
                .unwrap();
        }
        comps.push(acc);
    }
    MultiVectorField::from_components(&chart, &comps).unwrap()
}
