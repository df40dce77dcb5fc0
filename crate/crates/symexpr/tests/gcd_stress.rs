use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symexpr::{rat, Chart, Monomial, Polynomial, ScalarField};

fn random_poly(rng: &mut ChaCha8Rng, chart: &Chart, max_deg: u32, terms: usize) -> Polynomial {
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
        let c = rat(rng.gen_range(-3i64..=3));
        p = p.add(&Polynomial::from_terms(
            chart,
            [(Monomial::from_exponents(exps), c)],
        ));
    }
    p
}

#[test]
fn scalar_arithmetic_is_fast_enough() {
    let chart = Chart::new(["x", "y", "z"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = Instant::now();
    for round in 0..40 {
        let n1 = random_poly(&mut rng, &chart, 2, 3);
        let d1 = {
            let d = random_poly(&mut rng, &chart, 2, 2);
            if d.is_zero() {
                Polynomial::one(&chart)
            } else {
                d
            }
        };
        let n2 = random_poly(&mut rng, &chart, 2, 3);
        let d2 = {
            let d = random_poly(&mut rng, &chart, 2, 2);
            if d.is_zero() {
                Polynomial::one(&chart)
            } else {
                d
            }
        };
        let t0 = Instant::now();
        let a = ScalarField::new(n1, d1).unwrap();
        let b = ScalarField::new(n2, d2).unwrap();
        let s = a.add(&b).unwrap();
        let p = a.mul(&b).unwrap();
        let _ = s.add(&p).unwrap();
        let dt = t0.elapsed();
        if dt.as_millis() > 500 {
            panic!("round {round} took {dt:?}: a={a} b={b}");
        }
    }
    eprintln!("total: {:?}", start.elapsed());
}
