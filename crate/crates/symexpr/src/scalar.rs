use std::fmt;

use num_traits::{One, Zero};

use crate::{Chart, Error, Point, PointValue, Polynomial, Rational};

/// Rational function in canonical form: `num/den` with gcd(num, den) = 1 and
/// `den` monic under the graded-lex order. Structural equality is equality of
/// functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarField {
    num: Polynomial,
    den: Polynomial,
}

impl ScalarField {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<ScalarField, Error> {
        num.chart().check_same(den.chart())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> ScalarField {
        if num.is_zero() {
            return ScalarField {
                den: Polynomial::one(num.chart()),
                num,
            };
        }
        let (mut num, mut den) = (num, den);
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let lc = den.leading_coefficient();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        ScalarField { num, den }
    }

    pub fn from_polynomial(p: Polynomial) -> ScalarField {
        let den = Polynomial::one(p.chart());
        ScalarField { num: p, den }
    }

    pub fn zero(chart: &Chart) -> ScalarField {
        ScalarField::from_polynomial(Polynomial::zero(chart))
    }

    pub fn one(chart: &Chart) -> ScalarField {
        ScalarField::from_polynomial(Polynomial::one(chart))
    }

    pub fn constant(chart: &Chart, c: Rational) -> ScalarField {
        ScalarField::from_polynomial(Polynomial::constant(chart, c))
    }

    pub fn coordinate(chart: &Chart, i: usize) -> Result<ScalarField, Error> {
        Ok(ScalarField::from_polynomial(Polynomial::coordinate(
            chart, i,
        )?))
    }

    pub fn chart(&self) -> &Chart {
        self.num.chart()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &ScalarField) -> Result<ScalarField, Error> {
        self.chart().check_same(other.chart())?;
        if self.den.is_one() && other.den.is_one() {
            return Ok(ScalarField::from_polynomial(self.num.add(&other.num)));
        }
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Ok(ScalarField::reduced(num, den))
    }

    pub fn neg(&self) -> ScalarField {
        ScalarField {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &ScalarField) -> Result<ScalarField, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ScalarField) -> Result<ScalarField, Error> {
        self.chart().check_same(other.chart())?;
        if self.den.is_one() && other.den.is_one() {
            return Ok(ScalarField::from_polynomial(self.num.mul(&other.num)));
        }
        Ok(ScalarField::reduced(
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        ))
    }

    pub fn div(&self, other: &ScalarField) -> Result<ScalarField, Error> {
        self.chart().check_same(other.chart())?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ScalarField::reduced(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inverse(&self) -> Result<ScalarField, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ScalarField::reduced(
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn scale(&self, c: &Rational) -> ScalarField {
        if c.is_zero() {
            return ScalarField::zero(self.chart());
        }
        ScalarField {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: i32) -> Result<ScalarField, Error> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = ScalarField::one(self.chart());
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// Quotient-rule derivative along coordinate `i`, in canonical form.
    pub fn partial_derivative(&self, i: usize) -> Result<ScalarField, Error> {
        let dn = self.num.partial(i)?;
        if self.den.is_one() {
            return Ok(ScalarField::from_polynomial(dn));
        }
        let dd = self.den.partial(i)?;
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Ok(ScalarField::reduced(num, den))
    }

    pub fn gradient(&self) -> Result<Vec<ScalarField>, Error> {
        (0..self.chart().dim())
            .map(|i| self.partial_derivative(i))
            .collect()
    }

    pub fn evaluate(&self, p: &Point) -> Result<PointValue, Error> {
        self.chart().check_same(p.chart())?;
        if let Some(values) = p.exact_values() {
            let den = self.den.eval_exact(&values);
            if den.is_zero() {
                return Err(Error::Pole);
            }
            Ok(PointValue::Exact(self.num.eval_exact(&values) / den))
        } else {
            let values = p.float_values();
            let den = self.den.eval_f64(&values);
            if den == 0.0 {
                return Err(Error::Pole);
            }
            Ok(PointValue::Float(self.num.eval_f64(&values) / den))
        }
    }

    pub fn eval_f64(&self, values: &[f64]) -> Result<f64, Error> {
        let den = self.den.eval_f64(values);
        if den == 0.0 {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_f64(values) / den)
    }

    /// Composition: substitute `args[i]` for coordinate `i`. The arguments
    /// live on a common chart, which becomes the chart of the result.
    pub fn substitute(&self, args: &[ScalarField]) -> Result<ScalarField, Error> {
        assert_eq!(args.len(), self.chart().dim(), "one argument per coordinate");
        let target = args
            .first()
            .map(|a| a.chart().clone())
            .expect("nonempty chart");
        let mut num = ScalarField::zero(&target);
        for (m, c) in self.num.terms() {
            let mut t = ScalarField::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&args[i])?;
                }
            }
            num = num.add(&t)?;
        }
        let mut den = ScalarField::zero(&target);
        for (m, c) in self.den.terms() {
            let mut t = ScalarField::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&args[i])?;
                }
            }
            den = den.add(&t)?;
        }
        num.div(&den)
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            // A single negative term still needs parens so the quotient reparses.
            let s = self.num.to_string();
            if s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/({})", num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn chart() -> Chart {
        Chart::new(["x", "y"]).unwrap()
    }

    fn sf_x(c: &Chart) -> ScalarField {
        ScalarField::coordinate(c, 0).unwrap()
    }

    fn sf_y(c: &Chart) -> ScalarField {
        ScalarField::coordinate(c, 1).unwrap()
    }

    #[test]
    fn add_inverse_cancels() {
        let c = chart();
        let x = sf_x(&c);
        assert!(x.add(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn mul_by_reciprocal_is_one() {
        let c = chart();
        let one = ScalarField::one(&c);
        let f = one
            .add(&sf_x(&c).mul(&sf_x(&c)).unwrap())
            .unwrap(); // 1 + x^2
        let g = one.div(&f).unwrap();
        assert!(g.mul(&f).unwrap().is_one());
    }

    #[test]
    fn division_reduces_to_canonical_form() {
        let c = Chart::new(["x"]).unwrap();
        let x = ScalarField::coordinate(&c, 0).unwrap();
        let one = ScalarField::one(&c);
        // (x^2 - 1) / (x - 1) = x + 1
        let p = x.mul(&x).unwrap().sub(&one).unwrap();
        let d = x.sub(&one).unwrap();
        let q = p.div(&d).unwrap();
        assert_eq!(q, x.add(&one).unwrap());
        assert!(q.is_polynomial());
    }

    #[test]
    fn quotient_rule() {
        let c = Chart::new(["x"]).unwrap();
        let x = ScalarField::coordinate(&c, 0).unwrap();
        let one = ScalarField::one(&c);
        let f = one.div(&one.add(&x.mul(&x).unwrap()).unwrap()).unwrap();
        let df = f.partial_derivative(0).unwrap();
        // -2x / (1+x^2)^2
        let denom = one.add(&x.mul(&x).unwrap()).unwrap();
        let expect = x
            .scale(&rat(-2))
            .div(&denom.mul(&denom).unwrap())
            .unwrap();
        assert_eq!(df, expect);
    }

    #[test]
    fn mixed_partials_commute() {
        let c = chart();
        let x = sf_x(&c);
        let y = sf_y(&c);
        let one = ScalarField::one(&c);
        let f = x
            .mul(&y)
            .unwrap()
            .div(&one.add(&x.mul(&x).unwrap()).unwrap())
            .unwrap();
        let dxy = f
            .partial_derivative(0)
            .unwrap()
            .partial_derivative(1)
            .unwrap();
        let dyx = f
            .partial_derivative(1)
            .unwrap()
            .partial_derivative(0)
            .unwrap();
        assert_eq!(dxy, dyx);
    }

    #[test]
    fn evaluate_exact_and_pole() {
        let c = Chart::new(["x"]).unwrap();
        let x = ScalarField::coordinate(&c, 0).unwrap();
        let one = ScalarField::one(&c);
        let f = one.div(&one.add(&x.mul(&x).unwrap()).unwrap()).unwrap();
        let p = Point::from_rationals(&c, vec![rat(1)]).unwrap();
        assert_eq!(f.evaluate(&p).unwrap(), PointValue::Exact(ratio(1, 2)));

        let g = one.div(&x).unwrap();
        let origin = Point::from_rationals(&c, vec![rat(0)]).unwrap();
        assert_eq!(g.evaluate(&origin), Err(Error::Pole));
    }

    #[test]
    fn canonical_idempotent() {
        let c = chart();
        let x = sf_x(&c);
        let y = sf_y(&c);
        let f = x.div(&y).unwrap();
        let again = ScalarField::new(f.numerator().clone(), f.denominator().clone()).unwrap();
        assert_eq!(f, again);
    }
}
