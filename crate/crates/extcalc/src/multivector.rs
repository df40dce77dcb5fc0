use std::fmt;

use symexpr::{Chart, Rational, ScalarField};

use crate::blade;
use crate::graded::Graded;
use crate::{exterior_d, DifferentialForm, Error};

/// A homogeneous multivector field, written on the basis of wedge products of
/// coordinate vector fields. Degree zero wraps a scalar.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiVectorField(pub(crate) Graded);

impl MultiVectorField {
    pub fn zero(chart: &Chart, degree: usize) -> MultiVectorField {
        MultiVectorField(Graded::zero(chart, degree))
    }

    pub fn scalar(s: ScalarField) -> MultiVectorField {
        MultiVectorField(Graded::scalar(s))
    }

    pub fn basis(chart: &Chart, indices: &[usize]) -> Result<MultiVectorField, Error> {
        Ok(MultiVectorField(Graded::basis(chart, indices)?))
    }

    /// Vector field with the given components.
    pub fn from_components(chart: &Chart, comps: &[ScalarField]) -> Result<MultiVectorField, Error> {
        let mut out = Graded::zero(chart, 1);
        for (i, c) in comps.iter().enumerate() {
            if c.chart() != chart {
                return Err(Error::ChartMismatch);
            }
            out.add_to(1u64 << i, c)?;
        }
        Ok(MultiVectorField(out))
    }

    pub fn from_terms<I>(chart: &Chart, degree: usize, terms: I) -> Result<MultiVectorField, Error>
    where
        I: IntoIterator<Item = (Vec<usize>, ScalarField)>,
    {
        let mut acc = MultiVectorField::zero(chart, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: idx.len(),
                });
            }
            let term = MultiVectorField::basis(chart, &idx)?.scale(&c)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    pub fn chart(&self) -> &Chart {
        &self.0.chart
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, indices: &[usize]) -> ScalarField {
        match blade::from_indices(indices.iter().copied()) {
            Some(b) => self
                .0
                .coeffs
                .get(&b)
                .cloned()
                .unwrap_or_else(|| ScalarField::zero(self.chart())),
            None => ScalarField::zero(self.chart()),
        }
    }

    /// Components of a degree-1 field, one per coordinate.
    pub fn components(&self) -> Option<Vec<ScalarField>> {
        if self.degree() != 1 {
            return None;
        }
        Some(
            (0..self.chart().dim())
                .map(|i| self.coeff(&[i]))
                .collect(),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &ScalarField)> {
        self.0
            .coeffs
            .iter()
            .map(|(b, c)| (blade::indices(*b).collect(), c))
    }

    pub fn as_scalar(&self) -> Option<ScalarField> {
        if self.degree() != 0 {
            return None;
        }
        Some(
            self.0
                .coeffs
                .get(&0)
                .cloned()
                .unwrap_or_else(|| ScalarField::zero(self.chart())),
        )
    }

    pub fn add(&self, other: &MultiVectorField) -> Result<MultiVectorField, Error> {
        Ok(MultiVectorField(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &MultiVectorField) -> Result<MultiVectorField, Error> {
        Ok(MultiVectorField(self.0.sub(&other.0)?))
    }

    pub fn neg(&self) -> MultiVectorField {
        MultiVectorField(self.0.neg())
    }

    pub fn scale(&self, s: &ScalarField) -> Result<MultiVectorField, Error> {
        Ok(MultiVectorField(self.0.scale(s)?))
    }

    pub fn scale_rational(&self, r: &Rational) -> MultiVectorField {
        MultiVectorField(self.0.scale_rational(r))
    }

    pub fn wedge(&self, other: &MultiVectorField) -> Result<MultiVectorField, Error> {
        Ok(MultiVectorField(self.0.wedge(&other.0)?))
    }

    /// Directional derivative of a scalar along a degree-1 field.
    pub fn apply_to_scalar(&self, f: &ScalarField) -> Result<ScalarField, Error> {
        if self.degree() != 1 {
            return Err(Error::NotAVectorField);
        }
        let mut acc = ScalarField::zero(self.chart());
        for (b, c) in self.0.coeffs.iter() {
            let i = blade::indices(*b).next().expect("degree one blade");
            acc = acc.add(&c.mul(&f.partial_derivative(i)?)?)?;
        }
        Ok(acc)
    }
}

/// Interior product of a vector field into a form of degree >= 1.
pub fn interior_product(
    x: &MultiVectorField,
    form: &DifferentialForm,
) -> Result<DifferentialForm, Error> {
    if x.degree() != 1 {
        return Err(Error::NotAVectorField);
    }
    if form.degree() == 0 {
        return Err(Error::InteriorOfScalar);
    }
    x.0.check_chart(&form.0)?;
    let mut out = Graded::zero(form.chart(), form.degree() - 1);
    for (bx, cx) in x.0.coeffs.iter() {
        let i = blade::indices(*bx).next().expect("degree one blade");
        for (b, c) in form.0.coeffs.iter() {
            if blade::contains(*b, i) {
                let sign = blade::remove_front_sign(i, *b);
                let mut t = cx.mul(c)?;
                if sign < 0 {
                    t = t.neg();
                }
                out.add_to(b & !(1u64 << i), &t)?;
            }
        }
    }
    Ok(DifferentialForm(out))
}

/// Lie derivative along a vector field via the Cartan formula
/// `L_X = i_X d + d i_X`; on scalars it is the directional derivative.
pub fn lie_derivative(
    x: &MultiVectorField,
    form: &DifferentialForm,
) -> Result<DifferentialForm, Error> {
    if x.degree() != 1 {
        return Err(Error::NotAVectorField);
    }
    if form.degree() == 0 {
        let f = form.as_scalar().expect("degree zero");
        return Ok(DifferentialForm::scalar(x.apply_to_scalar(&f)?));
    }
    let a = interior_product(x, &exterior_d(form)?)?;
    let b = exterior_d(&interior_product(x, form)?)?;
    a.add(&b)
}

/// Schouten-Nijenhuis bracket of multivector fields:
/// `[A,B] = sum_i dA/dz_i ^ dB/dx_i - (-1)^((p-1)(q-1)) sum_i dB/dz_i ^ dA/dx_i`
/// where `dz_i` is the odd derivative that moves the generator to the back.
/// On vector fields it is the Lie bracket, and `[X, f] = X(f)`.
pub fn schouten_bracket(
    a: &MultiVectorField,
    b: &MultiVectorField,
) -> Result<MultiVectorField, Error> {
    a.0.check_chart(&b.0)?;
    let chart = a.chart().clone();
    let p = a.degree();
    let q = b.degree();
    let out_degree = (p + q).saturating_sub(1);
    let mut out = Graded::zero(&chart, out_degree);
    // Multiplier of the second sum: -(-1)^((p-1)(q-1)).
    let negate_second = (p + 1) * (q + 1) % 2 == 0;
    for i in 0..chart.dim() {
        let da = a.0.odd_derivative_back(i)?;
        if !da.is_zero() {
            let db = b.0.partial(i)?;
            let term = da.wedge(&db)?;
            for (bl, c) in term.coeffs.iter() {
                out.add_to(*bl, c)?;
            }
        }
        let db = b.0.odd_derivative_back(i)?;
        if !db.is_zero() {
            let da = a.0.partial(i)?;
            let term = db.wedge(&da)?;
            for (bl, c) in term.coeffs.iter() {
                let c = if negate_second { c.neg() } else { c.clone() };
                out.add_to(*bl, &c)?;
            }
        }
    }
    Ok(MultiVectorField(out))
}

/// `sharp(L)(beta) = L(beta, .)` for a bivector field: a vector field.
pub fn mv_pairing_vector(
    lambda: &MultiVectorField,
    beta: &DifferentialForm,
) -> Result<MultiVectorField, Error> {
    if lambda.degree() != 2 {
        return Err(Error::NotABivector);
    }
    if beta.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: beta.degree(),
        });
    }
    lambda.0.check_chart(&beta.0)?;
    let chart = lambda.chart().clone();
    let mut out = Graded::zero(&chart, 1);
    for (b, c) in lambda.0.coeffs.iter() {
        let mut it = blade::indices(*b);
        let i = it.next().expect("bivector blade");
        let j = it.next().expect("bivector blade");
        // c * (beta_i zeta_j - beta_j zeta_i)
        let bi = beta.coeff(&[i]);
        let bj = beta.coeff(&[j]);
        out.add_to(1u64 << j, &c.mul(&bi)?)?;
        out.add_to(1u64 << i, &c.mul(&bj)?.neg())?;
    }
    Ok(MultiVectorField(out))
}

/// `L(beta, gamma)` for a bivector field: a scalar.
pub fn mv_pairing_scalar(
    lambda: &MultiVectorField,
    beta: &DifferentialForm,
    gamma: &DifferentialForm,
) -> Result<ScalarField, Error> {
    let sharp = mv_pairing_vector(lambda, beta)?;
    if gamma.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: gamma.degree(),
        });
    }
    let mut acc = ScalarField::zero(lambda.chart());
    for (b, c) in sharp.0.coeffs.iter() {
        let i = blade::indices(*b).next().expect("vector blade");
        acc = acc.add(&c.mul(&gamma.coeff(&[i]))?)?;
    }
    Ok(acc)
}

/// Evaluate a 1-form on a vector field.
pub fn form_on_vector(
    alpha: &DifferentialForm,
    x: &MultiVectorField,
) -> Result<ScalarField, Error> {
    if alpha.degree() != 1 || x.degree() != 1 {
        return Err(Error::NotAVectorField);
    }
    let mut acc = ScalarField::zero(alpha.chart());
    for (b, c) in x.0.coeffs.iter() {
        let i = blade::indices(*b).next().expect("vector blade");
        acc = acc.add(&c.mul(&alpha.coeff(&[i]))?)?;
    }
    Ok(acc)
}

impl fmt::Display for MultiVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parse::display_graded(&self.0, "@", f)
    }
}
