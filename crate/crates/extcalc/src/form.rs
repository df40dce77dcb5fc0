use std::fmt;

use symexpr::{Chart, Rational, ScalarField};

use crate::blade;
use crate::graded::Graded;
use crate::{Error, PolyMap};

/// A homogeneous differential form: coefficients keyed by strictly increasing
/// tuples of coordinate indices. The zero form of any degree has no terms.
#[derive(Clone, PartialEq, Debug)]
pub struct DifferentialForm(pub(crate) Graded);

impl DifferentialForm {
    pub fn zero(chart: &Chart, degree: usize) -> DifferentialForm {
        DifferentialForm(Graded::zero(chart, degree))
    }

    /// Degree-zero form wrapping a scalar.
    pub fn scalar(s: ScalarField) -> DifferentialForm {
        DifferentialForm(Graded::scalar(s))
    }

    /// Basis form `dx_{i1} ^ ... ^ dx_{ik}` for the given coordinate indices,
    /// in any order (the Koszul sign of sorting is applied).
    pub fn basis(chart: &Chart, indices: &[usize]) -> Result<DifferentialForm, Error> {
        Ok(DifferentialForm(Graded::basis(chart, indices)?))
    }

    /// The exact differential of a scalar.
    pub fn differential(s: &ScalarField) -> Result<DifferentialForm, Error> {
        let chart = s.chart().clone();
        let mut out = Graded::zero(&chart, 1);
        for i in 0..chart.dim() {
            out.add_to(1u64 << i, &s.partial_derivative(i)?)?;
        }
        Ok(DifferentialForm(out))
    }

    pub fn from_terms<I>(chart: &Chart, degree: usize, terms: I) -> Result<DifferentialForm, Error>
    where
        I: IntoIterator<Item = (Vec<usize>, ScalarField)>,
    {
        let mut acc = DifferentialForm::zero(chart, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: idx.len(),
                });
            }
            let term = DifferentialForm::basis(chart, &idx)?.scale(&c)?;
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

    /// Coefficient of the strictly increasing index tuple.
    pub fn coeff(&self, indices: &[usize]) -> ScalarField {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
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

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &ScalarField)> {
        self.0
            .coeffs
            .iter()
            .map(|(b, c)| (blade::indices(*b).collect(), c))
    }

    /// The scalar wrapped by a degree-zero form.
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

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm, Error> {
        Ok(DifferentialForm(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm, Error> {
        Ok(DifferentialForm(self.0.sub(&other.0)?))
    }

    pub fn neg(&self) -> DifferentialForm {
        DifferentialForm(self.0.neg())
    }

    pub fn scale(&self, s: &ScalarField) -> Result<DifferentialForm, Error> {
        Ok(DifferentialForm(self.0.scale(s)?))
    }

    pub fn scale_rational(&self, r: &Rational) -> DifferentialForm {
        DifferentialForm(self.0.scale_rational(r))
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm, Error> {
        Ok(DifferentialForm(self.0.wedge(&other.0)?))
    }

    pub fn wedge_pow(&self, n: usize) -> Result<DifferentialForm, Error> {
        let mut out = DifferentialForm::scalar(ScalarField::one(self.chart()));
        for _ in 0..n {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// Evaluate on vector fields given as component columns (degree many).
    pub fn apply(&self, vectors: &[&crate::MultiVectorField]) -> Result<ScalarField, Error> {
        if vectors.len() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                got: vectors.len(),
            });
        }
        let mut current = self.clone();
        // The first argument fills the first slot: w(v1, v2) = i_{v2} i_{v1} w.
        for v in vectors.iter() {
            current = crate::interior_product(v, &current)?;
        }
        current
            .as_scalar()
            .ok_or(Error::KindMismatch { expected: "scalar" })
    }

    pub fn pullback(&self, map: &PolyMap) -> Result<DifferentialForm, Error> {
        map.pullback_form(self)
    }
}

/// Exterior derivative; degree rises by one and d(d(w)) = 0.
pub fn exterior_d(form: &DifferentialForm) -> Result<DifferentialForm, Error> {
    let chart = form.chart().clone();
    let mut out = Graded::zero(&chart, form.degree() + 1);
    for (b, c) in form.0.coeffs.iter() {
        for i in 0..chart.dim() {
            if blade::contains(*b, i) {
                continue;
            }
            let dc = c.partial_derivative(i)?;
            if dc.is_zero() {
                continue;
            }
            let sign = blade::insert_sign(i, *b);
            let dc = if sign < 0 { dc.neg() } else { dc };
            out.add_to(b | (1u64 << i), &dc)?;
        }
    }
    Ok(DifferentialForm(out))
}

/// Twisted differential `d w + theta ^ w` for a fixed 1-form `theta`.
/// It squares to `d theta ^ w`, hence is a coboundary exactly when
/// `theta` is closed.
pub fn lichnerowicz_d(
    theta: &DifferentialForm,
    form: &DifferentialForm,
) -> Result<DifferentialForm, Error> {
    if theta.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: theta.degree(),
        });
    }
    exterior_d(form)?.add(&theta.wedge(form)?)
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parse::display_graded(&self.0, "d ", f)
    }
}
