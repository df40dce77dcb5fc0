use std::collections::BTreeMap;

use symexpr::{Chart, Rational, ScalarField};

use crate::blade::{self, Blade};
use crate::Error;

/// Shared storage for homogeneous graded objects: a degree and a map from
/// basis blades to scalar coefficients. Zero coefficients are never stored.
/// The zero object of any degree has an empty map, so degrees above the
/// chart dimension are representable but always zero.
#[derive(Clone, PartialEq, Debug)]
pub(crate) struct Graded {
    pub chart: Chart,
    pub degree: usize,
    pub coeffs: BTreeMap<Blade, ScalarField>,
}

impl Graded {
    pub fn zero(chart: &Chart, degree: usize) -> Graded {
        Graded {
            chart: chart.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(s: ScalarField) -> Graded {
        let mut g = Graded::zero(s.chart(), 0);
        g.insert(0, s);
        g
    }

    pub fn basis(chart: &Chart, indices: &[usize]) -> Result<Graded, Error> {
        for &i in indices {
            if i >= chart.dim() {
                return Err(Error::Scalar(symexpr::Error::IndexOutOfRange {
                    index: i,
                    dim: chart.dim(),
                }));
            }
        }
        let mut sorted = indices.to_vec();
        // Bubble sort, counting transpositions for the reordering sign.
        let mut sign = 1i32;
        for i in 0..sorted.len() {
            for j in 0..sorted.len().saturating_sub(1 + i) {
                if sorted[j] > sorted[j + 1] {
                    sorted.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            // A repeated factor wedges to zero.
            return Ok(Graded::zero(chart, indices.len()));
        }
        let b = blade::from_indices(sorted.iter().copied()).expect("distinct indices");
        let mut g = Graded::zero(chart, indices.len());
        let one = ScalarField::one(chart);
        g.insert(b, if sign < 0 { one.neg() } else { one });
        Ok(g)
    }

    pub fn insert(&mut self, b: Blade, c: ScalarField) {
        if !c.is_zero() {
            debug_assert_eq!(blade::degree(b), self.degree);
            self.coeffs.insert(b, c);
        }
    }

    pub fn add_to(&mut self, b: Blade, c: &ScalarField) -> Result<(), Error> {
        if c.is_zero() {
            return Ok(());
        }
        debug_assert_eq!(blade::degree(b), self.degree);
        let next = match self.coeffs.get(&b) {
            Some(existing) => existing.add(c)?,
            None => c.clone(),
        };
        if next.is_zero() {
            self.coeffs.remove(&b);
        } else {
            self.coeffs.insert(b, next);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn check_chart(&self, other: &Graded) -> Result<(), Error> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    pub fn add(&self, other: &Graded) -> Result<Graded, Error> {
        self.check_chart(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = Graded {
            chart: self.chart.clone(),
            degree,
            coeffs: self.coeffs.clone(),
        };
        for (b, c) in other.coeffs.iter() {
            out.add_to(*b, c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Graded {
        Graded {
            chart: self.chart.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, c)| (*b, c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Graded) -> Result<Graded, Error> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &ScalarField) -> Result<Graded, Error> {
        if s.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        let mut out = Graded::zero(&self.chart, self.degree);
        for (b, c) in self.coeffs.iter() {
            out.insert(*b, c.mul(s)?);
        }
        Ok(out)
    }

    pub fn scale_rational(&self, r: &Rational) -> Graded {
        let mut out = Graded::zero(&self.chart, self.degree);
        for (b, c) in self.coeffs.iter() {
            out.insert(*b, c.scale(r));
        }
        out
    }

    pub fn wedge(&self, other: &Graded) -> Result<Graded, Error> {
        self.check_chart(other)?;
        let mut out = Graded::zero(&self.chart, self.degree + other.degree);
        for (ba, ca) in self.coeffs.iter() {
            for (bb, cb) in other.coeffs.iter() {
                if let Some(sign) = blade::wedge_sign(*ba, *bb) {
                    let mut c = ca.mul(cb)?;
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.add_to(ba | bb, &c)?;
                }
            }
        }
        Ok(out)
    }

    /// Coefficientwise partial derivative along coordinate `i`.
    pub fn partial(&self, i: usize) -> Result<Graded, Error> {
        let mut out = Graded::zero(&self.chart, self.degree);
        for (b, c) in self.coeffs.iter() {
            out.add_to(*b, &c.partial_derivative(i)?)?;
        }
        Ok(out)
    }

    /// Odd derivative with respect to the degree-one generator `i`, with the
    /// Koszul sign of moving that generator to the back before removing it.
    pub fn odd_derivative_back(&self, i: usize) -> Result<Graded, Error> {
        let mut out = Graded::zero(&self.chart, self.degree.saturating_sub(1));
        for (b, c) in self.coeffs.iter() {
            if blade::contains(*b, i) {
                let sign = blade::remove_back_sign(i, *b);
                let c = if sign < 0 { c.neg() } else { c.clone() };
                out.add_to(b & !(1u64 << i), &c)?;
            }
        }
        Ok(out)
    }

}
