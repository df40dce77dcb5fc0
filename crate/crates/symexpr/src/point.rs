use crate::polynomial::rational_to_f64;
use crate::{Chart, Error, Rational};

/// One coordinate value of a chart point: exact rational or floating.
#[derive(Clone, PartialEq, Debug)]
pub enum PointValue {
    Exact(Rational),
    Float(f64),
}

impl PointValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            PointValue::Exact(q) => rational_to_f64(q),
            PointValue::Float(v) => *v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PointValue::Exact(q) => num_traits::Zero::is_zero(q),
            PointValue::Float(v) => *v == 0.0,
        }
    }
}

/// A point of a chart: one value per coordinate.
#[derive(Clone, PartialEq, Debug)]
pub struct Point {
    chart: Chart,
    values: Vec<PointValue>,
}

impl Point {
    pub fn new(chart: &Chart, values: Vec<PointValue>) -> Result<Point, Error> {
        if values.len() != chart.dim() {
            return Err(Error::PointLength {
                got: values.len(),
                dim: chart.dim(),
            });
        }
        Ok(Point {
            chart: chart.clone(),
            values,
        })
    }

    pub fn from_rationals(chart: &Chart, values: Vec<Rational>) -> Result<Point, Error> {
        Point::new(chart, values.into_iter().map(PointValue::Exact).collect())
    }

    pub fn from_f64s(chart: &Chart, values: Vec<f64>) -> Result<Point, Error> {
        Point::new(chart, values.into_iter().map(PointValue::Float).collect())
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn values(&self) -> &[PointValue] {
        &self.values
    }

    /// All coordinates as exact rationals, when the point is fully exact.
    pub fn exact_values(&self) -> Option<Vec<Rational>> {
        self.values
            .iter()
            .map(|v| match v {
                PointValue::Exact(q) => Some(q.clone()),
                PointValue::Float(_) => None,
            })
            .collect()
    }

    pub fn float_values(&self) -> Vec<f64> {
        self.values.iter().map(PointValue::as_f64).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.values
            .iter()
            .all(|v| matches!(v, PointValue::Exact(_)))
    }
}
