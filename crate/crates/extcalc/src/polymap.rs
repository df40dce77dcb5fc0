use symexpr::{Chart, ScalarField};

use crate::{DifferentialForm, Error, MultiVectorField};

/// A map between charts given by one scalar field per target coordinate.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMap {
    source: Chart,
    target: Chart,
    components: Vec<ScalarField>,
}

impl PolyMap {
    pub fn new(
        source: &Chart,
        target: &Chart,
        components: Vec<ScalarField>,
    ) -> Result<PolyMap, Error> {
        if components.len() != target.dim() {
            return Err(Error::BadMapComponents);
        }
        for c in &components {
            if c.chart() != source {
                return Err(Error::ChartMismatch);
            }
        }
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            components,
        })
    }

    pub fn identity(chart: &Chart) -> PolyMap {
        let components = (0..chart.dim())
            .map(|i| ScalarField::coordinate(chart, i).expect("valid index"))
            .collect();
        PolyMap {
            source: chart.clone(),
            target: chart.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &PolyMap) -> Result<PolyMap, Error> {
        if other.target != self.source {
            return Err(Error::ChartMismatch);
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&other.components).map_err(Error::Scalar))
            .collect::<Result<Vec<_>, _>>()?;
        PolyMap::new(&other.source, &self.target, components)
    }

    pub fn pullback_scalar(&self, f: &ScalarField) -> Result<ScalarField, Error> {
        if f.chart() != &self.target {
            return Err(Error::ChartMismatch);
        }
        f.substitute(&self.components).map_err(|e| match e {
            symexpr::Error::DivisionByZero => Error::PullbackPole,
            other => Error::Scalar(other),
        })
    }

    /// Pullback of a form: substitute components and differentials by the
    /// chain rule; an algebra homomorphism commuting with d.
    pub fn pullback_form(&self, form: &DifferentialForm) -> Result<DifferentialForm, Error> {
        if form.chart() != &self.target {
            return Err(Error::ChartMismatch);
        }
        let mut acc = DifferentialForm::zero(&self.source, form.degree());
        for (indices, c) in form.terms() {
            let mut term = DifferentialForm::scalar(self.pullback_scalar(c)?);
            for i in indices {
                let dcomp = DifferentialForm::differential(&self.components[i])?;
                term = term.wedge(&dcomp)?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Pushforward of a multivector field along an invertible map with known
    /// inverse: basis vectors map by the Jacobian and coefficients by
    /// composition with the inverse.
    pub fn pushforward_multivector(
        &self,
        inverse: &PolyMap,
        field: &MultiVectorField,
    ) -> Result<MultiVectorField, Error> {
        if field.chart() != &self.source
            || inverse.source != self.target
            || inverse.target != self.source
        {
            return Err(Error::ChartMismatch);
        }
        // Pushed coordinate vector fields, as fields on the target.
        let n = self.source.dim();
        let mut pushed = Vec::with_capacity(n);
        for i in 0..n {
            let comps = self
                .components
                .iter()
                .map(|phi_j| {
                    let d = phi_j.partial_derivative(i)?;
                    d.substitute(inverse.components())
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(Error::Scalar)?;
            pushed.push(MultiVectorField::from_components(&self.target, &comps)?);
        }
        let mut acc = MultiVectorField::zero(&self.target, field.degree());
        for (indices, c) in field.terms() {
            let moved = c.substitute(inverse.components()).map_err(Error::Scalar)?;
            let mut term = MultiVectorField::scalar(moved);
            for i in indices {
                term = term.wedge(&pushed[i])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Jacobian entries `d phi_j / d x_i` evaluated symbolically.
    pub fn jacobian(&self) -> Result<Vec<Vec<ScalarField>>, Error> {
        self.components
            .iter()
            .map(|c| c.gradient().map_err(Error::Scalar))
            .collect()
    }
}
