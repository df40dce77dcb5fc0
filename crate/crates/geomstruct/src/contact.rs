use extcalc::{
    exterior_d, form_on_vector, interior_product, DifferentialForm, MultiVectorField,
};
use symexpr::{Chart, Point, ScalarField};

use crate::linalg::{self, Matrix};
use crate::{classify, Error};

/// A certified contact form on an odd-dimensional chart, with its cached
/// differential and Reeb field: alpha, ker alpha, d alpha restricted to it,
/// and the unique field R with alpha(R) = 1 and i_R d alpha = 0.
#[derive(Clone, PartialEq, Debug)]
pub struct ContactData {
    alpha: DifferentialForm,
    d_alpha: DifferentialForm,
    reeb: MultiVectorField,
    half_rank: usize,
}

impl ContactData {
    /// Certify a 1-form as contact: the top form `alpha ^ (d alpha)^n` must
    /// not vanish identically, and the Reeb system must be solvable.
    pub fn new(alpha: DifferentialForm) -> Result<ContactData, Error> {
        if alpha.degree() != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: alpha.degree(),
            });
        }
        let dim = alpha.chart().dim();
        if dim % 2 == 0 {
            return Err(Error::EvenDimension { dim });
        }
        let n = dim / 2;
        let d_alpha = exterior_d(&alpha)?;
        let top = alpha.wedge(&d_alpha.wedge_pow(n)?)?;
        if top.is_zero() {
            return Err(Error::NotContact);
        }
        let reeb = reeb_field(&alpha)?;
        let data = ContactData {
            alpha,
            d_alpha,
            reeb,
            half_rank: n,
        };
        debug_assert!(data.verify_reeb().unwrap_or(false));
        Ok(data)
    }

    pub fn chart(&self) -> &Chart {
        self.alpha.chart()
    }

    pub fn alpha(&self) -> &DifferentialForm {
        &self.alpha
    }

    pub fn d_alpha(&self) -> &DifferentialForm {
        &self.d_alpha
    }

    pub fn reeb(&self) -> &MultiVectorField {
        &self.reeb
    }

    /// n in dim = 2n + 1.
    pub fn half_rank(&self) -> usize {
        self.half_rank
    }

    fn verify_reeb(&self) -> Result<bool, Error> {
        let pairing = form_on_vector(&self.alpha, &self.reeb)?;
        let contracted = interior_product(&self.reeb, &self.d_alpha)?;
        Ok(pairing.is_one() && contracted.is_zero())
    }

    /// Projection onto ker alpha along the Reeb direction:
    /// `X - alpha(X) R`.
    pub fn project_to_kernel(&self, x: &MultiVectorField) -> Result<MultiVectorField, Error> {
        let along = form_on_vector(&self.alpha, x)?;
        Ok(x.sub(&self.reeb.scale(&along)?)?)
    }
}

/// Matrix of a 2-form: entry (i, j) is `w(e_i, e_j)`.
pub(crate) fn two_form_matrix(w: &DifferentialForm) -> Matrix {
    let chart = w.chart().clone();
    let dim = chart.dim();
    let mut m = vec![vec![ScalarField::zero(&chart); dim]; dim];
    for (idx, c) in w.terms() {
        let (i, j) = (idx[0], idx[1]);
        m[i][j] = c.clone();
        m[j][i] = c.neg();
    }
    m
}

pub(crate) fn covector_components(alpha: &DifferentialForm) -> Vec<ScalarField> {
    let chart = alpha.chart().clone();
    (0..chart.dim()).map(|i| alpha.coeff(&[i])).collect()
}

/// The unique solution of `alpha(R) = 1`, `i_R d alpha = 0`, by an exact
/// linear solve over the rational-function field.
pub fn reeb_field(alpha: &DifferentialForm) -> Result<MultiVectorField, Error> {
    let chart = alpha.chart().clone();
    let dim = chart.dim();
    if dim % 2 == 0 {
        return Err(Error::EvenDimension { dim });
    }
    let d_alpha = exterior_d(alpha)?;
    let a = two_form_matrix(&d_alpha);
    let alpha_c = covector_components(alpha);
    // Rows: for each j, sum_i R_i da(e_i, e_j) = 0; then alpha(R) = 1.
    let mut rows: Matrix = Vec::with_capacity(dim + 1);
    let mut rhs = Vec::with_capacity(dim + 1);
    for j in 0..dim {
        rows.push((0..dim).map(|i| a[i][j].clone()).collect());
        rhs.push(ScalarField::zero(&chart));
    }
    rows.push(alpha_c);
    rhs.push(ScalarField::one(&chart));
    let x = linalg::solve_unique(&rows, &rhs, &chart)?;
    Ok(MultiVectorField::from_components(&chart, &x)?)
}

/// Musical map of a contact form: `phi(X) = i_X d alpha + alpha(X) alpha`,
/// an isomorphism sending the Reeb field to alpha.
pub fn musical_phi(data: &ContactData, x: &MultiVectorField) -> Result<DifferentialForm, Error> {
    let contracted = interior_product(x, data.d_alpha())?;
    let along = form_on_vector(data.alpha(), x)?;
    Ok(contracted.add(&data.alpha().scale(&along)?)?)
}

/// Matrix of the musical map in coordinates: column i holds the components
/// of `phi(e_i)`.
pub(crate) fn musical_matrix(data: &ContactData) -> Matrix {
    let chart = data.chart().clone();
    let dim = chart.dim();
    let a = two_form_matrix(data.d_alpha());
    let alpha_c = covector_components(data.alpha());
    let mut m = vec![vec![ScalarField::zero(&chart); dim]; dim];
    for (j, row) in m.iter_mut().enumerate() {
        for (i, entry) in row.iter_mut().enumerate() {
            // coefficient of dx_j in phi(e_i)
            *entry = a[i][j]
                .add(&alpha_c[i].mul(&alpha_c[j]).expect("same chart"))
                .expect("same chart");
        }
    }
    m
}

/// Inverse of the musical map by an exact linear solve.
pub fn phi_inverse(data: &ContactData, beta: &DifferentialForm) -> Result<MultiVectorField, Error> {
    if beta.degree() != 1 {
        return Err(Error::WrongDegree {
            expected: 1,
            got: beta.degree(),
        });
    }
    let chart = data.chart().clone();
    let m = musical_matrix(data);
    let rhs = covector_components(beta);
    let x = linalg::solve_unique(&m, &rhs, &chart)?;
    Ok(MultiVectorField::from_components(&chart, &x)?)
}

/// The contact Hamiltonian field of H: the unique X with `alpha(X) = H` and
/// `i_X d alpha = -dH + dH(R) alpha`.
pub fn contact_hamiltonian(data: &ContactData, h: &ScalarField) -> Result<MultiVectorField, Error> {
    let chart = data.chart().clone();
    let dim = chart.dim();
    let a = two_form_matrix(data.d_alpha());
    let alpha_c = covector_components(data.alpha());
    let dh = DifferentialForm::differential(h)?;
    let dh_reeb = form_on_vector(&dh, data.reeb())?;
    // rhs 1-form: -dH + dH(R) alpha
    let rhs_form = dh.neg().add(&data.alpha().scale(&dh_reeb)?)?;
    let mut rows: Matrix = Vec::with_capacity(dim + 1);
    let mut rhs = Vec::with_capacity(dim + 1);
    for j in 0..dim {
        rows.push((0..dim).map(|i| a[i][j].clone()).collect());
        rhs.push(rhs_form.coeff(&[j]));
    }
    rows.push(alpha_c);
    rhs.push(h.clone());
    let x = linalg::solve_unique(&rows, &rhs, &chart)?;
    Ok(MultiVectorField::from_components(&chart, &x)?)
}

/// Report on the frame of kernel projections of contact Hamiltonian fields.
#[derive(Clone, Debug)]
pub struct SymplecticFrameReport {
    /// The projected fields, one per input function; each lies in ker alpha.
    pub frame: Vec<MultiVectorField>,
    /// Pairing matrix `d alpha(Xbar_i, Xbar_j)`.
    pub pairing: Matrix,
    /// Top coefficient of the q-fold wedge power of the frame 2-form.
    pub top_power: ScalarField,
    pub identically_zero: bool,
    /// Sample points where the top power vanishes.
    pub sample_failures: Vec<Point>,
}

/// Frame of projected Hamiltonian fields `Xbar_{f_i} = X_{f_i} - f_i R` with
/// the symplectic-frame criterion: the pairing matrix under d alpha must have
/// nonvanishing top wedge power.
pub fn contact_gradient_frame(
    data: &ContactData,
    functions: &[ScalarField],
    samples: &[Point],
) -> Result<SymplecticFrameReport, Error> {
    let chart = data.chart().clone();
    if functions.len() % 2 != 0 || functions.len() >= chart.dim() {
        return Err(Error::DimensionMismatch {
            expected: chart.dim() - 1,
            got: functions.len(),
        });
    }
    let mut frame = Vec::with_capacity(functions.len());
    for f in functions {
        let x = contact_hamiltonian(data, f)?;
        let projected = x.sub(&data.reeb().scale(f)?)?;
        debug_assert!(form_on_vector(data.alpha(), &projected)?.is_zero());
        frame.push(projected);
    }
    let k = frame.len();
    let mut pairing = vec![vec![ScalarField::zero(&chart); k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let v = data.d_alpha().apply(&[&frame[i], &frame[j]])?;
            pairing[i][j] = v.clone();
            pairing[j][i] = v.neg();
        }
    }
    let top_power = frame_top_power(&pairing, &chart)?;
    let identically_zero = top_power.is_zero();
    let sample_failures = classify::vanishing_samples(&top_power, samples)?;
    Ok(SymplecticFrameReport {
        frame,
        pairing,
        top_power,
        identically_zero,
        sample_failures,
    })
}

/// Coefficient of the full frame volume in the q-fold wedge power of the
/// 2-form `sum_{i<j} m[i][j] e_i ^ e_j` on a frame of 2q slots.
pub(crate) fn frame_top_power(m: &Matrix, chart: &Chart) -> Result<ScalarField, Error> {
    let k = m.len();
    if k == 0 {
        return Ok(ScalarField::one(chart));
    }
    if k % 2 != 0 {
        return Ok(ScalarField::zero(chart));
    }
    // Iterated wedge over synthetic blades on k slots.
    use std::collections::BTreeMap;
    let mut acc: BTreeMap<u64, ScalarField> = BTreeMap::new();
    acc.insert(0, ScalarField::one(chart));
    for _ in 0..k / 2 {
        let mut next: BTreeMap<u64, ScalarField> = BTreeMap::new();
        for (blade, c) in acc.iter() {
            for i in 0..k {
                for j in (i + 1)..k {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    let pair = (1u64 << i) | (1u64 << j);
                    if blade & pair != 0 {
                        continue;
                    }
                    let sign = extcalc::blade::wedge_sign(*blade, pair).expect("disjoint");
                    let mut t = c.mul(&m[i][j])?;
                    if sign < 0 {
                        t = t.neg();
                    }
                    let entry = next
                        .entry(blade | pair)
                        .or_insert_with(|| ScalarField::zero(chart));
                    *entry = entry.add(&t)?;
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    let full = (1u64 << k) - 1;
    Ok(acc
        .get(&full)
        .cloned()
        .unwrap_or_else(|| ScalarField::zero(chart)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use extcalc::{parse_form, parse_multivector};
    use symexpr::parse_scalar;

    fn std_contact() -> ContactData {
        let chart = Chart::new(["x", "y", "z"]).unwrap();
        ContactData::new(parse_form("d z + x*d y", &chart).unwrap()).unwrap()
    }

    #[test]
    fn reeb_of_standard_forms() {
        let chart = Chart::new(["x", "y", "z"]).unwrap();
        let dz = parse_multivector("@z", &chart).unwrap();
        assert_eq!(
            reeb_field(&parse_form("d z + x*d y", &chart).unwrap()).unwrap(),
            dz
        );
        assert_eq!(
            reeb_field(&parse_form("d z - y*d x", &chart).unwrap()).unwrap(),
            dz
        );
        assert!(matches!(
            reeb_field(&parse_form("d z", &chart).unwrap()),
            Err(Error::SingularSolve)
        ));
    }

    #[test]
    fn musical_map_round_trip() {
        let data = std_contact();
        let chart = data.chart().clone();
        // phi(R) = alpha
        assert_eq!(
            musical_phi(&data, data.reeb()).unwrap(),
            data.alpha().clone()
        );
        // phi(d/dx) = dy on the standard form
        let ddx = parse_multivector("@x", &chart).unwrap();
        assert_eq!(
            musical_phi(&data, &ddx).unwrap(),
            parse_form("d y", &chart).unwrap()
        );
        // phi_inverse(dx) = -d/dy + x d/dz
        let got = phi_inverse(&data, &parse_form("d x", &chart).unwrap()).unwrap();
        assert_eq!(got, parse_multivector("-@y + x*@z", &chart).unwrap());
        // phi . phi^{-1} = id on a messy covector
        let beta = parse_form("x*d x + (1+y^2)*d z", &chart).unwrap();
        let back = musical_phi(&data, &phi_inverse(&data, &beta).unwrap()).unwrap();
        assert_eq!(back, beta);
    }

    #[test]
    fn hamiltonian_fields() {
        let data = std_contact();
        let chart = data.chart().clone();
        let one = parse_scalar("1", &chart).unwrap();
        assert_eq!(&contact_hamiltonian(&data, &one).unwrap(), data.reeb());

        let x = parse_scalar("x", &chart).unwrap();
        assert_eq!(
            contact_hamiltonian(&data, &x).unwrap(),
            parse_multivector("@y", &chart).unwrap()
        );

        // The defining identities hold exactly for a messier H.
        let h = parse_scalar("z + x*y", &chart).unwrap();
        let xh = contact_hamiltonian(&data, &h).unwrap();
        assert_eq!(form_on_vector(data.alpha(), &xh).unwrap(), h);
        let dh = DifferentialForm::differential(&h).unwrap();
        let dh_r = form_on_vector(&dh, data.reeb()).unwrap();
        let rhs = dh.neg().add(&data.alpha().scale(&dh_r).unwrap()).unwrap();
        assert_eq!(
            interior_product(&xh, data.d_alpha()).unwrap(),
            rhs
        );
    }

    #[test]
    fn gradient_frame_criterion() {
        let data = std_contact();
        let chart = data.chart().clone();
        let fs = vec![
            parse_scalar("x", &chart).unwrap(),
            parse_scalar("y", &chart).unwrap(),
        ];
        let report = contact_gradient_frame(&data, &fs, &[]).unwrap();
        assert_eq!(
            report.frame[0],
            parse_multivector("@y - x*@z", &chart).unwrap()
        );
        assert_eq!(report.frame[1], parse_multivector("-@x", &chart).unwrap());
        assert!(report.top_power.is_one());
        assert!(!report.identically_zero);

        let bad = vec![
            parse_scalar("y", &chart).unwrap(),
            parse_scalar("z", &chart).unwrap(),
        ];
        let report = contact_gradient_frame(&data, &bad, &[]).unwrap();
        assert!(report.identically_zero);

        let repeated = vec![
            parse_scalar("x", &chart).unwrap(),
            parse_scalar("x", &chart).unwrap(),
        ];
        let report = contact_gradient_frame(&data, &repeated, &[]).unwrap();
        assert!(report.identically_zero);
    }
}
