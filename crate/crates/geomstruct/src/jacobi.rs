use extcalc::{
    exterior_d, form_on_vector, mv_pairing_scalar, mv_pairing_vector, schouten_bracket,
    DifferentialForm, MultiVectorField,
};
use symexpr::{Chart, Point, PointValue, ScalarField};

use crate::contact::{covector_components, two_form_matrix, ContactData};
use crate::linalg::{self, Matrix};
use crate::{classify, Error};

/// A certified locally conformal symplectic pair: nondegenerate `omega`,
/// closed Lee form `theta`, and `d omega + theta ^ omega = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct LcsPair {
    omega: DifferentialForm,
    theta: DifferentialForm,
}

impl LcsPair {
    pub fn new(omega: DifferentialForm, theta: DifferentialForm) -> Result<LcsPair, Error> {
        if omega.degree() != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                got: omega.degree(),
            });
        }
        if theta.degree() != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: theta.degree(),
            });
        }
        let report = classify::nondegeneracy_report(&omega, &[])?;
        if report.identically_zero {
            return Err(Error::LcsCertification("top power vanishes identically"));
        }
        if !exterior_d(&theta)?.is_zero() {
            return Err(Error::LcsCertification("Lee form is not closed"));
        }
        let lhs = exterior_d(&omega)?.add(&theta.wedge(&omega)?)?;
        if !lhs.is_zero() {
            return Err(Error::LcsCertification("d omega + theta ^ omega != 0"));
        }
        Ok(LcsPair { omega, theta })
    }

    pub fn omega(&self) -> &DifferentialForm {
        &self.omega
    }

    pub fn lee_form(&self) -> &DifferentialForm {
        &self.theta
    }
}

/// Bivector-plus-vector pair, certified jointly by [`jacobi_check`].
#[derive(Clone, PartialEq, Debug)]
pub struct JacobiPair {
    lambda: MultiVectorField,
    e: MultiVectorField,
}

impl JacobiPair {
    pub fn new(lambda: MultiVectorField, e: MultiVectorField) -> Result<JacobiPair, Error> {
        if lambda.degree() != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                got: lambda.degree(),
            });
        }
        if e.degree() != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: e.degree(),
            });
        }
        if lambda.chart() != e.chart() {
            return Err(Error::Calc(extcalc::Error::ChartMismatch));
        }
        Ok(JacobiPair { lambda, e })
    }

    pub fn chart(&self) -> &Chart {
        self.lambda.chart()
    }

    pub fn lambda(&self) -> &MultiVectorField {
        &self.lambda
    }

    pub fn e(&self) -> &MultiVectorField {
        &self.e
    }

    /// `X_f = sharp(df)`, the Hamiltonian field of the pair.
    pub fn hamiltonian_field(&self, f: &ScalarField) -> Result<MultiVectorField, Error> {
        let df = DifferentialForm::differential(f)?;
        Ok(mv_pairing_vector(&self.lambda, &df)?)
    }
}

/// Exact verdict on the two defining identities of a Jacobi pair. In the
/// bracket convention fixed by the Schouten identity suite, the defining
/// equations read `[L, L] + 2 E ^ L = 0` and `[E, L] = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct JacobiCheck {
    pub bracket_ok: bool,
    pub invariance_ok: bool,
}

impl JacobiCheck {
    pub fn certified(&self) -> bool {
        self.bracket_ok && self.invariance_ok
    }
}

pub fn jacobi_check(pair: &JacobiPair) -> Result<JacobiCheck, Error> {
    let bracket = schouten_bracket(&pair.lambda, &pair.lambda)?;
    let correction = pair
        .e
        .wedge(&pair.lambda)?
        .scale_rational(&symexpr::rat(2));
    let bracket_ok = bracket.add(&correction)?.is_zero();
    let invariance_ok = schouten_bracket(&pair.e, &pair.lambda)?.is_zero();
    Ok(JacobiCheck {
        bracket_ok,
        invariance_ok,
    })
}

/// Poisson bivector of a symplectic form: invert the flat map, so that
/// `pi(df, dg)` is the Poisson bracket. Satisfies `[pi, pi] = 0` exactly.
pub fn poisson_from_symplectic(omega: &DifferentialForm) -> Result<MultiVectorField, Error> {
    let report = classify::nondegeneracy_report(omega, &[])?;
    if report.identically_zero {
        return Err(Error::NotSymplectic);
    }
    if !exterior_d(omega)?.is_zero() {
        return Err(Error::NotSymplectic);
    }
    let chart = omega.chart().clone();
    let w = two_form_matrix(omega);
    let w_inv = linalg::invert(&w, &chart)?.ok_or(Error::SingularSolve)?;
    bivector_from_matrix(&chart, &|i, j| w_inv[i][j].neg())
}

fn bivector_from_matrix(
    chart: &Chart,
    entry: &dyn Fn(usize, usize) -> ScalarField,
) -> Result<MultiVectorField, Error> {
    let dim = chart.dim();
    let mut terms = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            terms.push((vec![i, j], entry(i, j)));
        }
    }
    Ok(MultiVectorField::from_terms(chart, 2, terms)?)
}

/// The Jacobi pair of a contact form: `L(b, b') = d alpha(phi^-1 b, phi^-1 b')`
/// and `E = phi^-1(alpha) = R`. The image of sharp(L) is ker alpha.
pub fn jacobi_from_contact(data: &ContactData) -> Result<JacobiPair, Error> {
    let chart = data.chart().clone();
    let dim = chart.dim();
    let m = crate::contact::musical_matrix(data);
    let m_inv = linalg::invert(&m, &chart)?.ok_or(Error::SingularSolve)?;
    let a = two_form_matrix(data.d_alpha());
    // lambda_{ij} = (M^-1 e_i)^T A (M^-1 e_j); column i of M^-1 is phi^-1(dx_i).
    let col = |i: usize| -> Vec<ScalarField> { (0..dim).map(|r| m_inv[r][i].clone()).collect() };
    let pair_entry = |i: usize, j: usize| -> Result<ScalarField, Error> {
        let vi = col(i);
        let vj = col(j);
        let mut acc = ScalarField::zero(&chart);
        for r in 0..dim {
            for s in 0..dim {
                if a[r][s].is_zero() {
                    continue;
                }
                acc = acc.add(&vi[r].mul(&a[r][s])?.mul(&vj[s])?)?;
            }
        }
        Ok(acc)
    };
    let dim_range: Vec<usize> = (0..dim).collect();
    let mut entries = vec![vec![ScalarField::zero(&chart); dim]; dim];
    for &i in &dim_range {
        for &j in &dim_range {
            if i < j {
                entries[i][j] = pair_entry(i, j)?;
            }
        }
    }
    let lambda = bivector_from_matrix(&chart, &|i, j| entries[i][j].clone())?;
    JacobiPair::new(lambda, data.reeb().clone())
}

/// The Jacobi bracket `{f,g} = L(df, dg) + f E(g) - g E(f)`.
pub fn jacobi_bracket(
    pair: &JacobiPair,
    f: &ScalarField,
    g: &ScalarField,
) -> Result<ScalarField, Error> {
    let df = DifferentialForm::differential(f)?;
    let dg = DifferentialForm::differential(g)?;
    let main = mv_pairing_scalar(&pair.lambda, &df, &dg)?;
    let eg = pair.e.apply_to_scalar(g)?;
    let ef = pair.e.apply_to_scalar(f)?;
    Ok(main.add(&f.mul(&eg)?)?.sub(&g.mul(&ef)?)?)
}

/// Residuals of the Hamiltonian-field relations of a Jacobi pair:
/// `[E, X_f] - X_{Ef}` and
/// `[X_f, X_g] - (X_{{f,g}} - f X_{Eg} + g X_{Ef} - {f,g} E)`.
/// Both vanish exactly for certified pairs.
pub fn hamiltonian_relations_check(
    pair: &JacobiPair,
    f: &ScalarField,
    g: &ScalarField,
) -> Result<(MultiVectorField, MultiVectorField), Error> {
    let xf = pair.hamiltonian_field(f)?;
    let xg = pair.hamiltonian_field(g)?;
    let ef = pair.e.apply_to_scalar(f)?;
    let eg = pair.e.apply_to_scalar(g)?;
    let first = schouten_bracket(&pair.e, &xf)?.sub(&pair.hamiltonian_field(&ef)?)?;

    let fg = jacobi_bracket(pair, f, g)?;
    let mut rhs = pair.hamiltonian_field(&fg)?;
    rhs = rhs.sub(&pair.hamiltonian_field(&eg)?.scale(f)?)?;
    rhs = rhs.add(&pair.hamiltonian_field(&ef)?.scale(g)?)?;
    rhs = rhs.sub(&pair.e.scale(&fg)?)?;
    let second = schouten_bracket(&xf, &xg)?.sub(&rhs)?;
    Ok((first, second))
}

/// Output of the nondegenerate-Jacobi dichotomy.
#[derive(Clone, Debug)]
pub enum JacobiStructure {
    /// Even-dimensional case: a certified conformal-symplectic pair.
    Lcs(LcsPair),
    /// Odd-dimensional case: a certified contact form whose Reeb field is E.
    Contact(ContactData),
}

/// A nondegenerate Jacobi pair is conformal symplectic or contact: on even
/// charts invert sharp(L) for omega and solve `sharp(L) theta = E`; on odd
/// charts cut out alpha by `alpha(E) = 1` and `alpha(Im sharp(L)) = 0`.
/// Degenerate characteristic distributions abort with a diagnostic.
pub fn structure_from_nondeg_jacobi(
    pair: &JacobiPair,
    samples: &[Point],
) -> Result<JacobiStructure, Error> {
    let chart = pair.chart().clone();
    let dim = chart.dim();
    // Rows of L: lambda applied to basis covectors; row i is sharp(dx_i).
    let mut l = vec![vec![ScalarField::zero(&chart); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if i < j {
                let c = pair.lambda.coeff(&[i, j]);
                l[i][j] = c.clone();
                l[j][i] = c.neg();
            }
        }
    }
    let e_components: Vec<ScalarField> = (0..dim).map(|i| pair.e.coeff(&[i])).collect();
    // Characteristic distribution at the samples: Im sharp(L) + <E> = TM.
    for p in samples {
        let mut columns: Vec<Vec<f64>> = Vec::new();
        let mut exact_cols: Vec<Vec<ScalarField>> = Vec::new();
        let exact = p.is_exact();
        for i in 0..dim {
            if exact {
                exact_cols.push(l[i].clone());
            } else {
                columns.push(eval_row(&l[i], p)?);
            }
        }
        if exact {
            exact_cols.push(e_components.clone());
            let evaluated: Matrix = exact_cols
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| {
                            let v = match c.evaluate(p)? {
                                PointValue::Exact(q) => q,
                                PointValue::Float(_) => unreachable!("exact point"),
                            };
                            Ok(ScalarField::constant(&chart, v))
                        })
                        .collect::<Result<Vec<_>, Error>>()
                })
                .collect::<Result<Vec<_>, Error>>()?;
            if linalg::rank(&evaluated)? < dim {
                return Err(Error::DegenerateDistribution);
            }
        } else {
            columns.push(p_eval_components(&e_components, p)?);
            if float_rank(&columns, 1e-9) < dim {
                return Err(Error::DegenerateDistribution);
            }
        }
    }
    if dim % 2 == 1 {
        // alpha(sharp(dx_i)) = 0 for all i, alpha(E) = 1.
        let mut rows: Matrix = Vec::with_capacity(dim + 1);
        let mut rhs = Vec::with_capacity(dim + 1);
        for i in 0..dim {
            rows.push(l[i].clone());
            rhs.push(ScalarField::zero(&chart));
        }
        rows.push(e_components.clone());
        rhs.push(ScalarField::one(&chart));
        let alpha_c = linalg::solve_unique(&rows, &rhs, &chart)
            .map_err(|_| Error::DegenerateDistribution)?;
        let alpha = DifferentialForm::from_terms(
            &chart,
            1,
            alpha_c.into_iter().enumerate().map(|(i, c)| (vec![i], c)),
        )?;
        let data = ContactData::new(alpha)?;
        if data.reeb() != &pair.e {
            return Err(Error::NotJacobi);
        }
        Ok(JacobiStructure::Contact(data))
    } else {
        // omega = (L^T)^{-1} as a 2-form matrix; theta = omega-matrix * E.
        let lt: Matrix = (0..dim)
            .map(|i| (0..dim).map(|j| l[j][i].clone()).collect())
            .collect();
        let w = linalg::invert(&lt, &chart)?.ok_or(Error::DegenerateDistribution)?;
        let mut omega_terms = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                omega_terms.push((vec![i, j], w[i][j].clone()));
            }
        }
        let omega = DifferentialForm::from_terms(&chart, 2, omega_terms)?;
        let theta_c = linalg::mat_vec(&w, &e_components)?;
        let theta = DifferentialForm::from_terms(
            &chart,
            1,
            theta_c.into_iter().enumerate().map(|(i, c)| (vec![i], c)),
        )?;
        Ok(JacobiStructure::Lcs(LcsPair::new(omega, theta)?))
    }
}

fn eval_row(row: &[ScalarField], p: &Point) -> Result<Vec<f64>, Error> {
    row.iter()
        .map(|c| {
            c.evaluate(p)
                .map(|v| v.as_f64())
                .map_err(Error::Scalar)
        })
        .collect()
}

fn p_eval_components(row: &[ScalarField], p: &Point) -> Result<Vec<f64>, Error> {
    eval_row(row, p)
}

/// Numeric rank by Gaussian elimination with partial pivoting.
fn float_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let (best, best_val) = (rank..nrows)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((rank, 0.0));
        if best_val <= tol {
            continue;
        }
        m.swap(rank, best);
        let pivot = m[rank][col];
        for r in 0..nrows {
            if r != rank {
                let factor = m[r][col] / pivot;
                for c in col..ncols {
                    let delta = factor * m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
