use extcalc::{exterior_d, DifferentialForm};
use symexpr::{Point, PointValue, ScalarField};

use crate::linalg::{self, Matrix};
use crate::Error;

/// Tolerance for calling a floating sample value zero.
const SAMPLE_EPS: f64 = 1e-12;

/// Nondegeneracy is semi-decided: identical vanishing is exact, pointwise
/// nonvanishing is sampled and reported.
#[derive(Clone, Debug)]
pub struct NondegReport {
    /// Coefficient of the top power (`w^m`, or `alpha ^ (d alpha)^n`).
    pub top_power: ScalarField,
    pub identically_zero: bool,
    /// Sample points where the top power vanishes.
    pub sample_failures: Vec<Point>,
}

impl NondegReport {
    pub fn passes(&self) -> bool {
        !self.identically_zero && self.sample_failures.is_empty()
    }
}

pub(crate) fn vanishing_samples(
    top: &ScalarField,
    samples: &[Point],
) -> Result<Vec<Point>, Error> {
    let mut failures = Vec::new();
    for p in samples {
        let vanished = match top.evaluate(p) {
            Ok(PointValue::Exact(q)) => num_traits::Zero::is_zero(&q),
            Ok(PointValue::Float(v)) => v.abs() <= SAMPLE_EPS,
            Err(symexpr::Error::Pole) => false,
            Err(e) => return Err(Error::Scalar(e)),
        };
        if vanished {
            failures.push(p.clone());
        }
    }
    Ok(failures)
}

fn report_from_top(top: ScalarField, samples: &[Point]) -> Result<NondegReport, Error> {
    let identically_zero = top.is_zero();
    let sample_failures = if identically_zero {
        samples.to_vec()
    } else {
        vanishing_samples(&top, samples)?
    };
    Ok(NondegReport {
        top_power: top,
        identically_zero,
        sample_failures,
    })
}

/// Top-power nondegeneracy report for a 2-form on an even chart.
pub fn nondegeneracy_report(
    omega: &DifferentialForm,
    samples: &[Point],
) -> Result<NondegReport, Error> {
    if omega.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: omega.degree(),
        });
    }
    let dim = omega.chart().dim();
    if dim % 2 != 0 {
        return Err(Error::OddDimension { dim });
    }
    let m = dim / 2;
    let full: Vec<usize> = (0..dim).collect();
    let top = omega.wedge_pow(m)?.coeff(&full);
    report_from_top(top, samples)
}

/// Contact test for a 1-form on an odd chart: report plus the top form.
pub fn is_contact(
    alpha: &DifferentialForm,
    samples: &[Point],
) -> Result<(NondegReport, DifferentialForm), Error> {
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
    let top_form = alpha.wedge(&exterior_d(alpha)?.wedge_pow(n)?)?;
    let full: Vec<usize> = (0..dim).collect();
    let report = report_from_top(top_form.coeff(&full), samples)?;
    Ok((report, top_form))
}

/// Outcome of classifying a 2-form on an even chart.
#[derive(Clone, Debug)]
pub enum Classification {
    Symplectic(NondegReport),
    /// Nondegenerate with `d w + theta ^ w = 0` for a closed Lee form theta.
    Lcs {
        report: NondegReport,
        lee_form: DifferentialForm,
    },
    Degenerate(NondegReport),
    /// Nondegenerate but no closed Lee form solves the defining relation.
    NotConformallyClosed(NondegReport),
}

/// Classify a 2-form: symplectic, locally conformal symplectic with its
/// unique Lee form, degenerate, or not conformally closed. On dimension 2
/// the outcome is only ever symplectic or degenerate.
pub fn classify_2form(
    omega: &DifferentialForm,
    samples: &[Point],
) -> Result<Classification, Error> {
    let report = nondegeneracy_report(omega, samples)?;
    if report.identically_zero {
        return Ok(Classification::Degenerate(report));
    }
    let d_omega = exterior_d(omega)?;
    if d_omega.is_zero() {
        return Ok(Classification::Symplectic(report));
    }
    let chart = omega.chart().clone();
    let dim = chart.dim();
    if dim < 4 {
        // dim 2: every 2-form is closed, so this branch is unreachable there.
        return Ok(Classification::NotConformallyClosed(report));
    }
    // Solve theta ^ omega = -d omega coefficientwise over the function field.
    // Unknowns: the components of theta. Row per increasing triple (i<j<k):
    // theta_i w_jk - theta_j w_ik + theta_k w_ij = -(dw)_ijk.
    let mut rows: Matrix = Vec::new();
    let mut rhs: Vec<ScalarField> = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                let mut row = vec![ScalarField::zero(&chart); dim];
                row[i] = omega.coeff(&[j, k]);
                row[j] = omega.coeff(&[i, k]).neg();
                row[k] = omega.coeff(&[i, j]);
                rows.push(row);
                rhs.push(d_omega.coeff(&[i, j, k]).neg());
            }
        }
    }
    let theta = match linalg::solve(&rows, &rhs, &chart)? {
        linalg::Solve::Unique(components) => {
            let terms = components
                .into_iter()
                .enumerate()
                .map(|(i, c)| (vec![i], c));
            DifferentialForm::from_terms(&chart, 1, terms)?
        }
        _ => return Ok(Classification::NotConformallyClosed(report)),
    };
    if !exterior_d(&theta)?.is_zero() {
        return Ok(Classification::NotConformallyClosed(report));
    }
    Ok(Classification::Lcs {
        report,
        lee_form: theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use extcalc::parse_form;
    use symexpr::{rat, Chart};

    fn chart4() -> Chart {
        Chart::new(["x1", "y1", "x2", "y2"]).unwrap()
    }

    #[test]
    fn nondegeneracy_examples() {
        let c2 = Chart::new(["x", "y"]).unwrap();
        let w = parse_form("d x ^ d y", &c2).unwrap();
        let r = nondegeneracy_report(&w, &[]).unwrap();
        assert!(r.top_power.is_one());
        assert!(r.passes());

        let c4 = chart4();
        let degenerate = parse_form("d x1 ^ d y1", &c4).unwrap();
        let r = nondegeneracy_report(&degenerate, &[]).unwrap();
        assert!(r.identically_zero);

        let scaled = parse_form("(1+x1^2)*d x1 ^ d y1 + (1+x1^2)*d x2 ^ d y2", &c4).unwrap();
        let samples = vec![
            Point::from_rationals(&c4, vec![rat(0), rat(1), rat(-1), rat(2)]).unwrap(),
            Point::from_rationals(&c4, vec![rat(3), rat(0), rat(1), rat(1)]).unwrap(),
        ];
        let r = nondegeneracy_report(&scaled, &samples).unwrap();
        // top coefficient of w^2 is 2 (1+x1^2)^2
        let expect = symexpr::parse_scalar("2*(1+x1^2)^2", &c4).unwrap();
        assert_eq!(r.top_power, expect);
        assert!(r.sample_failures.is_empty());
    }

    #[test]
    fn contact_examples() {
        let c3 = Chart::new(["x", "y", "z"]).unwrap();
        let (r, top) = is_contact(&parse_form("d z + x*d y", &c3).unwrap(), &[]).unwrap();
        assert!(r.passes());
        assert_eq!(top, parse_form("d x ^ d y ^ d z", &c3).unwrap());

        let (r, top) = is_contact(&parse_form("d z", &c3).unwrap(), &[]).unwrap();
        assert!(r.identically_zero);
        assert!(top.is_zero());

        let (r, _) = is_contact(&parse_form("d z - y*d x", &c3).unwrap(), &[]).unwrap();
        assert!(r.passes());
    }

    #[test]
    fn classification_outcomes() {
        let c4 = chart4();
        let flat = parse_form("d x1 ^ d y1 + d x2 ^ d y2", &c4).unwrap();
        assert!(matches!(
            classify_2form(&flat, &[]).unwrap(),
            Classification::Symplectic(_)
        ));

        let scaled = parse_form("(1+x1^2)*d x1 ^ d y1 + (1+x1^2)*d x2 ^ d y2", &c4).unwrap();
        match classify_2form(&scaled, &[]).unwrap() {
            Classification::Lcs { lee_form, .. } => {
                let expect = parse_form("(-2*x1/(1+x1^2))*d x1", &c4).unwrap();
                assert_eq!(lee_form, expect);
                // d w + theta ^ w = 0 exactly
                let w = scaled.clone();
                let lhs = exterior_d(&w)
                    .unwrap()
                    .add(&lee_form.wedge(&w).unwrap())
                    .unwrap();
                assert!(lhs.is_zero());
            }
            other => panic!("expected lcs, got {other:?}"),
        }

        let degenerate = parse_form("d x1 ^ d y1", &c4).unwrap();
        assert!(matches!(
            classify_2form(&degenerate, &[]).unwrap(),
            Classification::Degenerate(_)
        ));
    }
}
