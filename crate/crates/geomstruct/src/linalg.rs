//! Exact linear algebra over the rational-function field.

use symexpr::{Chart, ScalarField};

use crate::Error;

pub type Matrix = Vec<Vec<ScalarField>>;

/// Outcome of an exact linear solve.
#[derive(Clone, PartialEq, Debug)]
pub enum Solve {
    Unique(Vec<ScalarField>),
    Inconsistent,
    Underdetermined,
}

fn check_rect(a: &Matrix) -> usize {
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    debug_assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    cols
}

/// Row-reduce the augmented system `[a | b]` exactly and classify it.
pub fn solve(a: &Matrix, b: &[ScalarField], chart: &Chart) -> Result<Solve, Error> {
    let rows = a.len();
    let cols = check_rect(a);
    debug_assert_eq!(rows, b.len());
    let mut m: Vec<Vec<ScalarField>> = a
        .iter()
        .zip(b.iter())
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot_row = (rank..rows).find(|&r| !m[r][col].is_zero());
        let pr = match pivot_row {
            Some(r) => r,
            None => continue,
        };
        m.swap(rank, pr);
        let inv = m[rank][col].inverse()?;
        for c in col..=cols {
            m[rank][c] = m[rank][c].mul(&inv)?;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let delta = factor.mul(&m[rank][c])?;
                    m[r][c] = m[r][c].sub(&delta)?;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return Ok(Solve::Inconsistent);
        }
    }
    if rank < cols {
        return Ok(Solve::Underdetermined);
    }
    let mut x = vec![ScalarField::zero(chart); cols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Ok(Solve::Unique(x))
}

/// Unique solution or a singular-solve error.
pub fn solve_unique(a: &Matrix, b: &[ScalarField], chart: &Chart) -> Result<Vec<ScalarField>, Error> {
    match solve(a, b, chart)? {
        Solve::Unique(x) => Ok(x),
        _ => Err(Error::SingularSolve),
    }
}

/// Exact inverse of a square matrix, `None` when singular.
pub fn invert(a: &Matrix, chart: &Chart) -> Result<Option<Matrix>, Error> {
    let n = a.len();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    debug_assert_eq!(check_rect(a), n);
    let mut m: Vec<Vec<ScalarField>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            for j in 0..n {
                row.push(if i == j {
                    ScalarField::one(chart)
                } else {
                    ScalarField::zero(chart)
                });
            }
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let pr = match pivot {
            Some(r) => r,
            None => return Ok(None),
        };
        m.swap(col, pr);
        let inv = m[col][col].inverse()?;
        for c in 0..2 * n {
            m[col][c] = m[col][c].mul(&inv)?;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = factor.mul(&m[col][c])?;
                    m[r][c] = m[r][c].sub(&delta)?;
                }
            }
        }
    }
    Ok(Some(
        m.into_iter().map(|row| row[n..].to_vec()).collect(),
    ))
}

/// Exact rank.
pub fn rank(a: &Matrix) -> Result<usize, Error> {
    let rows = a.len();
    let cols = check_rect(a);
    let mut m = a.to_vec();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let pr = match pivot {
            Some(r) => r,
            None => continue,
        };
        m.swap(rank, pr);
        let inv = m[rank][col].inverse()?;
        let pivot_row = m[rank].clone();
        for r in (rank + 1)..rows {
            if !m[r][col].is_zero() {
                let factor = m[r][col].mul(&inv)?;
                for c in col..cols {
                    let delta = factor.mul(&pivot_row[c])?;
                    m[r][c] = m[r][c].sub(&delta)?;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

/// Matrix-vector product.
pub fn mat_vec(a: &Matrix, x: &[ScalarField]) -> Result<Vec<ScalarField>, Error> {
    a.iter()
        .map(|row| {
            let mut acc = ScalarField::zero(x[0].chart());
            for (c, xi) in row.iter().zip(x.iter()) {
                acc = acc.add(&c.mul(xi)?)?;
            }
            Ok(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use symexpr::parse_scalar;

    #[test]
    fn solves_function_field_systems() {
        let chart = Chart::new(["x"]).unwrap();
        let s = |t: &str| parse_scalar(t, &chart).unwrap();
        // [1, x; 0, 1+x^2] y = [x, 1]
        let a = vec![vec![s("1"), s("x")], vec![s("0"), s("1+x^2")]];
        let b = vec![s("x"), s("1")];
        let x = solve_unique(&a, &b, &chart).unwrap();
        assert_eq!(x[1], s("1/(1+x^2)"));
        assert_eq!(x[0], s("x - x/(1+x^2)"));

        let singular = vec![vec![s("x"), s("x")], vec![s("1"), s("1")]];
        assert_eq!(
            solve(&singular, &[s("0"), s("1")], &chart).unwrap(),
            Solve::Inconsistent
        );
        assert_eq!(
            solve(&singular, &[s("0"), s("0")], &chart).unwrap(),
            Solve::Underdetermined
        );
    }

    #[test]
    fn inverts_and_ranks() {
        let chart = Chart::new(["x"]).unwrap();
        let s = |t: &str| parse_scalar(t, &chart).unwrap();
        let a = vec![vec![s("1"), s("x")], vec![s("x"), s("1+x^2")]];
        let inv = invert(&a, &chart).unwrap().unwrap();
        // a * inv = identity
        let prod00 = a[0][0]
            .mul(&inv[0][0])
            .unwrap()
            .add(&a[0][1].mul(&inv[1][0]).unwrap())
            .unwrap();
        assert!(prod00.is_one());
        let prod01 = a[0][0]
            .mul(&inv[0][1])
            .unwrap()
            .add(&a[0][1].mul(&inv[1][1]).unwrap())
            .unwrap();
        assert!(prod01.is_zero());

        assert_eq!(rank(&a).unwrap(), 2);
        let degenerate = vec![vec![s("x"), s("x^2")], vec![s("1"), s("x")]];
        assert_eq!(rank(&degenerate).unwrap(), 1);
    }
}
