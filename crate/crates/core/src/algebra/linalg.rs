//! Exact Gaussian elimination over ℚ or ℚ(√k).

use num_traits::Zero;

use super::scalar::Scalar;
use super::AlgebraError;

/// Reduced row echelon form of `m` (in place); returns the pivot columns.
pub fn rref(m: &mut [Vec<Scalar>]) -> Result<Vec<usize>, AlgebraError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for j in c..cols {
            m[r][j] = m[r][j].checked_mul(&inv)?;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = m[i][j].checked_sub(&f.checked_mul(&m[r][j])?)?;
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Solution set of `A t = b`: one particular solution and a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Inconsistent,
    Affine { particular: Vec<Scalar>, kernel: Vec<Vec<Scalar>> },
}

pub fn solve_linear(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<LinearSolution, AlgebraError> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m)?;
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![Scalar::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = num_traits::One::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[r][f];
            }
            v
        })
        .collect();
    Ok(LinearSolution::Affine { particular, kernel })
}

/// Determinant by elimination over the field.
pub fn determinant(m: &[Vec<Scalar>]) -> Result<Scalar, AlgebraError> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det: Scalar = num_traits::One::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Ok(Scalar::zero()) };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = det.checked_mul(&a[c][c])?;
        let inv = a[c][c].inv()?;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].checked_mul(&inv)?;
            for j in c..n {
                let v = a[i][j].checked_sub(&f.checked_mul(&a[c][j])?)?;
                a[i][j] = v;
            }
        }
    }
    Ok(det)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &[Vec<Scalar>]) -> Result<Option<Vec<Vec<Scalar>>>, AlgebraError> {
    let n = m.len();
    let mut aug: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { num_traits::One::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug)?;
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Ok(None);
    }
    Ok(Some(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn solves_and_reports_kernel() {
        let a = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        match solve_linear(&a, &[s(3), s(6)]).unwrap() {
            LinearSolution::Affine { particular, kernel } => {
                assert_eq!(particular, vec![s(3), s(0)]);
                assert_eq!(kernel, vec![vec![s(-2), s(1)]]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(solve_linear(&a, &[s(3), s(7)]).unwrap(), LinearSolution::Inconsistent);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = vec![vec![s(2), s(1)], vec![s(7), s(4)]];
        assert_eq!(determinant(&a).unwrap(), s(1));
        let inv = inverse(&a).unwrap().unwrap();
        assert_eq!(inv, vec![vec![s(4), s(-1)], vec![s(-7), s(2)]]);
        assert!(inverse(&[vec![s(1), s(2)], vec![s(2), s(4)]]).unwrap().is_none());
    }
}
