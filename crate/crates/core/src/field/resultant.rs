//! Sylvester resultants of binary forms.

use super::mpoly::HomForm;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Determinant by Gaussian elimination over Q.
pub fn determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = det * &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

/// Sylvester matrix of two coefficient lists given from the top degree down.
pub fn sylvester_matrix(f: &[Scalar], g: &[Scalar]) -> Vec<Vec<Scalar>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Scalar::zero(); size];
        for (j, c) in f.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Scalar::zero(); size];
        for (j, c) in g.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Homogeneous resultant of two binary forms of equal degree.
///
/// Nonzero exactly when the forms share no projective root.
pub fn resultant(f0: &HomForm, f1: &HomForm) -> Result<Scalar> {
    if f0.degree() != f1.degree() {
        return Err(Error::DegreeMismatch(f0.degree(), f1.degree()));
    }
    if f0.nvars() != 2 || f1.nvars() != 2 {
        return Err(Error::NotOneDimensional(f0.nvars().max(f1.nvars())));
    }
    if f0.degree() == 0 {
        return Ok(Scalar::one());
    }
    Ok(determinant(sylvester_matrix(
        &f0.binary_coeffs(),
        &f1.binary_coeffs(),
    )))
}
