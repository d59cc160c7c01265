use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::RigidityMatrix;
use crate::error::{Error, Result};

/// Relative singular-value cutoff used when none is given.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Numeric,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub tolerance: f64,
    /// Descending singular values (numeric method only).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub singular_values: Vec<f64>,
    /// Pivots found by elimination (exact method only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pivots: Option<usize>,
    pub method: RankMethod,
}

fn singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Number of singular values above `tol` times the largest one.
pub fn numeric_rank(m: &RigidityMatrix, tol: f64) -> Result<RankReport> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let s = singular_values(m.matrix());
    if s.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("non-finite singular value".into()));
    }
    let cutoff = tol * s.first().copied().unwrap_or(0.0);
    let rank = s.iter().filter(|&&x| x > cutoff && x > 0.0).count();
    Ok(RankReport {
        rank,
        tolerance: tol,
        singular_values: s,
        pivots: None,
        method: RankMethod::Numeric,
    })
}

/// Rank over the rationals of the matrix's exact mirror, by fraction-free
/// (Bareiss) elimination on integer rows.
pub fn exact_rank(m: &RigidityMatrix) -> Result<RankReport> {
    let rows = m.exact().ok_or(Error::NoExactMirror)?;
    let rank = bareiss_rank(rows);
    Ok(RankReport {
        rank,
        tolerance: 0.0,
        singular_values: Vec::new(),
        pivots: Some(rank),
        method: RankMethod::Exact,
    })
}

/// Clears denominators row by row.
fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

pub(crate) fn bareiss_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a = integer_rows(rows);
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Orthonormal basis of `{u : A u = 0}`, with the same cutoff as
/// `numeric_rank` so that the dimension is `cols - rank`.
pub(crate) fn null_space(a: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let (m, n) = (a.nrows(), a.ncols());
    if n == 0 {
        return Vec::new();
    }
    // Pad to at least square so the SVD returns all n right singular vectors.
    let rows = m.max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m, n)).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max();
    let cutoff = tol * smax;
    (0..n)
        .filter(|&i| !(svd.singular_values[i] > cutoff && svd.singular_values[i] > 0.0))
        .map(|i| v_t.row(i).transpose())
        .collect()
}
