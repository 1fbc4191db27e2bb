//! Thin helpers over nalgebra for the complex hat-component matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CVector = DVector<Complex64>;
pub type CMatrix = DMatrix<Complex64>;

/// Singular values below this fraction of the largest are treated as zero
/// when extracting a column-space basis.
pub const RANK_RTOL: f64 = 1e-12;

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn largest_singular_value(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest singular value of a square matrix (0 for a rank-deficient one).
pub fn smallest_singular_value(m: &CMatrix) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// `s_max / s_min`, infinite when `s_min = 0`.
pub fn condition_number(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Orthonormal basis (as columns) of the column space of `cols`.
pub fn orthonormal_basis(cols: &CMatrix) -> CMatrix {
    let n = cols.nrows();
    if cols.ncols() == 0 {
        return CMatrix::zeros(n, 0);
    }
    let svd = cols.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let s_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if s_max == 0.0 {
        return CMatrix::zeros(n, 0);
    }
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > RANK_RTOL * s_max)
        .collect();
    let mut q = CMatrix::zeros(n, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        q.set_column(j, &u.column(i));
    }
    q
}

/// Orthogonal projection `Q Q* v` onto the span of the orthonormal columns of `q`.
pub fn project(q: &CMatrix, v: &CVector) -> CVector {
    if q.ncols() == 0 {
        return CVector::zeros(v.len());
    }
    q * (q.adjoint() * v)
}

pub fn norm(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn determinant(m: &CMatrix) -> Complex64 {
    m.clone().lu().determinant()
}

/// Largest deviation of `Q* Q` from the identity.
pub fn orthonormality_defect(q: &CMatrix) -> f64 {
    let g = q.adjoint() * q;
    let mut worst = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_of_rank_deficient_columns() {
        let cols = CMatrix::from_row_slice(3, 3, &[
            c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0),
            c(0.0, 1.0), c(0.0, 2.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0),
        ]);
        let q = orthonormal_basis(&cols);
        assert_eq!(q.ncols(), 2);
        assert!(orthonormality_defect(&q) < 1e-12);
        for j in 0..3 {
            let v = cols.column(j).into_owned();
            assert!(norm(&(project(&q, &v) - &v)) < 1e-12);
        }
    }

    #[test]
    fn zero_columns_have_empty_basis() {
        let q = orthonormal_basis(&CMatrix::zeros(4, 2));
        assert_eq!(q.shape(), (4, 0));
        let v = CVector::from_element(4, c(1.0, 1.0));
        assert_eq!(norm(&project(&q, &v)), 0.0);
    }

    #[test]
    fn singular_value_extremes() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(3.0, 0.0), c(0.0, -0.5)]));
        assert!((largest_singular_value(&m) - 3.0).abs() < 1e-14);
        assert!((smallest_singular_value(&m) - 0.5).abs() < 1e-14);
        assert!((condition_number(&m) - 6.0).abs() < 1e-12);
        assert_eq!(condition_number(&CMatrix::zeros(2, 2)), f64::INFINITY);
    }
}
