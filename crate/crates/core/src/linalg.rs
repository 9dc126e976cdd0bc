//! Small dense symmetric positive-definite kernels.
//!
//! Design matrices here are d x d with d <= ~30, so an unblocked Cholesky
//! factorization and triangular solves are exact enough and trivially
//! deterministic. Inverse diagonals are extracted by solving unit-vector
//! systems against the same factorization rather than forming the inverse.

use crate::error::{Error, Result};

/// Lower-triangular Cholesky factor of an SPD matrix, row-major.
#[derive(Debug, Clone)]
pub struct Cholesky {
    dim: usize,
    factor: Vec<f64>,
}

impl Cholesky {
    /// Factors a row-major symmetric positive-definite matrix.
    pub fn factor(matrix: &[f64], dim: usize) -> Result<Self> {
        if matrix.len() != dim * dim {
            return Err(Error::config(format!(
                "cholesky: expected {}x{dim} matrix, got {} entries",
                dim,
                matrix.len()
            )));
        }
        let mut l = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..=i {
                let mut sum = matrix[i * dim + j];
                for k in 0..j {
                    sum -= l[i * dim + k] * l[j * dim + k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(Error::config(format!(
                            "cholesky: non-positive pivot {sum:e} at leading minor {}",
                            i + 1
                        )));
                    }
                    l[i * dim + i] = sum.sqrt();
                } else {
                    l[i * dim + j] = sum / l[j * dim + j];
                }
            }
        }
        Ok(Cholesky { dim, factor: l })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// In-place solve A x = b where A = L L^T.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        debug_assert_eq!(b.len(), self.dim);
        let n = self.dim;
        let l = &self.factor;
        // forward: L y = b
        for i in 0..n {
            let mut sum = b[i];
            for k in 0..i {
                sum -= l[i * n + k] * b[k];
            }
            b[i] = sum / l[i * n + i];
        }
        // backward: L^T x = y
        for i in (0..n).rev() {
            let mut sum = b[i];
            for k in (i + 1)..n {
                sum -= l[k * n + i] * b[k];
            }
            b[i] = sum / l[i * n + i];
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }

    /// Diagonal of A^{-1}, one unit-vector solve per coordinate.
    pub fn inverse_diag(&self) -> Vec<f64> {
        let n = self.dim;
        let mut diag = vec![0.0; n];
        let mut e = vec![0.0; n];
        for i in 0..n {
            e.fill(0.0);
            e[i] = 1.0;
            self.solve_in_place(&mut e);
            diag[i] = e[i];
        }
        diag
    }

    /// Full inverse, row-major (column solves against the factorization).
    pub fn inverse(&self) -> Vec<f64> {
        let n = self.dim;
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.fill(0.0);
            e[j] = 1.0;
            self.solve_in_place(&mut e);
            for i in 0..n {
                inv[i * n + j] = e[i];
            }
        }
        inv
    }
}

/// Rank-one update `m += x x^T` for a row-major d x d buffer.
pub fn add_outer(m: &mut [f64], x: &[f64]) {
    let n = x.len();
    debug_assert_eq!(m.len(), n * n);
    for i in 0..n {
        let xi = x[i];
        if xi == 0.0 {
            continue;
        }
        let row = &mut m[i * n..(i + 1) * n];
        for (entry, &xj) in row.iter_mut().zip(x.iter()) {
            *entry += xi * xj;
        }
    }
}

/// `sum_i x_i y_i`.
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Quadratic form x^T M x for a row-major square M.
pub fn quad_form(m: &[f64], x: &[f64]) -> f64 {
    let n = x.len();
    let mut acc = 0.0;
    for i in 0..n {
        let xi = x[i];
        if xi == 0.0 {
            continue;
        }
        acc += xi * dot(&m[i * n..(i + 1) * n], x);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_solve_identity() {
        let eye = vec![1.0, 0.0, 0.0, 1.0];
        let chol = Cholesky::factor(&eye, 2).unwrap();
        assert_eq!(chol.solve(&[3.0, -2.0]), vec![3.0, -2.0]);
        assert_eq!(chol.inverse_diag(), vec![1.0, 1.0]);
    }

    #[test]
    fn solve_matches_hand_inverse() {
        // A = [[4,2],[2,3]], A^{-1} = 1/8 [[3,-2],[-2,4]]
        let a = vec![4.0, 2.0, 2.0, 3.0];
        let chol = Cholesky::factor(&a, 2).unwrap();
        let x = chol.solve(&[1.0, 1.0]);
        assert!((x[0] - 0.125).abs() < 1e-14);
        assert!((x[1] - 0.25).abs() < 1e-14);
        let d = chol.inverse_diag();
        assert!((d[0] - 3.0 / 8.0).abs() < 1e-14);
        assert!((d[1] - 0.5).abs() < 1e-14);
        let inv = chol.inverse();
        assert!((inv[1] + 0.25).abs() < 1e-14);
        assert!((inv[2] + 0.25).abs() < 1e-14);
    }

    #[test]
    fn rejects_indefinite() {
        let m = vec![1.0, 2.0, 2.0, 1.0];
        assert!(Cholesky::factor(&m, 2).is_err());
    }

    #[test]
    fn quad_form_agrees_with_solve() {
        let a = vec![2.5, 0.5, 0.1, 0.5, 3.0, 0.2, 0.1, 0.2, 1.5];
        let chol = Cholesky::factor(&a, 3).unwrap();
        let inv = chol.inverse();
        let x = [0.3, 0.5, 0.2];
        let via_inv = quad_form(&inv, &x);
        let via_solve = dot(&x, &chol.solve(&x));
        assert!((via_inv - via_solve).abs() < 1e-12);
    }
}
