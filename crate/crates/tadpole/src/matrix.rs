//! Dense symmetric matrices used for exact distances and distance bounds.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// A dense `n x n` matrix of `f64`, row-major.
///
/// Used for full distance matrices and the lower/upper bound matrices. All of
/// these are symmetric with a zero diagonal, which [`SquareMatrix::set_sym`]
/// maintains by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    /// An `n x n` matrix of zeros.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Number of rows (= columns).
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    /// Builds a symmetric matrix by evaluating `f` once per unordered pair,
    /// in parallel. The diagonal is zero. The result is identical for any
    /// thread count because each pair writes only its own two slots.
    pub fn from_pairs<F>(n: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> f64 + Sync,
    {
        let pairs = pair_indices(n);
        let values: Vec<f64> = pairs.par_iter().map(|&(i, j)| f(i, j)).collect();
        let mut m = Self::zeros(n);
        for (&(i, j), &v) in pairs.iter().zip(values.iter()) {
            m.set_sym(i, j, v);
        }
        m
    }

    /// Errors unless the matrix is symmetric with a zero diagonal and no
    /// negative entries.
    pub fn validate_distance_matrix(&self) -> Result<()> {
        for i in 0..self.n {
            if self.get(i, i) != 0.0 {
                return Err(Error::InvalidMatrix);
            }
            for j in (i + 1)..self.n {
                let a = self.get(i, j);
                if a < 0.0 || a != self.get(j, i) || a.is_nan() {
                    return Err(Error::InvalidMatrix);
                }
            }
        }
        Ok(())
    }

    /// Off-diagonal entries of the upper triangle, in row-major order.
    pub fn upper_triangle(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n * (self.n.saturating_sub(1)) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                out.push(self.get(i, j));
            }
        }
        out
    }
}

/// All unordered pairs `(i, j)` with `i < j`, row-major.
pub fn pair_indices(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_pairs_is_symmetric_with_zero_diagonal() {
        let m = SquareMatrix::from_pairs(5, |i, j| (i + j) as f64);
        for i in 0..5 {
            assert_eq!(m.get(i, i), 0.0);
            for j in 0..5 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        assert_eq!(m.get(1, 3), 4.0);
        m.validate_distance_matrix().unwrap();
    }

    #[test]
    fn validation_rejects_asymmetry_and_negatives() {
        let mut m = SquareMatrix::zeros(3);
        m.data[1] = 1.0; // (0,1) without (1,0)
        assert!(m.validate_distance_matrix().is_err());

        let mut m = SquareMatrix::zeros(3);
        m.set_sym(0, 1, -2.0);
        assert!(m.validate_distance_matrix().is_err());

        let mut m = SquareMatrix::zeros(3);
        m.data[0] = 0.5; // non-zero diagonal
        assert!(m.validate_distance_matrix().is_err());
    }

    #[test]
    fn upper_triangle_order() {
        let m = SquareMatrix::from_pairs(3, |i, j| (10 * i + j) as f64);
        assert_eq!(m.upper_triangle(), vec![1.0, 2.0, 12.0]);
    }
}
