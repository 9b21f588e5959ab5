//! Small dense linear algebra: just enough to assemble and solve the
//! saddle-point systems produced by LS-SVM training.
//!
//! The solver is a plain LU factorization with partial (row) pivoting. The
//! systems here are symmetric but indefinite, so a Cholesky-style shortcut is
//! not available; at the sizes this crate works with (a few hundred rows) a
//! dense O(n³) factorization is entirely adequate.

use crate::error::{Error, Result};

/// Row-major dense matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Allocate a `rows x cols` matrix filled with zeros.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    /// Matrix-vector product `A x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x.iter()) {
                acc += a * b;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Largest absolute off-diagonal asymmetry, for sanity checks in tests.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols.min(self.rows) {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Solve `A x = b` by LU factorization with partial pivoting. Consumes `a`
/// (the factorization happens in place).
///
/// Returns a numerical-failure error when a pivot collapses to (near) zero,
/// carrying the pivot magnitude and position as the condition diagnostic.
pub fn solve(mut a: Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::invalid(format!(
            "solve requires a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }

    // Pivot breakdown threshold, scaled to the matrix magnitude.
    let scale = a.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tiny = f64::EPSILON * scale * n as f64;

    let mut x = b.to_vec();
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a.get(col, col).abs();
        for r in (col + 1)..n {
            let mag = a.get(r, col).abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag <= tiny {
            return Err(Error::numerical(
                "lu solve",
                format!(
                    "pivot {pivot_mag:.3e} at column {col} below breakdown threshold {tiny:.3e} (singular or near-singular system)"
                ),
            ));
        }
        if pivot_row != col {
            for j in 0..n {
                let t = a.get(col, j);
                a.set(col, j, a.get(pivot_row, j));
                a.set(pivot_row, j, t);
            }
            x.swap(col, pivot_row);
        }
        let pivot = a.get(col, col);
        for r in (col + 1)..n {
            let factor = a.get(r, col) / pivot;
            if factor == 0.0 {
                continue;
            }
            a.set(r, col, 0.0);
            for j in (col + 1)..n {
                let v = a.get(r, j) - factor * a.get(col, j);
                a.set(r, j, v);
            }
            x[r] -= factor * x[col];
        }
    }

    // Back substitution.
    for col in (0..n).rev() {
        let mut acc = x[col];
        for j in (col + 1)..n {
            acc -= a.get(col, j) * x[j];
        }
        x[col] = acc / a.get(col, col);
    }
    Ok(x)
}

/// Relative residual `||A x - b|| / ||b||` in the Euclidean norm.
///
/// A zero right-hand side degenerates to the absolute residual norm.
pub fn relative_residual(a: &Matrix, x: &[f64], b: &[f64]) -> Result<f64> {
    let ax = a.matvec(x)?;
    if ax.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: ax.len(),
            got: b.len(),
        });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (&axi, &bi) in ax.iter().zip(b.iter()) {
        num += (axi - bi) * (axi - bi);
        den += bi * bi;
    }
    let num = num.sqrt();
    let den = den.sqrt();
    Ok(if den > 0.0 { num / den } else { num })
}
