//! Kernel functions and Gram-matrix assembly.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Kernel family plus its hyperparameters.
///
/// Linear, polynomial and RBF kernels induce positive semidefinite Gram
/// matrices. The sigmoid (MLP) kernel is provided for completeness but is not
/// a Mercer kernel in general: training with it can legitimately fail with a
/// numerical error, and callers are expected to cope with that.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    /// `K(x, z) = x . z`
    Linear,
    /// `K(x, z) = (x . z + offset)^degree`
    Polynomial { degree: u32, offset: f64 },
    /// `K(x, z) = exp(-||x - z||^2 / sigma2)`
    Rbf { sigma2: f64 },
    /// `K(x, z) = tanh(kappa * x . z + theta)`
    Mlp { kappa: f64, theta: f64 },
}

impl KernelSpec {
    /// Short lowercase family name (`linear`, `poly`, `rbf`, `mlp`).
    pub fn family_name(&self) -> &'static str {
        match self {
            KernelSpec::Linear => "linear",
            KernelSpec::Polynomial { .. } => "poly",
            KernelSpec::Rbf { .. } => "rbf",
            KernelSpec::Mlp { .. } => "mlp",
        }
    }

    /// Check the hyperparameter constraints for this family.
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::Linear => Ok(()),
            KernelSpec::Polynomial { degree, offset } => {
                if degree < 1 {
                    return Err(Error::invalid("polynomial kernel requires degree >= 1"));
                }
                if !(offset >= 0.0) || !offset.is_finite() {
                    return Err(Error::invalid(format!(
                        "polynomial kernel requires a finite offset >= 0, got {offset}"
                    )));
                }
                Ok(())
            }
            KernelSpec::Rbf { sigma2 } => {
                if !(sigma2 > 0.0) || !sigma2.is_finite() {
                    return Err(Error::invalid(format!(
                        "rbf kernel requires a finite sigma2 > 0, got {sigma2}"
                    )));
                }
                Ok(())
            }
            KernelSpec::Mlp { kappa, theta } => {
                if !kappa.is_finite() || !theta.is_finite() {
                    return Err(Error::invalid("mlp kernel requires finite kappa and theta"));
                }
                Ok(())
            }
        }
    }

    /// Evaluate `K(x, z)`.
    ///
    /// Exactly symmetric in its arguments: every family reduces to a dot
    /// product or a squared distance, both of which commute bit-for-bit.
    pub fn eval(&self, x: &[f64], z: &[f64]) -> Result<f64> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: z.len(),
            });
        }
        self.validate()?;
        Ok(match *self {
            KernelSpec::Linear => dot(x, z),
            KernelSpec::Polynomial { degree, offset } => (dot(x, z) + offset).powi(degree as i32),
            KernelSpec::Rbf { sigma2 } => (-squared_distance(x, z) / sigma2).exp(),
            KernelSpec::Mlp { kappa, theta } => (kappa * dot(x, z) + theta).tanh(),
        })
    }

    /// Gram matrix `G[i][j] = K(X[i], X[j])`.
    ///
    /// The upper triangle is computed and mirrored, so the result is exactly
    /// symmetric by construction.
    pub fn gram(&self, inputs: &[Vec<f64>]) -> Result<Matrix> {
        let n = inputs.len();
        if n == 0 {
            return Err(Error::invalid("gram matrix requires at least one input"));
        }
        let dim = inputs[0].len();
        for (i, v) in inputs.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::invalid(format!(
                    "gram matrix requires uniform dimension: input 0 has {dim}, input {i} has {}",
                    v.len()
                )));
            }
        }
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.eval(&inputs[i], &inputs[j])?;
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        Ok(g)
    }
}

#[inline]
fn dot(x: &[f64], z: &[f64]) -> f64 {
    x.iter().zip(z.iter()).map(|(a, b)| a * b).sum()
}

#[inline]
fn squared_distance(x: &[f64], z: &[f64]) -> f64 {
    x.iter()
        .zip(z.iter())
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum()
}
