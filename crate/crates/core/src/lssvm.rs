//! Binary least-square SVM: training by direct solution of the dual
//! saddle-point system, plus the decision/prediction functions.
//!
//! Training a classifier on `n` points `(x_i, y_i)`, `y_i ∈ {-1, +1}`, means
//! solving the `(n+1) x (n+1)` linear system
//!
//! ```text
//! [ 0   1^T        ] [ b ]   [ 0 ]
//! [ 1   G + I/gamma] [ a ] = [ y ]
//! ```
//!
//! where `G` is the kernel Gram matrix. The weight vector of the underlying
//! separating function is never materialized; the decision function is kept
//! in its kernel-expansion form `f(x) = sum_k a_k K(x, x_k) + b`.

use crate::error::{Error, Result};
use crate::features::NormStats;
use crate::kernel::KernelSpec;
use crate::linalg::{self, Matrix};

/// Tolerance on the relative residual of the solved training system. A
/// factorization that cannot hit this is reported as a numerical failure
/// rather than silently returning a bad model.
pub const TRAIN_RESIDUAL_TOL: f64 = 1e-8;

/// A labelled training set: `n` input vectors of uniform dimension with
/// targets in `{-1, +1}`.
#[derive(Debug, Clone)]
pub struct TrainingSet {
    inputs: Vec<Vec<f64>>,
    targets: Vec<f64>,
}

impl TrainingSet {
    pub fn new(inputs: Vec<Vec<f64>>, targets: Vec<f64>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::invalid("training set requires at least one point"));
        }
        if inputs.len() != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: inputs.len(),
                got: targets.len(),
            });
        }
        let dim = inputs[0].len();
        for (i, x) in inputs.iter().enumerate() {
            if x.len() != dim {
                return Err(Error::invalid(format!(
                    "input {i} has dimension {}, expected {dim}",
                    x.len()
                )));
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("input {i} contains non-finite values")));
            }
        }
        for (i, &t) in targets.iter().enumerate() {
            if t != 1.0 && t != -1.0 {
                return Err(Error::invalid(format!(
                    "target {i} must be exactly +1 or -1, got {t}"
                )));
            }
        }
        Ok(TrainingSet { inputs, targets })
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.inputs[0].len()
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    /// Sub-set by index, used by cross-validation.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let inputs = indices.iter().map(|&i| self.inputs[i].clone()).collect();
        let targets = indices.iter().map(|&i| self.targets[i]).collect();
        TrainingSet::new(inputs, targets)
    }
}

/// A trained binary LS-SVM.
#[derive(Debug, Clone)]
pub struct LssvmModel {
    pub kernel: KernelSpec,
    /// Regularization weight used at training time.
    pub gamma: f64,
    /// Dual coefficients, one per training point. They sum to zero and equal
    /// `gamma * (y_i - f(x_i))` at the training points.
    pub alphas: Vec<f64>,
    pub bias: f64,
    /// Copy of the training inputs; the decision function is a kernel
    /// expansion over these.
    pub support_inputs: Vec<Vec<f64>>,
    /// Normalization applied to the inputs before training, when the caller
    /// works in a normalized feature space. Carried as provenance; the
    /// decision function expects inputs already in the training space.
    pub norm_stats: Option<NormStats>,
    /// Relative residual of the solved training system.
    pub solve_residual: f64,
}

impl LssvmModel {
    /// Input dimension the model was trained on.
    pub fn dim(&self) -> usize {
        self.support_inputs[0].len()
    }

    pub fn n_support(&self) -> usize {
        self.support_inputs.len()
    }

    /// Decision value `f(x) = sum_k alpha_k K(x, x_k) + b`.
    pub fn decision_value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let mut acc = 0.0;
        for (alpha, support) in self.alphas.iter().zip(self.support_inputs.iter()) {
            acc += alpha * self.kernel.eval(x, support)?;
        }
        Ok(acc + self.bias)
    }

    /// Class prediction: the sign of the decision value. A decision value of
    /// exactly zero maps to +1 (deterministic tie-break).
    pub fn predict(&self, x: &[f64]) -> Result<i8> {
        let d = self.decision_value(x)?;
        Ok(if d >= 0.0 { 1 } else { -1 })
    }
}

/// Assemble the dual system matrix `[[0, 1^T], [1, G + I/gamma]]`.
fn dual_system(data: &TrainingSet, kernel: &KernelSpec, gamma: f64) -> Result<Matrix> {
    let n = data.len();
    let gram = kernel.gram(data.inputs())?;
    let mut a = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        a.set(0, i + 1, 1.0);
        a.set(i + 1, 0, 1.0);
        for j in 0..n {
            a.set(i + 1, j + 1, gram.get(i, j));
        }
        let diag = a.get(i + 1, i + 1);
        a.set(i + 1, i + 1, diag + 1.0 / gamma);
    }
    Ok(a)
}

/// Train a binary LS-SVM by solving the dual system directly.
///
/// Fails with a numerical error when the system is singular or the solved
/// residual exceeds [`TRAIN_RESIDUAL_TOL`] — possible for the non-Mercer MLP
/// kernel or pathologically scaled inputs.
pub fn train(data: &TrainingSet, kernel: &KernelSpec, gamma: f64) -> Result<LssvmModel> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::invalid(format!(
            "regularization gamma must be a finite positive real, got {gamma}"
        )));
    }
    kernel.validate()?;

    let n = data.len();
    let a = dual_system(data, kernel, gamma)?;
    let mut rhs = vec![0.0; n + 1];
    rhs[1..].copy_from_slice(data.targets());

    let solution = linalg::solve(a.clone(), &rhs)?;
    let residual = linalg::relative_residual(&a, &solution, &rhs)?;
    if !residual.is_finite() || residual > TRAIN_RESIDUAL_TOL {
        return Err(Error::numerical(
            "lssvm train",
            format!("relative residual {residual:.3e} exceeds {TRAIN_RESIDUAL_TOL:.0e}"),
        ));
    }

    Ok(LssvmModel {
        kernel: kernel.clone(),
        gamma,
        alphas: solution[1..].to_vec(),
        bias: solution[0],
        support_inputs: data.inputs().to_vec(),
        norm_stats: None,
        solve_residual: residual,
    })
}

/// Relative residual of the dual system for an already-trained model,
/// recomputed from scratch against the given training data.
pub fn kkt_residual(model: &LssvmModel, data: &TrainingSet) -> Result<f64> {
    let a = dual_system(data, &model.kernel, model.gamma)?;
    let mut rhs = vec![0.0; data.len() + 1];
    rhs[1..].copy_from_slice(data.targets());
    let mut solution = vec![model.bias];
    solution.extend_from_slice(&model.alphas);
    linalg::relative_residual(&a, &solution, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point_set() -> TrainingSet {
        TrainingSet::new(vec![vec![-1.0], vec![1.0]], vec![-1.0, 1.0]).unwrap()
    }

    #[test]
    fn rejects_bad_targets_and_shapes() {
        assert!(TrainingSet::new(vec![], vec![]).is_err());
        assert!(TrainingSet::new(vec![vec![1.0]], vec![0.5]).is_err());
        assert!(TrainingSet::new(vec![vec![1.0], vec![1.0, 2.0]], vec![1.0, 1.0]).is_err());
        assert!(TrainingSet::new(vec![vec![f64::NAN]], vec![1.0]).is_err());
    }

    /// Two symmetric points with the linear kernel can be solved by hand:
    /// b = 0 and a = [-t, t] with t = 1/(2 + 1/gamma).
    #[test]
    fn two_point_linear_model_matches_hand_solution() {
        let gamma = 1e6;
        let model = train(&two_point_set(), &KernelSpec::Linear, gamma).unwrap();
        let t = 1.0 / (2.0 + 1.0 / gamma);
        assert!(model.bias.abs() < 1e-9, "bias {}", model.bias);
        assert!((model.alphas[0] + t).abs() < 1e-9);
        assert!((model.alphas[1] - t).abs() < 1e-9);
        assert!((model.alphas[0] + 0.5).abs() < 1e-6);

        // Decision values from the same hand solution.
        let d1 = model.decision_value(&[1.0]).unwrap();
        assert!((d1 - 2.0 * t).abs() < 1e-9);
        assert!((d1 - 1.0).abs() < 1e-5);
        let d0 = model.decision_value(&[0.0]).unwrap();
        assert!(d0.abs() < 1e-9);
    }

    /// With a single training point the zero-sum constraint forces a = 0 and
    /// the bias absorbs the target, for any kernel.
    #[test]
    fn single_point_model_is_pure_bias() {
        let data = TrainingSet::new(vec![vec![0.0]], vec![1.0]).unwrap();
        for kernel in [
            KernelSpec::Linear,
            KernelSpec::Rbf { sigma2: 1.0 },
            KernelSpec::Polynomial {
                degree: 3,
                offset: 1.0,
            },
        ] {
            let model = train(&data, &kernel, 1.0).unwrap();
            assert!(model.alphas[0].abs() < 1e-12);
            assert!((model.bias - 1.0).abs() < 1e-12);
            // Any input sees only the bias.
            let d = model.decision_value(&[123.0]).unwrap();
            assert!((d - 1.0).abs() < 1e-12);
        }
    }

    /// XOR is not linearly separable but an RBF machine must fit it. The
    /// expected dual solution is recomputed with an independent dense solver.
    #[test]
    fn xor_with_rbf_kernel_matches_independent_solver() {
        let inputs = vec![
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ];
        let targets = vec![-1.0, 1.0, 1.0, -1.0];
        let data = TrainingSet::new(inputs.clone(), targets.clone()).unwrap();
        let kernel = KernelSpec::Rbf { sigma2: 1.0 };
        let gamma = 100.0;
        let model = train(&data, &kernel, gamma).unwrap();

        // Independent route: assemble the 5x5 system with nalgebra and solve.
        let mut a = nalgebra::DMatrix::<f64>::zeros(5, 5);
        for i in 0..4 {
            a[(0, i + 1)] = 1.0;
            a[(i + 1, 0)] = 1.0;
            for j in 0..4 {
                a[(i + 1, j + 1)] = kernel.eval(&inputs[i], &inputs[j]).unwrap();
            }
            a[(i + 1, i + 1)] += 1.0 / gamma;
        }
        let rhs = nalgebra::DVector::from_vec(vec![0.0, -1.0, 1.0, 1.0, -1.0]);
        let expected = a.lu().solve(&rhs).expect("oracle solve");

        assert!((model.bias - expected[0]).abs() < 1e-9);
        for i in 0..4 {
            assert!(
                (model.alphas[i] - expected[i + 1]).abs() < 1e-9,
                "alpha {i}: {} vs {}",
                model.alphas[i],
                expected[i + 1]
            );
        }
        for (x, &y) in inputs.iter().zip(targets.iter()) {
            let p = model.predict(x).unwrap();
            assert_eq!(p as f64, y, "sign mismatch at {x:?}");
        }
    }

    #[test]
    fn predict_tie_break_maps_zero_to_plus_one() {
        // Build a model whose decision value is identically zero by hand.
        let model = LssvmModel {
            kernel: KernelSpec::Linear,
            gamma: 1.0,
            alphas: vec![0.0],
            bias: 0.0,
            support_inputs: vec![vec![0.0]],
            norm_stats: None,
            solve_residual: 0.0,
        };
        assert_eq!(model.decision_value(&[5.0]).unwrap(), 0.0);
        assert_eq!(model.predict(&[5.0]).unwrap(), 1);
    }

    #[test]
    fn predict_follows_decision_sign() {
        let model = train(&two_point_set(), &KernelSpec::Linear, 100.0).unwrap();
        assert_eq!(model.predict(&[0.3]).unwrap(), 1);
        assert_eq!(model.predict(&[-0.001]).unwrap(), -1);
    }

    #[test]
    fn rejects_invalid_gamma() {
        let data = two_point_set();
        assert!(train(&data, &KernelSpec::Linear, 0.0).is_err());
        assert!(train(&data, &KernelSpec::Linear, -1.0).is_err());
        assert!(train(&data, &KernelSpec::Linear, f64::NAN).is_err());
    }

    #[test]
    fn decision_value_rejects_wrong_dimension() {
        let model = train(&two_point_set(), &KernelSpec::Linear, 1.0).unwrap();
        assert!(matches!(
            model.decision_value(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    /// Duplicate points keep the system solvable thanks to the `I/gamma` term.
    #[test]
    fn duplicate_points_are_allowed() {
        let data = TrainingSet::new(
            vec![vec![1.0], vec![1.0], vec![-1.0]],
            vec![1.0, 1.0, -1.0],
        )
        .unwrap();
        let model = train(&data, &KernelSpec::Rbf { sigma2: 1.0 }, 10.0).unwrap();
        assert!(model.solve_residual <= TRAIN_RESIDUAL_TOL);
    }

    /// As gamma grows the machine interpolates its training targets: at
    /// gamma = 1e9 on well-separated points the decision values sit within
    /// 1e-3 of the labels.
    #[test]
    fn huge_gamma_interpolates_training_targets() {
        let inputs: Vec<Vec<f64>> = (0..10)
            .map(|i| vec![(i % 5) as f64 * 1.5, (i / 5) as f64 * 2.0])
            .collect();
        let targets: Vec<f64> = (0..10).map(|i| if i % 3 == 0 { 1.0 } else { -1.0 }).collect();
        let data = TrainingSet::new(inputs, targets).unwrap();
        let model = train(&data, &KernelSpec::Rbf { sigma2: 1.0 }, 1e9).unwrap();
        for i in 0..data.len() {
            let d = model.decision_value(&data.inputs()[i]).unwrap();
            assert!(
                (d - data.targets()[i]).abs() <= 1e-3,
                "point {i}: decision {d} vs target {}",
                data.targets()[i]
            );
        }
    }

    /// The MLP kernel is not Mercer; training may fail, but it must never
    /// return a model that violates the residual bound.
    #[test]
    fn mlp_kernel_never_returns_garbage() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let n = rng.random_range(2..=12);
            let inputs: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..3).map(|_| rng.random_range(-2.0..2.0)).collect())
                .collect();
            let targets: Vec<f64> = (0..n)
                .map(|_| if rng.random_range(0..2) == 0 { -1.0 } else { 1.0 })
                .collect();
            let data = TrainingSet::new(inputs, targets).unwrap();
            let kernel = KernelSpec::Mlp {
                kappa: 1.0,
                theta: -1.0,
            };
            if let Ok(model) = train(&data, &kernel, 10.0) {
                assert!(model.solve_residual <= TRAIN_RESIDUAL_TOL);
            }
        }
    }
}
