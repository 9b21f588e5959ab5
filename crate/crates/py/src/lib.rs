//! Python bindings: dataset synthesis, binary LS-SVM training and the
//! five-module fault classifier.
//!
//! ```python
//! import faultsvm_py as fsvm
//!
//! train = fsvm.Dataset.default_train(seed=42)
//! clf = fsvm.Classifier.train(train, gamma=100.0, sigma2=4.0)
//! report = clf.evaluate(fsvm.Dataset.default_test(seed=4242))
//! print(report.overall_accuracy, report.section_accuracy)
//! ```

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use faultsvm::{
    DecodedFault, FaultClass, GridSearchConfig, KernelFamily, KernelSpec, LabeledDataset,
    LineParameters, ModelSelection, TrainingSet, DEFAULT_DURATION_CYCLES, FEATURE_DIM,
};

fn to_py_err(err: faultsvm::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn kernel_from_args(
    kernel: &str,
    sigma2: Option<f64>,
    degree: Option<u32>,
    offset: Option<f64>,
    kappa: Option<f64>,
    theta: Option<f64>,
) -> PyResult<KernelSpec> {
    let spec = match kernel.to_ascii_lowercase().as_str() {
        "linear" => KernelSpec::Linear,
        "rbf" => KernelSpec::Rbf {
            sigma2: sigma2.ok_or_else(|| PyValueError::new_err("rbf kernel requires sigma2"))?,
        },
        "poly" | "polynomial" => KernelSpec::Polynomial {
            degree: degree.unwrap_or(3),
            offset: offset.unwrap_or(1.0),
        },
        "mlp" => KernelSpec::Mlp {
            kappa: kappa.unwrap_or(1.0),
            theta: theta.unwrap_or(-1.0),
        },
        other => return Err(PyValueError::new_err(format!("unknown kernel {other:?}"))),
    };
    spec.validate().map_err(to_py_err)?;
    Ok(spec)
}

/// A labelled feature dataset (raw 15-sample windows plus ground truth).
#[pyclass]
struct Dataset {
    inner: LabeledDataset,
}

#[pymethods]
impl Dataset {
    /// The default 208-record training protocol.
    #[staticmethod]
    #[pyo3(signature = (seed=42, snr_db=None))]
    fn default_train(seed: u64, snr_db: Option<f64>) -> PyResult<Self> {
        let scenarios = faultsvm::default_train_scenarios(snr_db.unwrap_or(f64::INFINITY));
        Self::from_scenarios(scenarios, seed)
    }

    /// The default 916-record test protocol.
    #[staticmethod]
    #[pyo3(signature = (seed=4242, snr_db=None))]
    fn default_test(seed: u64, snr_db: Option<f64>) -> PyResult<Self> {
        let scenarios = faultsvm::default_test_scenarios(snr_db.unwrap_or(f64::INFINITY));
        Self::from_scenarios(scenarios, seed)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Raw (un-normalized) feature rows.
    fn features(&self) -> Vec<Vec<f64>> {
        self.inner
            .examples
            .iter()
            .map(|ex| ex.raw.to_vec())
            .collect()
    }

    /// Fault class name per row (for example `R-G` or `NONE`).
    fn fault_names(&self) -> Vec<&'static str> {
        self.inner
            .examples
            .iter()
            .map(|ex| ex.label.class.name())
            .collect()
    }

    /// Per-row `(r, y, b, g)` targets, each +-1.
    fn targets(&self) -> Vec<(i8, i8, i8, i8)> {
        self.inner.examples.iter().map(|ex| ex.label.code()).collect()
    }

    /// Per-row section labels (+1 before the capacitor, -1 after).
    fn sections(&self) -> Vec<i8> {
        self.inner
            .examples
            .iter()
            .map(|ex| ex.label.section)
            .collect()
    }
}

impl Dataset {
    fn from_scenarios(
        scenarios: Vec<faultsvm::FaultScenario>,
        seed: u64,
    ) -> PyResult<Self> {
        let line = LineParameters::default();
        let records =
            faultsvm::synthesize_scenarios(&line, &scenarios, seed, DEFAULT_DURATION_CYCLES)
                .map_err(to_py_err)?;
        Ok(Dataset {
            inner: LabeledDataset::from_records(&records).map_err(to_py_err)?,
        })
    }
}

/// A single trained binary LS-SVM.
#[pyclass]
struct Lssvm {
    inner: faultsvm::LssvmModel,
}

#[pymethods]
impl Lssvm {
    /// Train on inputs `x` (list of equal-length vectors) with targets `y`
    /// in {-1.0, +1.0}.
    #[staticmethod]
    #[pyo3(signature = (x, y, kernel="rbf", gamma=100.0, sigma2=None, degree=None, offset=None, kappa=None, theta=None))]
    #[allow(clippy::too_many_arguments)]
    fn train(
        x: Vec<Vec<f64>>,
        y: Vec<f64>,
        kernel: &str,
        gamma: f64,
        sigma2: Option<f64>,
        degree: Option<u32>,
        offset: Option<f64>,
        kappa: Option<f64>,
        theta: Option<f64>,
    ) -> PyResult<Self> {
        let spec = kernel_from_args(kernel, sigma2, degree, offset, kappa, theta)?;
        let data = TrainingSet::new(x, y).map_err(to_py_err)?;
        Ok(Lssvm {
            inner: faultsvm::train(&data, &spec, gamma).map_err(to_py_err)?,
        })
    }

    fn decision_value(&self, x: Vec<f64>) -> PyResult<f64> {
        self.inner.decision_value(&x).map_err(to_py_err)
    }

    fn predict(&self, x: Vec<f64>) -> PyResult<i8> {
        self.inner.predict(&x).map_err(to_py_err)
    }

    #[getter]
    fn alphas(&self) -> Vec<f64> {
        self.inner.alphas.clone()
    }

    #[getter]
    fn bias(&self) -> f64 {
        self.inner.bias
    }

    #[getter]
    fn solve_residual(&self) -> f64 {
        self.inner.solve_residual
    }
}

/// Classification outcome for one record.
#[pyclass]
struct Classification {
    #[pyo3(get)]
    fault: String,
    /// False when the module outputs formed no valid code.
    #[pyo3(get)]
    valid: bool,
    #[pyo3(get)]
    codes: (i8, i8, i8, i8),
    #[pyo3(get)]
    section: i8,
    #[pyo3(get)]
    decisions: [f64; 4],
    #[pyo3(get)]
    section_decision: f64,
}

/// Evaluation summary over a labelled dataset.
#[pyclass]
struct Report {
    #[pyo3(get)]
    overall_accuracy: f64,
    #[pyo3(get)]
    section_accuracy: f64,
    #[pyo3(get)]
    invalid_codes: usize,
    #[pyo3(get)]
    records: usize,
    #[pyo3(get)]
    classes: Vec<String>,
    #[pyo3(get)]
    confusion: Vec<Vec<usize>>,
}

/// The five-module fault classifier.
#[pyclass]
struct Classifier {
    inner: faultsvm::FaultClassifier,
}

#[pymethods]
impl Classifier {
    /// Train on a dataset. With `gamma` (and `sigma2` for the RBF kernel)
    /// given, all five modules use those fixed parameters; otherwise each
    /// module is grid-searched independently.
    #[staticmethod]
    #[pyo3(signature = (dataset, kernel="rbf", gamma=None, sigma2=None, degree=None, folds=5, seed=42))]
    fn train(
        dataset: &Dataset,
        kernel: &str,
        gamma: Option<f64>,
        sigma2: Option<f64>,
        degree: Option<u32>,
        folds: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let selection = match gamma {
            Some(gamma) => ModelSelection::Fixed {
                kernel: kernel_from_args(kernel, sigma2, degree, None, None, None)?,
                gamma,
            },
            None => {
                let family: KernelFamily = kernel
                    .parse()
                    .map_err(|e: faultsvm::Error| to_py_err(e))?;
                ModelSelection::Grid {
                    family,
                    config: GridSearchConfig {
                        folds,
                        seed,
                        ..GridSearchConfig::default()
                    },
                }
            }
        };
        Ok(Classifier {
            inner: faultsvm::train_modular(&dataset.inner, &selection).map_err(to_py_err)?,
        })
    }

    /// Classify one raw 15-value feature row.
    fn classify(&self, features: Vec<f64>) -> PyResult<Classification> {
        if features.len() != FEATURE_DIM {
            return Err(PyValueError::new_err(format!(
                "expected {FEATURE_DIM} features, got {}",
                features.len()
            )));
        }
        let mut raw = [0.0; FEATURE_DIM];
        raw.copy_from_slice(&features);
        let outcome = self.inner.classify_features(&raw).map_err(to_py_err)?;
        Ok(Classification {
            fault: match outcome.decoded {
                DecodedFault::Fault(class) => class.name().to_string(),
                DecodedFault::NoFault => "NONE".to_string(),
                DecodedFault::Invalid { .. } => "INVALID".to_string(),
            },
            valid: !matches!(outcome.decoded, DecodedFault::Invalid { .. }),
            codes: outcome.codes,
            section: outcome.section,
            decisions: outcome.decisions,
            section_decision: outcome.section_decision,
        })
    }

    /// Evaluate against a labelled dataset.
    fn evaluate(&self, dataset: &Dataset) -> PyResult<Report> {
        let report = self.inner.evaluate(&dataset.inner).map_err(to_py_err)?;
        Ok(Report {
            overall_accuracy: report.overall_accuracy,
            section_accuracy: report.section_accuracy,
            invalid_codes: report.invalid_code_count,
            records: report.total,
            classes: FaultClass::ALL.iter().map(|c| c.name().to_string()).collect(),
            confusion: report.confusion.iter().map(|row| row.to_vec()).collect(),
        })
    }

    /// Per-module `(name, kernel, gamma, solve_residual)` summaries.
    fn modules(&self) -> Vec<(String, String, f64, f64)> {
        self.inner
            .metadata
            .modules
            .iter()
            .map(|m| {
                let kernel = match &m.kernel {
                    KernelSpec::Linear => "linear".to_string(),
                    KernelSpec::Polynomial { degree, offset } => {
                        format!("poly(degree={degree}, offset={offset})")
                    }
                    KernelSpec::Rbf { sigma2 } => format!("rbf(sigma2={sigma2})"),
                    KernelSpec::Mlp { kappa, theta } => {
                        format!("mlp(kappa={kappa}, theta={theta})")
                    }
                };
                (m.name.to_string(), kernel, m.gamma, m.solve_residual)
            })
            .collect()
    }

    fn save(&self, path: &str) -> PyResult<()> {
        faultsvm::save_classifier(&self.inner, path).map_err(to_py_err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Classifier {
            inner: faultsvm::load_classifier(path).map_err(to_py_err)?,
        })
    }
}

/// Decode four +-1 module outputs to a fault name (`R-G`, ..., `NONE` or
/// `INVALID`).
#[pyfunction]
fn decode_fault_type(r: i8, y: i8, b: i8, g: i8) -> PyResult<String> {
    let decoded = faultsvm::decode_fault_type(r, y, b, g).map_err(to_py_err)?;
    Ok(match decoded {
        DecodedFault::Fault(class) => class.name().to_string(),
        DecodedFault::NoFault => "NONE".to_string(),
        DecodedFault::Invalid { .. } => "INVALID".to_string(),
    })
}

/// Evaluate a kernel function.
#[pyfunction]
#[pyo3(signature = (kernel, x, z, sigma2=None, degree=None, offset=None, kappa=None, theta=None))]
#[allow(clippy::too_many_arguments)]
fn kernel_eval(
    kernel: &str,
    x: Vec<f64>,
    z: Vec<f64>,
    sigma2: Option<f64>,
    degree: Option<u32>,
    offset: Option<f64>,
    kappa: Option<f64>,
    theta: Option<f64>,
) -> PyResult<f64> {
    let spec = kernel_from_args(kernel, sigma2, degree, offset, kappa, theta)?;
    spec.eval(&x, &z).map_err(to_py_err)
}

#[pymodule]
fn faultsvm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Dataset>()?;
    m.add_class::<Lssvm>()?;
    m.add_class::<Classifier>()?;
    m.add_class::<Classification>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(decode_fault_type, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_eval, m)?)?;
    Ok(())
}
