//! The modular classification scheme: four binary LS-SVMs (one per phase
//! plus a ground detector) whose joint output decodes to a fault type, and a
//! fifth machine that identifies the line section relative to the midpoint
//! capacitor.

use crate::error::{Error, Result};
use crate::fault::{targets_from_fault_type, FaultClass, FaultLabel};
use crate::features::{self, NormStats, FEATURE_DIM};
use crate::kernel::KernelSpec;
use crate::lssvm::{self, LssvmModel, TrainingSet};
use crate::model_selection::{grid_search, GridSearchConfig, KernelFamily};
use crate::sim::ThreePhaseRecord;

/// One labelled training/evaluation row: the raw (un-normalized) feature
/// window plus its ground truth.
#[derive(Debug, Clone)]
pub struct LabeledExample {
    pub raw: [f64; FEATURE_DIM],
    pub label: FaultLabel,
    pub scenario_id: u64,
}

/// A labelled dataset in feature space.
#[derive(Debug, Clone, Default)]
pub struct LabeledDataset {
    pub examples: Vec<LabeledExample>,
}

impl LabeledDataset {
    /// Extract feature windows from sampled records; row ids follow record
    /// order.
    pub fn from_records(records: &[ThreePhaseRecord]) -> Result<Self> {
        let mut examples = Vec::with_capacity(records.len());
        for (i, record) in records.iter().enumerate() {
            examples.push(LabeledExample {
                raw: features::extract_window(record)?,
                label: record.label,
                scenario_id: i as u64,
            });
        }
        Ok(LabeledDataset { examples })
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }
}

/// The five binary modules, in training and report order.
pub const MODULE_NAMES: [&str; 5] = ["r", "y", "b", "g", "section"];

/// How each module's hyperparameters are chosen.
#[derive(Debug, Clone)]
pub enum ModelSelection {
    /// Train every module with the given kernel and gamma.
    Fixed { kernel: KernelSpec, gamma: f64 },
    /// Grid-search (gamma, kernel parameter) independently per module.
    Grid {
        family: KernelFamily,
        config: GridSearchConfig,
    },
}

impl ModelSelection {
    /// Fixed default: an RBF machine with mid-range parameters. The
    /// cross-validation surface is flat over wide parameter ranges; this
    /// width balances noise robustness against scenario interpolation.
    pub fn default_fixed() -> Self {
        ModelSelection::Fixed {
            kernel: KernelSpec::Rbf { sigma2: 4.0 },
            gamma: 100.0,
        }
    }
}

/// Per-module training summary.
#[derive(Debug, Clone)]
pub struct ModuleReport {
    pub name: &'static str,
    pub kernel: KernelSpec,
    pub gamma: f64,
    /// Cross-validation accuracy of the selected cell; absent for fixed
    /// parameters.
    pub cv_accuracy: Option<f64>,
    /// Relative residual of the solved training system.
    pub solve_residual: f64,
}

/// Training configuration echo kept with a trained classifier.
#[derive(Debug, Clone, Default)]
pub struct TrainingMetadata {
    pub modules: Vec<ModuleReport>,
}

/// Decoded outcome of the four binary modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodedFault {
    Fault(FaultClass),
    NoFault,
    /// A code combination that corresponds to no physical fault (for
    /// example a single phase without ground). Surfaced, never coerced.
    Invalid { code: (i8, i8, i8, i8) },
}

impl DecodedFault {
    pub fn name(&self) -> &'static str {
        match self {
            DecodedFault::Fault(class) => class.name(),
            DecodedFault::NoFault => "NONE",
            DecodedFault::Invalid { .. } => "INVALID",
        }
    }
}

/// Look up the fault type for a four-bit module output.
///
/// The ten valid fault rows and the all-negative no-fault row decode
/// directly; the five remaining combinations are reported as
/// [`DecodedFault::Invalid`]. Inputs outside {-1, +1} are rejected.
pub fn decode_fault_type(r: i8, y: i8, b: i8, g: i8) -> Result<DecodedFault> {
    for v in [r, y, b, g] {
        if v != 1 && v != -1 {
            return Err(Error::invalid(format!(
                "module outputs must be +1 or -1, got {v}"
            )));
        }
    }
    if (r, y, b, g) == (-1, -1, -1, -1) {
        return Ok(DecodedFault::NoFault);
    }
    for class in FaultClass::ALL {
        if class == FaultClass::NoFault {
            continue;
        }
        let class_type = match class {
            FaultClass::Rg => crate::fault::FaultType::Rg,
            FaultClass::Yg => crate::fault::FaultType::Yg,
            FaultClass::Bg => crate::fault::FaultType::Bg,
            FaultClass::Ryg => crate::fault::FaultType::Ryg,
            FaultClass::Rbg => crate::fault::FaultType::Rbg,
            FaultClass::Ybg => crate::fault::FaultType::Ybg,
            FaultClass::Rybg => crate::fault::FaultType::Rybg,
            FaultClass::Ry => crate::fault::FaultType::Ry,
            FaultClass::Rb => crate::fault::FaultType::Rb,
            FaultClass::Yb => crate::fault::FaultType::Yb,
            FaultClass::NoFault => unreachable!(),
        };
        if targets_from_fault_type(class_type) == (r, y, b, g) {
            return Ok(DecodedFault::Fault(class));
        }
    }
    Ok(DecodedFault::Invalid { code: (r, y, b, g) })
}

/// Classification result for one record: module outputs, the decoded fault,
/// the section verdict and the raw decision values for diagnostics.
#[derive(Debug, Clone)]
pub struct ClassificationOutcome {
    pub codes: (i8, i8, i8, i8),
    pub decoded: DecodedFault,
    pub section: i8,
    /// Decision values of the R, Y, B and G modules.
    pub decisions: [f64; 4],
    pub section_decision: f64,
}

/// A trained modular classifier: five binary machines sharing one normalized
/// 15-feature input space.
#[derive(Debug, Clone)]
pub struct FaultClassifier {
    pub model_r: LssvmModel,
    pub model_y: LssvmModel,
    pub model_b: LssvmModel,
    pub model_g: LssvmModel,
    pub model_section: LssvmModel,
    pub norm_stats: NormStats,
    pub metadata: TrainingMetadata,
}

fn target_column(data: &LabeledDataset, module: usize) -> Vec<f64> {
    data.examples
        .iter()
        .map(|ex| {
            let v = match module {
                0 => ex.label.r,
                1 => ex.label.y,
                2 => ex.label.b,
                3 => ex.label.g,
                4 => ex.label.section,
                _ => unreachable!(),
            };
            v as f64
        })
        .collect()
}

fn train_module(
    name: &'static str,
    inputs: &[Vec<f64>],
    targets: Vec<f64>,
    selection: &ModelSelection,
) -> Result<(LssvmModel, ModuleReport)> {
    let pos = targets.iter().filter(|&&t| t > 0.0).count();
    if pos == 0 || pos == targets.len() {
        return Err(Error::DegenerateTargets {
            model: format!("model_{name}"),
            reason: format!(
                "all {} targets are {}",
                targets.len(),
                if pos == 0 { "-1" } else { "+1" }
            ),
        });
    }
    let data = TrainingSet::new(inputs.to_vec(), targets)?;
    let (kernel, gamma, cv_accuracy) = match selection {
        ModelSelection::Fixed { kernel, gamma } => (kernel.clone(), *gamma, None),
        ModelSelection::Grid { family, config } => {
            let result = grid_search(&data, *family, config)?;
            (result.best_kernel, result.best_gamma, Some(result.cv_accuracy))
        }
    };
    let model = lssvm::train(&data, &kernel, gamma).map_err(|e| match e {
        Error::Numerical { context, diagnostic } => Error::Numerical {
            context: format!("model_{name} {context}"),
            diagnostic,
        },
        other => other,
    })?;
    let report = ModuleReport {
        name,
        kernel,
        gamma,
        cv_accuracy,
        solve_residual: model.solve_residual,
    };
    Ok((model, report))
}

/// Train the five binary modules on a shared normalized feature space, one
/// [`ModelSelection`] per module (order per [`MODULE_NAMES`]).
///
/// Each module is trained (and, when requested, grid-searched) independently
/// against its own target column. The dataset must contain both classes for
/// every column; violations are rejected naming the offending module.
pub fn train_modular_per_module(
    data: &LabeledDataset,
    selections: &[ModelSelection; 5],
) -> Result<FaultClassifier> {
    if data.len() < 2 {
        return Err(Error::invalid(
            "modular training requires at least two examples",
        ));
    }
    let raws: Vec<[f64; FEATURE_DIM]> = data.examples.iter().map(|ex| ex.raw).collect();
    let norm_stats = features::fit_normalizer(&raws)?;
    let inputs: Vec<Vec<f64>> = raws
        .iter()
        .map(|raw| Ok(features::normalize(raw, &norm_stats)?.values.to_vec()))
        .collect::<Result<_>>()?;

    let mut models = Vec::with_capacity(5);
    let mut metadata = TrainingMetadata::default();
    for (module, &name) in MODULE_NAMES.iter().enumerate() {
        let targets = target_column(data, module);
        let (mut model, report) = train_module(name, &inputs, targets, &selections[module])?;
        model.norm_stats = Some(norm_stats.clone());
        metadata.modules.push(report);
        models.push(model);
    }
    let mut drain = models.into_iter();
    Ok(FaultClassifier {
        model_r: drain.next().unwrap(),
        model_y: drain.next().unwrap(),
        model_b: drain.next().unwrap(),
        model_g: drain.next().unwrap(),
        model_section: drain.next().unwrap(),
        norm_stats,
        metadata,
    })
}

/// Train all five modules with the same selection policy.
pub fn train_modular(data: &LabeledDataset, selection: &ModelSelection) -> Result<FaultClassifier> {
    train_modular_per_module(
        data,
        &[
            selection.clone(),
            selection.clone(),
            selection.clone(),
            selection.clone(),
            selection.clone(),
        ],
    )
}

/// Aggregate evaluation counts over the eleven classes.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    /// `confusion[t][p]`: records of true class `t` decoded as class `p`
    /// (class order per [`FaultClass::ALL`]). Records decoded to an invalid
    /// code are tallied in `invalid_by_class` instead, so
    /// `row sum + invalid_by_class = per-class count`.
    pub confusion: [[usize; 11]; 11],
    pub invalid_by_class: [usize; 11],
    pub per_class_counts: [usize; 11],
    pub per_class_accuracy: [f64; 11],
    pub overall_accuracy: f64,
    pub invalid_code_count: usize,
    /// Section accuracy over faulted records (the section of a no-fault
    /// record is not meaningful).
    pub section_accuracy: f64,
    pub section_total: usize,
    pub total: usize,
}

impl FaultClassifier {
    fn models(&self) -> [&LssvmModel; 4] {
        [&self.model_r, &self.model_y, &self.model_b, &self.model_g]
    }

    /// Classify a raw (un-normalized) feature window.
    pub fn classify_features(&self, raw: &[f64; FEATURE_DIM]) -> Result<ClassificationOutcome> {
        let x = features::normalize(raw, &self.norm_stats)?.values;
        let mut decisions = [0.0; 4];
        let mut codes = [0i8; 4];
        for (i, model) in self.models().into_iter().enumerate() {
            decisions[i] = model.decision_value(&x)?;
            codes[i] = if decisions[i] >= 0.0 { 1 } else { -1 };
        }
        let section_decision = self.model_section.decision_value(&x)?;
        let section = if section_decision >= 0.0 { 1 } else { -1 };
        let decoded = decode_fault_type(codes[0], codes[1], codes[2], codes[3])?;
        Ok(ClassificationOutcome {
            codes: (codes[0], codes[1], codes[2], codes[3]),
            decoded,
            section,
            decisions,
            section_decision,
        })
    }

    /// Extract, normalize and classify a sampled record.
    pub fn classify(&self, record: &ThreePhaseRecord) -> Result<ClassificationOutcome> {
        let raw = features::extract_window(record)?;
        self.classify_features(&raw)
    }

    /// Section verdict alone: +1 before the midpoint capacitor, -1 after.
    pub fn identify_section(&self, record: &ThreePhaseRecord) -> Result<i8> {
        Ok(self.classify(record)?.section)
    }

    /// Evaluate against a labelled dataset.
    pub fn evaluate(&self, data: &LabeledDataset) -> Result<ClassificationReport> {
        if data.is_empty() {
            return Err(Error::invalid("evaluation requires a non-empty dataset"));
        }
        let mut confusion = [[0usize; 11]; 11];
        let mut invalid_by_class = [0usize; 11];
        let mut per_class_counts = [0usize; 11];
        let mut section_correct = 0usize;
        let mut section_total = 0usize;

        for ex in &data.examples {
            let outcome = self.classify_features(&ex.raw)?;
            let truth = ex.label.class.index();
            per_class_counts[truth] += 1;
            match outcome.decoded {
                DecodedFault::Fault(class) => confusion[truth][class.index()] += 1,
                DecodedFault::NoFault => confusion[truth][FaultClass::NoFault.index()] += 1,
                DecodedFault::Invalid { .. } => invalid_by_class[truth] += 1,
            }
            if ex.label.class != FaultClass::NoFault {
                section_total += 1;
                if outcome.section == ex.label.section {
                    section_correct += 1;
                }
            }
        }

        let total = data.len();
        let trace: usize = (0..11).map(|i| confusion[i][i]).sum();
        let mut per_class_accuracy = [0.0; 11];
        for i in 0..11 {
            per_class_accuracy[i] = if per_class_counts[i] > 0 {
                confusion[i][i] as f64 / per_class_counts[i] as f64
            } else {
                0.0
            };
        }
        Ok(ClassificationReport {
            confusion,
            invalid_by_class,
            per_class_counts,
            per_class_accuracy,
            overall_accuracy: trace as f64 / total as f64,
            invalid_code_count: invalid_by_class.iter().sum(),
            section_accuracy: if section_total > 0 {
                section_correct as f64 / section_total as f64
            } else {
                1.0
            },
            section_total,
            total,
        })
    }
}
