//! # faultsvm
//!
//! Least-square SVM fault classification for series-compensated transmission
//! lines.
//!
//! The crate covers the full desk-scale pipeline:
//!
//! * [`sim`] — a synthetic signal plant: symmetrical-component short-circuit
//!   phasors for a two-source compensated line, plus parametric transient
//!   injection (decaying DC, sub-synchronous ringing, odd harmonics, noise)
//!   and deterministic dataset grids. This deliberately replaces
//!   electromagnetic-transient simulation; see the module docs.
//! * [`features`] — quarter-cycle three-phase current windows (15 samples)
//!   and z-score normalization.
//! * [`lssvm`] — binary least-square SVM training by direct solution of the
//!   dual KKT system, with [`kernel`] functions and the small dense
//!   [`linalg`] solver underneath.
//! * [`model_selection`] — seeded k-fold cross-validation and exhaustive
//!   (gamma, kernel-parameter) grid search.
//! * [`classifier`] — the modular scheme: three phase selectors, a ground
//!   detector and a section identifier, combined through a fault-type code
//!   table.
//! * [`persist`] — a versioned text model format whose round trip is
//!   bit-exact.

// Negated comparisons (`!(v > 0.0)`) are kept as written: they also reject
// NaN, which `v <= 0.0` would let through. Indexed loops over the small
// fixed-size phase/feature arrays stay indexed where several arrays share
// the index.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod classifier;
pub mod error;
pub mod fault;
pub mod features;
pub mod kernel;
pub mod linalg;
pub mod lssvm;
pub mod model_selection;
pub mod persist;
pub mod sim;

pub use classifier::{
    decode_fault_type, train_modular, train_modular_per_module, ClassificationOutcome,
    ClassificationReport, DecodedFault, FaultClassifier, LabeledDataset, LabeledExample,
    ModelSelection, ModuleReport, TrainingMetadata, MODULE_NAMES,
};
pub use error::{Error, Result};
pub use fault::{targets_from_fault_type, FaultClass, FaultLabel, FaultType};
pub use features::{
    extract_window, fit_normalizer, normalize, FeatureVector, NormStats, FEATURE_DIM,
};
pub use kernel::KernelSpec;
pub use lssvm::{kkt_residual, train, LssvmModel, TrainingSet, TRAIN_RESIDUAL_TOL};
pub use model_selection::{
    cv_accuracy, grid_search, k_fold_split, stratified_k_fold, GridCell, GridSearchConfig,
    GridSearchResult, KernelFamily,
};
pub use persist::{load_classifier, model_from_str, model_to_string, save_classifier};
pub use sim::{
    default_test_scenarios, default_train_scenarios, fault_current_phasors, generate_dataset,
    load_current_phasors, sequence_network, synthesize_scenarios, synthesize_waveform,
    synthesize_waveform_with, FaultScenario, LineParameters, ScenarioGrid, SequenceNetwork,
    SynthConfig, ThreePhaseRecord, DEFAULT_DURATION_CYCLES, SAMPLES_PER_CYCLE,
};
