//! Cross-validation and grid search over (gamma, kernel parameter).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::lssvm::{self, TrainingSet};

/// Kernel family selector for grid search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    Linear,
    Polynomial,
    Rbf,
    Mlp,
}

impl KernelFamily {
    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::Linear => "linear",
            KernelFamily::Polynomial => "poly",
            KernelFamily::Rbf => "rbf",
            KernelFamily::Mlp => "mlp",
        }
    }
}

impl std::str::FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "linear" => KernelFamily::Linear,
            "poly" | "polynomial" => KernelFamily::Polynomial,
            "rbf" => KernelFamily::Rbf,
            "mlp" => KernelFamily::Mlp,
            _ => return Err(Error::invalid(format!("unknown kernel family {s:?}"))),
        })
    }
}

/// Offset used for polynomial kernels built during grid search. The degree is
/// swept; the offset is configuration.
pub const POLY_OFFSET: f64 = 1.0;

/// Fixed sigmoid parameters used when grid-searching the MLP family; only
/// gamma is swept for it.
pub const MLP_KAPPA: f64 = 1.0;
pub const MLP_THETA: f64 = -1.0;

/// Grid-search configuration.
///
/// `sigma2_grid` applies to the RBF family, `degree_grid` to the polynomial
/// family; both are ignored otherwise.
#[derive(Debug, Clone)]
pub struct GridSearchConfig {
    pub gamma_grid: Vec<f64>,
    pub sigma2_grid: Vec<f64>,
    pub degree_grid: Vec<u32>,
    pub folds: usize,
    pub seed: u64,
}

impl Default for GridSearchConfig {
    fn default() -> Self {
        GridSearchConfig {
            gamma_grid: vec![0.1, 1.0, 10.0, 100.0, 1000.0],
            sigma2_grid: vec![0.1, 0.5, 1.0, 2.0, 5.0, 10.0],
            degree_grid: vec![2, 3, 4],
            folds: 5,
            seed: 42,
        }
    }
}

impl GridSearchConfig {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.gamma_grid.is_empty() {
            return Err(Error::invalid("gamma grid must be non-empty"));
        }
        if self.sigma2_grid.is_empty() {
            return Err(Error::invalid("sigma2 grid must be non-empty"));
        }
        if self.degree_grid.is_empty() {
            return Err(Error::invalid("degree grid must be non-empty"));
        }
        strictly_increasing(&self.gamma_grid, "gamma grid")?;
        strictly_increasing(&self.sigma2_grid, "sigma2 grid")?;
        if self.degree_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("degree grid must be strictly increasing"));
        }
        if self.gamma_grid.iter().any(|&g| !(g > 0.0)) {
            return Err(Error::invalid("gamma grid values must be > 0"));
        }
        if self.sigma2_grid.iter().any(|&s| !(s > 0.0)) {
            return Err(Error::invalid("sigma2 grid values must be > 0"));
        }
        if self.degree_grid.iter().any(|&d| d < 1) {
            return Err(Error::invalid("degree grid values must be >= 1"));
        }
        if self.folds < 2 {
            return Err(Error::invalid("cross-validation requires folds >= 2"));
        }
        if self.folds > n {
            return Err(Error::invalid(format!(
                "folds ({}) may not exceed the number of training points ({n})",
                self.folds
            )));
        }
        Ok(())
    }
}

fn strictly_increasing(values: &[f64], what: &str) -> Result<()> {
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!("{what} must be strictly increasing")));
    }
    Ok(())
}

/// One evaluated grid cell. `failed` marks cells whose training aborted with
/// a numerical error; they score zero instead of poisoning the whole search.
#[derive(Debug, Clone)]
pub struct GridCell {
    pub gamma: f64,
    pub kernel: KernelSpec,
    pub accuracy: f64,
    pub failed: bool,
}

/// Result of an exhaustive grid search.
#[derive(Debug, Clone)]
pub struct GridSearchResult {
    pub best_gamma: f64,
    pub best_kernel: KernelSpec,
    /// Cross-validation accuracy of the winning cell, bit-identical to its
    /// `surface` entry.
    pub cv_accuracy: f64,
    /// All evaluated cells, in deterministic grid order (gamma outer, kernel
    /// parameter inner).
    pub surface: Vec<GridCell>,
}

/// Split `0..n` into `k` disjoint folds: one seeded shuffle, then round-robin
/// dealing. Fold sizes differ by at most one.
pub fn k_fold_split(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::invalid("k-fold split requires k >= 2"));
    }
    if k > n {
        return Err(Error::invalid(format!(
            "k-fold split requires k <= n, got k={k}, n={n}"
        )));
    }
    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);
    let mut folds = vec![Vec::with_capacity(n / k + 1); k];
    for (pos, idx) in indices.into_iter().enumerate() {
        folds[pos % k].push(idx);
    }
    Ok(folds)
}

/// Class-stratified k-fold split. Positives and negatives are shuffled
/// separately and dealt into folds with a cursor that keeps running across
/// the class boundary, so overall fold sizes still differ by at most one
/// while per-fold class ratios track the global ratio.
///
/// Callers should fall back to [`k_fold_split`] when either class has fewer
/// than `k` members.
pub fn stratified_k_fold(targets: &[f64], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    let n = targets.len();
    if k < 2 {
        return Err(Error::invalid("k-fold split requires k >= 2"));
    }
    if k > n {
        return Err(Error::invalid(format!(
            "k-fold split requires k <= n, got k={k}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positives: Vec<usize> = (0..n).filter(|&i| targets[i] > 0.0).collect();
    let mut negatives: Vec<usize> = (0..n).filter(|&i| targets[i] <= 0.0).collect();
    positives.shuffle(&mut rng);
    negatives.shuffle(&mut rng);

    let mut folds = vec![Vec::with_capacity(n / k + 1); k];
    for (cursor, idx) in positives.into_iter().chain(negatives).enumerate() {
        folds[cursor % k].push(idx);
    }
    Ok(folds)
}

fn class_counts(targets: &[f64]) -> (usize, usize) {
    let pos = targets.iter().filter(|&&t| t > 0.0).count();
    (pos, targets.len() - pos)
}

/// Mean held-out accuracy over `k` folds for a fixed kernel and gamma.
///
/// Folds are stratified by class whenever both classes have at least `k`
/// members. Training failures propagate to the caller.
pub fn cv_accuracy(
    data: &TrainingSet,
    kernel: &KernelSpec,
    gamma: f64,
    folds: usize,
    seed: u64,
) -> Result<f64> {
    let n = data.len();
    if folds < 2 || folds > n {
        return Err(Error::invalid(format!(
            "cv requires 2 <= folds <= n, got folds={folds}, n={n}"
        )));
    }
    let (pos, neg) = class_counts(data.targets());
    let fold_sets = if pos >= folds && neg >= folds {
        stratified_k_fold(data.targets(), folds, seed)?
    } else {
        k_fold_split(n, folds, seed)?
    };

    let mut total = 0.0;
    for held_out in &fold_sets {
        let train_idx: Vec<usize> = (0..n).filter(|i| !held_out.contains(i)).collect();
        let model = lssvm::train(&data.subset(&train_idx)?, kernel, gamma)?;
        let mut correct = 0usize;
        for &i in held_out {
            let p = model.predict(&data.inputs()[i])?;
            if p as f64 == data.targets()[i] {
                correct += 1;
            }
        }
        total += correct as f64 / held_out.len() as f64;
    }
    Ok(total / fold_sets.len() as f64)
}

/// Kernels to evaluate for a family, in tie-break order (smallest kernel
/// parameter first).
fn family_kernels(family: KernelFamily, config: &GridSearchConfig) -> Vec<KernelSpec> {
    match family {
        KernelFamily::Linear => vec![KernelSpec::Linear],
        KernelFamily::Rbf => config
            .sigma2_grid
            .iter()
            .map(|&sigma2| KernelSpec::Rbf { sigma2 })
            .collect(),
        KernelFamily::Polynomial => config
            .degree_grid
            .iter()
            .map(|&degree| KernelSpec::Polynomial {
                degree,
                offset: POLY_OFFSET,
            })
            .collect(),
        KernelFamily::Mlp => vec![KernelSpec::Mlp {
            kappa: MLP_KAPPA,
            theta: MLP_THETA,
        }],
    }
}

/// Exhaustive search over every cell of the (gamma, kernel parameter) grid.
///
/// Returns the argmax of cross-validation accuracy; exact ties go to the
/// smallest gamma, then the smallest kernel parameter. Cells that fail to
/// train score zero and are flagged; the search only errors out when every
/// cell failed.
pub fn grid_search(
    data: &TrainingSet,
    family: KernelFamily,
    config: &GridSearchConfig,
) -> Result<GridSearchResult> {
    config.validate(data.len())?;

    let kernels = family_kernels(family, config);
    let mut surface = Vec::with_capacity(config.gamma_grid.len() * kernels.len());
    let mut best: Option<usize> = None;

    for &gamma in &config.gamma_grid {
        for kernel in &kernels {
            let (accuracy, failed) =
                match cv_accuracy(data, kernel, gamma, config.folds, config.seed) {
                    Ok(acc) => (acc, false),
                    Err(Error::Numerical { .. }) => (0.0, true),
                    Err(other) => return Err(other),
                };
            surface.push(GridCell {
                gamma,
                kernel: kernel.clone(),
                accuracy,
                failed,
            });
            let idx = surface.len() - 1;
            let better = match best {
                None => !failed,
                Some(b) => !failed && accuracy > surface[b].accuracy,
            };
            if better {
                best = Some(idx);
            }
        }
    }

    let best = best.ok_or(Error::GridSearchFailed)?;
    Ok(GridSearchResult {
        best_gamma: surface[best].gamma,
        best_kernel: surface[best].kernel.clone(),
        cv_accuracy: surface[best].accuracy,
        surface,
    })
}
