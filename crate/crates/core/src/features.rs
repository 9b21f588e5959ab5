//! Feature extraction and normalization: quarter-cycle current windows and
//! the z-score statistics stored with every trained model.

use crate::error::{Error, Result};
use crate::sim::ThreePhaseRecord;

/// Five post-fault samples per phase, three phases.
pub const SAMPLES_PER_PHASE: usize = 5;
pub const FEATURE_DIM: usize = 3 * SAMPLES_PER_PHASE;

/// A normalized classifier input vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: [f64; FEATURE_DIM],
    /// Provenance link back to the dataset row this vector came from, when
    /// known.
    pub scenario_id: Option<u64>,
}

/// Per-feature z-score statistics fitted on a training population.
#[derive(Debug, Clone, PartialEq)]
pub struct NormStats {
    pub means: Vec<f64>,
    /// Per-feature standard deviations; exact-zero deviations are replaced
    /// by 1 so constant features pass through centered.
    pub scales: Vec<f64>,
}

impl NormStats {
    pub fn dim(&self) -> usize {
        self.means.len()
    }

    /// Inverse of [`normalize`]: `mean + v * scale`, elementwise.
    pub fn denormalize(&self, values: &[f64]) -> Result<Vec<f64>> {
        if values.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: values.len(),
            });
        }
        Ok(values
            .iter()
            .zip(self.means.iter().zip(self.scales.iter()))
            .map(|(v, (m, s))| m + v * s)
            .collect())
    }
}

/// Raw quarter-cycle window: five consecutive samples per phase starting at
/// the fault-inception sample, phases R, Y, B concatenated in that order.
pub fn extract_window(record: &ThreePhaseRecord) -> Result<[f64; FEATURE_DIM]> {
    let k = record.fault_index;
    let t = record.len();
    if t < k + SAMPLES_PER_PHASE {
        return Err(Error::invalid(format!(
            "record too short: needs {SAMPLES_PER_PHASE} samples at and after index {k}, has {t}"
        )));
    }
    let mut out = [0.0; FEATURE_DIM];
    for p in 0..3 {
        out[p * SAMPLES_PER_PHASE..(p + 1) * SAMPLES_PER_PHASE]
            .copy_from_slice(&record.samples[p][k..k + SAMPLES_PER_PHASE]);
    }
    Ok(out)
}

/// Fit per-feature mean and (population) standard deviation over a training
/// set of raw windows. Requires at least two vectors.
pub fn fit_normalizer(raws: &[[f64; FEATURE_DIM]]) -> Result<NormStats> {
    if raws.len() < 2 {
        return Err(Error::invalid(format!(
            "normalizer needs at least 2 vectors, got {}",
            raws.len()
        )));
    }
    let n = raws.len() as f64;
    let mut means = vec![0.0; FEATURE_DIM];
    for raw in raws {
        for (m, v) in means.iter_mut().zip(raw.iter()) {
            *m += v;
        }
    }
    for m in means.iter_mut() {
        *m /= n;
    }
    let mut scales = vec![0.0; FEATURE_DIM];
    for raw in raws {
        for (s, (v, m)) in scales.iter_mut().zip(raw.iter().zip(means.iter())) {
            let d = v - m;
            *s += d * d;
        }
    }
    for s in scales.iter_mut() {
        *s = (*s / n).sqrt();
        if *s == 0.0 {
            *s = 1.0;
        }
    }
    Ok(NormStats { means, scales })
}

/// Z-score a raw window with fitted statistics.
pub fn normalize(raw: &[f64; FEATURE_DIM], stats: &NormStats) -> Result<FeatureVector> {
    if stats.dim() != FEATURE_DIM {
        return Err(Error::DimensionMismatch {
            expected: FEATURE_DIM,
            got: stats.dim(),
        });
    }
    let mut values = [0.0; FEATURE_DIM];
    for i in 0..FEATURE_DIM {
        values[i] = (raw[i] - stats.means[i]) / stats.scales[i];
    }
    Ok(FeatureVector {
        values,
        scenario_id: None,
    })
}
