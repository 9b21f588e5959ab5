//! Sampled-waveform synthesis on top of the phasor solution.
//!
//! Post-fault samples are the fundamental sinusoid of each phase phasor plus
//! parametric transient signatures:
//!
//! * a decaying DC offset sized so the total current is continuous at the
//!   fault instant, with the L/R time constant of the fault loop;
//! * a damped sub-synchronous oscillation, present only when the series
//!   capacitor sits in the fault loop;
//! * 3rd and 5th harmonics on faulted phases (varistor conduction
//!   signature);
//! * a damped high-frequency component standing in for the ignored shunt
//!   capacitance;
//! * white Gaussian noise scaled to the scenario SNR.
//!
//! Every random draw (transient phases, noise) comes from the scenario's
//! seeded generator, so records are bit-reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use num_complex::Complex64;

use super::network::{fault_solution, load_current_phasors};
use super::{FaultScenario, LineParameters, ThreePhaseRecord, SAMPLES_PER_CYCLE};
use crate::error::{Error, Result};

/// Transient-signature configuration for waveform synthesis. Amplitude
/// fractions are relative to the fundamental peak of the affected phase.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    /// Full pre-fault cycles before the inception sample (>= 1).
    pub prefault_cycles: usize,
    /// Inject the continuity-preserving decaying DC offset.
    pub dc_offset: bool,
    pub harmonic3_frac: f64,
    pub harmonic5_frac: f64,
    pub subsync_frac: f64,
    pub subsync_freq_hz: f64,
    pub subsync_tau_s: f64,
    pub hf_frac: f64,
    pub hf_freq_hz: f64,
    pub hf_tau_s: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            prefault_cycles: 2,
            dc_offset: true,
            harmonic3_frac: 0.05,
            harmonic5_frac: 0.02,
            subsync_frac: 0.30,
            subsync_freq_hz: 25.0,
            subsync_tau_s: 0.040,
            hf_frac: 0.02,
            hf_freq_hz: 600.0,
            hf_tau_s: 0.010,
        }
    }
}

impl SynthConfig {
    /// All transient injections disabled: post-fault samples are the pure
    /// sinusoid evaluation of the phasors.
    pub fn bare() -> Self {
        SynthConfig {
            prefault_cycles: 2,
            dc_offset: false,
            harmonic3_frac: 0.0,
            harmonic5_frac: 0.0,
            subsync_frac: 0.0,
            hf_frac: 0.0,
            ..SynthConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.prefault_cycles < 1 {
            return Err(Error::invalid("synthesis requires at least one pre-fault cycle"));
        }
        for (name, v) in [
            ("subsync_tau_s", self.subsync_tau_s),
            ("hf_tau_s", self.hf_tau_s),
            ("subsync_freq_hz", self.subsync_freq_hz),
            ("hf_freq_hz", self.hf_freq_hz),
        ] {
            if !(v > 0.0) {
                return Err(Error::invalid(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// DC-offset time constant of the fault loop, seconds: L/R of the
/// driving-point impedance seen by the fault current, clamped to a sane
/// range.
pub fn dc_time_constant(line: &LineParameters, scenario: &FaultScenario) -> Result<f64> {
    let solution = fault_solution(line, scenario)?;
    Ok(match solution.z_eff {
        Some(z) => {
            let resistance = (z.re + scenario.fault_resistance_ohm).max(f64::MIN_POSITIVE);
            (z.im.abs() / (line.omega() * resistance)).clamp(1e-3, 1.0)
        }
        None => 1.0,
    })
}

/// Synthesize a sampled record with the default transient configuration.
pub fn synthesize_waveform(
    phasors: [Complex64; 3],
    scenario: &FaultScenario,
    line: &LineParameters,
    duration_cycles: usize,
) -> Result<ThreePhaseRecord> {
    synthesize_waveform_with(&SynthConfig::default(), phasors, scenario, line, duration_cycles)
}

/// Synthesize a sampled record.
///
/// `phasors` are the post-fault fundamental phase currents (RMS, primary
/// side) as produced by [`super::fault_current_phasors`]; `duration_cycles`
/// counts post-fault cycles and must be at least 2. The CT ratio is applied
/// to every sample.
pub fn synthesize_waveform_with(
    config: &SynthConfig,
    phasors: [Complex64; 3],
    scenario: &FaultScenario,
    line: &LineParameters,
    duration_cycles: usize,
) -> Result<ThreePhaseRecord> {
    config.validate()?;
    line.validate()?;
    scenario.validate()?;
    if duration_cycles < 2 {
        return Err(Error::invalid(format!(
            "synthesis requires at least 2 post-fault cycles, got {duration_cycles}"
        )));
    }

    let fs = line.sampling_rate_hz();
    let w = line.omega();
    let fault_index = config.prefault_cycles * SAMPLES_PER_CYCLE;
    let total = fault_index + duration_cycles * SAMPLES_PER_CYCLE;

    let load = load_current_phasors(line, scenario);
    let solution = fault_solution(line, scenario)?;
    let faulted = scenario.fault_type.phases();
    let tau_dc = if config.dc_offset && !scenario.fault_type.is_none() {
        dc_time_constant(line, scenario)?
    } else {
        1.0
    };

    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    // The capacitor ring-down phase is fixed by the inception state: the LC
    // mode starts out opposing the fundamental step. The high-frequency hash
    // has no such anchor and gets a random phase per record.
    let mut phase_sub = [0.0f64; 3];
    let mut phase_hf = [0.0f64; 3];
    for p in 0..3 {
        phase_sub[p] = phasors[p].arg() + std::f64::consts::PI;
        phase_hf[p] = rng.random_range(0.0..std::f64::consts::TAU);
    }

    let sqrt2 = std::f64::consts::SQRT_2;
    let w_sub = std::f64::consts::TAU * config.subsync_freq_hz;
    let w_hf = std::f64::consts::TAU * config.hf_freq_hz;

    let mut samples: [Vec<f64>; 3] = [vec![0.0; total], vec![0.0; total], vec![0.0; total]];
    for p in 0..3 {
        let fund_peak = sqrt2 * phasors[p].norm();
        let fund_angle = phasors[p].arg();
        let load_peak = sqrt2 * load[p].norm();
        let load_angle = load[p].arg();

        // The capacitor bank sits in every phase, so the LC ring shows up on
        // all three currents, scaled by each phase's own fundamental.
        let sub_amp = if solution.capacitor_in_loop {
            config.subsync_frac * fund_peak
        } else {
            0.0
        };
        let hf_amp = if faulted[p] { config.hf_frac * fund_peak } else { 0.0 };
        let harmonics: [(f64, f64); 2] = [(3.0, config.harmonic3_frac), (5.0, config.harmonic5_frac)];

        // Deterministic post-fault signal without the DC term.
        let non_dc = |tau: f64| -> f64 {
            let mut v = fund_peak * (w * tau + fund_angle).sin();
            if faulted[p] {
                for (h, frac) in harmonics {
                    v += frac * fund_peak * (h * w * tau + h * fund_angle).sin();
                }
            }
            v += sub_amp * (-tau / config.subsync_tau_s).exp() * (w_sub * tau + phase_sub[p]).sin();
            v += hf_amp * (-tau / config.hf_tau_s).exp() * (w_hf * tau + phase_hf[p]).sin();
            v
        };
        let prefault = |tau: f64| load_peak * (w * tau + load_angle).sin();

        // Continuity at the inception sample fixes the DC amplitude.
        let dc_amp = if config.dc_offset && !scenario.fault_type.is_none() {
            prefault(0.0) - non_dc(0.0)
        } else {
            0.0
        };

        let phase_samples = &mut samples[p];
        for (s, slot) in phase_samples.iter_mut().enumerate() {
            let tau = (s as f64 - fault_index as f64) / fs;
            *slot = if tau < 0.0 {
                prefault(tau)
            } else {
                non_dc(tau) + dc_amp * (-tau / tau_dc).exp()
            };
        }
    }

    // Additive white Gaussian noise on the post-fault segment, scaled per
    // phase to the RMS of its noiseless post-fault signal. Drawn after all
    // phase draws so that records at different SNR share transient phases
    // and noise shape.
    if scenario.snr_db.is_finite() {
        let scale = 10f64.powf(-scenario.snr_db / 20.0);
        for phase_samples in samples.iter_mut() {
            let post = &phase_samples[fault_index..];
            let rms = (post.iter().map(|v| v * v).sum::<f64>() / post.len() as f64).sqrt();
            let sigma = rms * scale;
            for slot in phase_samples[fault_index..].iter_mut() {
                let draw: f64 = StandardNormal.sample(&mut rng);
                *slot += sigma * draw;
            }
        }
    }

    for phase_samples in samples.iter_mut() {
        for slot in phase_samples.iter_mut() {
            *slot /= line.ct_ratio;
        }
    }

    Ok(ThreePhaseRecord {
        samples,
        fs_hz: fs,
        fault_index,
        scenario: *scenario,
        label: scenario.label(),
    })
}
