//! Synthetic three-phase fault-current plant for a series-compensated line.
//!
//! This module deliberately replaces a detailed electromagnetic-transient
//! simulation of the line, capacitor bank and its protective varistor with a
//! **phasor-plus-transient synthetic model**:
//!
//! * steady-state fault currents come from textbook symmetrical-component
//!   analysis of the compensated line ([`network`]);
//! * the transient signatures that matter for classification — decaying DC
//!   offset, sub-synchronous ringing when the capacitor sits in the fault
//!   loop, odd harmonics from varistor conduction and a damped
//!   high-frequency component — are injected parametrically on top of the
//!   fundamental ([`waveform`]).
//!
//! The result is class-discriminative, reproducible waveforms, not
//! electromagnetic fidelity. Anything downstream (feature extraction,
//! classifier training, accuracy numbers) must be read with that substitution
//! in mind.

mod dataset;
mod network;
mod waveform;

pub use dataset::{
    default_test_scenarios, default_train_scenarios, generate_dataset, synthesize_scenarios,
    ScenarioGrid, DEFAULT_DURATION_CYCLES,
};
pub use network::{
    fault_current_phasors, load_current_phasors, sequence_network, SequenceNetwork,
};
pub use waveform::{synthesize_waveform, synthesize_waveform_with, SynthConfig};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fault::{FaultLabel, FaultType};

/// Samples per fundamental cycle. With a 50 Hz system this is a 1 kHz
/// sampling rate.
pub const SAMPLES_PER_CYCLE: usize = 20;

/// Per-kilometre sequence parameters of the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceParams {
    pub r_ohm_per_km: f64,
    pub l_mh_per_km: f64,
    pub c_uf_per_km: f64,
}

/// Thevenin source impedances of one line end, per sequence. The negative
/// sequence impedance is taken equal to the positive one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceImpedances {
    pub pos: Complex64,
    pub zero: Complex64,
}

/// Nameplate description of the studied two-source series-compensated line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineParameters {
    /// Line-to-line RMS system voltage, volts.
    pub system_voltage_v: f64,
    pub frequency_hz: f64,
    pub length_km: f64,
    pub pos_seq: SequenceParams,
    pub zero_seq: SequenceParams,
    /// Source phase angles, degrees. Their difference sets the nameplate
    /// load flow; individual scenarios carry their own load angle.
    pub source1_angle_deg: f64,
    pub source2_angle_deg: f64,
    /// Nameplate midpoint compensation as a percentage of the total
    /// positive-sequence line reactance. Scenarios override this per record.
    pub compensation_pct: f64,
    pub source1: SourceImpedances,
    pub source2: SourceImpedances,
    /// Current-transformer step-down ratio between primary amperes and the
    /// relay-side samples.
    pub ct_ratio: f64,
}

impl Default for LineParameters {
    /// 230 kV, 50 Hz, 250 km line with 70 % midpoint compensation and a
    /// 2000:1 CT. Source impedances are not part of the nameplate data; the
    /// defaults give realistic X/R ratios and are configurable.
    fn default() -> Self {
        LineParameters {
            system_voltage_v: 230e3,
            frequency_hz: 50.0,
            length_km: 250.0,
            pos_seq: SequenceParams {
                r_ohm_per_km: 0.0368,
                l_mh_per_km: 0.55,
                c_uf_per_km: 0.028,
            },
            zero_seq: SequenceParams {
                r_ohm_per_km: 0.0328,
                l_mh_per_km: 1.722,
                c_uf_per_km: 0.024,
            },
            source1_angle_deg: 0.0,
            source2_angle_deg: 20.0,
            compensation_pct: 70.0,
            source1: SourceImpedances {
                pos: Complex64::new(1.0, 10.0),
                zero: Complex64::new(2.0, 15.0),
            },
            source2: SourceImpedances {
                pos: Complex64::new(1.0, 10.0),
                zero: Complex64::new(2.0, 15.0),
            },
            ct_ratio: 2000.0,
        }
    }
}

impl LineParameters {
    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.frequency_hz
    }

    /// Sampling rate implied by [`SAMPLES_PER_CYCLE`].
    pub fn sampling_rate_hz(&self) -> f64 {
        SAMPLES_PER_CYCLE as f64 * self.frequency_hz
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("system voltage", self.system_voltage_v),
            ("frequency", self.frequency_hz),
            ("length", self.length_km),
            ("positive-sequence R", self.pos_seq.r_ohm_per_km),
            ("positive-sequence L", self.pos_seq.l_mh_per_km),
            ("zero-sequence R", self.zero_seq.r_ohm_per_km),
            ("zero-sequence L", self.zero_seq.l_mh_per_km),
            ("CT ratio", self.ct_ratio),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be > 0, got {v}")));
            }
        }
        if !(0.0..=100.0).contains(&self.compensation_pct) {
            return Err(Error::invalid(format!(
                "compensation must lie in [0, 100] %, got {}",
                self.compensation_pct
            )));
        }
        Ok(())
    }
}

/// One simulated fault event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaultScenario {
    pub fault_type: FaultType,
    /// Fault position as percent of line length from bus A, in (0, 100) and
    /// never exactly 50 (the capacitor node itself is excluded).
    pub location_pct: f64,
    pub fault_resistance_ohm: f64,
    /// Point-on-wave of the phase R source voltage at the fault instant,
    /// degrees in [0, 360).
    pub inception_angle_deg: f64,
    /// Angle by which source 2 lags source 1, degrees; sets the pre-fault
    /// load current.
    pub load_angle_deg: f64,
    /// Midpoint compensation for this record, percent of line reactance.
    pub compensation_pct: f64,
    /// Signal-to-noise ratio of the synthesized record; `f64::INFINITY`
    /// produces a noise-free record.
    pub snr_db: f64,
    /// Seed for every random draw (noise, transient phases) of this record.
    pub seed: u64,
}

impl FaultScenario {
    pub fn validate(&self) -> Result<()> {
        if !(self.location_pct > 0.0 && self.location_pct < 100.0) {
            return Err(Error::invalid(format!(
                "fault location must lie strictly inside (0, 100) %, got {}",
                self.location_pct
            )));
        }
        if self.location_pct == 50.0 {
            return Err(Error::invalid(
                "fault location of exactly 50 % coincides with the capacitor node",
            ));
        }
        if !(self.fault_resistance_ohm >= 0.0) {
            return Err(Error::invalid(format!(
                "fault resistance must be >= 0, got {}",
                self.fault_resistance_ohm
            )));
        }
        if !(0.0..360.0).contains(&self.inception_angle_deg) {
            return Err(Error::invalid(format!(
                "inception angle must lie in [0, 360) degrees, got {}",
                self.inception_angle_deg
            )));
        }
        if !(0.0..=100.0).contains(&self.compensation_pct) {
            return Err(Error::invalid(format!(
                "compensation must lie in [0, 100] %, got {}",
                self.compensation_pct
            )));
        }
        if !self.load_angle_deg.is_finite() {
            return Err(Error::invalid("load angle must be finite"));
        }
        if self.snr_db.is_nan() {
            return Err(Error::invalid("snr must be a real number or +infinity"));
        }
        Ok(())
    }

    /// Ground-truth label for this scenario.
    pub fn label(&self) -> FaultLabel {
        let (r, y, b, g) = crate::fault::targets_from_fault_type(self.fault_type);
        FaultLabel {
            r,
            y,
            b,
            g,
            class: self.fault_type.label_class(),
            section: if self.location_pct < 50.0 { 1 } else { -1 },
        }
    }
}

/// A sampled three-phase current record, relay side (after the CT ratio).
#[derive(Debug, Clone)]
pub struct ThreePhaseRecord {
    /// Phase currents R, Y, B in amperes (secondary side), one `Vec` per
    /// phase, all of equal length.
    pub samples: [Vec<f64>; 3],
    pub fs_hz: f64,
    /// Sample index of the fault inception; at least one full pre-fault
    /// cycle precedes it.
    pub fault_index: usize,
    pub scenario: FaultScenario,
    pub label: FaultLabel,
}

impl ThreePhaseRecord {
    pub fn len(&self) -> usize {
        self.samples[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples[0].is_empty()
    }
}
