//! Steady-state short-circuit analysis of the compensated line via
//! symmetrical components.
//!
//! The network is reduced to the Thevenin equivalent seen from bus A looking
//! into the fault: source 1 impedance plus the line stretch up to the fault,
//! minus the capacitor reactance when the fault lies beyond the midpoint.
//! Shunt line capacitance is ignored at the phasor level; its effect is
//! represented only by the damped high-frequency term injected during
//! waveform synthesis.

use num_complex::Complex64;

use super::{FaultScenario, LineParameters};
use crate::error::Result;
use crate::fault::FaultType;

/// Rotation operator `exp(j 2π/3)`.
fn rot() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

/// `rot()^(-p)` for phase index p.
fn rot_neg(p: i32) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / 3.0 * p as f64)
}

/// Per-sequence Thevenin equivalent at the fault point plus the driving
/// phase-to-neutral source voltage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceNetwork {
    pub z1: Complex64,
    pub z2: Complex64,
    pub z0: Complex64,
    /// Phase R to neutral RMS voltage of source 1, rotated to the fault
    /// inception angle.
    pub e: Complex64,
}

/// Capacitor reactance in ohms for a given compensation level.
fn capacitor_reactance(line: &LineParameters, compensation_pct: f64) -> f64 {
    let x_line = line.omega() * line.pos_seq.l_mh_per_km * 1e-3 * line.length_km;
    compensation_pct / 100.0 * x_line
}

/// Reduce the network to sequence Thevenin impedances at the fault point.
///
/// The capacitor enters each sequence network as the same series `-j X_c`
/// term whenever the fault lies beyond the line midpoint.
pub fn sequence_network(line: &LineParameters, scenario: &FaultScenario) -> Result<SequenceNetwork> {
    line.validate()?;
    scenario.validate()?;

    let w = line.omega();
    let d_km = scenario.location_pct / 100.0 * line.length_km;
    let z1_per_km = Complex64::new(line.pos_seq.r_ohm_per_km, w * line.pos_seq.l_mh_per_km * 1e-3);
    let z0_per_km = Complex64::new(
        line.zero_seq.r_ohm_per_km,
        w * line.zero_seq.l_mh_per_km * 1e-3,
    );
    let beyond_capacitor = scenario.location_pct > 50.0;
    let xc = capacitor_reactance(line, scenario.compensation_pct);

    let mut z1 = line.source1.pos + z1_per_km * d_km;
    let mut z0 = line.source1.zero + z0_per_km * d_km;
    if beyond_capacitor {
        let jxc = Complex64::new(0.0, xc);
        z1 -= jxc;
        z0 -= jxc;
    }

    let e_mag = line.system_voltage_v / 3f64.sqrt();
    let e_angle = (line.source1_angle_deg + scenario.inception_angle_deg).to_radians();
    Ok(SequenceNetwork {
        z1,
        z2: z1,
        z0,
        e: Complex64::from_polar(e_mag, e_angle),
    })
}

/// Balanced pre-fault load current phasors, driven by the angle between the
/// two sources across the full compensated line.
pub fn load_current_phasors(line: &LineParameters, scenario: &FaultScenario) -> [Complex64; 3] {
    let w = line.omega();
    let z1_per_km = Complex64::new(line.pos_seq.r_ohm_per_km, w * line.pos_seq.l_mh_per_km * 1e-3);
    let xc = capacitor_reactance(line, scenario.compensation_pct);
    let z_loop = line.source1.pos + z1_per_km * line.length_km - Complex64::new(0.0, xc)
        + line.source2.pos;

    let e_mag = line.system_voltage_v / 3f64.sqrt();
    let a1 = (line.source1_angle_deg + scenario.inception_angle_deg).to_radians();
    let a2 = a1 - scenario.load_angle_deg.to_radians();
    let e1 = Complex64::from_polar(e_mag, a1);
    let e2 = Complex64::from_polar(e_mag, a2);
    let i_r = (e1 - e2) / z_loop;
    [i_r, i_r * rot_neg(1), i_r * rot_neg(2)]
}

/// Canonical sequence-network connection of a fault type, together with the
/// reference phase the textbook formulas assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Connection {
    /// Single phase to ground; reference = faulted phase.
    PhaseGround,
    /// Phase to phase; reference = the healthy phase.
    PhasePhase,
    /// Double phase to ground; reference = the healthy phase.
    DoublePhaseGround,
    /// Balanced three-phase fault (grounded or not).
    ThreePhase,
}

fn connection_of(fault_type: FaultType) -> Option<(Connection, usize)> {
    use FaultType::*;
    Some(match fault_type {
        Rg => (Connection::PhaseGround, 0),
        Yg => (Connection::PhaseGround, 1),
        Bg => (Connection::PhaseGround, 2),
        Ry => (Connection::PhasePhase, 2),
        Rb => (Connection::PhasePhase, 1),
        Yb => (Connection::PhasePhase, 0),
        Ryg => (Connection::DoublePhaseGround, 2),
        Rbg => (Connection::DoublePhaseGround, 1),
        Ybg => (Connection::DoublePhaseGround, 0),
        Ryb | Rybg => (Connection::ThreePhase, 0),
        None => return Option::None,
    })
}

/// Fault-component currents plus bookkeeping the waveform stage needs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FaultSolution {
    /// Sequence currents (I0, I1, I2) in the reference frame of the
    /// connection's reference phase. Exposed for the zero-sequence checks.
    #[allow(dead_code)]
    pub sequence: [Complex64; 3],
    /// Fault-component phase currents (load excluded).
    pub phase: [Complex64; 3],
    /// Driving-point impedance seen by the positive-sequence fault current;
    /// its X/R sets the DC-offset time constant.
    pub z_eff: Option<Complex64>,
    /// Whether the series capacitor is part of the fault loop.
    pub capacitor_in_loop: bool,
}

pub(crate) fn fault_solution(
    line: &LineParameters,
    scenario: &FaultScenario,
) -> Result<FaultSolution> {
    let net = sequence_network(line, scenario)?;
    let rf = Complex64::new(scenario.fault_resistance_ohm, 0.0);
    let three_rf = 3.0 * rf;

    let Some((connection, k)) = connection_of(scenario.fault_type) else {
        return Ok(FaultSolution {
            sequence: [Complex64::ZERO; 3],
            phase: [Complex64::ZERO; 3],
            z_eff: Option::None,
            capacitor_in_loop: false,
        });
    };

    // Driving voltage seen in the reference frame of phase k.
    let e_k = net.e * rot_neg(k as i32);

    let (i0, i1, i2) = match connection {
        Connection::PhaseGround => {
            let i = e_k / (net.z1 + net.z2 + net.z0 + three_rf);
            (i, i, i)
        }
        Connection::PhasePhase => {
            let i1 = e_k / (net.z1 + net.z2 + rf);
            (Complex64::ZERO, i1, -i1)
        }
        Connection::DoublePhaseGround => {
            let zg = net.z0 + three_rf;
            let denom = net.z2 + zg;
            let i1 = e_k / (net.z1 + net.z2 * zg / denom);
            let i2 = -i1 * zg / denom;
            let i0 = -i1 * net.z2 / denom;
            (i0, i1, i2)
        }
        Connection::ThreePhase => {
            let i1 = e_k / (net.z1 + rf);
            (Complex64::ZERO, i1, Complex64::ZERO)
        }
    };

    let a = rot();
    let mut phase = [Complex64::ZERO; 3];
    for (p, slot) in phase.iter_mut().enumerate() {
        // Shifted inverse symmetrical-component transform: relabel so the
        // reference phase k plays the canonical role.
        let shift = ((p + 3 - k) % 3) as i32;
        *slot = i0 + i1 * rot_neg(shift) + i2 * a.powi(shift);
    }

    Ok(FaultSolution {
        sequence: [i0, i1, i2],
        phase,
        z_eff: Some(e_k / i1),
        capacitor_in_loop: scenario.location_pct > 50.0 && scenario.compensation_pct > 0.0,
    })
}

/// Total phase current phasors at bus A: the symmetrical-component fault
/// solution superposed on the balanced pre-fault load current. For a
/// `NONE` scenario the load current alone is returned.
pub fn fault_current_phasors(
    line: &LineParameters,
    scenario: &FaultScenario,
) -> Result<[Complex64; 3]> {
    let solution = fault_solution(line, scenario)?;
    let load = load_current_phasors(line, scenario);
    Ok([
        solution.phase[0] + load[0],
        solution.phase[1] + load[1],
        solution.phase[2] + load[2],
    ])
}
