//! JSON schedule files written by `compile` and read by `verify`.

use serde::{Deserialize, Serialize};

use selfnav_core::{hs_fidelity, rz, sequence_unitary, CompiledGate, PulseSequence, Unitary2, XyPulse};

use crate::gate::GateSpec;
use crate::number::Num;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseRecord {
    pub phase_rad: Num,
    pub angle_rad: Num,
}

/// On-disk schedule. `n_axes` is `null` for the U3 baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub target: GateSpec,
    pub n_axes: Option<usize>,
    pub eps_target: Num,
    pub pulses: Vec<PulseRecord>,
    pub frame_phase_rad: Num,
    pub epsilon: Num,
    pub distance_rad: Num,
    pub pulse_count: usize,
    pub iterations: usize,
    pub compile_time_s: Num,
}

impl ScheduleFile {
    pub fn from_compiled(target: GateSpec, n_axes: Option<usize>, eps_target: f64, gate: &CompiledGate) -> Self {
        ScheduleFile {
            target,
            n_axes,
            eps_target: eps_target.into(),
            pulses: gate
                .pulses
                .iter()
                .map(|p| PulseRecord { phase_rad: p.phase.into(), angle_rad: p.angle.into() })
                .collect(),
            frame_phase_rad: gate.frame_phase.into(),
            epsilon: gate.epsilon.into(),
            distance_rad: gate.distance.into(),
            pulse_count: gate.pulse_count,
            iterations: gate.iterations,
            compile_time_s: gate.compile_time.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule fields are finite")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn pulses(&self) -> Vec<XyPulse> {
        self.pulses.iter().map(|p| XyPulse { phase: p.phase_rad.0, angle: p.angle_rad.0 }).collect()
    }

    /// Unitary of the stored pulses followed by the trailing frame shift,
    /// evaluated from the file contents alone.
    pub fn unitary(&self) -> Unitary2 {
        let pulses = PulseSequence::from(self.pulses().as_slice());
        rz(self.frame_phase_rad.0) * sequence_unitary(&pulses)
    }

    /// Gate error `1 − F` of this schedule against `target`.
    pub fn error_against(&self, target: &Unitary2) -> f64 {
        (1.0 - hs_fidelity(target, &self.unitary())).max(0.0)
    }
}
