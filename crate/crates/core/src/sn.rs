//! Self-navigation compiler.
//!
//! Starting from the identity, each iteration computes the coaxial residual
//! angle implied by the current fidelity, tries that angle about every allowed
//! axis, and keeps the best candidate. The loop ends once `1 − F ≤ ε_T`; the
//! raw step list is then merged and its frame shifts absorbed into pulse phases.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use crate::error::{CompileError, PartialSchedule, Su2Error};
use crate::pulse::{absorb_virtual_z, merge_adjacent, CompiledGate, PulseCost, PulseSequence, PulseStep, XyPulse};
use crate::su2::{hs_fidelity, residual_angle, rxy, rz, Axis3, Unitary2};

/// Slack allowed between the loop's fidelity and the re-evaluated output.
pub const VERIFY_SLACK: f64 = 1e-12;

/// One rotation axis the hardware can realize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AllowedAxis {
    PlusZ,
    MinusZ,
    /// XY-plane axis at azimuth `phase`, realized by the drive phase.
    Xy { phase: f64 },
}

impl AllowedAxis {
    pub fn rotation(&self, angle: f64) -> Unitary2 {
        match *self {
            AllowedAxis::PlusZ => rz(angle),
            AllowedAxis::MinusZ => rz(-angle),
            AllowedAxis::Xy { phase } => rxy(phase, angle),
        }
    }

    /// Schedule step realizing a rotation by `angle ∈ (0, π]` about this axis.
    pub fn step(&self, angle: f64) -> PulseStep {
        match *self {
            AllowedAxis::PlusZ => PulseStep::VirtualZ { alpha: angle },
            // −π is folded onto π to stay in (−π, π]
            AllowedAxis::MinusZ if angle >= PI => PulseStep::VirtualZ { alpha: PI },
            AllowedAxis::MinusZ => PulseStep::VirtualZ { alpha: -angle },
            AllowedAxis::Xy { phase } => PulseStep::Xy(XyPulse { phase, angle }),
        }
    }

    pub fn vector(&self) -> Axis3 {
        match *self {
            AllowedAxis::PlusZ => Axis3::Z,
            AllowedAxis::MinusZ => Axis3::new(0.0, 0.0, -1.0).expect("unit axis"),
            AllowedAxis::Xy { phase } => Axis3::in_plane(phase),
        }
    }
}

/// The allowed axes: ±z plus `n_axes − 2` XY-plane axes spaced uniformly from phase 0.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSet {
    pub n_axes: usize,
    pub axes: Vec<AllowedAxis>,
}

impl AxisSet {
    pub fn iter(&self) -> std::slice::Iter<'_, AllowedAxis> {
        self.axes.iter()
    }

    pub fn contains(&self, axis: &AllowedAxis) -> bool {
        self.axes.contains(axis)
    }
}

/// Axis set with ordering `+z, −z`, then XY phases ascending.
pub fn allowed_axes(n_axes: usize) -> Result<AxisSet, Su2Error> {
    if n_axes < 4 {
        return Err(Su2Error::InvalidConfiguration(format!(
            "at least 4 allowed axes are required, got {n_axes}"
        )));
    }
    let planar = n_axes - 2;
    let mut axes = Vec::with_capacity(n_axes);
    axes.push(AllowedAxis::PlusZ);
    axes.push(AllowedAxis::MinusZ);
    // TAU·k/m is exact when m is a power of two, so nested grids share phases bit-for-bit
    axes.extend((0..planar).map(|k| AllowedAxis::Xy { phase: TAU * k as f64 / planar as f64 }));
    Ok(AxisSet { n_axes, axes })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnConfig {
    /// Stop once the gate error `1 − F` is at most this.
    pub eps_target: f64,
    pub max_iters: usize,
    /// Trial-angle shrink factor applied when no axis improves fidelity.
    pub damping_factor: f64,
    /// Smallest trial angle before giving up with `NoProgress`.
    pub min_angle: f64,
}

impl Default for SnConfig {
    fn default() -> Self {
        SnConfig { eps_target: 1e-4, max_iters: 10_000, damping_factor: 0.5, min_angle: 1e-12 }
    }
}

impl SnConfig {
    pub fn with_target(eps_target: f64) -> Self {
        SnConfig { eps_target, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), Su2Error> {
        let bad = |msg: String| Err(Su2Error::InvalidConfiguration(msg));
        if !(self.eps_target > 0.0 && self.eps_target < 1.0) {
            return bad(format!("eps_target must lie in (0, 1), got {}", self.eps_target));
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive".into());
        }
        if !(self.damping_factor > 0.0 && self.damping_factor < 1.0) {
            return bad(format!("damping_factor must lie in (0, 1), got {}", self.damping_factor));
        }
        if self.min_angle.is_nan() || self.min_angle <= 0.0 {
            return bad(format!("min_angle must be positive, got {}", self.min_angle));
        }
        Ok(())
    }
}

/// Diagnostics for one compilation.
#[derive(Debug, Clone, PartialEq)]
pub struct CompileReport {
    pub achieved_epsilon: f64,
    pub iterations: usize,
    /// Number of times a trial angle had to be shrunk.
    pub damped_steps: usize,
    pub pre_pass_distance: f64,
    pub pre_pass_pulse_count: usize,
    pub distance: f64,
    pub pulse_count: usize,
    pub compile_time: f64,
    /// Fidelity after each accepted step, starting with the initial fidelity.
    pub fidelity_history: Vec<f64>,
}

/// Best axis for a rotation by `step_angle` applied after `current`.
///
/// Ties go to the earliest axis in `axes` order.
pub fn sn_step(current: &Unitary2, target: &Unitary2, axes: &AxisSet, step_angle: f64) -> (AllowedAxis, f64) {
    let mut best: Option<(AllowedAxis, f64)> = None;
    for axis in axes.iter() {
        let f = hs_fidelity(target, &(axis.rotation(step_angle) * *current));
        if best.is_none_or(|(_, bf)| f > bf) {
            best = Some((*axis, f));
        }
    }
    best.expect("axis set is never empty")
}

/// Compile `target` with the self-navigation loop.
pub fn sn_compile(
    target: &Unitary2,
    axes: &AxisSet,
    config: &SnConfig,
) -> Result<(CompiledGate, CompileReport), CompileError> {
    let start = Instant::now();
    config.validate()?;

    let mut current = Unitary2::IDENTITY;
    let mut raw = PulseSequence::new();
    let mut fidelity = hs_fidelity(target, &current);
    let mut history = vec![fidelity];
    let mut iterations = 0usize;
    let mut damped_steps = 0usize;
    let mut stop_at = config.eps_target;

    loop {
        while 1.0 - fidelity > stop_at {
            let partial = |raw: &PulseSequence| {
                Box::new(PartialSchedule { steps: raw.clone(), epsilon: 1.0 - fidelity, iterations })
            };
            if iterations >= config.max_iters {
                return Err(CompileError::MaxIters { limit: config.max_iters, best: partial(&raw) });
            }
            let mut angle = residual_angle(fidelity)?;
            let (axis, best_f) = loop {
                let (axis, f) = sn_step(&current, target, axes, angle);
                if f > fidelity {
                    break (axis, f);
                }
                damped_steps += 1;
                angle *= config.damping_factor;
                if angle < config.min_angle {
                    return Err(CompileError::NoProgress { best: partial(&raw) });
                }
            };
            raw.push(axis.step(angle));
            current = axis.rotation(angle) * current;
            fidelity = best_f;
            history.push(fidelity);
            iterations += 1;
        }

        let (pulses, frame_phase) = absorb_virtual_z(&merge_adjacent(&raw));
        let mut gate = CompiledGate {
            distance: pulses.distance(),
            pulse_count: pulses.pulse_count(),
            pulses,
            frame_phase,
            epsilon: 0.0,
            iterations,
            compile_time: 0.0,
        };
        let epsilon = (1.0 - hs_fidelity(target, &gate.unitary())).max(0.0);
        if epsilon <= config.eps_target {
            gate.epsilon = epsilon;
            gate.compile_time = start.elapsed().as_secs_f64();
            let report = CompileReport {
                achieved_epsilon: epsilon,
                iterations,
                damped_steps,
                pre_pass_distance: raw.distance(),
                pre_pass_pulse_count: raw.pulse_count(),
                distance: gate.distance,
                pulse_count: gate.pulse_count,
                compile_time: gate.compile_time,
                fidelity_history: history,
            };
            return Ok((gate, report));
        }
        if epsilon > config.eps_target + VERIFY_SLACK {
            return Err(CompileError::PassMismatch { achieved: epsilon, target: config.eps_target });
        }
        // roundoff pushed the re-evaluated error just over the target; take another step
        stop_at = 0.5 * (1.0 - fidelity);
    }
}
