//! Hardware-native schedule IR: virtual-Z frame shifts and XY-plane pulses.
//!
//! Steps are stored in time order (index 0 acts first). Passes preserve the
//! schedule's unitary up to a global phase.

use std::f64::consts::{PI, TAU};

use crate::su2::{compose, normalize_angle, rxy, rz, Unitary2};

/// Canonical angles below this magnitude are dropped.
pub const ZERO_ANGLE_TOL: f64 = 1e-12;
/// Two XY phases closer than this (mod 2π) count as the same axis line.
pub const PHASE_MATCH_TOL: f64 = 1e-12;

/// Sign relating a preceding frame shift to the phase offset it induces on a
/// later pulse: `R_φ(θ)·Z_α = Z_α·R_{φ + ABSORB_SIGN·α}(θ)`.
pub const ABSORB_SIGN: f64 = -1.0;

/// A physical rotation about the XY-plane axis at azimuth `phase`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XyPulse {
    pub phase: f64,
    pub angle: f64,
}

impl XyPulse {
    /// Canonical form: `angle ∈ (0, π]`, `phase ∈ [0, 2π)`. Rotations larger than
    /// π are stored as the complementary angle about the antipodal phase.
    /// Returns `None` when the rotation is a pure phase.
    pub fn canonical(phase: f64, angle: f64) -> Option<XyPulse> {
        let a = normalize_angle(angle);
        if a < ZERO_ANGLE_TOL || TAU - a < ZERO_ANGLE_TOL {
            return None;
        }
        if a > PI {
            Some(XyPulse { phase: canonical_phase(phase + PI), angle: TAU - a })
        } else {
            Some(XyPulse { phase: canonical_phase(phase), angle: a })
        }
    }

    pub fn unitary(&self) -> Unitary2 {
        rxy(self.phase, self.angle)
    }
}

fn canonical_phase(phase: f64) -> f64 {
    if (0.0..TAU).contains(&phase) {
        phase
    } else {
        normalize_angle(phase)
    }
}

/// Canonical frame-shift angle in `(−π, π]`, or `None` for a pure phase.
pub fn canonical_z(alpha: f64) -> Option<f64> {
    let a = if alpha > -PI && alpha <= PI {
        alpha
    } else {
        let r = normalize_angle(alpha);
        if r > PI {
            r - TAU
        } else {
            r
        }
    };
    if a.abs() < ZERO_ANGLE_TOL {
        None
    } else {
        Some(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseStep {
    /// Zero-cost frame shift `Z_α`.
    VirtualZ { alpha: f64 },
    Xy(XyPulse),
}

impl PulseStep {
    pub fn xy(phase: f64, angle: f64) -> PulseStep {
        PulseStep::Xy(XyPulse { phase, angle })
    }

    pub fn z(alpha: f64) -> PulseStep {
        PulseStep::VirtualZ { alpha }
    }

    pub fn unitary(&self) -> Unitary2 {
        match self {
            PulseStep::VirtualZ { alpha } => rz(*alpha),
            PulseStep::Xy(p) => p.unitary(),
        }
    }

    /// Canonicalized copy, or `None` if the step is ±I.
    pub fn canonical(&self) -> Option<PulseStep> {
        match *self {
            PulseStep::VirtualZ { alpha } => canonical_z(alpha).map(|alpha| PulseStep::VirtualZ { alpha }),
            PulseStep::Xy(p) => XyPulse::canonical(p.phase, p.angle).map(PulseStep::Xy),
        }
    }
}

/// Time-ordered list of steps.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PulseSequence {
    pub steps: Vec<PulseStep>,
}

impl PulseSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, step: PulseStep) {
        self.steps.push(step);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PulseStep> {
        self.steps.iter()
    }
}

impl From<Vec<PulseStep>> for PulseSequence {
    fn from(steps: Vec<PulseStep>) -> Self {
        PulseSequence { steps }
    }
}

impl From<&[XyPulse]> for PulseSequence {
    fn from(pulses: &[XyPulse]) -> Self {
        PulseSequence { steps: pulses.iter().copied().map(PulseStep::Xy).collect() }
    }
}

impl FromIterator<PulseStep> for PulseSequence {
    fn from_iter<I: IntoIterator<Item = PulseStep>>(iter: I) -> Self {
        PulseSequence { steps: iter.into_iter().collect() }
    }
}

/// Rotation-distance and pulse-count accounting. Virtual-Z steps are free.
pub trait PulseCost {
    fn distance(&self) -> f64;
    fn pulse_count(&self) -> usize;
}

impl PulseCost for [XyPulse] {
    fn distance(&self) -> f64 {
        self.iter().map(|p| p.angle).sum()
    }

    fn pulse_count(&self) -> usize {
        self.len()
    }
}

impl PulseCost for [PulseStep] {
    fn distance(&self) -> f64 {
        self.iter()
            .map(|s| match s {
                PulseStep::Xy(p) => p.angle,
                PulseStep::VirtualZ { .. } => 0.0,
            })
            .sum()
    }

    fn pulse_count(&self) -> usize {
        self.iter().filter(|s| matches!(s, PulseStep::Xy(_))).count()
    }
}

impl PulseCost for PulseSequence {
    fn distance(&self) -> f64 {
        self.steps.distance()
    }

    fn pulse_count(&self) -> usize {
        self.steps.pulse_count()
    }
}

/// Total rotation angle of the physical pulses.
pub fn distance<S: PulseCost + ?Sized>(schedule: &S) -> f64 {
    schedule.distance()
}

/// Number of physical (XY-plane) pulses.
pub fn pulse_count<S: PulseCost + ?Sized>(schedule: &S) -> usize {
    schedule.pulse_count()
}

/// Semantic unitary of a schedule; later steps left-multiply.
pub fn sequence_unitary(seq: &PulseSequence) -> Unitary2 {
    seq.iter().fold(Unitary2::IDENTITY, |acc, step| compose(&acc, &step.unitary()))
}

enum Merge {
    Keep,
    Replace(PulseStep),
    Cancel,
}

fn try_merge(prev: &PulseStep, next: &PulseStep) -> Merge {
    let merged = match (prev, next) {
        (PulseStep::VirtualZ { alpha: a }, PulseStep::VirtualZ { alpha: b }) => {
            canonical_z(a + b).map(|alpha| PulseStep::VirtualZ { alpha })
        }
        (PulseStep::Xy(p), PulseStep::Xy(q)) => {
            let d = normalize_angle(q.phase - p.phase);
            if d < PHASE_MATCH_TOL || TAU - d < PHASE_MATCH_TOL {
                XyPulse::canonical(p.phase, p.angle + q.angle).map(PulseStep::Xy)
            } else if (d - PI).abs() < PHASE_MATCH_TOL {
                XyPulse::canonical(p.phase, p.angle - q.angle).map(PulseStep::Xy)
            } else {
                return Merge::Keep;
            }
        }
        _ => return Merge::Keep,
    };
    match merged {
        Some(step) => Merge::Replace(step),
        None => Merge::Cancel,
    }
}

/// Merge adjacent steps on a common axis line and drop trivial steps.
///
/// Runs to a fixpoint; never increases the step count.
pub fn merge_adjacent(seq: &PulseSequence) -> PulseSequence {
    let mut current = seq.steps.clone();
    loop {
        let mut out: Vec<PulseStep> = Vec::with_capacity(current.len());
        for step in current.iter().filter_map(PulseStep::canonical) {
            match out.last().map(|top| try_merge(top, &step)) {
                Some(Merge::Replace(merged)) => *out.last_mut().unwrap() = merged,
                Some(Merge::Cancel) => {
                    out.pop();
                }
                Some(Merge::Keep) | None => out.push(step),
            }
        }
        if out == current {
            return PulseSequence { steps: out };
        }
        current = out;
    }
}

/// Fold every frame shift into the phases of later pulses without merging.
///
/// Pulse angles are left untouched; only phases move.
pub fn absorb_frames(seq: &PulseSequence) -> (Vec<XyPulse>, f64) {
    let mut z_acc = 0.0;
    let mut pulses = Vec::new();
    for step in seq.iter() {
        match *step {
            PulseStep::VirtualZ { alpha } => z_acc += alpha,
            PulseStep::Xy(p) => pulses.push(XyPulse { phase: canonical_phase(p.phase + ABSORB_SIGN * z_acc), angle: p.angle }),
        }
    }
    (pulses, normalize_angle(z_acc))
}

/// Fold every frame shift into the phases of later pulses, then re-merge.
///
/// Returns the physical pulses and the trailing frame phase in `[0, 2π)`:
/// `pulses` followed by `Z_{frame_phase}` equals `seq` up to global phase.
pub fn absorb_virtual_z(seq: &PulseSequence) -> (Vec<XyPulse>, f64) {
    let (pulses, frame_phase) = absorb_frames(seq);
    let pulses = merge_adjacent(&PulseSequence::from(pulses.as_slice()))
        .steps
        .into_iter()
        .filter_map(|s| match s {
            PulseStep::Xy(p) => Some(p),
            PulseStep::VirtualZ { .. } => None,
        })
        .collect();
    (pulses, frame_phase)
}

/// A compiled gate: physical pulses followed by one trailing frame shift.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledGate {
    pub pulses: Vec<XyPulse>,
    pub frame_phase: f64,
    /// Achieved gate error `1 − F` against the target.
    pub epsilon: f64,
    pub distance: f64,
    pub pulse_count: usize,
    pub iterations: usize,
    /// Wall-clock compile time in seconds.
    pub compile_time: f64,
}

impl CompiledGate {
    /// The full schedule, including the trailing frame shift when non-trivial.
    pub fn schedule(&self) -> PulseSequence {
        let mut seq = PulseSequence::from(self.pulses.as_slice());
        if let Some(alpha) = canonical_z(self.frame_phase) {
            seq.push(PulseStep::VirtualZ { alpha });
        }
        seq
    }

    pub fn unitary(&self) -> Unitary2 {
        let pulses = PulseSequence::from(self.pulses.as_slice());
        compose(&sequence_unitary(&pulses), &rz(self.frame_phase))
    }
}
