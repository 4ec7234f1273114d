//! U3 baseline: every gate becomes two `X_{π/2}` pulses framed by virtual Zs.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use crate::error::CompileError;
use crate::pulse::{absorb_frames, canonical_z, CompiledGate, PulseCost, PulseSequence, PulseStep, XyPulse};
use crate::sn::CompileReport;
use crate::su2::{euler_zxz, hs_fidelity, Unitary2};

/// Time-ordered schedule `Z · X_{π/2} · Z · X_{π/2} · Z` realizing the U3 matrix
/// for `(theta, phi, lam)` up to global phase.
///
/// The operator form is `Z_{φ'−π/2} X_{π/2} Z_{π−θ} X_{π/2} Z_{λ'−π/2}` with
/// `φ' = φ + π/2` and `λ' = λ − π/2`, the quarter-turn shifts turning the inner
/// x-rotation into the y-rotation of the U3 matrix.
pub fn u3_sequence(theta: f64, phi: f64, lam: f64) -> PulseSequence {
    let quarter = PulseStep::Xy(XyPulse { phase: 0.0, angle: FRAC_PI_2 });
    let frame = |alpha: f64| canonical_z(alpha).map(|alpha| PulseStep::VirtualZ { alpha });
    [frame(lam - PI), Some(quarter), frame(PI - theta), Some(quarter), frame(phi)]
        .into_iter()
        .flatten()
        .collect()
}

/// Compile `target` exactly with the U3 schedule. Always two pulses, distance π.
pub fn u3_compile(target: &Unitary2) -> Result<(CompiledGate, CompileReport), CompileError> {
    let start = Instant::now();
    let euler = euler_zxz(target)?;
    let seq = u3_sequence(euler.theta, euler.phi, euler.lam);
    // no merge pass: the baseline keeps both pulses even when they would cancel
    let (pulses, frame_phase) = absorb_frames(&seq);
    let mut gate = CompiledGate {
        distance: pulses.distance(),
        pulse_count: pulses.pulse_count(),
        pulses,
        frame_phase,
        epsilon: 0.0,
        iterations: 0,
        compile_time: 0.0,
    };
    gate.epsilon = (1.0 - hs_fidelity(target, &gate.unitary())).max(0.0);
    gate.compile_time = start.elapsed().as_secs_f64();
    let report = CompileReport {
        achieved_epsilon: gate.epsilon,
        iterations: 0,
        damped_steps: 0,
        pre_pass_distance: seq.distance(),
        pre_pass_pulse_count: seq.pulse_count(),
        distance: gate.distance,
        pulse_count: gate.pulse_count,
        compile_time: gate.compile_time,
        fidelity_history: Vec::new(),
    };
    Ok((gate, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulse::sequence_unitary;
    use crate::su2::{rx, ry, rz, EulerZxz};
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn hadamard() -> Unitary2 {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Unitary2::new(h, h, h, -h).unwrap()
    }

    fn phase_fidelity(a: &Unitary2, b: &Unitary2) -> f64 {
        hs_fidelity(a, b)
    }

    #[test]
    fn sequence_matches_u3_matrix() {
        for &(theta, phi, lam) in &[(0.4, 1.0, 2.0), (PI, 0.3, 0.0), (0.0, 5.0, 0.0), (2.2, 6.0, 3.9)] {
            let u = sequence_unitary(&u3_sequence(theta, phi, lam));
            assert!((phase_fidelity(&u, &EulerZxz::reconstruct(theta, phi, lam)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_z_angles_give_y_rotation() {
        let theta = 1.234;
        let u = sequence_unitary(&u3_sequence(theta, 0.0, 0.0));
        assert!((phase_fidelity(&u, &ry(theta)) - 1.0).abs() < 1e-12);
        // X_θ needs φ = 3π/2, λ = π/2 in this parametrization
        let u = sequence_unitary(&u3_sequence(theta, 1.5 * PI, FRAC_PI_2));
        assert!((phase_fidelity(&u, &rx(theta)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hadamard_sequence() {
        let u = sequence_unitary(&u3_sequence(FRAC_PI_2, 0.0, PI));
        assert!((phase_fidelity(&u, &hadamard()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_sequence() {
        let seq = u3_sequence(0.0, 0.0, 0.0);
        assert!((phase_fidelity(&sequence_unitary(&seq), &Unitary2::IDENTITY) - 1.0).abs() < 1e-12);
        assert_eq!(seq.pulse_count(), 2);
    }

    #[test]
    fn compile_hadamard() {
        let (gate, report) = u3_compile(&hadamard()).unwrap();
        assert_eq!(gate.pulse_count, 2);
        assert_eq!(gate.distance, PI);
        assert!(gate.epsilon <= 1e-10);
        assert_eq!(report.pre_pass_pulse_count, 2);
    }

    #[test]
    fn compile_identity_keeps_both_pulses() {
        let (gate, _) = u3_compile(&Unitary2::IDENTITY).unwrap();
        assert_eq!(gate.pulses.len(), 2);
        assert_eq!(gate.distance, PI);
        assert!(gate.epsilon <= 1e-10);
    }

    #[test]
    fn compile_z_then_x_target() {
        let target = rz(2.5) * rx(0.9);
        let (gate, _) = u3_compile(&target).unwrap();
        let evaluated = sequence_unitary(&gate.schedule());
        assert!(1.0 - hs_fidelity(&target, &evaluated) <= 1e-10);
        assert!(gate.pulses.iter().all(|p| p.angle == FRAC_PI_2));
    }
}
