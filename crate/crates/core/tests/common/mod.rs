#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use rand::Rng;
use self::rand_distr_free::normal;
use selfnav_core::{Axis3, Complex64, PulseSequence, PulseStep, Unitary2};

mod rand_distr_free {
    use rand::Rng;

    /// Box–Muller standard normal.
    pub fn normal<R: Rng>(rng: &mut R) -> f64 {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

pub fn random_axis<R: Rng>(rng: &mut R) -> Axis3 {
    loop {
        let v = [normal(rng), normal(rng), normal(rng)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return Axis3::new(v[0] / n, v[1] / n, v[2] / n).unwrap();
        }
    }
}

/// Haar-random SU(2) element times a uniform global phase.
pub fn random_unitary<R: Rng>(rng: &mut R) -> Unitary2 {
    let q: [f64; 4] = [normal(rng), normal(rng), normal(rng), normal(rng)];
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (w, x, y, z) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
    let a = Complex64::new(w, z);
    let b = Complex64::new(y, x);
    let u = Unitary2::new(a, -b.conj(), b, a.conj()).unwrap();
    u.with_phase(rng.gen_range(0.0..TAU))
}

/// Canonical random schedule. Phases are drawn from a coarse grid half the time
/// so that merge rules actually fire.
pub fn random_sequence<R: Rng>(rng: &mut R, max_len: usize) -> PulseSequence {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.35) {
                let alpha = rng.gen_range(-PI..PI);
                PulseStep::z(if alpha == -PI { PI } else { alpha })
            } else {
                let phase = if rng.gen_bool(0.5) {
                    TAU * rng.gen_range(0..8) as f64 / 8.0
                } else {
                    rng.gen_range(0.0..TAU)
                };
                PulseStep::xy(phase, rng.gen_range(1e-3..=PI))
            }
        })
        .filter(|s| !matches!(s, PulseStep::VirtualZ { alpha } if alpha.abs() < 1e-12))
        .collect()
}
