use std::f64::consts::{PI, TAU};

use selfnav_core::{rx, rz, Unitary2};

pub const THETA_SAMPLES: usize = 8;
pub const VARPHI_SAMPLES: usize = 16;

/// Order in which the two generating rotations act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RotationOrder {
    /// `X_θ` first, then `Z_φ`: the operator `Z_φ·X_θ`.
    #[default]
    XThenZ,
    /// `Z_φ` first, then `X_θ`: the operator `X_θ·Z_φ`.
    ZThenX,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalTarget {
    pub theta: f64,
    pub varphi: f64,
    pub unitary: Unitary2,
}

/// The 8 × 16 grid of targets, θ-major: `θ_k = kπ/7`, `φ_j = 2πj/16`.
pub fn evaluation_dataset() -> Vec<EvalTarget> {
    evaluation_dataset_with(RotationOrder::XThenZ)
}

pub fn evaluation_dataset_with(order: RotationOrder) -> Vec<EvalTarget> {
    let mut out = Vec::with_capacity(THETA_SAMPLES * VARPHI_SAMPLES);
    for k in 0..THETA_SAMPLES {
        let theta = PI * k as f64 / (THETA_SAMPLES - 1) as f64;
        for j in 0..VARPHI_SAMPLES {
            let varphi = TAU * j as f64 / VARPHI_SAMPLES as f64;
            let unitary = match order {
                RotationOrder::XThenZ => rz(varphi) * rx(theta),
                RotationOrder::ZThenX => rx(theta) * rz(varphi),
            };
            out.push(EvalTarget { theta, varphi, unitary });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use selfnav_core::hs_fidelity;

    #[test]
    fn has_128_entries() {
        assert_eq!(evaluation_dataset().len(), 128);
        assert_eq!(evaluation_dataset_with(RotationOrder::ZThenX).len(), 128);
    }

    #[test]
    fn corner_entries() {
        let data = evaluation_dataset();
        assert_eq!(data[0].unitary, Unitary2::IDENTITY);
        let last_theta = &data[7 * VARPHI_SAMPLES];
        assert_eq!(last_theta.theta, PI);
        assert_eq!(last_theta.varphi, 0.0);
        assert!((hs_fidelity(&last_theta.unitary, &rx(PI)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_ranges() {
        let data = evaluation_dataset();
        assert!(data.iter().all(|t| (0.0..=PI).contains(&t.theta)));
        assert!(data.iter().all(|t| (0.0..TAU).contains(&t.varphi)));
        // θ-major ordering
        assert_eq!(data[1].theta, 0.0);
        assert_eq!(data[VARPHI_SAMPLES].varphi, 0.0);
        assert!(data[VARPHI_SAMPLES].theta > 0.0);
    }

    #[test]
    fn entries_are_z_after_x() {
        for t in evaluation_dataset() {
            let expected = rz(t.varphi) * rx(t.theta);
            assert!((hs_fidelity(&t.unitary, &expected) - 1.0).abs() < 1e-12);
        }
    }
}
