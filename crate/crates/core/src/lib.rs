//! Approximate compilation of single-qubit gates into hardware-native rotations.
//!
//! A target unitary is compiled into a schedule of XY-plane pulses (physical
//! rotations whose axis is set by the drive phase) and virtual-Z frame shifts,
//! which cost no time. Two compilers are provided:
//!
//! * [`sn_compile`]: the self-navigation greedy loop. It repeatedly rotates by
//!   the residual angle implied by the current fidelity about whichever allowed
//!   axis scores best, until the gate error drops below the requested target.
//! * [`u3_compile`]: the exact U3 baseline, which always spends two `X_{π/2}`
//!   pulses (total rotation distance π).
//!
//! Both return a [`CompiledGate`]: physical pulses followed by a single
//! trailing frame phase, with achieved error, distance, and pulse count.
//!
//! ```
//! use selfnav_core::{allowed_axes, rx, sn_compile, SnConfig};
//!
//! let axes = allowed_axes(18).unwrap();
//! let (gate, _) = sn_compile(&rx(1.0), &axes, &SnConfig::with_target(1e-6)).unwrap();
//! assert_eq!(gate.pulse_count, 1);
//! ```

pub mod error;
pub mod pulse;
pub mod sn;
pub mod su2;
pub mod u3;

pub use error::{CompileError, PartialSchedule, Su2Error};
pub use pulse::{
    absorb_frames, absorb_virtual_z, distance, merge_adjacent, pulse_count, sequence_unitary, CompiledGate,
    PulseCost, PulseSequence, PulseStep, XyPulse,
};
pub use sn::{allowed_axes, sn_compile, sn_step, AllowedAxis, AxisSet, CompileReport, SnConfig};
pub use su2::{
    compose, euler_zxz, hs_fidelity, residual_angle, rotation_unitary, rx, rxy, ry, rz, Axis3, EulerZxz, Unitary2,
};
pub use u3::{u3_compile, u3_sequence};

pub use num_complex::Complex64;
