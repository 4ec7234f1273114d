//! Exact 2×2 unitary arithmetic.
//!
//! Conventions used throughout the crate:
//!
//! * `R_n(θ) = cos(θ/2)·I − i·sin(θ/2)·(n·σ)`.
//! * `Z_α = R_z(α) = diag(e^{−iα/2}, e^{iα/2})`, `X_θ = R_x(θ)`, `Y_θ = R_y(θ)`.
//! * An XY-plane drive with phase φ rotates about `(cos φ, sin φ, 0)`, which
//!   under this Z convention is `Z_φ · X_θ · Z_{−φ}`.
//!
//! Equivalence between unitaries is always up to a global phase; the
//! Hilbert–Schmidt fidelity used here is phase-blind.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::Su2Error;

/// Tolerance for accepting a user-supplied matrix or axis as unitary / unit-norm.
pub const UNITARITY_TOL: f64 = 1e-9;
/// Slack allowed on a fidelity before it is treated as an upstream numeric fault.
pub const FIDELITY_TOL: f64 = 1e-9;

// Below this magnitude an entry of the Euler matrix counts as an exact zero.
const EULER_DEGENERATE_TOL: f64 = 1e-13;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Map an angle into `[0, 2π)`.
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A 2×2 complex unitary stored row-major as `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2 { a: ONE, b: ZERO, c: ZERO, d: ONE };

    /// Build a unitary from its entries, rejecting matrices whose `U†U` deviates
    /// from the identity by more than [`UNITARITY_TOL`] in any entry.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, Su2Error> {
        let u = Unitary2 { a, b, c, d };
        let deviation = u.unitarity_deviation();
        if deviation.is_finite() && deviation <= UNITARITY_TOL {
            Ok(u)
        } else {
            Err(Su2Error::InvalidUnitary { deviation })
        }
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn adjoint(&self) -> Unitary2 {
        Unitary2 {
            a: self.a.conj(),
            b: self.c.conj(),
            c: self.b.conj(),
            d: self.d.conj(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Multiply by the global phase `e^{iα}`.
    pub fn with_phase(&self, alpha: f64) -> Unitary2 {
        let p = Complex64::from_polar(1.0, alpha);
        Unitary2 { a: p * self.a, b: p * self.b, c: p * self.c, d: p * self.d }
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.adjoint().matmul(self);
        [p.a - ONE, p.b, p.c, p.d - ONE]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Unitary2) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn matmul(&self, rhs: &Unitary2) -> Unitary2 {
        Unitary2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl Default for Unitary2 {
    fn default() -> Self {
        Unitary2::IDENTITY
    }
}

/// Ordinary matrix product `self · rhs`.
impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        self.matmul(&rhs)
    }
}

impl fmt::Display for Unitary2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis3 {
    x: f64,
    y: f64,
    z: f64,
}

impl Axis3 {
    pub const X: Axis3 = Axis3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Axis3 = Axis3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Axis3 = Axis3 { x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, Su2Error> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm.is_finite() && (norm - 1.0).abs() <= UNITARITY_TOL {
            Ok(Axis3 { x, y, z })
        } else {
            Err(Su2Error::InvalidAxis { norm })
        }
    }

    /// Axis in the XY-plane at azimuth `phase`.
    pub fn in_plane(phase: f64) -> Axis3 {
        let (s, c) = phase.sin_cos();
        Axis3 { x: c, y: s, z: 0.0 }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Axis3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

/// Rotation by `theta` about `axis`: `cos(θ/2)·I − i·sin(θ/2)·(n·σ)`.
pub fn rotation_unitary(axis: &Axis3, theta: f64) -> Unitary2 {
    let (s, c) = (0.5 * theta).sin_cos();
    let minus_i_s = Complex64::new(0.0, -s);
    Unitary2 {
        a: Complex64::new(c, -s * axis.z),
        b: minus_i_s * Complex64::new(axis.x, -axis.y),
        c: minus_i_s * Complex64::new(axis.x, axis.y),
        d: Complex64::new(c, s * axis.z),
    }
}

/// `Z_α`.
pub fn rz(alpha: f64) -> Unitary2 {
    let half = Complex64::from_polar(1.0, -0.5 * alpha);
    Unitary2 { a: half, b: ZERO, c: ZERO, d: half.conj() }
}

/// `X_θ`.
pub fn rx(theta: f64) -> Unitary2 {
    rotation_unitary(&Axis3::X, theta)
}

/// `Y_θ`.
pub fn ry(theta: f64) -> Unitary2 {
    rotation_unitary(&Axis3::Y, theta)
}

/// Rotation by `theta` about the XY-plane axis at azimuth `phase`.
pub fn rxy(phase: f64, theta: f64) -> Unitary2 {
    let (s, c) = (0.5 * theta).sin_cos();
    let off = Complex64::new(0.0, -s) * Complex64::from_polar(1.0, phase);
    Unitary2 { a: Complex64::new(c, 0.0), b: -off.conj(), c: off, d: Complex64::new(c, 0.0) }
}

/// Time-ordered product: `first` acts first, so the result is `second · first`.
pub fn compose(first: &Unitary2, second: &Unitary2) -> Unitary2 {
    second.matmul(first)
}

/// Hilbert–Schmidt fidelity `|Tr(u†v)/2|²`.
pub fn hs_fidelity(u: &Unitary2, v: &Unitary2) -> f64 {
    let overlap = u.a.conj() * v.a + u.b.conj() * v.b + u.c.conj() * v.c + u.d.conj() * v.d;
    (0.5 * overlap).norm_sqr()
}

/// Smallest coaxial angle that closes a fidelity gap: `2·arccos(√f)`.
///
/// Values within [`FIDELITY_TOL`] outside `[0, 1]` are clamped; anything further
/// out is a numeric fault upstream.
pub fn residual_angle(f: f64) -> Result<f64, Su2Error> {
    if !(-FIDELITY_TOL..=1.0 + FIDELITY_TOL).contains(&f) {
        return Err(Su2Error::FidelityDomain(f));
    }
    Ok(2.0 * f.clamp(0.0, 1.0).sqrt().acos())
}

/// Parameters of the U3 matrix
/// `e^{iγ}·[[cos(θ/2), −e^{iλ}sin(θ/2)], [e^{iφ}sin(θ/2), e^{i(λ+φ)}cos(θ/2)]]`.
///
/// `theta ∈ [0, π]`; `phi`, `lam`, `gamma ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerZxz {
    pub theta: f64,
    pub phi: f64,
    pub lam: f64,
    pub gamma: f64,
}

impl EulerZxz {
    /// The phase-free U3 matrix for `(theta, phi, lam)`.
    pub fn reconstruct(theta: f64, phi: f64, lam: f64) -> Unitary2 {
        let (s, c) = (0.5 * theta).sin_cos();
        Unitary2 {
            a: Complex64::new(c, 0.0),
            b: -Complex64::from_polar(s, lam),
            c: Complex64::from_polar(s, phi),
            d: Complex64::from_polar(c, lam + phi),
        }
    }

    /// Reconstruction including the global phase.
    pub fn to_unitary(&self) -> Unitary2 {
        Self::reconstruct(self.theta, self.phi, self.lam).with_phase(self.gamma)
    }
}

/// Decompose `u` into U3 angles plus a global phase.
///
/// When `θ ∈ {0, π}` only one z-angle is determined; `lam` is then 0 and the
/// remaining freedom is folded into `phi`.
pub fn euler_zxz(u: &Unitary2) -> Result<EulerZxz, Su2Error> {
    let deviation = u.unitarity_deviation();
    if deviation.is_nan() || deviation > UNITARITY_TOL {
        return Err(Su2Error::InvalidUnitary { deviation });
    }
    let cos_half = u.a.norm();
    let sin_half = u.c.norm();
    // same as 2·acos(|u00|) but stable near the endpoints
    let theta = (2.0 * sin_half.atan2(cos_half)).clamp(0.0, std::f64::consts::PI);

    let (phi, lam, gamma) = if sin_half < EULER_DEGENERATE_TOL {
        let gamma = u.a.arg();
        (u.d.arg() - gamma, 0.0, gamma)
    } else if cos_half < EULER_DEGENERATE_TOL {
        let gamma = (-u.b).arg();
        (u.c.arg() - gamma, 0.0, gamma)
    } else {
        let gamma = u.a.arg();
        (u.c.arg() - gamma, (-u.b).arg() - gamma, gamma)
    };

    Ok(EulerZxz {
        theta,
        phi: normalize_angle(phi),
        lam: normalize_angle(lam),
        gamma: normalize_angle(gamma),
    })
}
