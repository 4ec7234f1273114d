//! Gate specifications accepted on the command line and stored in schedule files.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use selfnav_core::{rotation_unitary, Axis3, Complex64, EulerZxz, Su2Error, Unitary2};

use crate::number::Num;

pub const NAMED_GATES: [&str; 8] = ["I", "X", "Y", "Z", "H", "S", "T", "SX"];

#[derive(Debug, Error)]
pub enum GateSpecError {
    #[error("unknown gate name {0:?} (expected one of {names})", names = NAMED_GATES.join(", "))]
    UnknownGate(String),
    #[error("malformed number list {0:?}: {1}")]
    MalformedNumbers(String, String),
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("could not read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Su2(#[from] Su2Error),
}

/// A target gate in one of four forms. Serialized with a `kind` tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateSpec {
    Named { name: String },
    /// Angles of the U3 matrix.
    Euler { theta: Num, phi: Num, lam: Num },
    AxisAngle { axis: [Num; 3], angle: Num },
    /// Row-major entries as `[re, im]` pairs.
    Matrix { entries: [[[Num; 2]; 2]; 2] },
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn named_unitary(name: &str) -> Result<Unitary2, GateSpecError> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let h = c(FRAC_1_SQRT_2, 0.0);
    let (a, b, cc, d) = match name {
        "I" => (one, z, z, one),
        "X" => (z, one, one, z),
        "Y" => (z, c(0.0, -1.0), c(0.0, 1.0), z),
        "Z" => (one, z, z, -one),
        "H" => (h, h, h, -h),
        "S" => (one, z, z, c(0.0, 1.0)),
        "T" => (one, z, z, Complex64::from_polar(1.0, FRAC_PI_4)),
        "SX" => (c(0.5, 0.5), c(0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5)),
        _ => return Err(GateSpecError::UnknownGate(name.to_string())),
    };
    Ok(Unitary2::new(a, b, cc, d)?)
}

impl GateSpec {
    pub fn named(name: &str) -> Result<GateSpec, GateSpecError> {
        let upper = name.trim().to_ascii_uppercase();
        named_unitary(&upper)?;
        Ok(GateSpec::Named { name: upper })
    }

    pub fn euler(text: &str) -> Result<GateSpec, GateSpecError> {
        let [theta, phi, lam] = parse_numbers::<3>(text)?;
        Ok(GateSpec::Euler { theta: theta.into(), phi: phi.into(), lam: lam.into() })
    }

    pub fn axis_angle(axis: &str, angle: f64) -> Result<GateSpec, GateSpecError> {
        let [x, y, z] = parse_numbers::<3>(axis)?;
        Axis3::new(x, y, z)?;
        Ok(GateSpec::AxisAngle { axis: [x.into(), y.into(), z.into()], angle: angle.into() })
    }

    /// Parse a JSON 2×2 matrix; each entry is a real number or a `[re, im]` pair.
    pub fn matrix_json(text: &str) -> Result<GateSpec, GateSpecError> {
        let value: Value = serde_json::from_str(text).map_err(|e| GateSpecError::MalformedMatrix(e.to_string()))?;
        let rows = value
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| GateSpecError::MalformedMatrix("expected two rows".into()))?;
        let mut entries = [[[Num(0.0); 2]; 2]; 2];
        for (i, row) in rows.iter().enumerate() {
            let cols = row
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| GateSpecError::MalformedMatrix(format!("row {i} must have two entries")))?;
            for (j, entry) in cols.iter().enumerate() {
                let (re, im) = match entry {
                    Value::Number(n) => (n.as_f64(), Some(0.0)),
                    Value::Array(pair) if pair.len() == 2 => (pair[0].as_f64(), pair[1].as_f64()),
                    _ => (None, None),
                };
                match (re, im) {
                    (Some(re), Some(im)) => entries[i][j] = [re.into(), im.into()],
                    _ => {
                        return Err(GateSpecError::MalformedMatrix(format!(
                            "entry ({i},{j}) must be a number or [re, im]"
                        )))
                    }
                }
            }
        }
        let spec = GateSpec::Matrix { entries };
        spec.unitary()?;
        Ok(spec)
    }

    pub fn matrix_file(path: &str) -> Result<GateSpec, GateSpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| GateSpecError::Io { path: path.to_string(), source })?;
        Self::matrix_json(&text)
    }

    pub fn unitary(&self) -> Result<Unitary2, GateSpecError> {
        match self {
            GateSpec::Named { name } => named_unitary(name),
            GateSpec::Euler { theta, phi, lam } => Ok(EulerZxz::reconstruct(theta.0, phi.0, lam.0)),
            GateSpec::AxisAngle { axis, angle } => {
                let axis = Axis3::new(axis[0].0, axis[1].0, axis[2].0)?;
                Ok(rotation_unitary(&axis, angle.0))
            }
            GateSpec::Matrix { entries } => {
                let e = |i: usize, j: usize| c(entries[i][j][0].0, entries[i][j][1].0);
                Ok(Unitary2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))?)
            }
        }
    }
}

fn parse_numbers<const N: usize>(text: &str) -> Result<[f64; N], GateSpecError> {
    let malformed = |why: String| GateSpecError::MalformedNumbers(text.to_string(), why);
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| malformed(format!("{s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(malformed("values must be finite".into()));
    }
    values
        .try_into()
        .map_err(|v: Vec<f64>| malformed(format!("expected {N} values, got {}", v.len())))
}
