//! `kind:params` mini-grammar for frames and φ-functions.
//!
//! Frames: `standard:4`, `fourier:4`, `random_unitary:4[:seed]`,
//! `harmonic:6x3`, `mercedes_benz:3` (or `3x2`), `random_isometry_rows:6x3[:seed]`,
//! `rotated:<theta>` (standard basis of C^2 rotated by theta radians),
//! `file:<path.json>`.
//!
//! φ: `power:<p>`, `log_shift:<a>`, `exp_decay`, `file:<path.json>`.

use std::path::Path;

use entropic_frames_core::entropy::PhiSpec;
use entropic_frames_core::frames::{make_orthonormal_basis, make_parseval_frame, BasisKind, ParsevalKind, WeightedFrame};
use entropic_frames_core::linalg::CMatrix;

use crate::io;

#[derive(Debug, thiserror::Error)]
pub enum GrammarError {
    #[error("`{spec}`: {msg}")]
    Malformed { spec: String, msg: String },
    #[error(transparent)]
    Core(#[from] entropic_frames_core::Error),
    #[error(transparent)]
    Io(#[from] io::IoError),
}

fn malformed(spec: &str, msg: impl Into<String>) -> GrammarError {
    GrammarError::Malformed {
        spec: spec.to_string(),
        msg: msg.into(),
    }
}

fn parse_usize(spec: &str, s: &str, what: &str) -> Result<usize, GrammarError> {
    s.trim()
        .parse()
        .map_err(|_| malformed(spec, format!("{what} must be a nonnegative integer, got `{s}`")))
}

fn parse_f64(spec: &str, s: &str, what: &str) -> Result<f64, GrammarError> {
    s.trim()
        .parse()
        .map_err(|_| malformed(spec, format!("{what} must be a number, got `{s}`")))
}

/// `NxD` or just `N` (when `default_d` is given).
fn parse_shape(spec: &str, s: &str, default_d: Option<usize>) -> Result<(usize, usize), GrammarError> {
    match s.split_once('x') {
        Some((n, d)) => Ok((parse_usize(spec, n, "n")?, parse_usize(spec, d, "d")?)),
        None => match default_d {
            Some(d) => Ok((parse_usize(spec, s, "n")?, d)),
            None => Err(malformed(spec, "expected shape NxD")),
        },
    }
}

/// Builds a frame from a descriptor. Seeded kinds use an explicit trailing `:seed`
/// if present, otherwise `default_seed`.
pub fn parse_frame(spec: &str, default_seed: u64) -> Result<WeightedFrame, GrammarError> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    if kind == "file" {
        return Ok(io::load_frame(Path::new(rest))?);
    }
    let mut parts = rest.split(':');
    let params = parts.next().unwrap_or("");
    let seed = match parts.next() {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| malformed(spec, format!("seed must be an unsigned integer, got `{s}`")))?,
        None => default_seed,
    };
    if parts.next().is_some() {
        return Err(malformed(spec, "too many `:` fields"));
    }
    if params.is_empty() {
        return Err(malformed(spec, "missing parameters after the kind"));
    }
    let frame = match kind {
        "standard" => make_orthonormal_basis(BasisKind::Standard, parse_usize(spec, params, "d")?, seed)?,
        "fourier" => make_orthonormal_basis(BasisKind::Fourier, parse_usize(spec, params, "d")?, seed)?,
        "random_unitary" => make_orthonormal_basis(BasisKind::RandomUnitary, parse_usize(spec, params, "d")?, seed)?,
        "harmonic" => {
            let (n, d) = parse_shape(spec, params, None)?;
            make_parseval_frame(ParsevalKind::Harmonic, n, d, seed)?
        }
        "mercedes_benz" => {
            let (n, d) = parse_shape(spec, params, Some(2))?;
            make_parseval_frame(ParsevalKind::MercedesBenz, n, d, seed)?
        }
        "random_isometry_rows" => {
            let (n, d) = parse_shape(spec, params, None)?;
            make_parseval_frame(ParsevalKind::RandomIsometryRows, n, d, seed)?
        }
        "rotated" => {
            let theta = parse_f64(spec, params, "theta")?;
            make_orthonormal_basis(BasisKind::Standard, 2, 0)?
                .transformed(&CMatrix::rotation2(theta))?
                .with_label(format!("rotated:{theta}"))
        }
        other => return Err(malformed(spec, format!("unknown frame kind `{other}`"))),
    };
    Ok(frame)
}

pub fn parse_phi(spec: &str) -> Result<PhiSpec, GrammarError> {
    let (family, param) = match spec.split_once(':') {
        Some((f, p)) => (f, Some(p)),
        None => (spec, None),
    };
    let need = |what: &str| param.ok_or_else(|| malformed(spec, format!("{family} needs a parameter {what}")));
    Ok(match family {
        "power" => PhiSpec::power(parse_f64(spec, need("p")?, "p")?)?,
        "log_shift" => PhiSpec::log_shift(parse_f64(spec, need("a")?, "a")?)?,
        "exp_decay" => {
            if param.is_some() {
                return Err(malformed(spec, "exp_decay takes no parameter"));
            }
            PhiSpec::exp_decay()
        }
        "file" => io::load_phi(Path::new(need("path")?))?,
        other => return Err(malformed(spec, format!("unknown phi family `{other}`"))),
    })
}
