//! Finite weighted Parseval frames.
//!
//! A [`WeightedFrame`] is the discrete instance of a continuous frame: atom `α`
//! carries the vector `τ_α` and the measure `w_α > 0`. Integrals over the index
//! space become weighted sums, so the Parseval condition reads
//! `Σ_α w_α τ_α τ_α* = I` and 1-boundedness reads `‖τ_α‖ ≤ 1`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::{math, EPS_NORM, EPS_PARSEVAL, EPS_UNIT};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawFrame", into = "RawFrame"))]
pub struct WeightedFrame {
    label: String,
    dimension: usize,
    vectors: Vec<Vec<Complex64>>,
    weights: Vec<f64>,
}

/// Unchecked mirror of [`WeightedFrame`] used for (de)serialization. Field
/// order matches the on-disk layout.
#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
struct RawFrame {
    label: String,
    dimension: usize,
    weights: Vec<f64>,
    vectors: Vec<Vec<Complex64>>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawFrame> for WeightedFrame {
    type Error = Error;

    fn try_from(raw: RawFrame) -> Result<Self> {
        WeightedFrame::new(raw.label, raw.dimension, raw.vectors, raw.weights)
    }
}

#[cfg(feature = "serde")]
impl From<WeightedFrame> for RawFrame {
    fn from(f: WeightedFrame) -> Self {
        RawFrame {
            label: f.label,
            dimension: f.dimension,
            weights: f.weights,
            vectors: f.vectors,
        }
    }
}

impl WeightedFrame {
    /// Checks the shape of the data: at least one vector, every vector of
    /// length `dimension`, finite entries, weights finite and strictly positive.
    /// Parseval and 1-boundedness are numerical properties checked by
    /// [`validate_frame`].
    pub fn new(
        label: impl Into<String>,
        dimension: usize,
        vectors: Vec<Vec<Complex64>>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::validation("dimension: must be at least 1"));
        }
        if vectors.is_empty() {
            return Err(Error::validation("vectors: frame needs at least one vector"));
        }
        if weights.len() != vectors.len() {
            return Err(Error::validation(format!(
                "weights: {} weights for {} vectors",
                weights.len(),
                vectors.len()
            )));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dimension {
                return Err(Error::validation(format!(
                    "vectors[{i}]: length {} does not match dimension {dimension}",
                    v.len()
                )));
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::validation(format!("vectors[{i}]: non-finite entry")));
            }
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::validation(format!(
                    "weights[{i}]: must be finite and strictly positive, got {w}"
                )));
            }
        }
        Ok(WeightedFrame {
            label: label.into(),
            dimension,
            vectors,
            weights,
        })
    }

    pub fn with_unit_weights(
        label: impl Into<String>,
        dimension: usize,
        vectors: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        let weights = alloc::vec![1.0; vectors.len()];
        Self::new(label, dimension, vectors, weights)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    /// Unweighted Parseval frame with exactly `dimension` vectors, i.e. an
    /// orthonormal basis. Decided from the data, not the label.
    pub fn is_orthonormal_basis(&self) -> bool {
        self.len() == self.dimension && self.is_unweighted() && validate_frame(self, EPS_PARSEVAL).pass
    }

    /// Unweighted frame passing [`validate_frame`] at the default tolerance.
    pub fn is_unweighted_parseval(&self) -> bool {
        self.is_unweighted() && validate_frame(self, EPS_PARSEVAL).pass
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The frame `{U τ_α}` with the same weights.
    pub fn transformed(&self, u: &CMatrix) -> Result<Self> {
        if u.rows() != self.dimension || u.cols() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: u.cols(),
            });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| u.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightedFrame {
            label: format!("{}*U", self.label),
            dimension: self.dimension,
            vectors,
            weights: self.weights.clone(),
        })
    }

    /// `Σ_α w_α τ_α τ_α*`.
    pub fn frame_operator(&self) -> CMatrix {
        let d = self.dimension;
        let mut s = CMatrix::zeros(d, d);
        for (v, &w) in self.vectors.iter().zip(&self.weights) {
            for k in 0..d {
                for l in 0..d {
                    s[(k, l)] += v[k] * v[l].conj() * w;
                }
            }
        }
        s
    }
}

/// Unit-norm state `h`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>"))]
pub struct StateVector(Vec<Complex64>);

impl StateVector {
    /// Accepts `entries` only if `|‖h‖ − 1| ≤ 1e-12`.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::validation("state vector must be nonempty"));
        }
        let n = math::norm(&entries);
        if !n.is_finite() || (n - 1.0).abs() > EPS_UNIT {
            return Err(Error::Domain {
                what: "state norm",
                value: n,
                domain: "1 ± 1e-12",
            });
        }
        Ok(StateVector(entries))
    }

    /// Scales `entries` to unit norm.
    pub fn normalized(mut entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::validation("state vector must be nonempty"));
        }
        let n = math::norm(&entries);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain {
                what: "state norm",
                value: n,
                domain: "(0, inf)",
            });
        }
        for z in &mut entries {
            *z /= n;
        }
        Ok(StateVector(entries))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.0
    }

    /// `e^{iθ} h`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let p = math::cis(theta);
        StateVector(self.0.iter().map(|z| z * p).collect())
    }

    /// `U h`; stays a state when `U` is unitary.
    pub fn transformed(&self, u: &CMatrix) -> Result<Self> {
        StateVector::normalized(u.mul_vec(&self.0)?)
    }
}

impl TryFrom<Vec<Complex64>> for StateVector {
    type Error = Error;

    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        StateVector::new(v)
    }
}

impl From<StateVector> for Vec<Complex64> {
    fn from(h: StateVector) -> Self {
        h.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BasisKind {
    Standard,
    Fourier,
    RandomUnitary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ParsevalKind {
    Harmonic,
    MercedesBenz,
    RandomIsometryRows,
}

/// Orthonormal basis of `C^d` as a unit-weight frame. `seed` only affects
/// [`BasisKind::RandomUnitary`], whose vectors are the columns of a seeded
/// Haar-like unitary.
pub fn make_orthonormal_basis(kind: BasisKind, d: usize, seed: u64) -> Result<WeightedFrame> {
    if d == 0 {
        return Err(Error::validation("d: must be at least 1"));
    }
    let (label, vectors) = match kind {
        BasisKind::Standard => (
            format!("standard:{d}"),
            (0..d)
                .map(|j| {
                    (0..d)
                        .map(|k| Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0))
                        .collect()
                })
                .collect(),
        ),
        BasisKind::Fourier => {
            let scale = 1.0 / math::sqrt(d as f64);
            (
                format!("fourier:{d}"),
                (0..d)
                    .map(|j| (0..d).map(|k| root_of_unity(j * k, d) * scale).collect())
                    .collect(),
            )
        }
        BasisKind::RandomUnitary => {
            let u = CMatrix::random_unitary(d, seed)?;
            (
                format!("random_unitary:{d}:{seed}"),
                (0..d).map(|j| u.column(j)).collect(),
            )
        }
    };
    WeightedFrame::with_unit_weights(label, d, vectors)
}

/// Redundant unit-weight Parseval frame of `n` vectors in `C^d`.
///
/// - `Harmonic`: the first `d` columns of the `n`-point DFT, scaled by `1/√n`;
/// - `MercedesBenz`: `n ≥ 3` equally spaced real directions in the plane,
///   scaled by `√(2/n)` (requires `d = 2`);
/// - `RandomIsometryRows`: rows of a seeded `n × d` isometry.
pub fn make_parseval_frame(kind: ParsevalKind, n: usize, d: usize, seed: u64) -> Result<WeightedFrame> {
    if d == 0 {
        return Err(Error::validation("d: must be at least 1"));
    }
    if n < d {
        return Err(Error::validation(format!(
            "n: a Parseval frame for C^{d} needs at least {d} vectors, got {n}"
        )));
    }
    let (label, vectors): (String, Vec<Vec<Complex64>>) = match kind {
        ParsevalKind::Harmonic => {
            let scale = 1.0 / math::sqrt(n as f64);
            (
                format!("harmonic:{n}x{d}"),
                (0..n)
                    .map(|a| (0..d).map(|k| root_of_unity(a * k, n) * scale).collect())
                    .collect(),
            )
        }
        ParsevalKind::MercedesBenz => {
            if d != 2 {
                return Err(Error::validation(format!(
                    "d: mercedes_benz frames live in dimension 2, got {d}"
                )));
            }
            if n < 3 {
                return Err(Error::validation(format!(
                    "n: mercedes_benz frames need at least 3 vectors, got {n}"
                )));
            }
            let scale = math::sqrt(2.0 / n as f64);
            (
                format!("mercedes_benz:{n}x2"),
                (0..n)
                    .map(|a| {
                        let t = 2.0 * PI * a as f64 / n as f64;
                        alloc::vec![
                            Complex64::new(scale * math::cos(t), 0.0),
                            Complex64::new(scale * math::sin(t), 0.0),
                        ]
                    })
                    .collect(),
            )
        }
        ParsevalKind::RandomIsometryRows => {
            let v = CMatrix::random_isometry(n, d, seed)?;
            (
                format!("random_isometry_rows:{n}x{d}:{seed}"),
                (0..n).map(|a| v.row(a).to_vec()).collect(),
            )
        }
    };
    WeightedFrame::with_unit_weights(label, d, vectors)
}

/// `exp(2πi·m/n)` with the exponent reduced mod `n` first.
fn root_of_unity(m: usize, n: usize) -> Complex64 {
    let r = m % n;
    math::cis(2.0 * PI * r as f64 / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrameValidation {
    /// Max entrywise modulus of `Σ w_α τ_α τ_α* − I`.
    pub parseval_residual: f64,
    pub max_norm: f64,
    /// `|Σ w_α ‖τ_α‖² − d|`.
    pub trace_deviation: f64,
    pub pass: bool,
}

/// Never fails on numeric content: a broken frame is reported, not rejected.
pub fn validate_frame(frame: &WeightedFrame, tol_parseval: f64) -> FrameValidation {
    let parseval_residual = frame.frame_operator().identity_residual();
    let norms = frame.vectors.iter().map(|v| math::norm(v));
    let max_norm = norms.clone().fold(0.0f64, f64::max);
    let trace: f64 = norms.zip(&frame.weights).map(|(n, w)| w * n * n).sum();
    let trace_deviation = (trace - frame.dimension as f64).abs();
    let pass = parseval_residual <= tol_parseval && max_norm <= 1.0 + EPS_NORM;
    FrameValidation {
        parseval_residual,
        max_norm,
        trace_deviation,
        pass,
    }
}

fn check_dim(h: &StateVector, frame: &WeightedFrame) -> Result<()> {
    if h.dimension() != frame.dimension {
        return Err(Error::DimensionMismatch {
            expected: frame.dimension,
            actual: h.dimension(),
        });
    }
    Ok(())
}

/// `⟨h, τ_α⟩` for every atom.
pub fn analysis_coefficients(h: &StateVector, frame: &WeightedFrame) -> Result<Vec<Complex64>> {
    check_dim(h, frame)?;
    Ok(frame.vectors.iter().map(|t| math::inner(h.entries(), t)).collect())
}

/// `|⟨h, τ_α⟩|²` for every atom.
pub fn coefficient_squares(h: &StateVector, frame: &WeightedFrame) -> Result<Vec<f64>> {
    Ok(analysis_coefficients(h, frame)?
        .into_iter()
        .map(|c| c.norm_sqr())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub min_coeff_sq: f64,
    /// First atom whose squared coefficient is below the floor.
    pub offending_index: Option<usize>,
}

pub fn admissibility(h: &StateVector, frame: &WeightedFrame, eta_adm: f64) -> Result<AdmissibilityReport> {
    let xs = coefficient_squares(h, frame)?;
    Ok(admissibility_of(&xs, eta_adm))
}

pub(crate) fn admissibility_of(xs: &[f64], eta_adm: f64) -> AdmissibilityReport {
    let min_coeff_sq = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let offending_index = xs.iter().position(|&x| !(x >= eta_adm));
    AdmissibilityReport {
        admissible: offending_index.is_none(),
        min_coeff_sq,
        offending_index,
    }
}

/// `max_{α,β} |⟨τ_α, ω_β⟩|`.
pub fn mutual_coherence(a: &WeightedFrame, b: &WeightedFrame) -> Result<f64> {
    if a.dimension != b.dimension {
        return Err(Error::DimensionMismatch {
            expected: a.dimension,
            actual: b.dimension,
        });
    }
    let mut c = 0.0f64;
    for t in &a.vectors {
        for w in &b.vectors {
            c = c.max(math::abs(math::inner(t, w)));
        }
    }
    Ok(c)
}
