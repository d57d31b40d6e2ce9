//! φ-functions and the entropy functionals built from them.
//!
//! For a frame `{τ_α}` with weights `w_α` and a unit state `h`, write
//! `x_α = |⟨h, τ_α⟩|²`. Then
//!
//! - Shannon entropy: `S(h) = Σ w_α x_α log(1/x_α)`;
//! - φ-entropy: `S_φ(h) = Σ w_α x_α φ(x_α)`.
//!
//! The product bound needs φ: (0,1] → (0,∞) continuous, decreasing and
//! submultiplicative. [`certify_phi`] checks the last three on a finite grid.
//! It can falsify a candidate but does not prove anything.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::frames::{admissibility_of, coefficient_squares, StateVector, WeightedFrame};
use crate::{math, EPS_NORM, ETA_ADM};

/// Candidate φ on (0, 1].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawPhi", into = "RawPhi"))]
pub enum PhiSpec {
    /// `x^(-p)`, `p > 0`.
    Power { p: f64 },
    /// `a − log x`, `a ≥ 1`.
    LogShift { a: f64 },
    /// `exp(−x)`. Decreasing and positive but not submultiplicative; kept as
    /// a negative control.
    ExpDecay,
    Tabulated(TabulatedPhi),
}

impl PhiSpec {
    pub fn power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::Domain {
                what: "power exponent p",
                value: p,
                domain: "(0, inf)",
            });
        }
        Ok(PhiSpec::Power { p })
    }

    pub fn log_shift(a: f64) -> Result<Self> {
        if !(a.is_finite() && a >= 1.0) {
            return Err(Error::Domain {
                what: "log_shift a",
                value: a,
                domain: "[1, inf)",
            });
        }
        Ok(PhiSpec::LogShift { a })
    }

    pub fn exp_decay() -> Self {
        PhiSpec::ExpDecay
    }

    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        TabulatedPhi::new(points).map(PhiSpec::Tabulated)
    }

    /// Evaluates without the domain check; `x` must lie in (0, 1].
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        match self {
            PhiSpec::Power { p } => math::powf(x, -p),
            PhiSpec::LogShift { a } => a - math::ln(x),
            PhiSpec::ExpDecay => math::exp(-x),
            PhiSpec::Tabulated(t) => t.eval(x),
        }
    }
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiSpec::Power { p } => write!(f, "power:{p}"),
            PhiSpec::LogShift { a } => write!(f, "log_shift:{a}"),
            PhiSpec::ExpDecay => f.write_str("exp_decay"),
            PhiSpec::Tabulated(t) => write!(f, "tabulated[{} points]", t.len()),
        }
    }
}

/// φ given by samples `(x_i, φ(x_i))`, interpolated piecewise-linearly in
/// `log x`. Left of the first knot the first segment is extended; right of
/// the last knot the last value is held. Monotone data therefore gives a
/// monotone φ defined on all of (0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPhi {
    log_x: Vec<f64>,
    values: Vec<f64>,
    points: Vec<(f64, f64)>,
}

impl TabulatedPhi {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::validation("tabulated phi: need at least 2 points"));
        }
        for (i, &(x, v)) in points.iter().enumerate() {
            if !(x > 0.0 && x <= 1.0) {
                return Err(Error::validation(format!(
                    "tabulated phi: points[{i}].x = {x} is outside (0, 1]"
                )));
            }
            if !v.is_finite() {
                return Err(Error::validation(format!("tabulated phi: points[{i}] value is not finite")));
            }
            if i > 0 && !(x > points[i - 1].0) {
                return Err(Error::validation(format!(
                    "tabulated phi: x must be strictly increasing (points[{i}])"
                )));
            }
        }
        Ok(TabulatedPhi {
            log_x: points.iter().map(|&(x, _)| math::ln(x)).collect(),
            values: points.iter().map(|&(_, v)| v).collect(),
            points,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn eval(&self, x: f64) -> f64 {
        let lx = math::ln(x);
        let last = self.log_x.len() - 1;
        if lx >= self.log_x[last] {
            return self.values[last];
        }
        // Segment index: the last knot at or below lx, clamped to the first segment.
        let seg = match self.log_x.partition_point(|&k| k <= lx) {
            0 => 0,
            i => i - 1,
        };
        let (x0, x1) = (self.log_x[seg], self.log_x[seg + 1]);
        let (v0, v1) = (self.values[seg], self.values[seg + 1]);
        v0 + (v1 - v0) * (lx - x0) / (x1 - x0)
    }
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
enum RawPhi {
    Power { p: f64 },
    LogShift { a: f64 },
    ExpDecay {},
    Tabulated { points: Vec<(f64, f64)> },
}

#[cfg(feature = "serde")]
impl TryFrom<RawPhi> for PhiSpec {
    type Error = Error;

    fn try_from(raw: RawPhi) -> Result<Self> {
        match raw {
            RawPhi::Power { p } => PhiSpec::power(p),
            RawPhi::LogShift { a } => PhiSpec::log_shift(a),
            RawPhi::ExpDecay {} => Ok(PhiSpec::ExpDecay),
            RawPhi::Tabulated { points } => PhiSpec::tabulated(points),
        }
    }
}

#[cfg(feature = "serde")]
impl From<PhiSpec> for RawPhi {
    fn from(phi: PhiSpec) -> Self {
        match phi {
            PhiSpec::Power { p } => RawPhi::Power { p },
            PhiSpec::LogShift { a } => RawPhi::LogShift { a },
            PhiSpec::ExpDecay => RawPhi::ExpDecay {},
            PhiSpec::Tabulated(t) => RawPhi::Tabulated { points: t.points },
        }
    }
}

/// `φ(x)` for `x ∈ (0, 1]`.
pub fn phi_eval(phi: &PhiSpec, x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain {
            what: "phi argument x",
            value: x,
            domain: "(0, 1]",
        });
    }
    Ok(phi.eval_unchecked(x))
}

/// Left end of the certification grid.
pub const CERTIFY_GRID_MIN: f64 = 1e-9;
/// Comparison slack, scaled by `max(1, |rhs|)`.
pub const CERTIFY_TOL: f64 = 1e-12;

/// Evidence that one of the three conditions fails. When several grid points
/// violate a condition, the one with the largest defect is kept.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Witness {
    NotPositive { x: f64, phi_x: f64 },
    /// `x < y` but `φ(y) > φ(x)`.
    NotDecreasing { x: f64, y: f64, phi_x: f64, phi_y: f64 },
    NotSubmultiplicative { x: f64, y: f64, phi_xy: f64, phi_x_phi_y: f64 },
}

impl Witness {
    /// By how much the violated inequality fails.
    pub fn defect(&self) -> f64 {
        match *self {
            Witness::NotPositive { phi_x, .. } => {
                if phi_x.is_nan() {
                    f64::INFINITY
                } else {
                    -phi_x
                }
            }
            Witness::NotDecreasing { phi_x, phi_y, .. } => phi_y - phi_x,
            Witness::NotSubmultiplicative { phi_xy, phi_x_phi_y, .. } => phi_xy - phi_x_phi_y,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Witness::NotPositive { x, phi_x } => write!(f, "not positive: phi({x:e}) = {phi_x:e}"),
            Witness::NotDecreasing { x, y, phi_x, phi_y } => {
                write!(f, "not decreasing: phi({x:e}) = {phi_x:e} < phi({y:e}) = {phi_y:e}")
            }
            Witness::NotSubmultiplicative { x, y, phi_xy, phi_x_phi_y } => write!(
                f,
                "not submultiplicative: phi({x:e}*{y:e}) = {phi_xy:e} > phi({x:e})*phi({y:e}) = {phi_x_phi_y:e}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhiCertificate {
    pub phi: String,
    pub positive: bool,
    pub decreasing: bool,
    pub submultiplicative: bool,
    /// Witness for the first failed condition, in the order positivity,
    /// decrease, submultiplicativity.
    pub witness: Option<Witness>,
    pub grid_size: usize,
}

impl PhiCertificate {
    pub fn certified(&self) -> bool {
        self.positive && self.decreasing && self.submultiplicative
    }
}

/// `grid_size` points, geometric from [`CERTIFY_GRID_MIN`] to 1 inclusive.
pub fn certification_grid(grid_size: usize) -> Vec<f64> {
    let lo = math::ln(CERTIFY_GRID_MIN);
    let last = (grid_size - 1) as f64;
    (0..grid_size)
        .map(|i| match i {
            0 => CERTIFY_GRID_MIN,
            i if i + 1 == grid_size => 1.0,
            i => math::exp(lo * (1.0 - i as f64 / last)),
        })
        .collect()
}

fn exceeds(lhs: f64, rhs: f64) -> bool {
    !(lhs <= rhs + CERTIFY_TOL * rhs.abs().max(1.0))
}

fn keep_worst(slot: &mut Option<Witness>, w: Witness) {
    match slot {
        Some(old) if old.defect() >= w.defect() => {}
        _ => *slot = Some(w),
    }
}

/// Grid falsifier for positivity, (weak) decrease and submultiplicativity.
pub fn certify_phi(phi: &PhiSpec, grid_size: usize) -> Result<PhiCertificate> {
    if grid_size < 2 {
        return Err(Error::validation("grid_size: must be at least 2"));
    }
    let grid = certification_grid(grid_size);
    let values: Vec<f64> = grid.iter().map(|&x| phi.eval_unchecked(x)).collect();

    let mut positivity = None;
    for (&x, &v) in grid.iter().zip(&values) {
        if !(v > 0.0 && v.is_finite()) {
            keep_worst(&mut positivity, Witness::NotPositive { x, phi_x: v });
        }
    }

    let mut monotone = None;
    for i in 1..grid.len() {
        let (phi_x, phi_y) = (values[i - 1], values[i]);
        if exceeds(phi_y, phi_x) {
            keep_worst(
                &mut monotone,
                Witness::NotDecreasing {
                    x: grid[i - 1],
                    y: grid[i],
                    phi_x,
                    phi_y,
                },
            );
        }
    }

    let mut submult = None;
    for i in 0..grid.len() {
        for j in i..grid.len() {
            let (x, y) = (grid[i], grid[j]);
            let phi_xy = phi.eval_unchecked(x * y);
            let phi_x_phi_y = values[i] * values[j];
            if exceeds(phi_xy, phi_x_phi_y) {
                keep_worst(
                    &mut submult,
                    Witness::NotSubmultiplicative {
                        x,
                        y,
                        phi_xy,
                        phi_x_phi_y,
                    },
                );
            }
        }
    }

    Ok(PhiCertificate {
        phi: format!("{phi}"),
        positive: positivity.is_none(),
        decreasing: monotone.is_none(),
        submultiplicative: submult.is_none(),
        witness: positivity.or(monotone).or(submult),
        grid_size,
    })
}

/// Squared coefficients above 1 by at most this much are rounding noise
/// from 1-bounded vectors and are clamped to 1.
const COEFF_SQ_SLACK: f64 = 3.0 * EPS_NORM;

pub(crate) fn clamp_unit(x: f64) -> Result<f64> {
    if x > 1.0 + COEFF_SQ_SLACK {
        return Err(Error::Domain {
            what: "squared analysis coefficient",
            value: x,
            domain: "[0, 1] (frame is not 1-bounded)",
        });
    }
    Ok(x.min(1.0))
}

/// `Σ w x log(1/x)`; terms with `x < eta` count as 0.
pub(crate) fn shannon_of(xs: &[f64], weights: &[f64], eta: f64) -> Result<f64> {
    let mut s = 0.0;
    for (&x, &w) in xs.iter().zip(weights) {
        let x = clamp_unit(x)?;
        if x >= eta {
            s -= w * x * math::ln(x);
        }
    }
    Ok(s)
}

/// `Σ w x φ(x)`; the caller has checked admissibility.
pub(crate) fn phi_entropy_of(xs: &[f64], weights: &[f64], phi: &PhiSpec) -> Result<f64> {
    let mut s = 0.0;
    for (&x, &w) in xs.iter().zip(weights) {
        let x = clamp_unit(x)?;
        s += w * x * phi.eval_unchecked(x);
    }
    Ok(s)
}

pub(crate) fn require_admissible(xs: &[f64], frame: &WeightedFrame, eta_adm: f64) -> Result<()> {
    let rep = admissibility_of(xs, eta_adm);
    match rep.offending_index {
        None => Ok(()),
        Some(index) => Err(Error::Inadmissible {
            frame: String::from(frame.label()),
            index,
            coeff_sq: xs[index],
        }),
    }
}

/// Shannon entropy (natural log) with the `0·log(1/0) = 0` convention applied
/// below [`ETA_ADM`].
pub fn shannon_entropy(h: &StateVector, frame: &WeightedFrame) -> Result<f64> {
    shannon_entropy_with_floor(h, frame, ETA_ADM)
}

pub fn shannon_entropy_with_floor(h: &StateVector, frame: &WeightedFrame, eta: f64) -> Result<f64> {
    let xs = coefficient_squares(h, frame)?;
    shannon_of(&xs, frame.weights(), eta)
}

/// φ-entropy at an admissible state. Refuses states with a squared
/// coefficient below [`ETA_ADM`]: for φ with `x φ(x)` unbounded near 0 there
/// is no limit value to substitute.
pub fn phi_entropy(h: &StateVector, frame: &WeightedFrame, phi: &PhiSpec) -> Result<f64> {
    phi_entropy_with_floor(h, frame, phi, ETA_ADM)
}

pub fn phi_entropy_with_floor(h: &StateVector, frame: &WeightedFrame, phi: &PhiSpec, eta_adm: f64) -> Result<f64> {
    let xs = coefficient_squares(h, frame)?;
    require_admissible(&xs, frame, eta_adm)?;
    phi_entropy_of(&xs, frame.weights(), phi)
}
