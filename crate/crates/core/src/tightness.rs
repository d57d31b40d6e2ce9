//! Numerical search for small entropy products on the unit sphere.
//!
//! States are parameterized by `z ∈ R^{2d} \ {0}`: consecutive pairs
//! `(z_{2k}, z_{2k+1})` form the complex entry `h_k`, and `h = z/‖z‖`. Each
//! start draws a uniform point on the sphere and runs projected gradient
//! descent with central-difference gradients and a backtracking (Armijo)
//! line search. Starts are independent and keyed by `cfg.seed + s`.
//!
//! The admissible set excludes states with a vanishing coefficient, so the
//! objective evaluates φ at `max(x, η_floor)`. That keeps it finite and
//! continuous on the whole sphere; a minimizer that ends up near the floor is
//! flagged through [`SearchResult::boundary_flag`] rather than trusted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::bounds::{conjectured_product_bound, deutsch_lower_bound, mu_bound, pair_coherence, product_bound};
use crate::entropy::{certify_phi, PhiSpec};
use crate::error::{Error, Result};
use crate::frames::{make_orthonormal_basis, validate_frame, BasisKind, StateVector, WeightedFrame};
use crate::linalg::CMatrix;
use crate::{math, rng, EPS_PARSEVAL, ETA_ADM};

/// Armijo sufficient-decrease constant.
pub const SUFFICIENT_DECREASE: f64 = 1e-4;
/// A conjecture violation must exceed this before it is reported.
pub const COUNTEREXAMPLE_THRESHOLD: f64 = 1e-6;
/// Grid used to certify φ before a search.
pub const SEARCH_CERTIFY_GRID: usize = 200;
/// Smallest trial step before the line search gives up.
const MIN_STEP: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchConfig {
    pub n_starts: usize,
    pub max_iters: usize,
    pub fd_step: f64,
    pub grad_tol: f64,
    pub eta_floor: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n_starts: 64,
            max_iters: 2000,
            fd_step: 1e-6,
            grad_tol: 1e-8,
            eta_floor: 1e-8,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_starts == 0 {
            return Err(Error::validation("n_starts: must be at least 1"));
        }
        if self.max_iters == 0 {
            return Err(Error::validation("max_iters: must be at least 1"));
        }
        for (name, v) in [("fd_step", self.fd_step), ("grad_tol", self.grad_tol), ("eta_floor", self.eta_floor)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::validation(format!("{name}: must be positive, got {v}")));
            }
        }
        if self.eta_floor < ETA_ADM {
            return Err(Error::validation(format!(
                "eta_floor: must be at least the admissibility floor {ETA_ADM:e}"
            )));
        }
        Ok(())
    }

    /// Seed of start `s`.
    pub fn start_seed(&self, s: usize) -> u64 {
        self.seed.wrapping_add(s as u64)
    }
}

fn state_from_params(z: &[f64]) -> Result<Vec<Complex64>> {
    if !z.len().is_multiple_of(2) || z.is_empty() {
        return Err(Error::validation("parameter vector must have even, nonzero length 2d"));
    }
    let n = math::sqrt(z.iter().map(|v| v * v).sum());
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Domain {
            what: "parameter norm",
            value: n,
            domain: "(0, inf)",
        });
    }
    Ok(z.chunks_exact(2).map(|p| Complex64::new(p[0] / n, p[1] / n)).collect())
}

/// `Σ w x φ(max(x, η))` with `x` capped at 1.
fn floored_phi_entropy(h: &[Complex64], frame: &WeightedFrame, phi: &PhiSpec, eta_floor: f64) -> f64 {
    frame
        .vectors()
        .iter()
        .zip(frame.weights())
        .map(|(t, w)| {
            let x = math::inner(h, t).norm_sqr().min(1.0);
            w * x * phi.eval_unchecked(x.max(eta_floor))
        })
        .sum()
}

fn shannon_sum_at(h: &[Complex64], a: &WeightedFrame, b: &WeightedFrame) -> f64 {
    [a, b]
        .into_iter()
        .flat_map(|f| f.vectors().iter().zip(f.weights()))
        .map(|(t, w)| {
            let x = math::inner(h, t).norm_sqr().min(1.0);
            if x > 0.0 {
                -w * x * math::ln(x)
            } else {
                0.0
            }
        })
        .sum()
}

/// `S_A(h) S_B(h)` at `h = z/‖z‖`, with φ evaluated at `max(x, η_floor)`.
pub fn entropy_product_objective(
    z: &[f64],
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    eta_floor: f64,
) -> Result<f64> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            actual: b.dimension(),
        });
    }
    if z.len() != 2 * a.dimension() {
        return Err(Error::DimensionMismatch {
            expected: 2 * a.dimension(),
            actual: z.len(),
        });
    }
    let h = state_from_params(z)?;
    Ok(floored_phi_entropy(&h, a, phi, eta_floor) * floored_phi_entropy(&h, b, phi, eta_floor))
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StartTrace {
    pub start_seed: u64,
    pub final_value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective value after every accepted step, starting point included.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Vec::is_empty"))]
    pub history: Vec<f64>,
}

/// One local descent on the unit sphere of `R^len`.
#[derive(Debug, Clone, PartialEq)]
pub struct Descent {
    pub point: Vec<f64>,
    pub trace: StartTrace,
}

fn normalize(z: &mut [f64]) {
    let n = math::sqrt(z.iter().map(|v| v * v).sum());
    for v in z {
        *v /= n;
    }
}

/// Projected gradient descent of `f` on the unit sphere from `z0`.
///
/// The gradient is taken by central differences in the ambient space and
/// projected onto the tangent space at `z`. A trial step `z − t g` is
/// renormalized and accepted when it lowers `f` by at least
/// `1e-4 · t · ‖g‖²`; otherwise `t` is halved. The recorded values are
/// therefore nonincreasing.
pub fn descend_on_sphere(f: impl Fn(&[f64]) -> f64, mut z: Vec<f64>, cfg: &SearchConfig, start_seed: u64) -> Descent {
    normalize(&mut z);
    let len = z.len();
    let mut fz = f(&z);
    let mut history = alloc::vec![fz];
    let mut grad = alloc::vec![0.0; len];
    let mut probe = z.clone();
    let mut step = 1.0f64;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < cfg.max_iters {
        for i in 0..len {
            probe[i] = z[i] + cfg.fd_step;
            let up = f(&probe);
            probe[i] = z[i] - cfg.fd_step;
            let down = f(&probe);
            probe[i] = z[i];
            grad[i] = (up - down) / (2.0 * cfg.fd_step);
        }
        let radial: f64 = grad.iter().zip(&z).map(|(g, v)| g * v).sum();
        for (g, v) in grad.iter_mut().zip(&z) {
            *g -= radial * v;
        }
        let gnorm_sq: f64 = grad.iter().map(|g| g * g).sum();
        let gnorm = math::sqrt(gnorm_sq);
        if !(gnorm >= cfg.grad_tol) {
            converged = gnorm.is_finite();
            break;
        }

        // Try a larger step than last time, but never more than unit arc length.
        let mut t = (2.0 * step).min(1.0 / gnorm);
        let accepted = loop {
            for i in 0..len {
                probe[i] = z[i] - t * grad[i];
            }
            normalize(&mut probe);
            let trial = f(&probe);
            if trial <= fz - SUFFICIENT_DECREASE * t * gnorm_sq {
                break Some(trial);
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        iterations += 1;
        match accepted {
            Some(trial) => {
                z.copy_from_slice(&probe);
                fz = trial;
                step = t;
                history.push(fz);
            }
            None => {
                probe.copy_from_slice(&z);
                break;
            }
        }
    }

    Descent {
        point: z,
        trace: StartTrace {
            start_seed,
            final_value: fz,
            iterations,
            converged,
            history,
        },
    }
}

/// A checked search problem: two valid frames of equal dimension and a
/// certified φ.
#[derive(Debug, Clone, Copy)]
pub struct ProductSearch<'a> {
    pub a: &'a WeightedFrame,
    pub b: &'a WeightedFrame,
    pub phi: &'a PhiSpec,
    pub cfg: SearchConfig,
}

impl<'a> ProductSearch<'a> {
    /// Refuses invalid frames and φ that fail certification: outside those
    /// hypotheses there is no bound to measure a gap against.
    pub fn new(a: &'a WeightedFrame, b: &'a WeightedFrame, phi: &'a PhiSpec, cfg: SearchConfig) -> Result<Self> {
        cfg.validate()?;
        if a.dimension() != b.dimension() {
            return Err(Error::DimensionMismatch {
                expected: a.dimension(),
                actual: b.dimension(),
            });
        }
        for f in [a, b] {
            let v = validate_frame(f, EPS_PARSEVAL);
            if !v.pass {
                return Err(Error::validation(format!(
                    "frame `{}` is not a 1-bounded Parseval frame (residual {:e}, max norm {})",
                    f.label(),
                    v.parseval_residual,
                    v.max_norm
                )));
            }
        }
        let cert = certify_phi(phi, SEARCH_CERTIFY_GRID)?;
        if !cert.certified() {
            let why = cert.witness.map(|w| w.to_string()).unwrap_or_default();
            return Err(Error::validation(format!("phi `{phi}` failed certification: {why}")));
        }
        Ok(ProductSearch { a, b, phi, cfg })
    }

    pub fn objective(&self, z: &[f64], eta_floor: f64) -> f64 {
        // Length and nonzero norm are guaranteed by the descent.
        let h: Vec<Complex64> = {
            let n = math::sqrt(z.iter().map(|v| v * v).sum());
            z.chunks_exact(2).map(|p| Complex64::new(p[0] / n, p[1] / n)).collect()
        };
        floored_phi_entropy(&h, self.a, self.phi, eta_floor) * floored_phi_entropy(&h, self.b, self.phi, eta_floor)
    }

    /// Descent from start `s`.
    pub fn run_start(&self, s: usize) -> Descent {
        let seed = self.cfg.start_seed(s);
        let z0 = rng::sphere_point(&mut rng::seeded(seed, 0), 2 * self.a.dimension());
        let eta = self.cfg.eta_floor;
        descend_on_sphere(|z| self.objective(z, eta), z0, &self.cfg, seed)
    }

    /// Merges per-start descents, given in start order, into a result.
    pub fn collect(&self, runs: Vec<Descent>) -> Result<SearchResult> {
        let best = best_index(&runs).ok_or_else(|| Error::validation("no starts to collect"))?;
        let best_state = StateVector::new(state_from_params(&runs[best].point)?)?;
        let best_value = runs[best].trace.final_value;
        let min_coeff_sq = min_coeff_sq(&best_state, self.a, self.b);
        let boundary_flag = near_floor(min_coeff_sq, self.cfg.eta_floor);
        let coherence = pair_coherence(self.a, self.b)?;
        let bound_value = product_bound(self.phi, coherence)?;
        let conjectured_value = conjectured_product_bound(self.phi, coherence).ok();
        Ok(SearchResult {
            best_state,
            best_value,
            per_start: runs.into_iter().map(|r| r.trace).collect(),
            boundary_flag,
            min_coeff_sq,
            coherence,
            bound_value,
            conjectured_value,
            gap: best_value - bound_value,
            conjecture_gap: conjectured_value.map(|c| best_value - c),
        })
    }

    pub fn run(&self) -> Result<SearchResult> {
        let runs = (0..self.cfg.n_starts).map(|s| self.run_start(s)).collect();
        self.collect(runs)
    }

    /// Applies the counterexample rule to a finished search.
    pub fn judge_conjecture(&self, search: SearchResult) -> ConjectureProbe {
        let flagged = |gap: Option<f64>, boundary: bool| {
            !boundary && gap.is_some_and(|g| g < -COUNTEREXAMPLE_THRESHOLD)
        };
        let mut probe = ConjectureProbe {
            counterexample_candidate: false,
            reevaluated_value: None,
            reevaluated_boundary: None,
            search,
        };
        if flagged(probe.search.conjecture_gap, probe.search.boundary_flag) {
            let tight = self.cfg.eta_floor / 10.0;
            let z: Vec<f64> = probe
                .search
                .best_state
                .entries()
                .iter()
                .flat_map(|c| [c.re, c.im])
                .collect();
            let value = self.objective(&z, tight);
            let boundary = near_floor(probe.search.min_coeff_sq, tight);
            let gap = probe.search.conjectured_value.map(|c| value - c);
            probe.reevaluated_value = Some(value);
            probe.reevaluated_boundary = Some(boundary);
            probe.counterexample_candidate = flagged(gap, boundary);
        }
        probe
    }
}

fn best_index(runs: &[Descent]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, r) in runs.iter().enumerate() {
        match best {
            Some(j) if !(r.trace.final_value < runs[j].trace.final_value) => {}
            _ => best = Some(i),
        }
    }
    best
}

fn min_coeff_sq(h: &StateVector, a: &WeightedFrame, b: &WeightedFrame) -> f64 {
    a.vectors()
        .iter()
        .chain(b.vectors())
        .map(|t| math::inner(h.entries(), t).norm_sqr())
        .fold(f64::INFINITY, f64::min)
}

/// Within `10·η` of the floor `η`.
fn near_floor(min_coeff_sq: f64, eta_floor: f64) -> bool {
    min_coeff_sq - eta_floor <= 10.0 * eta_floor
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchResult {
    pub best_state: StateVector,
    pub best_value: f64,
    pub per_start: Vec<StartTrace>,
    /// The minimizer has a squared coefficient within `10·η_floor` of the floor.
    pub boundary_flag: bool,
    pub min_coeff_sq: f64,
    pub coherence: f64,
    pub bound_value: f64,
    pub conjectured_value: Option<f64>,
    pub gap: f64,
    pub conjecture_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConjectureProbe {
    pub search: SearchResult,
    pub counterexample_candidate: bool,
    /// Objective at the best state with the floor tightened tenfold; only set
    /// when the first pass flagged a candidate.
    pub reevaluated_value: Option<f64>,
    pub reevaluated_boundary: Option<bool>,
}

/// Multi-start minimization of `S_{A,φ}(h) S_{B,φ}(h)` over the sphere.
pub fn minimize_entropy_product(
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    ProductSearch::new(a, b, phi, *cfg)?.run()
}

/// Searches for states below the conjectured bound `φ(c²)`. A candidate is
/// reported only if it beats the bound by more than
/// [`COUNTEREXAMPLE_THRESHOLD`], does not sit at the floor, and survives
/// re-evaluation with a floor ten times smaller.
pub fn probe_conjecture(
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    cfg: &SearchConfig,
) -> Result<ConjectureProbe> {
    let search = ProductSearch::new(a, b, phi, *cfg)?;
    let result = search.run()?;
    Ok(search.judge_conjecture(result))
}

/// Multi-start minimization of the Shannon sum `S_A(h) + S_B(h)`, same
/// machinery and seeds as the product search. Returns the smallest value.
pub fn minimize_shannon_sum(a: &WeightedFrame, b: &WeightedFrame, cfg: &SearchConfig) -> Result<f64> {
    cfg.validate()?;
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            actual: b.dimension(),
        });
    }
    let f = |z: &[f64]| {
        let n = math::sqrt(z.iter().map(|v| v * v).sum());
        let h: Vec<Complex64> = z.chunks_exact(2).map(|p| Complex64::new(p[0] / n, p[1] / n)).collect();
        shannon_sum_at(&h, a, b)
    };
    let mut best = f64::INFINITY;
    for s in 0..cfg.n_starts {
        let seed = cfg.start_seed(s);
        let z0 = rng::sphere_point(&mut rng::seeded(seed, 0), 2 * a.dimension());
        let d = descend_on_sphere(f, z0, cfg, seed);
        best = best.min(d.trace.final_value);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepRow {
    pub theta: f64,
    pub coherence: f64,
    pub min_product: f64,
    pub product_bound: f64,
    pub conjectured_bound: f64,
    pub min_shannon_sum: f64,
    pub deutsch_bound: f64,
    pub mu_bound: f64,
    pub boundary_flag: bool,
    pub counterexample_candidate: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SkippedAngle {
    pub theta: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedAngle>,
}

/// `k·(π/2)/(count+1)` for `k = 1..=count`.
pub fn interior_angles(count: usize) -> Vec<f64> {
    (1..=count).map(|k| k as f64 * FRAC_PI_2 / (count + 1) as f64).collect()
}

/// Row for angle `theta` in `C^2`: frame A is the standard basis, frame B the
/// standard basis rotated by `theta`. Angles outside the open interval
/// `(0, π/2)` give `Ok(None)`.
pub fn sweep_row(theta: f64, phi: &PhiSpec, cfg: &SearchConfig) -> Result<Option<SweepRow>> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Ok(None);
    }
    let a = make_orthonormal_basis(BasisKind::Standard, 2, 0)?;
    let b = a.transformed(&CMatrix::rotation2(theta))?.with_label(format!("rotated:{theta}"));
    let search = ProductSearch::new(&a, &b, phi, *cfg)?;
    let probe = search.judge_conjecture(search.run()?);
    let coherence = probe.search.coherence;
    Ok(Some(SweepRow {
        theta,
        coherence,
        min_product: probe.search.best_value,
        product_bound: probe.search.bound_value,
        conjectured_bound: probe.search.conjectured_value.unwrap_or(f64::INFINITY),
        min_shannon_sum: minimize_shannon_sum(&a, &b, cfg)?,
        deutsch_bound: deutsch_lower_bound(coherence)?,
        mu_bound: mu_bound(coherence)?,
        boundary_flag: probe.search.boundary_flag,
        counterexample_candidate: probe.counterexample_candidate,
    }))
}

/// Minimum entropy product and Shannon sum for a family of rotated bases in
/// `C^2`.
pub fn sweep_rotation(angles: &[f64], phi: &PhiSpec, cfg: &SearchConfig) -> Result<Sweep> {
    let mut sweep = Sweep {
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    for &theta in angles {
        match sweep_row(theta, phi, cfg)? {
            Some(row) => sweep.rows.push(row),
            None => sweep.skipped.push(skip_note(theta)),
        }
    }
    Ok(sweep)
}

pub fn skip_note(theta: f64) -> SkippedAngle {
    SkippedAngle {
        theta,
        reason: String::from("angle outside (0, pi/2): coherence 1 and the rotated basis shares vectors with the standard one"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::product_bound;
    use crate::frames::make_orthonormal_basis;
    use approx::assert_abs_diff_eq;

    fn basis(kind: BasisKind, d: usize) -> WeightedFrame {
        make_orthonormal_basis(kind, d, 0).unwrap()
    }

    fn quick(seed: u64) -> SearchConfig {
        SearchConfig {
            n_starts: 8,
            max_iters: 300,
            seed,
            ..SearchConfig::default()
        }
    }

    const R: f64 = core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn objective_examples() {
        let s = basis(BasisKind::Standard, 2);
        let p1 = PhiSpec::Power { p: 1.0 };
        let z = [R, 0.0, R, 0.0];
        assert_abs_diff_eq!(entropy_product_objective(&z, &s, &s, &p1, 1e-8).unwrap(), 4.0, epsilon = 1e-14);

        let z = [0.3, -0.1, 0.7, 0.2];
        let z3: Vec<f64> = z.iter().map(|v| v * 3.0).collect();
        let z2: Vec<f64> = z.iter().map(|v| v * 2.0).collect();
        let f = basis(BasisKind::Fourier, 2);
        let phi = PhiSpec::Power { p: 0.5 };
        let v = entropy_product_objective(&z, &s, &f, &phi, 1e-8).unwrap();
        assert_eq!(v, entropy_product_objective(&z2, &s, &f, &phi, 1e-8).unwrap());
        let v3 = entropy_product_objective(&z3, &s, &f, &phi, 1e-8).unwrap();
        assert!((v - v3).abs() <= 4.0 * f64::EPSILON * v);

        // e1 against the standard basis: the zero coefficient contributes x·φ(η) = 0.
        let e1 = [1.0, 0.0, 0.0, 0.0];
        let v = entropy_product_objective(&e1, &s, &s, &p1, 1e-8).unwrap();
        assert!(v.is_finite());
        assert_eq!(v, 1.0);

        assert!(entropy_product_objective(&[0.0; 4], &s, &s, &p1, 1e-8).is_err());
        assert!(entropy_product_objective(&[1.0; 3], &s, &s, &p1, 1e-8).is_err());
    }

    #[test]
    fn constant_objective_search() {
        let s = basis(BasisKind::Standard, 2);
        let r = minimize_entropy_product(&s, &s, &PhiSpec::Power { p: 1.0 }, &quick(1)).unwrap();
        assert_abs_diff_eq!(r.best_value, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.gap, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn standard_fourier_half_power() {
        let s = basis(BasisKind::Standard, 2);
        let f = basis(BasisKind::Fourier, 2);
        let phi = PhiSpec::Power { p: 0.5 };
        let r = minimize_entropy_product(&s, &f, &phi, &quick(3)).unwrap();
        assert!(r.best_value >= product_bound(&phi, R).unwrap() - 1e-9);
        assert_eq!(r.per_start.len(), 8);
        let min = r.per_start.iter().map(|t| t.final_value).fold(f64::INFINITY, f64::min);
        assert_eq!(r.best_value, min);
        for t in &r.per_start {
            assert!(t.history.windows(2).all(|w| w[1] <= w[0]));
            assert_eq!(t.history.last(), Some(&t.final_value));
        }
    }

    #[test]
    fn search_refuses_bad_inputs() {
        let s = basis(BasisKind::Standard, 2);
        let cfg = SearchConfig { n_starts: 0, ..quick(0) };
        assert!(minimize_entropy_product(&s, &s, &PhiSpec::Power { p: 1.0 }, &cfg).is_err());
        assert!(minimize_entropy_product(&s, &s, &PhiSpec::ExpDecay, &quick(0)).is_err());
        let cfg = SearchConfig { eta_floor: 1e-14, ..quick(0) };
        assert!(minimize_entropy_product(&s, &s, &PhiSpec::Power { p: 1.0 }, &cfg).is_err());
    }

    #[test]
    fn probe_examples() {
        let s = basis(BasisKind::Standard, 2);
        let f = basis(BasisKind::Fourier, 2);
        let p1 = PhiSpec::Power { p: 1.0 };
        let p = probe_conjecture(&s, &s, &p1, &quick(0)).unwrap();
        assert_eq!(p.search.conjectured_value, Some(1.0));
        assert_abs_diff_eq!(p.search.best_value, 4.0, epsilon = 1e-12);
        assert!(!p.counterexample_candidate);

        let p = probe_conjecture(&s, &f, &p1, &quick(0)).unwrap();
        assert_abs_diff_eq!(p.search.conjectured_value.unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.search.best_value, 4.0, epsilon = 1e-12);
        assert!(!p.counterexample_candidate);
    }

    #[test]
    fn boundary_minimizers_are_never_candidates() {
        let s = basis(BasisKind::Standard, 2);
        let phi = PhiSpec::Power { p: 1.0 };
        let search = ProductSearch::new(&s, &s, &phi, quick(0)).unwrap();
        let mut result = search.run().unwrap();
        result.boundary_flag = true;
        result.conjecture_gap = Some(-1.0);
        let probe = search.judge_conjecture(result);
        assert!(!probe.counterexample_candidate);
        assert!(probe.reevaluated_value.is_none());
    }

    #[test]
    fn search_is_deterministic() {
        let a = make_orthonormal_basis(BasisKind::RandomUnitary, 3, 4).unwrap();
        let b = basis(BasisKind::Fourier, 3);
        let phi = PhiSpec::LogShift { a: 1.5 };
        let x = minimize_entropy_product(&a, &b, &phi, &quick(9)).unwrap();
        let y = minimize_entropy_product(&a, &b, &phi, &quick(9)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn sweep_coherence_and_skips() {
        let cfg = SearchConfig { n_starts: 4, max_iters: 200, ..SearchConfig::default() };
        let phi = PhiSpec::Power { p: 0.5 };
        let angles = [0.0, core::f64::consts::FRAC_PI_4, core::f64::consts::FRAC_PI_6, FRAC_PI_2];
        let sw = sweep_rotation(&angles, &phi, &cfg).unwrap();
        assert_eq!(sw.skipped.len(), 2);
        assert_eq!(sw.rows.len(), 2);
        assert_abs_diff_eq!(sw.rows[0].coherence, R, epsilon = 1e-15);
        assert_abs_diff_eq!(sw.rows[1].coherence, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        for row in &sw.rows {
            assert!(row.min_product >= row.product_bound - 1e-9);
            assert!(row.min_shannon_sum >= row.mu_bound - 1e-9);
            assert!(row.mu_bound >= row.deutsch_bound);
        }
    }

    #[test]
    fn interior_grid() {
        let a = interior_angles(16);
        assert_eq!(a.len(), 16);
        assert_abs_diff_eq!(a[0], core::f64::consts::PI / 34.0, epsilon = 1e-15);
        assert!(a.iter().all(|&t| t > 0.0 && t < FRAC_PI_2));
    }
}
