//! The inequalities under test and their verification reports.
//!
//! Bound formulas take the mutual coherence `c = max |⟨τ_α, ω_β⟩|`:
//!
//! | bound | value | domain |
//! |-------|-------|--------|
//! | Deutsch lower | `−2 log((1 + c)/2)` | `0 ≤ c ≤ 1` |
//! | Deutsch upper | `2 log n` | ONB of size `n` |
//! | Maassen–Uffink / Ricaud–Torrésani | `−2 log c` | `0 < c ≤ 1` |
//! | product | `φ((1 + c)²/4)` | `0 ≤ c ≤ 1` |
//! | conjectured product | `φ(c²)` | `0 < c ≤ 1` |
//! | AM-GM sum | `2 √φ((1 + c)²/4)` | `0 ≤ c ≤ 1` |
//!
//! A violated inequality is data: reports carry margins and flags and never
//! fail because a bound does not hold.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::entropy::{clamp_unit, phi_entropy_of, require_admissible, shannon_of, PhiSpec};
use crate::error::{Error, Result};
use crate::frames::{coefficient_squares, mutual_coherence, StateVector, WeightedFrame};
use crate::{math, rng, EPS_NORM, EPS_VERIFY};

/// Slack on the Buzano comparison.
pub const BUZANO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BuzanoCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `|⟨u,h⟩⟨h,v⟩| ≤ ‖h‖² (‖u‖‖v‖ + |⟨u,v⟩|) / 2` for arbitrary vectors.
pub fn buzano_check(u: &[Complex64], v: &[Complex64], h: &[Complex64]) -> Result<BuzanoCheck> {
    for other in [v.len(), h.len()] {
        if other != u.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                actual: other,
            });
        }
    }
    let lhs = math::abs(math::inner(u, h) * math::inner(h, v));
    let rhs = math::norm_sqr(h) * (math::norm(u) * math::norm(v) + math::abs(math::inner(u, v))) / 2.0;
    Ok(BuzanoCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + BUZANO_TOL,
    })
}

fn coherence_in_unit(c: f64, domain: &'static str) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::Domain {
            what: "coherence c",
            value: c,
            domain,
        });
    }
    Ok(c)
}

fn coherence_positive(c: f64) -> Result<f64> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::Domain {
            what: "coherence c",
            value: c,
            domain: "(0, 1]",
        });
    }
    Ok(c)
}

/// `−2 log((1 + c)/2)`.
pub fn deutsch_lower_bound(c: f64) -> Result<f64> {
    let c = coherence_in_unit(c, "[0, 1]")?;
    Ok(-2.0 * math::ln((1.0 + c) / 2.0))
}

/// `2 log n`, the largest possible Shannon sum for two bases of size `n`.
pub fn deutsch_upper_bound(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain {
            what: "basis size n",
            value: 0.0,
            domain: "n >= 1",
        });
    }
    Ok(2.0 * math::ln(n as f64))
}

/// `−2 log c`. Undefined at `c = 0`.
pub fn mu_bound(c: f64) -> Result<f64> {
    let c = coherence_positive(c)?;
    Ok(-2.0 * math::ln(c))
}

/// `φ((1 + c)²/4)`; the argument stays in `[1/4, 1]`.
pub fn product_bound(phi: &PhiSpec, c: f64) -> Result<f64> {
    let c = coherence_in_unit(c, "[0, 1]")?;
    let t = (1.0 + c) / 2.0;
    Ok(phi.eval_unchecked(t * t))
}

/// `φ(c²)`, the stronger bound whose validity is an open problem.
pub fn conjectured_product_bound(phi: &PhiSpec, c: f64) -> Result<f64> {
    let c = coherence_positive(c)?;
    Ok(phi.eval_unchecked(c * c))
}

/// `2 √(product bound)`: a lower bound on `S_A + S_B` by AM-GM.
pub fn amgm_sum_bound(phi: &PhiSpec, c: f64) -> Result<f64> {
    Ok(2.0 * math::sqrt(product_bound(phi, c)?))
}

/// Coherence of a pair of 1-bounded frames, with rounding above 1 removed.
pub fn pair_coherence(a: &WeightedFrame, b: &WeightedFrame) -> Result<f64> {
    let c = mutual_coherence(a, b)?;
    if c > 1.0 && c <= 1.0 + 3.0 * EPS_NORM {
        Ok(1.0)
    } else {
        Ok(c)
    }
}

/// The four sums in the proof of the product bound, evaluated at one state:
///
/// `product = Σ_αβ w v x y φ(x)φ(y) ≥ Σ_αβ w v x y φ(xy)
///          ≥ Σ_αβ w v x y φ((‖τ_α‖‖ω_β‖ + |⟨τ_α,ω_β⟩|)²/4)
///          ≥ φ((1+c)²/4) Σ_αβ w v x y = φ((1+c)²/4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProofChain {
    pub product: f64,
    pub double_sum: f64,
    pub submultiplicative_sum: f64,
    pub buzano_sum: f64,
    pub bound_sum: f64,
    pub bound: f64,
}

impl ProofChain {
    /// Smallest relative slack over the chain. The first link is an identity,
    /// so its slack is `−|product − double_sum|`.
    pub fn min_slack(&self) -> f64 {
        let rel = |a: f64, b: f64| (a - b) / 1f64.max(a.abs()).max(b.abs());
        let identity = -rel(self.product, self.double_sum).abs();
        let tail = -rel(self.bound_sum, self.bound).abs();
        identity
            .min(rel(self.double_sum, self.submultiplicative_sum))
            .min(rel(self.submultiplicative_sum, self.buzano_sum))
            .min(rel(self.buzano_sum, self.bound_sum))
            .min(tail)
    }

    pub fn holds(&self) -> bool {
        self.min_slack() >= -EPS_VERIFY
    }
}

fn proof_chain(
    xs: &[f64],
    ys: &[f64],
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    product: f64,
    bound: f64,
) -> Result<ProofChain> {
    let mut double_sum = 0.0;
    let mut submultiplicative_sum = 0.0;
    let mut buzano_sum = 0.0;
    let mut mass = 0.0;
    for ((x, w), t) in xs.iter().zip(a.weights()).zip(a.vectors()) {
        let x = clamp_unit(*x)?;
        let phi_x = phi.eval_unchecked(x);
        let nt = math::norm(t);
        for ((y, v), o) in ys.iter().zip(b.weights()).zip(b.vectors()) {
            let y = clamp_unit(*y)?;
            let m = w * v * x * y;
            let half = (nt * math::norm(o) + math::abs(math::inner(t, o))) / 2.0;
            let pair_bound = (half * half).min(1.0);
            double_sum += m * phi_x * phi.eval_unchecked(y);
            submultiplicative_sum += m * phi.eval_unchecked(x * y);
            buzano_sum += m * phi.eval_unchecked(pair_bound);
            mass += m;
        }
    }
    Ok(ProofChain {
        product,
        double_sum,
        submultiplicative_sum,
        buzano_sum,
        bound_sum: bound * mass,
        bound,
    })
}

/// Shannon-side quantities, present when both frames are unweighted Parseval
/// frames. The Deutsch pair is present only for two orthonormal bases.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShannonSide {
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub sum: f64,
    pub deutsch_lower: Option<f64>,
    pub deutsch_upper: Option<f64>,
    pub mu_bound: Option<f64>,
}

/// `value − bound` per inequality.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Margins {
    pub product: f64,
    pub amgm_sum: f64,
    pub chain: f64,
    pub deutsch_lower: Option<f64>,
    pub deutsch_upper: Option<f64>,
    pub mu: Option<f64>,
    /// Informational: the conjectured bound is not a theorem and never
    /// counts as a violation.
    pub conjecture: Option<f64>,
}

impl Margins {
    pub fn deutsch(&self) -> Option<f64> {
        match (self.deutsch_lower, self.deutsch_upper) {
            (Some(l), Some(u)) => Some(l.min(u)),
            (l, u) => l.or(u),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Holds {
    pub product: bool,
    pub amgm_sum: bool,
    pub chain: bool,
    pub deutsch: Option<bool>,
    pub mu: Option<bool>,
}

impl Holds {
    pub fn all(&self) -> bool {
        self.product && self.amgm_sum && self.chain && self.deutsch.unwrap_or(true) && self.mu.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub state_id: Option<u64>,
    /// φ-entropies against frame A and frame B.
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub product: f64,
    pub sum: f64,
    pub coherence: f64,
    pub product_bound: f64,
    pub conjectured_bound: Option<f64>,
    pub sum_bound_amgm: f64,
    pub shannon: Option<ShannonSide>,
    pub chain: ProofChain,
    pub margins: Margins,
    pub holds: Holds,
    pub state_admissible: bool,
}

impl BoundReport {
    pub fn violated(&self) -> bool {
        !self.holds.all()
    }
}

fn check_pair(h: &StateVector, a: &WeightedFrame, b: &WeightedFrame) -> Result<()> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            actual: b.dimension(),
        });
    }
    if h.dimension() != a.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            actual: h.dimension(),
        });
    }
    Ok(())
}

/// Evaluates every applicable inequality at `h`, which must be admissible for
/// both frames at floor `eta_adm`.
pub fn verify_pair_with_floor(
    h: &StateVector,
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    eta_adm: f64,
) -> Result<BoundReport> {
    check_pair(h, a, b)?;
    let xs = coefficient_squares(h, a)?;
    let ys = coefficient_squares(h, b)?;
    require_admissible(&xs, a, eta_adm)?;
    require_admissible(&ys, b, eta_adm)?;

    let coherence = pair_coherence(a, b)?;
    let entropy_a = phi_entropy_of(&xs, a.weights(), phi)?;
    let entropy_b = phi_entropy_of(&ys, b.weights(), phi)?;
    let product = entropy_a * entropy_b;
    let sum = entropy_a + entropy_b;
    let bound = product_bound(phi, coherence)?;
    let conjectured_bound = conjectured_product_bound(phi, coherence).ok();
    let sum_bound_amgm = amgm_sum_bound(phi, coherence)?;
    let chain = proof_chain(&xs, &ys, a, b, phi, product, bound)?;

    let shannon = if a.is_unweighted_parseval() && b.is_unweighted_parseval() {
        let sa = shannon_of(&xs, a.weights(), eta_adm)?;
        let sb = shannon_of(&ys, b.weights(), eta_adm)?;
        let onb = a.is_orthonormal_basis() && b.is_orthonormal_basis();
        Some(ShannonSide {
            entropy_a: sa,
            entropy_b: sb,
            sum: sa + sb,
            deutsch_lower: if onb { Some(deutsch_lower_bound(coherence)?) } else { None },
            deutsch_upper: if onb { Some(deutsch_upper_bound(a.len())?) } else { None },
            mu_bound: mu_bound(coherence).ok(),
        })
    } else {
        None
    };

    let margins = Margins {
        product: product - bound,
        amgm_sum: sum - sum_bound_amgm,
        chain: chain.min_slack(),
        deutsch_lower: shannon.and_then(|s| s.deutsch_lower.map(|l| s.sum - l)),
        deutsch_upper: shannon.and_then(|s| s.deutsch_upper.map(|u| u - s.sum)),
        mu: shannon.and_then(|s| s.mu_bound.map(|m| s.sum - m)),
        conjecture: conjectured_bound.map(|cb| product - cb),
    };
    let ok = |m: f64| m >= -EPS_VERIFY;
    let holds = Holds {
        product: ok(margins.product),
        amgm_sum: ok(margins.amgm_sum),
        chain: chain.holds(),
        deutsch: margins.deutsch().map(ok),
        mu: margins.mu.map(ok),
    };

    Ok(BoundReport {
        state_id: None,
        entropy_a,
        entropy_b,
        product,
        sum,
        coherence,
        product_bound: bound,
        conjectured_bound,
        sum_bound_amgm,
        shannon,
        chain,
        margins,
        holds,
        state_admissible: true,
    })
}

/// [`verify_pair_with_floor`] at the default admissibility floor.
pub fn verify_pair(h: &StateVector, a: &WeightedFrame, b: &WeightedFrame, phi: &PhiSpec) -> Result<BoundReport> {
    verify_pair_with_floor(h, a, b, phi, crate::ETA_ADM)
}

/// State `index` of a batch run under `seed`: Haar-uniform in `C^d`, drawn
/// from stream `index` of the seed.
pub fn batch_state(d: usize, seed: u64, index: u64) -> StateVector {
    rng::haar_state(&mut rng::seeded(seed, index), d)
}

/// Result for state `index` of a batch: `None` when the sample is not
/// admissible for one of the frames.
pub fn verify_batch_item(
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    seed: u64,
    index: u64,
    eta_adm: f64,
) -> Result<Option<BoundReport>> {
    let h = batch_state(a.dimension(), seed, index);
    match verify_pair_with_floor(&h, a, b, phi, eta_adm) {
        Ok(mut r) => {
            r.state_id = Some(index);
            Ok(Some(r))
        }
        Err(Error::Inadmissible { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BatchSummary {
    pub n_states: u64,
    pub evaluated: u64,
    pub skipped_inadmissible: u64,
    pub violations: u64,
    pub min_margins: Margins,
}

impl BatchSummary {
    pub fn from_reports(n_states: u64, reports: &[BoundReport]) -> Self {
        let min = |acc: f64, m: f64| acc.min(m);
        let min_opt = |acc: Option<f64>, m: Option<f64>| match (acc, m) {
            (Some(a), Some(m)) => Some(a.min(m)),
            (a, m) => a.or(m),
        };
        let mut mm = Margins {
            product: f64::INFINITY,
            amgm_sum: f64::INFINITY,
            chain: f64::INFINITY,
            ..Margins::default()
        };
        for r in reports {
            let m = &r.margins;
            mm.product = min(mm.product, m.product);
            mm.amgm_sum = min(mm.amgm_sum, m.amgm_sum);
            mm.chain = min(mm.chain, m.chain);
            mm.deutsch_lower = min_opt(mm.deutsch_lower, m.deutsch_lower);
            mm.deutsch_upper = min_opt(mm.deutsch_upper, m.deutsch_upper);
            mm.mu = min_opt(mm.mu, m.mu);
            mm.conjecture = min_opt(mm.conjecture, m.conjecture);
        }
        let evaluated = reports.len() as u64;
        BatchSummary {
            n_states,
            evaluated,
            skipped_inadmissible: n_states - evaluated,
            violations: reports.iter().filter(|r| r.violated()).count() as u64,
            min_margins: mm,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BatchOutcome {
    pub summary: BatchSummary,
    pub reports: Vec<BoundReport>,
}

/// Verifies `n_states` seeded Haar-random states; inadmissible samples are
/// skipped and counted.
pub fn verify_batch(
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
    n_states: u64,
    seed: u64,
    eta_adm: f64,
) -> Result<BatchOutcome> {
    if n_states == 0 {
        return Err(Error::validation("n_states: must be at least 1"));
    }
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            actual: b.dimension(),
        });
    }
    let mut reports = Vec::new();
    for i in 0..n_states {
        if let Some(r) = verify_batch_item(a, b, phi, seed, i, eta_adm)? {
            reports.push(r);
        }
    }
    Ok(BatchOutcome {
        summary: BatchSummary::from_reports(n_states, &reports),
        reports,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DoubleSumIdentity {
    pub lhs: f64,
    pub rhs: f64,
}

impl DoubleSumIdentity {
    pub fn agrees(&self, rel_tol: f64) -> bool {
        (self.lhs - self.rhs).abs() <= rel_tol * (1.0 + self.lhs.abs())
    }
}

/// Product of the two φ-entropies against the expanded double sum
/// `Σ_α Σ_β w_α v_β x_α y_β φ(x_α) φ(y_β)`.
pub fn product_double_sum_identity(
    h: &StateVector,
    a: &WeightedFrame,
    b: &WeightedFrame,
    phi: &PhiSpec,
) -> Result<DoubleSumIdentity> {
    check_pair(h, a, b)?;
    let xs = coefficient_squares(h, a)?;
    let ys = coefficient_squares(h, b)?;
    require_admissible(&xs, a, crate::ETA_ADM)?;
    require_admissible(&ys, b, crate::ETA_ADM)?;
    let lhs = phi_entropy_of(&xs, a.weights(), phi)? * phi_entropy_of(&ys, b.weights(), phi)?;
    let mut rhs = 0.0;
    for (&x, &w) in xs.iter().zip(a.weights()) {
        let x = clamp_unit(x)?;
        for (&y, &v) in ys.iter().zip(b.weights()) {
            let y = clamp_unit(y)?;
            rhs += w * v * x * y * phi.eval_unchecked(x) * phi.eval_unchecked(y);
        }
    }
    Ok(DoubleSumIdentity { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{make_orthonormal_basis, make_parseval_frame, BasisKind, ParsevalKind};
    use crate::linalg::CMatrix;
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn basis(kind: BasisKind, d: usize) -> WeightedFrame {
        make_orthonormal_basis(kind, d, 0).unwrap()
    }

    const R: f64 = core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn buzano_equality_cases() {
        let u = re(&[R, R]);
        let c = buzano_check(&u, &u, &u).unwrap();
        assert_abs_diff_eq!(c.lhs, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.rhs, 1.0, epsilon = 1e-15);
        assert!(c.holds);

        let c = buzano_check(&re(&[1.0, 0.0]), &re(&[0.0, 1.0]), &re(&[R, R])).unwrap();
        assert_abs_diff_eq!(c.lhs, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.rhs, 0.5, epsilon = 1e-15);
        assert!(c.holds);

        let e = re(&[1.0, 0.0]);
        let c = buzano_check(&e, &e, &e).unwrap();
        assert_eq!((c.lhs, c.rhs), (1.0, 1.0));

        assert!(buzano_check(&e, &re(&[1.0]), &e).is_err());
    }

    #[test]
    fn scalar_bound_values() {
        assert_eq!(deutsch_lower_bound(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(deutsch_lower_bound(R).unwrap(), 0.31670, epsilon = 1e-5);
        assert_abs_diff_eq!(deutsch_lower_bound(0.5).unwrap(), -2.0 * 0.75f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(deutsch_lower_bound(0.5).unwrap(), 0.57536, epsilon = 1e-5);
        assert!(deutsch_lower_bound(1.5).is_err());
        assert!(deutsch_lower_bound(-0.1).is_err());

        assert_eq!(deutsch_upper_bound(1).unwrap(), 0.0);
        assert_abs_diff_eq!(deutsch_upper_bound(4).unwrap(), 2.77259, epsilon = 1e-5);
        assert_abs_diff_eq!(deutsch_upper_bound(2).unwrap(), 1.38629, epsilon = 1e-5);
        assert!(deutsch_upper_bound(0).is_err());

        assert_eq!(mu_bound(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(mu_bound(R).unwrap(), 2f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(mu_bound(0.5).unwrap(), 2.0 * 2f64.ln(), epsilon = 1e-15);
        assert!(mu_bound(0.0).is_err());
    }

    #[test]
    fn product_bound_values() {
        let p1 = PhiSpec::power(1.0).unwrap();
        let p2 = PhiSpec::power(2.0).unwrap();
        let p4 = PhiSpec::power(4.0).unwrap();
        let l1 = PhiSpec::log_shift(1.0).unwrap();

        assert_eq!(product_bound(&p1, 1.0).unwrap(), 1.0);
        let expected = 4.0 / (1.0 + R).powi(2);
        assert_abs_diff_eq!(product_bound(&p1, R).unwrap(), expected, epsilon = 1e-14);
        assert_abs_diff_eq!(expected, 1.37258, epsilon = 1e-5);
        assert_abs_diff_eq!(
            product_bound(&l1, R).unwrap(),
            1.0 + deutsch_lower_bound(R).unwrap(),
            epsilon = 1e-14
        );
        assert_eq!(product_bound(&p1, 0.0).unwrap(), 4.0);
        assert!(product_bound(&p1, 1.1).is_err());

        assert_abs_diff_eq!(conjectured_product_bound(&p1, R).unwrap(), 2.0, epsilon = 1e-14);
        assert_eq!(conjectured_product_bound(&p1, 1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(conjectured_product_bound(&p2, 0.5).unwrap(), 16.0, epsilon = 1e-12);
        assert!(conjectured_product_bound(&p1, 0.0).is_err());

        assert_eq!(amgm_sum_bound(&p1, 1.0).unwrap(), 2.0);
        assert_abs_diff_eq!(amgm_sum_bound(&p1, R).unwrap(), 2.0 * expected.sqrt(), epsilon = 1e-14);
        // 2·√(4/(1+c)²) = 4/(1+c) ≈ 2.3431458.
        assert_abs_diff_eq!(amgm_sum_bound(&p1, R).unwrap(), 4.0 / (1.0 + R), epsilon = 1e-14);
        assert_eq!(amgm_sum_bound(&p4, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn verify_pair_identical_bases() {
        let s = basis(BasisKind::Standard, 2);
        let h = StateVector::from_real(&[R, R]).unwrap();
        let r = verify_pair(&h, &s, &s, &PhiSpec::power(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.product, 4.0, epsilon = 1e-14);
        assert_eq!(r.product_bound, 1.0);
        assert!(r.holds.all());
        assert_eq!(r.coherence, 1.0);
        let sh = r.shannon.unwrap();
        assert_eq!(sh.deutsch_lower, Some(0.0));
    }

    #[test]
    fn verify_pair_standard_fourier() {
        let s = basis(BasisKind::Standard, 2);
        let f = basis(BasisKind::Fourier, 2);
        let h = StateVector::from_real(&[0.9f64.sqrt(), 0.1f64.sqrt()]).unwrap();
        let r = verify_pair(&h, &s, &f, &PhiSpec::power(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.product, 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.product_bound, 1.37258, epsilon = 1e-5);
        assert_abs_diff_eq!(r.margins.product, 2.62742, epsilon = 1e-5);
        assert!(r.holds.all());
        assert!(r.holds.deutsch == Some(true) && r.holds.mu == Some(true));
        assert!((r.product - r.entropy_a * r.entropy_b).abs() <= 1e-12);
    }

    #[test]
    fn verify_pair_inadmissible_state() {
        let s = basis(BasisKind::Standard, 2);
        let f = basis(BasisKind::Fourier, 2);
        let h = StateVector::from_real(&[R, R]).unwrap();
        let err = verify_pair(&h, &s, &f, &PhiSpec::power(1.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Inadmissible { index: 1, ref frame, .. } if frame == "fourier:2"));
    }

    #[test]
    fn shannon_side_only_for_qualifying_frames() {
        let s = basis(BasisKind::Standard, 2);
        let mb = make_parseval_frame(ParsevalKind::MercedesBenz, 3, 2, 0).unwrap();
        let h = batch_state(2, 3, 0);
        let r = verify_pair(&h, &s, &mb, &PhiSpec::power(0.5).unwrap()).unwrap();
        let sh = r.shannon.unwrap();
        assert!(sh.deutsch_lower.is_none() && sh.deutsch_upper.is_none());
        assert!(sh.mu_bound.is_some());

        // Each basis vector twice at weight 1/2: Parseval, but weighted.
        let weighted = WeightedFrame::new(
            "doubled",
            2,
            vec![re(&[1.0, 0.0]), re(&[1.0, 0.0]), re(&[0.0, 1.0]), re(&[0.0, 1.0])],
            vec![0.5; 4],
        )
        .unwrap();
        assert!(crate::frames::validate_frame(&weighted, crate::EPS_PARSEVAL).pass);
        let r = verify_pair(&h, &s, &weighted, &PhiSpec::power(0.5).unwrap()).unwrap();
        assert!(r.shannon.is_none());
        assert!(r.holds.all());
    }

    #[test]
    fn batch_examples() {
        let s = basis(BasisKind::Standard, 2);
        let f = basis(BasisKind::Fourier, 2);
        let out = verify_batch(&s, &f, &PhiSpec::power(1.0).unwrap(), 1000, 1, crate::ETA_ADM).unwrap();
        assert_eq!(out.summary.violations, 0);
        assert_eq!(out.summary.evaluated + out.summary.skipped_inadmissible, 1000);

        let mb = make_parseval_frame(ParsevalKind::MercedesBenz, 3, 2, 0).unwrap();
        let rot = mb.transformed(&CMatrix::rotation2(0.3)).unwrap();
        let out = verify_batch(&mb, &rot, &PhiSpec::power(0.5).unwrap(), 1000, 2, crate::ETA_ADM).unwrap();
        assert_eq!(out.summary.violations, 0);

        assert!(verify_batch(&s, &f, &PhiSpec::ExpDecay, 0, 1, crate::ETA_ADM).is_err());
    }

    #[test]
    fn batch_is_deterministic() {
        let a = make_orthonormal_basis(BasisKind::RandomUnitary, 3, 5).unwrap();
        let b = make_parseval_frame(ParsevalKind::Harmonic, 6, 3, 0).unwrap();
        let phi = PhiSpec::log_shift(2.0).unwrap();
        let x = verify_batch(&a, &b, &phi, 50, 11, crate::ETA_ADM).unwrap();
        let y = verify_batch(&a, &b, &phi, 50, 11, crate::ETA_ADM).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn double_sum_examples() {
        let s = basis(BasisKind::Standard, 2);
        let f = basis(BasisKind::Fourier, 2);
        let h = StateVector::from_real(&[0.9f64.sqrt(), 0.1f64.sqrt()]).unwrap();
        let id = product_double_sum_identity(&h, &s, &f, &PhiSpec::power(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(id.lhs, 4.0, epsilon = 1e-13);
        assert_abs_diff_eq!(id.rhs, 4.0, epsilon = 1e-13);

        let one = basis(BasisKind::Standard, 1);
        let h1 = StateVector::from_real(&[1.0]).unwrap();
        let id = product_double_sum_identity(&h1, &one, &one, &PhiSpec::log_shift(2.0).unwrap()).unwrap();
        assert_eq!(id.lhs, id.rhs);
        assert_eq!(id.lhs, 4.0);

        let a = make_orthonormal_basis(BasisKind::RandomUnitary, 3, 1).unwrap();
        let b = make_orthonormal_basis(BasisKind::RandomUnitary, 3, 2).unwrap();
        let h = batch_state(3, 4, 0);
        let id = product_double_sum_identity(&h, &a, &b, &PhiSpec::log_shift(2.0).unwrap()).unwrap();
        assert!((id.lhs - id.rhs).abs() <= 1e-9);
    }

    proptest! {
        #[test]
        fn bound_ordering(c in 1e-6f64..=1.0, which in 0usize..8) {
            let phis = [
                PhiSpec::Power { p: 0.25 }, PhiSpec::Power { p: 0.5 }, PhiSpec::Power { p: 1.0 },
                PhiSpec::Power { p: 2.0 }, PhiSpec::Power { p: 4.0 }, PhiSpec::LogShift { a: 1.0 },
                PhiSpec::LogShift { a: 1.5 }, PhiSpec::LogShift { a: 2.0 },
            ];
            let phi = &phis[which];
            let pb = product_bound(phi, c).unwrap();
            let cb = conjectured_product_bound(phi, c).unwrap();
            prop_assert!(cb >= pb - 1e-12 * pb.max(1.0));
            prop_assert!(mu_bound(c).unwrap() >= deutsch_lower_bound(c).unwrap() - 1e-12);
        }

        #[test]
        fn buzano_random_triples(seed in 0u64..100_000, d in 1usize..17) {
            let mut g = rng::seeded(seed, 0);
            let mut v = || (0..d).map(|_| rng::complex_gaussian(&mut g) * 3.0).collect::<Vec<_>>();
            let (u, w, h) = (v(), v(), v());
            let c = buzano_check(&u, &w, &h).unwrap();
            prop_assert!(c.rhs - c.lhs >= -1e-12 * c.rhs.max(1.0));
        }
    }
}
