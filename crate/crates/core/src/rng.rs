//! Seeded sampling.
//!
//! Every random draw goes through [`seeded`], a ChaCha8 generator keyed by a
//! `(seed, stream)` pair. Independent work items (batch states, search starts)
//! use distinct streams of the same seed, so results never depend on the
//! order in which items are evaluated.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::frames::StateVector;
use crate::math;

/// Generator for work item `stream` under the run seed `seed`.
pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re = standard_normal(rng);
    let im = standard_normal(rng);
    Complex64::new(re, im)
}

/// Uniform point on the unit sphere of `R^len`, by normalizing a Gaussian.
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let z: Vec<f64> = (0..len).map(|_| standard_normal(rng)).collect();
        let n = math::sqrt(z.iter().map(|v| v * v).sum());
        if n > 1e-300 {
            return z.into_iter().map(|v| v / n).collect();
        }
    }
}

/// Haar-uniform unit vector in `C^d`.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> StateVector {
    loop {
        let z: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        if let Ok(h) = StateVector::normalized(z) {
            return h;
        }
    }
}

/// Haar-uniform unit vector with real entries, a uniform point on `S^{d-1}`.
pub fn real_sphere_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> StateVector {
    let z = sphere_point(rng, d);
    StateVector::normalized(z.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
        .expect("sphere point is nonzero")
}
