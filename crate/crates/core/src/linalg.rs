//! Small dense complex matrices: just enough to build unitaries and isometries
//! and to transform frames by them.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{math, rng};

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Real plane rotation by `theta`: columns `(cos, sin)` and `(-sin, cos)`.
    pub fn rotation2(theta: f64) -> Self {
        let (c, s) = (math::cos(theta), math::sin(theta));
        let r = |x: f64| Complex64::new(x, 0.0);
        CMatrix {
            rows: 2,
            cols: 2,
            data: vec![r(c), r(-s), r(s), r(c)],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// `A* A`.
    pub fn gram(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.cols, |i, j| {
            (0..self.rows).fold(Complex64::new(0.0, 0.0), |acc, k| {
                acc + self[(k, i)].conj() * self[(k, j)]
            })
        })
    }

    /// Largest entrywise modulus of `self − I`.
    pub fn identity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(math::abs(self[(i, j)] - target));
            }
        }
        worst
    }

    /// Orthonormalize the columns in place (modified Gram–Schmidt, two passes),
    /// then rotate each column's phase so its first nonzero entry is real and
    /// positive.
    pub fn orthonormalize_columns(&mut self) -> Result<()> {
        if self.cols > self.rows {
            return Err(Error::validation("cannot orthonormalize more columns than rows"));
        }
        for j in 0..self.cols {
            let mut col = self.column(j);
            for _pass in 0..2 {
                for k in 0..j {
                    let q = self.column(k);
                    let proj = math::inner(&col, &q);
                    for (c, qk) in col.iter_mut().zip(&q) {
                        *c -= proj * qk;
                    }
                }
            }
            let n = math::norm(&col);
            if !(n > 1e-12) {
                return Err(Error::validation("matrix columns are numerically dependent"));
            }
            for c in &mut col {
                *c /= n;
            }
            fix_phase(&mut col);
            for (i, c) in col.into_iter().enumerate() {
                self[(i, j)] = c;
            }
        }
        Ok(())
    }

    /// Seeded Haar-like unitary: orthonormalized complex Gaussian matrix.
    pub fn random_unitary(d: usize, seed: u64) -> Result<Self> {
        Self::random_isometry(d, d, seed)
    }

    /// Seeded `rows × cols` matrix with orthonormal columns.
    pub fn random_isometry(rows: usize, cols: usize, seed: u64) -> Result<Self> {
        let mut rng = rng::seeded(seed, 0);
        let mut m = CMatrix::from_fn(rows, cols, |_, _| rng::complex_gaussian(&mut rng));
        m.orthonormalize_columns()?;
        Ok(m)
    }
}

fn fix_phase(col: &mut [Complex64]) {
    if let Some(first) = col.iter().copied().find(|z| math::abs(*z) > 1e-12) {
        let r = math::abs(first);
        let rot = first.conj() / r;
        let mut pinned = false;
        for c in col.iter_mut() {
            *c *= rot;
            if !pinned && math::abs(*c) > 1e-12 {
                *c = Complex64::new(r, 0.0);
                pinned = true;
            }
        }
    }
}

impl core::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}
