//! Symmetric eigenvalues and the closed-form grounded spectra of stars and
//! complete graphs.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute tolerance used to accept a matrix as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalues sorted ascending; `lambda(1)` is the smallest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub(crate) fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `k`-th smallest eigenvalue, 1-based. Panics when `k` is out of range.
    pub fn lambda(&self, k: usize) -> f64 {
        assert!(
            (1..=self.values.len()).contains(&k),
            "eigenvalue index {k} outside 1..={}",
            self.values.len()
        );
        self.values[k - 1]
    }

    pub fn smallest(&self) -> f64 {
        self.values[0]
    }

    pub fn largest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

fn validate(m: &DMatrix<f64>) -> Result<()> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows == 0 {
        return Err(Error::EmptyMatrix);
    }
    for col in 0..cols {
        for row in 0..rows {
            if !m[(row, col)].is_finite() {
                return Err(Error::NonFinite { row, col });
            }
        }
    }
    for row in 0..rows {
        for col in row + 1..cols {
            let gap = (m[(row, col)] - m[(col, row)]).abs();
            if gap > SYMMETRY_TOL {
                return Err(Error::NotSymmetric { row, col, gap });
            }
        }
    }
    Ok(())
}

/// All eigenvalues of a dense symmetric matrix.
pub fn eig_sym(m: &DMatrix<f64>) -> Result<Spectrum> {
    validate(m)?;
    let values = m.clone().symmetric_eigenvalues();
    Ok(Spectrum::from_unsorted(values.iter().copied().collect()))
}

/// Eigenvalues with unit eigenvectors; column `i` of the matrix belongs to
/// `spectrum.lambda(i + 1)`.
pub fn eig_sym_pairs(m: &DMatrix<f64>) -> Result<(Spectrum, DMatrix<f64>)> {
    validate(m)?;
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((Spectrum { values }, vectors))
}

/// Smallest eigenvalue.
pub fn lambda1(m: &DMatrix<f64>) -> Result<f64> {
    eig_sym(m).map(|s| s.smallest())
}

/// Largest eigenvalue.
pub fn lambda_max(m: &DMatrix<f64>) -> Result<f64> {
    eig_sym(m).map(|s| s.largest())
}

/// Which node of a star is pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarPin {
    Center,
    Leaf,
}

/// Closed-form `lambda1(L(i|i))` for the star on `n > 2` nodes.
pub fn star_grounded_lambda1(n: usize, pin: StarPin) -> Result<f64> {
    if n <= 2 {
        return Err(Error::param(format!("star needs n > 2, got {n}")));
    }
    Ok(match pin {
        StarPin::Center => 1.0,
        StarPin::Leaf => {
            let nf = n as f64;
            // (n - sqrt(n^2 - 4)) / 2 rewritten to avoid cancellation
            2.0 / (nf + (nf * nf - 4.0).sqrt())
        }
    })
}

/// Closed-form grounded spectrum of the complete graph `K_n` with `l` pins:
/// `l` once, then `n` with multiplicity `n - l - 1`.
pub fn complete_grounded_spectrum(n: usize, l: usize) -> Result<Spectrum> {
    if n < 2 || l == 0 || l >= n {
        return Err(Error::PinCountOutOfRange {
            l,
            max: n.saturating_sub(1),
        });
    }
    let mut values = vec![l as f64];
    values.extend(std::iter::repeat(n as f64).take(n - l - 1));
    Ok(Spectrum { values })
}
