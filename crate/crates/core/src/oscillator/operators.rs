//! Finite sections of the oscillator operators on the first `N` basis states.
//!
//! Truncation only corrupts the last row and column (the coupling to
//! `|N⟩` is missing there), so identities are compared on interior indices
//! `0..=N-2`.

use std::f64::consts::SQRT_2;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{coeff_b, coeff_b_sq};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// An `N × N` complex matrix acting on `|0⟩, ..., |N-1⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    matrix: DMatrix<Complex64>,
}

impl TruncatedOperator {
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Self {
        assert!(matrix.is_square(), "operator matrix must be square");
        Self { matrix }
    }

    fn zeros(dim: usize) -> Self {
        Self::from_matrix(DMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Matrix element `⟨row| A |col⟩`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.matrix.diagonal().iter().copied().collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix(self.matrix.adjoint())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_matrix(&self.matrix * factor)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn apply(&self, state: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(state.len(), self.dim(), "state length must match operator dimension");
        (0..self.dim())
            .map(|r| (0..self.dim()).map(|c| self.matrix[(r, c)] * state[c]).sum())
            .collect()
    }

    /// Largest `|A_ij - B_ij|` over rows and columns `0..=N-2`.
    pub fn interior_max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        let last = self.dim().saturating_sub(1);
        let mut worst = 0.0f64;
        for r in 0..last {
            for c in 0..last {
                worst = worst.max((self.matrix[(r, c)] - other.matrix[(r, c)]).norm());
            }
        }
        worst
    }

    /// Largest `|A_ij - B_ij|` over the whole matrix.
    pub fn max_diff(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Mul for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn mul(self, rhs: Self) -> TruncatedOperator {
        TruncatedOperator::from_matrix(&self.matrix * &rhs.matrix)
    }
}

impl Add for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn add(self, rhs: Self) -> TruncatedOperator {
        TruncatedOperator::from_matrix(&self.matrix + &rhs.matrix)
    }
}

impl Sub for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn sub(self, rhs: Self) -> TruncatedOperator {
        TruncatedOperator::from_matrix(&self.matrix - &rhs.matrix)
    }
}

fn check_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        Err(Error::Dimension { got: dim, min })
    } else {
        Ok(())
    }
}

/// Position operator: `X|n⟩ = b_n |n+1⟩ + b_{n-1} |n-1⟩`.
pub fn build_x(dim: usize) -> Result<TruncatedOperator> {
    check_dim(dim, 2)?;
    let mut op = TruncatedOperator::zeros(dim);
    for n in 0..dim - 1 {
        let b = Complex64::new(coeff_b(n as u64), 0.0);
        op.matrix[(n + 1, n)] = b;
        op.matrix[(n, n + 1)] = b;
    }
    Ok(op)
}

/// Momentum operator: `P|n⟩ = i (b_n |n+1⟩ - b_{n-1} |n-1⟩)`.
pub fn build_p(dim: usize) -> Result<TruncatedOperator> {
    check_dim(dim, 2)?;
    let mut op = TruncatedOperator::zeros(dim);
    for n in 0..dim - 1 {
        let b = coeff_b(n as u64);
        op.matrix[(n + 1, n)] = I * b;
        op.matrix[(n, n + 1)] = -I * b;
    }
    Ok(op)
}

/// Creation and annihilation operators `(a⁺, a⁻)`:
/// `a⁺|n⟩ = √2 b_n |n+1⟩`, `a⁻|n⟩ = √2 b_{n-1} |n-1⟩`.
pub fn build_ladder(dim: usize) -> Result<(TruncatedOperator, TruncatedOperator)> {
    check_dim(dim, 2)?;
    let mut raise = TruncatedOperator::zeros(dim);
    for n in 0..dim - 1 {
        raise.matrix[(n + 1, n)] = Complex64::new(SQRT_2 * coeff_b(n as u64), 0.0);
    }
    let lower = raise.adjoint();
    Ok((raise, lower))
}

/// Number operator `N|n⟩ = n|n⟩` and Hamiltonian `H = a⁺a⁻ + a⁻a⁺`.
pub fn build_number_hamiltonian(dim: usize) -> Result<(TruncatedOperator, TruncatedOperator)> {
    check_dim(dim, 3)?;
    let mut number = TruncatedOperator::zeros(dim);
    for n in 0..dim {
        number.matrix[(n, n)] = Complex64::new(n as f64, 0.0);
    }
    let (raise, lower) = build_ladder(dim)?;
    let h = &(&raise * &lower) + &(&lower * &raise);
    Ok((number, h))
}

/// Diagonal of `[X, P] = XP - PX` formed by matrix products.
///
/// On interior indices this is `2i (b_n^2 - b_{n-1}^2) = -2i / ((2n-1)(2n+1)(2n+3))`.
pub fn commutator_spectrum(dim: usize) -> Result<Vec<Complex64>> {
    check_dim(dim, 3)?;
    let x = build_x(dim)?;
    let p = build_p(dim)?;
    Ok(x.commutator(&p).diagonal())
}

/// Exact interior value of the commutator diagonal, `2i (b_n^2 - b_{n-1}^2)`.
pub fn commutator_diagonal_exact(n: u64) -> Complex64 {
    I * 2.0 * (coeff_b_sq(n as i64) - coeff_b_sq(n as i64 - 1))
}
