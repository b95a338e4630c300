//! The Legendre oscillator.
//!
//! The orthonormal basis `ψ_n = sqrt(2n+1) P_n` of `L^2([-1, 1], dx/2)`
//! satisfies `x ψ_n = b_{n-1} ψ_{n-1} + b_n ψ_{n+1}` with
//! `b_n = (n+1) / sqrt((2n+1)(2n+3))`. Position, momentum and ladder
//! operators are the corresponding Jacobi-type band matrices
//! (see [`operators`]).
//!
//! `b_n` decreases from `1/sqrt(3)` toward `1/2`, so `2 b_n^2 > 1/2` for all
//! `n` and the moment sequence `ρ_n = Π_{k<n} 2 b_k^2` behaves like
//! `(π/2) 2^{-n}`.

pub mod operators;
pub mod series;

pub use operators::{
    build_ladder, build_number_hamiltonian, build_p, build_x, commutator_diagonal_exact, commutator_spectrum,
    TruncatedOperator,
};
pub use series::{coherent_norm_sq, coherent_norm_sq_inv, coherent_series};

/// `b_n^2 = (n+1)^2 / ((2n+1)(2n+3))`; zero for the `b_{-1}` convention.
pub fn coeff_b_sq(n: i64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let n = n as f64;
    (n + 1.0) * (n + 1.0) / ((2.0 * n + 1.0) * (2.0 * n + 3.0))
}

/// Recurrence coefficient `b_n = sqrt((n+1)^2 / ((2n+1)(2n+3)))`.
pub fn coeff_b(n: u64) -> f64 {
    let nf = n as f64;
    (nf + 1.0) / ((2.0 * nf + 1.0) * (2.0 * nf + 3.0)).sqrt()
}

/// `ρ_n = Π_{k=0}^{n-1} 2 b_k^2`, with `ρ_0 = 1`.
pub fn rho(n: u64) -> f64 {
    (0..n as i64).fold(1.0, |acc, k| acc * 2.0 * coeff_b_sq(k))
}

/// The first `len` coefficients `b_0, ..., b_{len-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoefficients {
    values: Vec<f64>,
}

impl RecurrenceCoefficients {
    pub fn new(len: usize) -> Self {
        Self {
            values: (0..len as u64).map(coeff_b).collect(),
        }
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

    /// `Σ_{k<len} 1/b_k`; grows without bound, at least like `sqrt(3) · len`.
    pub fn reciprocal_sum(&self) -> f64 {
        self.values.iter().map(|b| 1.0 / b).sum()
    }
}

/// The moments `ρ_0, ..., ρ_{len-1}` controlling state normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    values: Vec<f64>,
}

impl MomentSequence {
    pub fn new(len: usize) -> Self {
        let mut values = Vec::with_capacity(len);
        let mut acc = 1.0;
        for k in 0..len as i64 {
            values.push(acc);
            acc *= 2.0 * coeff_b_sq(k);
        }
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Which eigenvalue sequence a [`Spectrum`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumConvention {
    /// Diagonal of `H = a⁺a⁻ + a⁻a⁺`: `λ_0 = 2 b_0^2`, `λ_n = 2 (b_{n-1}^2 + b_n^2)`.
    Hamiltonian,
    /// Temporally stable states: `λ_n = 2 b_{n-1}^2`, with `λ_0 = 0` from `b_{-1} = 0`.
    GazeauKlauder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub convention: SpectrumConvention,
    pub values: Vec<f64>,
}

/// `λ_n` in the requested convention.
pub fn spectrum_value(convention: SpectrumConvention, n: u64) -> f64 {
    let n = n as i64;
    match convention {
        SpectrumConvention::Hamiltonian => 2.0 * (coeff_b_sq(n - 1) + coeff_b_sq(n)),
        SpectrumConvention::GazeauKlauder => 2.0 * coeff_b_sq(n - 1),
    }
}

impl Spectrum {
    pub fn new(convention: SpectrumConvention, len: usize) -> Self {
        Self {
            convention,
            values: (0..len as u64).map(|n| spectrum_value(convention, n)).collect(),
        }
    }
}
