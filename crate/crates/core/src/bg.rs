//! Barut-Girardello states: eigenvectors of the annihilation operator.
//!
//! `a⁻|z⟩ = z|z⟩` is solved by amplitudes `c_n ∝ z^n / sqrt(ρ_n)`. The raw
//! squared norm `Σ |z|^{2n}/ρ_n` is `2F1(1/2, 3/2; 1; 2|z|^2)`, so states
//! exist on the open disk `|z| < 1/sqrt(2)`.
//!
//! The resolution of identity reduces to the radial moment problem
//! `∫_0^{1/2} t^n dμ(t) = ρ_n / π`. [`bg_measure`] is the closed-form weight
//! with a unit atom at `t = 1/2`; its moments come out as `2 ρ_n / π`.
//! [`bg_measure_normalized`] halves both parts and reproduces `ρ_n / π`.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::oscillator::{build_ladder, coeff_b_sq, coherent_norm_sq, coherent_norm_sq_inv, rho};
use crate::quadrature::WeightAtom;
use crate::specfun::{hyp2f1, legendre_pn, SeriesControl};
use crate::weight::{legendre_weight_density, MomentReport, RadialMeasure};

/// Largest admissible `|z|` (exclusive).
pub const MAX_RADIUS: f64 = std::f64::consts::FRAC_1_SQRT_2;
/// Largest relative norm mass allowed beyond the truncation.
pub const TAIL_LIMIT: f64 = 1e-14;

/// A truncated, normalized Barut-Girardello state.
#[derive(Debug, Clone, PartialEq)]
pub struct BgState {
    z: Complex64,
    amplitudes: Vec<Complex64>,
    norm_sq_raw: f64,
    tail: f64,
}

impl BgState {
    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `2F1(1/2, 3/2; 1; 2|z|^2)`, the squared norm before normalization.
    pub fn norm_sq_raw(&self) -> f64 {
        self.norm_sq_raw
    }

    /// Bound on the normalized mass `Σ_{n >= dim} |c_n|^2` left out.
    pub fn tail_bound(&self) -> f64 {
        self.tail
    }

    /// `‖a⁻|z⟩ - z|z⟩‖` over all rows and over rows `0..dim-1`.
    ///
    /// The last row of the truncated `a⁻` misses the coupling to `|dim⟩`, so the
    /// full residual carries the boundary term `sqrt(2) b_{dim-1} |c_dim|`.
    pub fn eigen_residual(&self) -> Result<(f64, f64)> {
        let (_, lower) = build_ladder(self.dim())?;
        let image = lower.apply(&self.amplitudes);
        let diffs: Vec<f64> = image
            .iter()
            .zip(&self.amplitudes)
            .map(|(a, c)| (a - self.z * c).norm_sqr())
            .collect();
        let full = diffs.iter().sum::<f64>().sqrt();
        let interior = diffs[..diffs.len() - 1].iter().sum::<f64>().sqrt();
        Ok((full, interior))
    }
}

fn check_disk(z: Complex64) -> Result<()> {
    if !(z.norm() < MAX_RADIUS) {
        return Err(domain(format!("Barut-Girardello states need |z| < 1/sqrt(2), got |z| = {}", z.norm())));
    }
    Ok(())
}

/// Build `|z⟩` on `dim` Fock states.
pub fn bg_state(z: Complex64, dim: usize) -> Result<BgState> {
    check_disk(z)?;
    if dim == 0 {
        return Err(Error::Dimension { got: 0, min: 1 });
    }
    let r2 = z.norm_sqr();
    let norm_sq_raw = coherent_norm_sq(2.0 * r2)?;
    let scale = norm_sq_raw.sqrt().recip();
    let mut amplitudes = Vec::with_capacity(dim);
    let mut c = Complex64::new(scale, 0.0);
    for n in 0..dim {
        amplitudes.push(c);
        c *= z / (2.0 * coeff_b_sq(n as i64)).sqrt();
    }
    // c is now c_dim; later ratios |z|^2 / (2 b_k^2) stay below 2|z|^2
    let tail = c.norm_sqr() / (1.0 - 2.0 * r2);
    if tail > TAIL_LIMIT {
        return Err(Error::Truncation { dim, tail, limit: TAIL_LIMIT });
    }
    Ok(BgState {
        z,
        amplitudes,
        norm_sq_raw,
        tail,
    })
}

/// `Σ c_n sqrt(2n+1) P_n(x)`, the state in the position representation.
pub fn bg_wavefunction_series(state: &BgState, x: f64) -> Complex64 {
    state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, c)| c * (2.0 * n as f64 + 1.0).sqrt() * legendre_pn(n as u32, x))
        .sum()
}

/// Closed form of the wavefunction:
/// `F^{-1/2} 2F1(3/4, 5/4; 1; 2z^2 (x^2-1)/(1 - sqrt(2) x z)^2) (1 - sqrt(2) x z)^{-3/2}`
/// with `F = 2F1(1/2, 3/2; 1; 2|z|^2)` and the principal power.
pub fn bg_wavefunction_closed(z: Complex64, x: f64) -> Result<Complex64> {
    check_disk(z)?;
    if !(-1.0..=1.0).contains(&x) {
        return Err(domain(format!("wavefunction needs -1 <= x <= 1, got {x}")));
    }
    let base = 1.0 - std::f64::consts::SQRT_2 * x * z;
    if base.norm() < 1e-12 {
        return Err(domain("1 - sqrt(2) x z vanishes"));
    }
    let arg = 2.0 * z * z * (x * x - 1.0) / (base * base);
    if !(arg.norm() < 1.0) {
        return Err(domain(format!("hypergeometric argument {arg} outside the unit disk")));
    }
    let f = hyp2f1(0.75, 1.25, 1.0, arg, &SeriesControl::default())?.value;
    let norm = coherent_norm_sq(2.0 * z.norm_sqr())?;
    Ok(f * base.powf(-1.5) / norm.sqrt())
}

/// `⟨z1|z2⟩ = 2F1(1/2, 3/2; 1; 2 conj(z1) z2) / sqrt(F(2|z1|^2) F(2|z2|^2))`.
pub fn bg_overlap(z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_disk(z1)?;
    check_disk(z2)?;
    let cross = hyp2f1(0.5, 1.5, 1.0, 2.0 * z1.conj() * z2, &SeriesControl::default())?.value;
    let n1 = coherent_norm_sq(2.0 * z1.norm_sqr())?;
    let n2 = coherent_norm_sq(2.0 * z2.norm_sqr())?;
    Ok(cross / (n1 * n2).sqrt())
}

/// `Σ conj(a_n) b_n` over the common truncation.
pub fn inner_product(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Smooth part of the weight at `t = |z|^2`.
pub fn bg_weight(t: f64) -> Result<f64> {
    legendre_weight_density(t)
}

/// Closed-form weight with the unit atom at `t = 1/2`.
pub fn bg_measure() -> RadialMeasure {
    RadialMeasure {
        scale: 1.0,
        atom: WeightAtom { location: 0.5, mass: 1.0 },
    }
}

/// Half of [`bg_measure`]; this one has moments `ρ_n / π`.
pub fn bg_measure_normalized() -> RadialMeasure {
    RadialMeasure {
        scale: 0.5,
        atom: WeightAtom { location: 0.5, mass: 0.5 },
    }
}

/// Moments of [`bg_measure`] against `ρ_n / π`, `n = 0..=n_max`.
pub fn verify_bg_moments(n_max: u32, tol: f64) -> Result<MomentReport> {
    verify_bg_moments_with(&bg_measure(), n_max, tol)
}

/// Moments of any radial measure against `ρ_n / π`.
pub fn verify_bg_moments_with(measure: &RadialMeasure, n_max: u32, tol: f64) -> Result<MomentReport> {
    measure.check_moments(n_max, tol, |n| rho(n as u64) / std::f64::consts::PI)
}

fn check_coefficients(f: &[Complex64], z: Complex64) -> Result<()> {
    check_disk(z)?;
    let total: f64 = f.iter().map(|c| c.norm_sqr()).sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(domain(format!("coefficients must be normalized, Σ|f_n|^2 = {total}")));
    }
    Ok(())
}

/// `Σ sqrt((1/2)_n (3/2)_n) f_n / n! (2z)^n`.
pub fn analytic_repr(f: &[Complex64], z: Complex64) -> Result<Complex64> {
    check_coefficients(f, z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coef = 1.0;
    let mut power = Complex64::new(1.0, 0.0);
    for (n, fn_) in f.iter().enumerate() {
        if n > 0 {
            let nf = n as f64;
            coef *= ((nf - 0.5) * (nf + 0.5)).sqrt() / nf;
            power *= 2.0 * z;
        }
        sum += coef * fn_ * power;
    }
    Ok(sum)
}

/// `Σ f_n z^n / sqrt(ρ_n)`, which is `sqrt(F(2|z|^2)) ⟨z̄|f⟩`.
pub fn coherent_transform(f: &[Complex64], z: Complex64) -> Result<Complex64> {
    check_coefficients(f, z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for (n, fn_) in f.iter().enumerate() {
        sum += fn_ * power;
        power *= z / (2.0 * coeff_b_sq(n as i64)).sqrt();
    }
    Ok(sum)
}

/// `∫ |coherent_transform(f, z)|^2 dμ(|z|^2) d^2z`, reduced to the radius.
///
/// The angular average of `|Σ a_n z^n|^2` is `Σ |a_n|^2 t^n`, and
/// `d^2z = (1/2) dt dθ`, so the disk integral is `π ∫ Σ |f_n|^2 t^n / ρ_n dμ(t)`.
/// Equals `Σ |f_n|^2` exactly when the measure solves the moment problem.
pub fn analytic_norm_sq(f: &[Complex64], measure: &RadialMeasure, tol: f64) -> Result<f64> {
    let weights: Vec<f64> = f.iter().enumerate().map(|(n, c)| c.norm_sqr() / rho(n as u64)).collect();
    let q = measure.integrate(|t| poly(&weights, t), tol)?;
    Ok(std::f64::consts::PI * q.value)
}

/// `∫ F(2|z|^2)^{-1} |analytic_repr(f, z)|^2 dμ(|z|^2) d^2z`, reduced to the radius.
pub fn analytic_norm_sq_with_inverse_norm(f: &[Complex64], measure: &RadialMeasure, tol: f64) -> Result<f64> {
    let mut weights = Vec::with_capacity(f.len());
    let mut coef = 1.0;
    for (n, c) in f.iter().enumerate() {
        if n > 0 {
            let nf = n as f64;
            coef *= 2.0 * ((nf - 0.5) * (nf + 0.5)).sqrt() / nf;
        }
        weights.push(coef * coef * c.norm_sqr());
    }
    let q = measure.integrate(
        |t| poly(&weights, t) * coherent_norm_sq_inv(2.0 * t, 1.0 - 2.0 * t).unwrap_or(f64::NAN),
        tol,
    )?;
    Ok(std::f64::consts::PI * q.value)
}

fn poly(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}
