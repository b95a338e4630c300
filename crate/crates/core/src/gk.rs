//! Gazeau-Klauder states `|J, γ⟩`.
//!
//! Amplitudes are `J^{n/2} e^{-iγλ_n} / sqrt(ρ_n)` with `λ_n = 2 b_{n-1}^2`
//! (`λ_0 = 0`), normalized by `2F1(1/2, 3/2; 1; 2J)`. Since `ρ_n = λ_1 ... λ_n`,
//! `⟨H⟩ = J` and evolution under `H = diag(λ_n)` only shifts `γ`.
//!
//! Number statistics come in two forms. The series forms
//!
//! ```text
//! ⟨n⟩      = (3J/2)   F(3/2, 5/2; 2; 2J) / F(1/2, 3/2; 1; 2J)
//! ⟨n^2⟩    = (3J/2)   F(3/2, 5/2; 1; 2J) / F(1/2, 3/2; 1; 2J)
//! ⟨n(n-1)⟩ = (45/8)J^2 F(5/2, 7/2; 3; 2J) / F(1/2, 3/2; 1; 2J)
//! ```
//!
//! and elliptic forms in `K`, `E`, `D` at modulus `k = sqrt(2J)`.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::oscillator::{
    coeff_b_sq, coherent_norm_sq, coherent_series, rho, spectrum_value, SpectrumConvention,
};
use crate::quadrature::WeightAtom;
use crate::specfun::{elliptic, hyp2f1_real, SeriesControl};
use crate::weight::{numerator, MomentReport, RadialMeasure, REMOVABLE_BAND};

/// Relative accuracy requested from the direct sums.
const SUM_TOL: f64 = 1e-17;
/// Largest relative norm mass allowed beyond the truncation.
pub const TAIL_LIMIT: f64 = 1e-14;

/// `λ_n = 2 b_{n-1}^2`.
pub fn gk_energy(n: u64) -> f64 {
    spectrum_value(SpectrumConvention::GazeauKlauder, n)
}

/// A truncated, normalized Gazeau-Klauder state.
#[derive(Debug, Clone, PartialEq)]
pub struct GkState {
    j: f64,
    gamma: f64,
    amplitudes: Vec<Complex64>,
}

impl GkState {
    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

fn check_action(j: f64) -> Result<()> {
    if !(0.0..0.5).contains(&j) {
        return Err(domain(format!("Gazeau-Klauder states need 0 <= J < 1/2, got J = {j}")));
    }
    Ok(())
}

/// Moduli `J^{n/2} / sqrt(ρ_n F(2J))` for `n < dim`, after the tail check.
fn moduli(j: f64, dim: usize) -> Result<Vec<f64>> {
    check_action(j)?;
    if dim == 0 {
        return Err(Error::Dimension { got: 0, min: 1 });
    }
    let norm = coherent_norm_sq(2.0 * j)?;
    let mut out = Vec::with_capacity(dim);
    let mut m = norm.sqrt().recip();
    for n in 0..dim {
        out.push(m);
        m *= (j / (2.0 * coeff_b_sq(n as i64))).sqrt();
    }
    let tail = m * m / (1.0 - 2.0 * j);
    if tail > TAIL_LIMIT {
        return Err(Error::Truncation { dim, tail, limit: TAIL_LIMIT });
    }
    Ok(out)
}

/// Build `|J, γ⟩` on `dim` Fock states.
pub fn gk_state(j: f64, gamma: f64, dim: usize) -> Result<GkState> {
    let amplitudes = moduli(j, dim)?
        .into_iter()
        .enumerate()
        .map(|(n, m)| Complex64::from_polar(m, -gamma * gk_energy(n as u64)))
        .collect();
    Ok(GkState { j, gamma, amplitudes })
}

/// Apply `e^{-iHt}` with `H = diag(λ_n)`.
pub fn gk_evolve(state: &GkState, t: f64) -> GkState {
    let amplitudes = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, -t * gk_energy(n as u64)))
        .collect();
    GkState {
        j: state.j,
        gamma: state.gamma + t,
        amplitudes,
    }
}

fn normalized_sum<W: Fn(u64) -> f64>(j: f64, weight: W, growth: i32) -> Result<f64> {
    check_action(j)?;
    let s = coherent_series(j, weight, growth, SUM_TOL)?;
    Ok(s / coherent_norm_sq(2.0 * j)?)
}

/// `⟨H⟩ = Σ λ_n J^n / ρ_n / F(2J)` by direct summation.
pub fn gk_mean_h(j: f64) -> Result<f64> {
    // λ_n is bounded and decreases from n = 1 on
    normalized_sum(j, gk_energy, 0)
}

/// `⟨n⟩` by direct summation.
pub fn gk_mean_n_direct(j: f64) -> Result<f64> {
    normalized_sum(j, |n| n as f64, 1)
}

/// `⟨n^2⟩` by direct summation.
pub fn gk_mean_n2_direct(j: f64) -> Result<f64> {
    normalized_sum(j, |n| (n * n) as f64, 2)
}

fn f(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    hyp2f1_real(a, b, c, x, &SeriesControl::default())
}

/// `⟨n⟩` from the hypergeometric form.
pub fn gk_mean_n(j: f64) -> Result<f64> {
    check_action(j)?;
    Ok(1.5 * j * f(1.5, 2.5, 2.0, 2.0 * j)? / f(0.5, 1.5, 1.0, 2.0 * j)?)
}

/// `⟨n^2⟩` from the hypergeometric form.
pub fn gk_mean_n2(j: f64) -> Result<f64> {
    check_action(j)?;
    Ok(1.5 * j * f(1.5, 2.5, 1.0, 2.0 * j)? / f(0.5, 1.5, 1.0, 2.0 * j)?)
}

/// `⟨n(n-1)⟩` from the hypergeometric form.
pub fn gk_factorial_moment2(j: f64) -> Result<f64> {
    check_action(j)?;
    Ok(45.0 / 8.0 * j * j * f(2.5, 3.5, 3.0, 2.0 * j)? / f(0.5, 1.5, 1.0, 2.0 * j)?)
}

/// `(1/2) J/(1-2J) (2K - (1+2J) D) / E` at `k = sqrt(2J)`, as the closed form is printed.
///
/// This is exactly half of `⟨n⟩`; see [`gk_mean_n`].
pub fn gk_mean_n_elliptic(j: f64) -> Result<f64> {
    check_action(j)?;
    let e = elliptic((2.0 * j).sqrt())?;
    Ok(0.5 * j / (1.0 - 2.0 * j) * (2.0 * e.first_kind - (1.0 + 2.0 * j) * e.d_integral) / e.second_kind)
}

/// `(1/2) J/(1-2J)^2 ((3+10J) K - 2J(7+2J) D) / E` at `k = sqrt(2J)`.
pub fn gk_mean_n2_elliptic(j: f64) -> Result<f64> {
    check_action(j)?;
    let e = elliptic((2.0 * j).sqrt())?;
    let s = 1.0 - 2.0 * j;
    Ok(0.5 * j / (s * s)
        * ((3.0 + 10.0 * j) * e.first_kind - 2.0 * j * (7.0 + 2.0 * j) * e.d_integral)
        / e.second_kind)
}

/// Spread of the number distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberStatistics {
    pub mean_n: f64,
    pub mean_n2: f64,
    /// `(Δn)^2`.
    pub variance: f64,
    pub delta_n: f64,
    /// `(Δn)^2 / ⟨n⟩ - 1`; the `J -> 0` limit is `0`.
    pub mandel_q: f64,
}

/// `Δn` and the Mandel parameter.
///
/// `Q = (⟨n(n-1)⟩ - ⟨n⟩^2) / ⟨n⟩` avoids the cancellation in
/// `⟨n^2⟩ - ⟨n⟩^2 - ⟨n⟩` at small `J`:
/// `Q = J [(15/4) F(5/2,7/2;3;2J)/F(3/2,5/2;2;2J) - (3/2) F(3/2,5/2;2;2J)/F(1/2,3/2;1;2J)]`,
/// which is `(9/4) J + O(J^2)` and defines `Q(0) = 0`.
pub fn gk_variance_and_mandel(j: f64) -> Result<NumberStatistics> {
    check_action(j)?;
    let x = 2.0 * j;
    let f0 = f(0.5, 1.5, 1.0, x)?;
    let f1 = f(1.5, 2.5, 2.0, x)?;
    let f2 = f(2.5, 3.5, 3.0, x)?;
    let mandel_q = j * (3.75 * f2 / f1 - 1.5 * f1 / f0);
    let mean_n = 1.5 * j * f1 / f0;
    let variance = mean_n * (1.0 + mandel_q);
    Ok(NumberStatistics {
        mean_n,
        mean_n2: gk_mean_n2(j)?,
        variance,
        delta_n: variance.sqrt(),
        mandel_q,
    })
}

/// `Δn` and `Q` from the printed shorthand read as
/// `a = F(1/2,3/2;1;2J)`, `b = F(3/2,5/2;1;2J)`, `d = F(3/2,5/2;2;2J)`:
/// `Δn = sqrt(3J/2)/a (b a - (3/2) J d^2)^{1/2}`, `Q = b/d - (3/2) J d/a - 1`.
pub fn gk_variance_and_mandel_shorthand(j: f64) -> Result<(f64, f64)> {
    check_action(j)?;
    let x = 2.0 * j;
    let a = f(0.5, 1.5, 1.0, x)?;
    let b = f(1.5, 2.5, 1.0, x)?;
    let d = f(1.5, 2.5, 2.0, x)?;
    let delta_n = (1.5 * j).sqrt() / a * (b * a - 1.5 * j * d * d).sqrt();
    Ok((delta_n, b / d - 1.5 * j * d / a - 1.0))
}

/// `⟨J2, γ2 | J1, γ1⟩ = Σ (J1 J2)^{n/2} e^{-iλ_n(γ1-γ2)} / ρ_n / sqrt(F(2J1) F(2J2))`,
/// summed until the geometric tail is negligible.
pub fn gk_overlap(j1: f64, gamma1: f64, j2: f64, gamma2: f64) -> Result<Complex64> {
    check_action(j1)?;
    check_action(j2)?;
    let x = (j1 * j2).sqrt();
    let dg = gamma1 - gamma2;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = 1.0;
    let mut n = 0u64;
    loop {
        sum += power * Complex64::from_polar(1.0, -gk_energy(n) * dg);
        if n >= 1 && power * 2.0 * x / (1.0 - 2.0 * x) <= SUM_TOL * sum.norm() {
            break;
        }
        if power == 0.0 {
            break;
        }
        power *= x / (2.0 * coeff_b_sq(n as i64));
        n += 1;
    }
    Ok(sum / (coherent_norm_sq(2.0 * j1)? * coherent_norm_sq(2.0 * j2)?).sqrt())
}

/// Equal-angle overlap `F(2 sqrt(J1 J2)) / sqrt(F(2J1) F(2J2))`.
pub fn gk_overlap_closed(j1: f64, j2: f64) -> Result<f64> {
    check_action(j1)?;
    check_action(j2)?;
    let cross = coherent_norm_sq(2.0 * (j1 * j2).sqrt())?;
    Ok(cross / (coherent_norm_sq(2.0 * j1)? * coherent_norm_sq(2.0 * j2)?).sqrt())
}

/// Smooth part of the weight,
/// `π/(4(2J-1)) [(16J-5) P_{1/2}(4J-1) - 3 P_{3/2}(4J-1)]` for `0 < J <= 1/2`.
pub fn gk_weight(j: f64) -> Result<f64> {
    if !(j > 0.0 && j <= 0.5) {
        return Err(domain(format!("weight needs 0 < J <= 1/2, got J = {j}")));
    }
    let gap = 2.0 * j - 1.0;
    if gap.abs() < REMOVABLE_BAND {
        let h = 1e-5;
        let slope = (numerator(0.5 + h)? - numerator(0.5 - h)?) / (2.0 * h);
        return Ok(std::f64::consts::PI * slope / 8.0);
    }
    Ok(std::f64::consts::PI / (4.0 * gap) * numerator(j)?)
}

/// Smooth weight plus the atom `π/2` at `J = 1/2`.
pub fn gk_measure() -> RadialMeasure {
    RadialMeasure {
        scale: std::f64::consts::FRAC_PI_2,
        atom: WeightAtom {
            location: 0.5,
            mass: std::f64::consts::FRAC_PI_2,
        },
    }
}

/// Moments `∫ J^n ρ(J) dJ` against `ρ_n`, `n = 0..=n_max`.
pub fn verify_gk_moments(n_max: u32, tol: f64) -> Result<MomentReport> {
    gk_measure().check_moments(n_max, tol, |n| rho(n as u64))
}

/// Smallest `|λ_n - λ_m|` over `n != m <= n_max`; positive means the angle
/// average removes all cross terms.
pub fn spectrum_min_gap(n_max: u64) -> f64 {
    let values: Vec<f64> = (0..=n_max).map(gk_energy).collect();
    let mut gap = f64::INFINITY;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            gap = gap.min((a - b).abs());
        }
    }
    gap
}
