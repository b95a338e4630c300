//! Legendre polynomials and Legendre functions of fractional degree.

use std::f64::consts::FRAC_2_PI;

use num_complex::Complex64;

use super::{elliptic_parts, hyp2f1, SeriesControl};
use crate::error::{domain, Result};

/// `P_n(x)` from the three-term recurrence
/// `(k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}`, seeded with `P_0 = 1`, `P_{-1} = 0`.
pub fn legendre_pn(n: u32, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut exact: Option<u128> = Some(1);
    let mut approx = 1.0f64;
    for i in 0..k {
        let (num, den) = ((n - i) as u128, (i + 1) as u128);
        // exact while it fits: c * (n-i) / (i+1) stays integral at each step
        exact = exact.and_then(|c| c.checked_mul(num)).map(|c| c / den);
        approx = approx * num as f64 / den as f64;
    }
    exact.map_or(approx, |c| c as f64)
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `P_n(x)` from the explicit finite sum
/// `Σ_m (-1)^m (2n-2m)! / (2^n m! (n-m)! (n-2m)!) x^{n-2m}`, `m = 0..⌊n/2⌋`.
///
/// The coefficients equal `(-1)^m C(n,m) C(2n-2m,n) / 2^n`, which are exact
/// in double precision up to `n ≈ 25`. Their magnitudes grow much faster than
/// `P_n` itself, so the polynomial is evaluated with compensated Horner
/// steps to keep the result accurate near `|x| = 1`.
pub fn legendre_pn_explicit(n: u32, x: f64) -> f64 {
    let scale = 0.5f64.powi(n as i32);
    let mut coeffs = vec![0.0f64; n as usize + 1];
    for m in 0..=n / 2 {
        let c = binomial(n, m) * binomial(2 * n - 2 * m, n) * scale;
        coeffs[(n - 2 * m) as usize] = if m % 2 == 0 { c } else { -c };
    }

    let mut s = coeffs[n as usize];
    let mut err = 0.0;
    for &c in coeffs[..n as usize].iter().rev() {
        let (p, pe) = two_prod(s, x);
        let (t, se) = two_sum(p, c);
        s = t;
        err = err * x + (pe + se);
    }
    s + err
}

fn is_half_odd_integer(nu: f64) -> bool {
    let twice = 2.0 * nu;
    twice.fract() == 0.0 && (twice as i64).rem_euclid(2) == 1
}

/// Above this hypergeometric argument `(1 - x)/2` the direct series slows
/// down and the elliptic route takes over for half-odd-integer degrees.
const SERIES_SWITCH: f64 = 0.75;

/// Legendre function of the first kind `P_ν(x) = 2F1(-ν, ν+1; 1; (1-x)/2)`.
///
/// Defined for `-1 < x < 3` (the series converges for `|1 - x| < 2`). For
/// `x < -0.5` and `ν` a half-odd integer the evaluation goes through
/// complete elliptic integrals, which resolve the logarithmic singularity at
/// `x = -1`; any other degree keeps summing the series and reports
/// `NoConvergence` if it cannot finish.
pub fn legendre_pnu(nu: f64, x: f64) -> Result<f64> {
    if !(nu.is_finite() && x.is_finite()) {
        return Err(domain("Legendre function arguments must be finite"));
    }
    if x <= -1.0 {
        return Err(domain(format!("P_nu(x) is singular at x = -1, got x = {x}")));
    }
    if x >= 3.0 {
        return Err(domain(format!("P_nu(x) series needs x < 3, got x = {x}")));
    }
    legendre_pnu_split(nu, 0.5 * (1.0 - x), 0.5 * (1.0 + x))
}

/// `P_ν` at the point with `w = (1 - x)/2` and `w1 = (1 + x)/2`.
///
/// Callers that can form `w1` exactly (e.g. `x = 4t - 1` gives `w1 = 2t`)
/// avoid losing digits to the cancellation in `1 + x` near `x = -1`.
pub(crate) fn legendre_pnu_split(nu: f64, w: f64, w1: f64) -> Result<f64> {
    if w > SERIES_SWITCH && is_half_odd_integer(nu) {
        legendre_half_odd_elliptic(nu, w, w1)
    } else {
        legendre_pnu_series(nu, w)
    }
}

pub(crate) fn legendre_pnu_series(nu: f64, w: f64) -> Result<f64> {
    let ctl = SeriesControl::default();
    hyp2f1(-nu, nu + 1.0, 1.0, Complex64::new(w, 0.0), &ctl).map(|s| s.value.re)
}

/// Half-odd-integer degrees from `P_{-1/2} = (2/π) K(k)` and
/// `P_{1/2} = (2/π) (2E(k) - K(k))` with `k^2 = (1 - x)/2`, followed by the
/// upward degree recurrence `(μ+1) P_{μ+1} = (2μ+1) x P_μ - μ P_{μ-1}`.
pub(crate) fn legendre_half_odd_elliptic(nu: f64, w: f64, w1: f64) -> Result<f64> {
    // P_ν = P_{-ν-1}
    let nu = if nu < -0.5 { -nu - 1.0 } else { nu };
    let (kk, ee, _) = elliptic_parts(w, w1)?;
    let x = w1 - w;
    let mut prev = FRAC_2_PI * kk;
    if nu == -0.5 {
        return Ok(prev);
    }
    let mut cur = FRAC_2_PI * (2.0 * ee - kk);
    let mut mu = 0.5;
    while mu < nu {
        let next = ((2.0 * mu + 1.0) * x * cur - mu * prev) / (mu + 1.0);
        prev = cur;
        cur = next;
        mu += 1.0;
    }
    Ok(cur)
}
