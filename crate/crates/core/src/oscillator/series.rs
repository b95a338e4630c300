//! Sums of the form `Σ w(n) x^n / ρ_n` that normalize coherent states.
//!
//! With `w = 1` the sum is `2F1(1/2, 3/2; 1; 2x)`, convergent for `|x| < 1/2`.
//! Terms are built by the ratio `x / (2 b_n^2)`, which never exceeds `2x`,
//! so the tail after any term is bounded by a geometric series.

use crate::error::{domain, Error, Result};
use crate::specfun::{elliptic_parts, hyp2f1_real, SeriesControl};

use super::coeff_b_sq;

/// Cap on the number of terms in [`coherent_series`].
pub const MAX_SERIES_TERMS: usize = 10_000_000;

/// `2F1(1/2, 3/2; 1; x) = Σ (x/2)^n / ρ_n` for `0 <= x < 1`.
pub fn coherent_norm_sq(x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(domain(format!("normalization series needs 0 <= x < 1, got {x}")));
    }
    hyp2f1_real(0.5, 1.5, 1.0, x, &SeriesControl::default())
}

/// `1 / 2F1(1/2, 3/2; 1; x)` from `2F1(1/2, 3/2; 1; x) = (2/π) E(x) / (1 - x)`.
///
/// `x1 = 1 - x` is passed separately; the result tends to zero at `x = 1`.
pub fn coherent_norm_sq_inv(x: f64, x1: f64) -> Result<f64> {
    if x1 == 0.0 && x == 1.0 {
        return Ok(0.0);
    }
    let (_, e, _) = elliptic_parts(x, x1)?;
    Ok(std::f64::consts::FRAC_PI_2 * x1 / e)
}

/// `Σ_n w(n) x^n / ρ_n` summed until the geometric tail bound falls below
/// `rel_tol` of the partial sum.
///
/// `growth` is an exponent `p` with `w(k+1)/w(k) <= ((k+1)/k)^p` for `k >= 1`,
/// e.g. `p = 2` for `w(n) = n^2` and `p = 0` for weights that do not increase.
pub fn coherent_series<W: Fn(u64) -> f64>(x: f64, weight: W, growth: i32, rel_tol: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&x) {
        return Err(domain(format!("weighted normalization sum needs 0 <= x < 1/2, got {x}")));
    }
    let mut power = 1.0; // x^n / ρ_n
    let mut sum = 0.0;
    for n in 0..MAX_SERIES_TERMS as u64 {
        let term = weight(n) * power;
        sum += term;
        if n >= 1 {
            let q = 2.0 * x * ((n as f64 + 1.0) / n as f64).powi(growth);
            if q < 1.0 && term.abs() * q / (1.0 - q) <= rel_tol * sum.abs() {
                return Ok(sum);
            }
        }
        if power == 0.0 {
            return Ok(sum);
        }
        power *= x / (2.0 * coeff_b_sq(n as i64));
    }
    Err(Error::NoConvergence {
        what: "coherent_series",
        work: MAX_SERIES_TERMS,
        estimate: sum,
        error: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::rho;

    #[test]
    fn inverse_matches_series() {
        for &x in &[0.0, 0.1, 0.36, 0.72, 0.9] {
            let direct = 1.0 / coherent_norm_sq(x).unwrap();
            let via_e = coherent_norm_sq_inv(x, 1.0 - x).unwrap();
            assert!((direct - via_e).abs() < 1e-14 * direct.max(1.0), "{x}: {direct} {via_e}");
        }
        assert_eq!(coherent_norm_sq_inv(1.0, 0.0).unwrap(), 0.0);
        // (1 - x) F -> 2/π
        let x1 = 1e-12;
        let v = coherent_norm_sq_inv(1.0 - x1, x1).unwrap() / x1;
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn weighted_sum_against_explicit_terms() {
        let x: f64 = 0.3;
        let explicit: f64 = (0..400u64).map(|n| (n * n) as f64 * x.powi(n as i32) / rho(n)).sum();
        let s = coherent_series(x, |n| (n * n) as f64, 2, 1e-17).unwrap();
        assert!((s - explicit).abs() < 1e-14 * explicit);
    }

    #[test]
    fn unweighted_sum_is_hypergeometric() {
        for &x in &[0.0, 0.05, 0.2, 0.45, 0.49] {
            let s = coherent_series(x, |_| 1.0, 0, 1e-17).unwrap();
            let f = coherent_norm_sq(2.0 * x).unwrap();
            assert!((s - f).abs() < 1e-13 * f, "{x}");
        }
    }

    #[test]
    fn domain() {
        assert!(coherent_series(0.5, |_| 1.0, 0, 1e-16).is_err());
        assert!(coherent_norm_sq(1.0).is_err());
        assert!(coherent_norm_sq(-0.1).is_err());
    }
}
