//! Complete elliptic integrals by the arithmetic-geometric mean.
//!
//! With modulus `k` and parameter `m = k^2`:
//!
//! ```text
//! K(k) = ∫_0^{π/2} dt / sqrt(1 - m sin^2 t)
//! E(k) = ∫_0^{π/2} sqrt(1 - m sin^2 t) dt
//! D(k) = ∫_0^{π/2} sin^2 t / sqrt(1 - m sin^2 t) dt = (K - E) / m
//! ```
//!
//! The AGM sequence `a_{n+1} = (a_n + b_n)/2`, `b_{n+1} = sqrt(a_n b_n)`,
//! `c_{n+1} = c_n^2 / (4 a_{n+1})`, started from `(1, k', k)`, gives
//! `K = π / (2 a_∞)` and `K - E = K Σ 2^{n-1} c_n^2`. Every `c_n` carries a
//! factor `m`, so `D` is accumulated directly from `c_n / k` without the
//! cancellation in `(K - E) / m` for small `k`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};

const MAX_AGM_STEPS: usize = 64;

/// Complete elliptic integrals `K`, `E`, `D` at one modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple {
    pub k: f64,
    /// `K(k)`, first kind.
    pub first_kind: f64,
    /// `E(k)`, second kind.
    pub second_kind: f64,
    /// `D(k) = (K - E) / k^2`.
    pub d_integral: f64,
}

/// Complete elliptic integrals for a modulus `0 <= k < 1`.
///
/// `K` diverges logarithmically as `k -> 1`; `k >= 1` is rejected.
pub fn elliptic(k: f64) -> Result<EllipticTriple> {
    if !(0.0..1.0).contains(&k) {
        return Err(domain(format!("elliptic integrals need 0 <= k < 1, got {k}")));
    }
    let m = k * k;
    let m1 = (1.0 - k) * (1.0 + k);
    let (first_kind, second_kind, d_integral) = elliptic_parts(m, m1)?;
    Ok(EllipticTriple {
        k,
        first_kind,
        second_kind,
        d_integral,
    })
}

/// `(K, E, D)` from the parameter `m` and its complement `m1 = 1 - m`.
///
/// Both are passed so callers that know `1 - m` exactly (Legendre functions
/// near `x = -1`) keep full accuracy in the logarithmic regime of `K`.
pub(crate) fn elliptic_parts(m: f64, m1: f64) -> Result<(f64, f64, f64)> {
    if !(m >= 0.0 && m1 > 0.0) {
        return Err(domain(format!("elliptic parameter pair (m = {m}, 1 - m = {m1}) out of range")));
    }
    let k = m.sqrt();
    let mut a = 1.0;
    let mut b = m1.sqrt();
    // c_n / k, with c_0 = k
    let mut c_scaled = 1.0;
    let mut weight = 0.5;
    let mut d_sum = 0.5;
    for _ in 0..MAX_AGM_STEPS {
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        c_scaled = c_scaled * c_scaled * k / (4.0 * a_next);
        weight *= 2.0;
        d_sum += weight * c_scaled * c_scaled;
        a = a_next;
        b = b_next;
        if c_scaled * k <= f64::EPSILON * a {
            let first = FRAC_PI_2 / a;
            let d = first * d_sum;
            let second = first - m * d;
            return Ok((first, second, d));
        }
    }
    Err(Error::NoConvergence {
        what: "AGM iteration",
        work: MAX_AGM_STEPS,
        estimate: FRAC_PI_2 / a,
        error: c_scaled * k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use std::f64::consts::FRAC_PI_4;

    fn by_quadrature(k: f64) -> (f64, f64, f64) {
        let m = k * k;
        let kk = integrate(|t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-13).unwrap();
        let ee = integrate(|t: f64| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-13).unwrap();
        let dd = integrate(
            |t: f64| t.sin().powi(2) / (1.0 - m * t.sin().powi(2)).sqrt(),
            0.0,
            FRAC_PI_2,
            1e-13,
        )
        .unwrap();
        (kk.value, ee.value, dd.value)
    }

    #[test]
    fn values_at_zero() {
        let t = elliptic(0.0).unwrap();
        assert_eq!(t.first_kind, FRAC_PI_2);
        assert_eq!(t.second_kind, FRAC_PI_2);
        assert_eq!(t.d_integral, FRAC_PI_4);
    }

    #[test]
    fn reference_values_at_half() {
        let t = elliptic(0.5).unwrap();
        assert!((t.first_kind - 1.685_750_354_812_596).abs() < 1e-14);
        assert!((t.second_kind - 1.467_462_209_339_427_2).abs() < 1e-14);
        assert!((t.d_integral - (t.first_kind - t.second_kind) / 0.25).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_defining_integrals() {
        for k in [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95] {
            let t = elliptic(k).unwrap();
            let (kk, ee, dd) = by_quadrature(k);
            assert!((t.first_kind - kk).abs() < 1e-12, "K({k})");
            assert!((t.second_kind - ee).abs() < 1e-12, "E({k})");
            assert!((t.d_integral - dd).abs() < 1e-12, "D({k})");
        }
    }

    #[test]
    fn d_identity_on_grid() {
        for i in 1..=9 {
            let k = i as f64 / 10.0;
            let t = elliptic(k).unwrap();
            let rhs = (t.first_kind - t.second_kind) / (k * k);
            assert!((t.d_integral - rhs).abs() <= 1e-12 * rhs, "k = {k}");
            assert!(t.first_kind > t.second_kind && t.second_kind > 0.0);
        }
    }

    #[test]
    fn small_modulus_d_keeps_precision() {
        // D = (π/4)(1 + 3m/8 + ...)
        let k = 1e-6;
        let t = elliptic(k).unwrap();
        assert!((t.d_integral - FRAC_PI_4 * (1.0 + 3.0 * k * k / 8.0)).abs() < 1e-15);
    }

    #[test]
    fn logarithmic_divergence_near_one() {
        // K ~ ln(4 / k') with k' = sqrt(1 - k^2)
        let mut last = 0.0;
        for p in 2..=15 {
            let k = 1.0 - 10f64.powi(-p);
            let t = elliptic(k).unwrap();
            assert!(t.first_kind > last);
            last = t.first_kind;
            let kp = ((1.0 - k) * (1.0 + k)).sqrt();
            if p >= 6 {
                assert!((t.first_kind - (4.0 / kp).ln()).abs() < 1e-4, "p = {p}");
            }
            assert!((t.second_kind - 1.0).abs() < 0.1);
        }
        assert!(last > 17.0 && last.is_finite());
    }

    #[test]
    fn rejects_modulus_at_or_above_one() {
        assert!(matches!(elliptic(1.0), Err(Error::Domain(_))));
        assert!(matches!(elliptic(1.5), Err(Error::Domain(_))));
        assert!(matches!(elliptic(-0.1), Err(Error::Domain(_))));
        assert!(matches!(elliptic(f64::NAN), Err(Error::Domain(_))));
    }
}
