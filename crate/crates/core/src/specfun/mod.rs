//! Scalar special-function kernels.
//!
//! Everything in here is a pure function of its arguments and works in
//! double precision: rising factorials, double factorials, the Gauss
//! hypergeometric series, Legendre polynomials of integer degree, Legendre
//! functions of fractional degree on the cut `(-1, 1]`, and the complete
//! elliptic integrals `K`, `E` and `D`.

mod elliptic;
mod hypergeometric;
mod legendre;

pub use elliptic::{elliptic, EllipticTriple};
pub(crate) use elliptic::elliptic_parts;
pub use hypergeometric::{hyp2f1, hyp2f1_real, SeriesValue};
pub use legendre::{legendre_pn, legendre_pn_explicit, legendre_pnu};
pub(crate) use legendre::legendre_pnu_split;

use crate::error::{domain, Result};

/// Stopping rule for power series: relative tolerance and a hard cap on terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub tol: f64,
    pub max_terms: usize,
}

impl SeriesControl {
    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(domain(format!("series tolerance must be positive, got {tol}")));
        }
        if max_terms == 0 {
            return Err(domain("series term cap must be at least 1"));
        }
        Ok(Self { tol, max_terms })
    }
}

impl Default for SeriesControl {
    /// Sum to full double precision, allowing slow convergence close to the
    /// unit circle.
    fn default() -> Self {
        Self {
            tol: 1e-16,
            max_terms: 1_000_000,
        }
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
///
/// Evaluated as a running product; the truncations used by this crate never
/// go far enough for the product to overflow where a gamma ratio would lose
/// accuracy.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// Double factorial `n!! = n (n-2) (n-4) ...`, with `0!! = (-1)!! = 1`.
///
/// # Panics
/// If `n < -1`.
pub fn double_factorial(n: i64) -> f64 {
    assert!(n >= -1, "double factorial is defined for n >= -1, got {n}");
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(0.5, 0), 1.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        assert_eq!(pochhammer(-3.0, 4), 0.0);
    }

    #[test]
    fn pochhammer_matches_factorial_ratio() {
        // (1)_n = n! and (2)_n = (n+1)!
        let mut fact = 1.0;
        for n in 1..=20u32 {
            fact *= n as f64;
            assert_eq!(pochhammer(1.0, n), fact);
            assert_eq!(pochhammer(2.0, n - 1) , fact);
        }
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1), 1.0);
        assert_eq!(double_factorial(0), 1.0);
        assert_eq!(double_factorial(5), 15.0);
        assert_eq!(double_factorial(6), 48.0);
    }

    #[test]
    #[should_panic]
    fn double_factorial_rejects_below_minus_one() {
        double_factorial(-2);
    }

    #[test]
    fn series_control_validation() {
        assert!(SeriesControl::new(0.0, 10).is_err());
        assert!(SeriesControl::new(f64::NAN, 10).is_err());
        assert!(SeriesControl::new(1e-10, 0).is_err());
        assert!(SeriesControl::new(1e-10, 1).is_ok());
    }
}
