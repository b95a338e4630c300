//! Gauss hypergeometric function by direct power series.

use num_complex::Complex64;

use super::SeriesControl;
use crate::error::{domain, Error, Result};

/// A summed series together with the number of terms that went into it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
}

fn is_nonpositive_integer(c: f64) -> bool {
    c <= 0.0 && c.fract() == 0.0
}

/// `2F1(a, b; c; z) = sum_n (a)_n (b)_n / ((c)_n n!) z^n` for `|z| < 1`.
///
/// Terms are generated by their ratio. Once the ratio magnitude is monotone
/// the remaining tail is bounded by a geometric series, and summation stops
/// when that bound drops below `ctl.tol * |sum|`. A series with `a` or `b`
/// equal to `-n` stops after exactly `n + 1` terms.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: Complex64, ctl: &SeriesControl) -> Result<SeriesValue> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("2F1 parameters must be finite"));
    }
    if is_nonpositive_integer(c) {
        return Err(domain(format!("2F1 lower parameter c = {c} is a nonpositive integer")));
    }
    let modz = z.norm();
    if modz >= 1.0 {
        return Err(domain(format!("2F1 series needs |z| < 1, got |z| = {modz}")));
    }

    // Beyond this index every factor of the term ratio has settled and its
    // magnitude approaches |z| monotonically.
    let monotone_from = (2.0 * (a.abs() + b.abs() + c.abs())).ceil() as usize + 2;
    let ratio = |n: usize| {
        let n = n as f64;
        (a + n) * (b + n) / ((c + n) * (n + 1.0))
    };

    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut n = 0usize;
    loop {
        let next = term * ratio(n) * z;
        if next == Complex64::new(0.0, 0.0) {
            return Ok(SeriesValue { value: sum, terms: n + 1 });
        }
        sum += next;
        term = next;
        n += 1;

        if n >= monotone_from {
            let q = (ratio(n).abs() * modz).max(modz);
            if q < 1.0 {
                let tail = term.norm() * q / (1.0 - q);
                if tail <= ctl.tol * sum.norm() {
                    return Ok(SeriesValue { value: sum, terms: n + 1 });
                }
            }
        }
        if n + 1 >= ctl.max_terms {
            return Err(Error::NoConvergence {
                what: "2F1 series",
                work: n + 1,
                estimate: sum.norm(),
                error: term.norm(),
            });
        }
    }
}

/// Real-argument convenience wrapper around [`hyp2f1`].
pub fn hyp2f1_real(a: f64, b: f64, c: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    hyp2f1(a, b, c, Complex64::new(x, 0.0), ctl).map(|s| s.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{legendre_pn, pochhammer};
    use proptest::prelude::*;

    // Every coefficient rebuilt from scratch as a product of factor ratios.
    fn brute(a: f64, b: f64, c: f64, z: Complex64, terms: u32) -> Complex64 {
        (0..terms)
            .map(|n| {
                let coeff: f64 = (0..n)
                    .map(|k| {
                        let k = k as f64;
                        (a + k) * (b + k) / ((c + k) * (k + 1.0))
                    })
                    .product();
                z.powu(n) * coeff
            })
            .sum()
    }

    #[test]
    fn brute_helper_agrees_with_pochhammer_definition() {
        let z = Complex64::new(0.3, -0.2);
        let mut fact = 1.0;
        let mut direct = Complex64::new(0.0, 0.0);
        for n in 0..30u32 {
            if n > 0 {
                fact *= n as f64;
            }
            direct += z.powu(n) * (pochhammer(0.5, n) * pochhammer(1.5, n) / (pochhammer(1.0, n) * fact));
        }
        assert!((direct - brute(0.5, 1.5, 1.0, z, 30)).norm() < 1e-14);
    }

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn constant_term_at_origin() {
        let s = hyp2f1(0.3, -1.7, 2.5, Complex64::new(0.0, 0.0), &ctl()).unwrap();
        assert_eq!(s.value, Complex64::new(1.0, 0.0));
        assert_eq!(s.terms, 1);
    }

    #[test]
    fn logarithm_identity() {
        let v = hyp2f1_real(1.0, 1.0, 2.0, 0.5, &ctl()).unwrap();
        let expected = -(0.5f64).ln() / 0.5;
        assert!((v - expected).abs() <= 1e-15 * expected, "{v} vs {expected}");
        assert!((v - 1.386_294_361_119_890_6).abs() < 1e-15);
    }

    #[test]
    fn matches_brute_partial_sum() {
        let z = Complex64::new(0.18, 0.0);
        let v = hyp2f1(0.5, 1.5, 1.0, z, &ctl()).unwrap().value;
        let b = brute(0.5, 1.5, 1.0, z, 41);
        assert!((v - b).norm() < 1e-12, "{v} vs {b}");
    }

    #[test]
    fn complex_argument_matches_brute_sum() {
        let z = Complex64::new(0.3, 0.4);
        let v = hyp2f1(0.75, 1.25, 1.0, z, &ctl()).unwrap().value;
        let b = brute(0.75, 1.25, 1.0, z, 200);
        assert!((v - b).norm() < 1e-13, "{v} vs {b}");
    }

    #[test]
    fn terminating_series_uses_n_plus_one_terms() {
        for n in 0..15u32 {
            let x = 0.37;
            let s = hyp2f1(-(n as f64), n as f64 + 1.0, 1.0, Complex64::new((1.0 - x) / 2.0, 0.0), &ctl())
                .unwrap();
            assert_eq!(s.terms, n as usize + 1, "degree {n}");
            let p = legendre_pn(n, x);
            // Σ|terms| = 2F1(-n, n+1; 1; -w) = P_n(1 + 2w) bounds the rounding error
            let condition = legendre_pn(n, 1.0 + (1.0 - x));
            assert!((s.value.re - p).abs() <= 1e-14 * condition, "degree {n}");
        }
    }

    #[test]
    fn rejects_outside_unit_disk() {
        assert!(matches!(
            hyp2f1(0.5, 1.5, 1.0, Complex64::new(0.6, 0.8), &ctl()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(hyp2f1_real(0.5, 1.5, 1.0, 1.0, &ctl()), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_nonpositive_integer_c() {
        assert!(matches!(hyp2f1_real(0.5, 1.5, -2.0, 0.1, &ctl()), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1_real(0.5, 1.5, 0.0, 0.1, &ctl()), Err(Error::Domain(_))));
    }

    #[test]
    fn reports_no_convergence_when_budget_runs_out() {
        let tight = SeriesControl::new(1e-16, 20).unwrap();
        let r = hyp2f1_real(0.5, 1.5, 1.0, 0.99, &tight);
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn divergence_rate_near_unit_argument() {
        // 2F1(1/2, 3/2; 1; x) ~ (2/pi) / (1 - x) as x -> 1
        for k in 1..=4 {
            let eps = 10f64.powi(-k);
            let v = hyp2f1_real(0.5, 1.5, 1.0, 1.0 - eps, &ctl()).unwrap();
            let scaled = v * eps;
            assert!((scaled - 2.0 / std::f64::consts::PI).abs() < 2.0 * eps.sqrt(), "{k}: {scaled}");
        }
    }

    proptest! {
        #[test]
        fn pfaff_transformation(a in -2.0f64..3.0, b in -2.0f64..3.0, c in 0.3f64..4.0, x in -0.8f64..0.45) {
            let lhs = hyp2f1_real(a, b, c, x, &ctl()).unwrap();
            let rhs = (1.0 - x).powf(-a) * hyp2f1_real(a, c - b, c, x / (x - 1.0), &ctl()).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-11 * lhs.abs().max(1.0), "{} vs {}", lhs, rhs);
        }
    }
}
