//! Weight functions that solve the coherent-state moment problems.
//!
//! Both coherent-state families are resolved by the same function on
//! `(0, 1/2]`,
//!
//! ```text
//! w(t) = [(16t - 5) P_{1/2}(4t - 1) - 3 P_{3/2}(4t - 1)] / (2 (2t - 1)),
//! ```
//!
//! plus a point mass at `t = 1/2`. The numerator vanishes at `t = 1/2`
//! (`P_ν(1) = 1`), leaving a removable singularity with limit `-1/2`. At
//! `t -> 0` the Legendre functions have a logarithmic singularity, which is
//! integrable.

use std::cell::RefCell;

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_with_atoms, QuadratureResult, WeightAtom};
use crate::specfun::legendre_pnu_split;

/// Within `|2t - 1|` of this size the quotient is replaced by its limit.
pub(crate) const REMOVABLE_BAND: f64 = 1e-6;
/// Half-width of the symmetric difference used for that limit.
const LIMIT_STEP: f64 = 1e-5;

/// `(16t - 5) P_{1/2}(4t - 1) - 3 P_{3/2}(4t - 1)`.
pub(crate) fn numerator(t: f64) -> Result<f64> {
    // x = 4t - 1, so (1 - x)/2 = 1 - 2t and (1 + x)/2 = 2t exactly
    let (w, w1) = (1.0 - 2.0 * t, 2.0 * t);
    let p12 = legendre_pnu_split(0.5, w, w1)?;
    let p32 = legendre_pnu_split(1.5, w, w1)?;
    Ok((16.0 * t - 5.0) * p12 - 3.0 * p32)
}

/// The smooth part `w(t)` for `0 < t <= 1/2`.
pub fn legendre_weight_density(t: f64) -> Result<f64> {
    if !(t > 0.0 && t <= 0.5) {
        return Err(domain(format!("weight density needs 0 < t <= 1/2, got t = {t}")));
    }
    let gap = 2.0 * t - 1.0;
    if gap.abs() < REMOVABLE_BAND {
        let slope = (numerator(0.5 + LIMIT_STEP)? - numerator(0.5 - LIMIT_STEP)?) / (2.0 * LIMIT_STEP);
        // numerator ≈ slope (t - 1/2) and the denominator is 4 (t - 1/2)
        return Ok(slope / 4.0);
    }
    Ok(numerator(t)? / (2.0 * gap))
}

/// A measure `scale · w(t) dt + atom` on `[0, 1/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMeasure {
    pub scale: f64,
    pub atom: WeightAtom,
}

impl RadialMeasure {
    pub fn density(&self, t: f64) -> Result<f64> {
        Ok(self.scale * legendre_weight_density(t)?)
    }

    /// `∫_0^{1/2} g(t) dμ(t)`, with the quadrature asked for `tol`.
    pub fn integrate<G: Fn(f64) -> f64>(&self, g: G, tol: f64) -> Result<QuadratureResult> {
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let density = |t: f64| match self.density(t) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        };
        let result = integrate_with_atoms(density, &[self.atom], 0.0, 0.5, tol, g);
        match failure.into_inner() {
            Some(e) => Err(e),
            None => result,
        }
    }

    /// Power moment `∫ t^n dμ(t)`.
    pub fn moment(&self, n: u32, tol: f64) -> Result<QuadratureResult> {
        self.integrate(|t| t.powi(n as i32), tol)
    }

    /// Compare moments `0..=n_max` against `expected(n)`, each to relative `tol`.
    pub fn check_moments<E: Fn(u32) -> f64>(&self, n_max: u32, tol: f64, expected: E) -> Result<MomentReport> {
        let mut rows = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            let want = expected(n);
            // the quadrature tolerance is absolute for values below one
            let q = self.moment(n, 0.1 * tol * want.abs().min(1.0))?;
            let abs_error = (q.value - want).abs();
            rows.push(MomentRow {
                n,
                computed: q.value,
                expected: want,
                rel_error: abs_error / want.abs(),
                err_estimate: q.err_estimate,
            });
        }
        Ok(MomentReport { rows, tol })
    }
}

/// One moment comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub n: u32,
    pub computed: f64,
    pub expected: f64,
    pub rel_error: f64,
    pub err_estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub rows: Vec<MomentRow>,
    pub tol: f64,
}

impl MomentReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.rel_error <= self.tol)
    }

    pub fn max_rel_error(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_error).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::legendre_pnu;

    #[test]
    fn limit_at_one_half() {
        // numerator'(1/2) = 16 + 3 · 4 · P'_{1/2}(1) - 12 P'_{3/2}(1) with P'_ν(1) = ν(ν+1)/2
        let slope = 16.0 + 12.0 * 0.375 - 12.0 * 1.875;
        let exact = slope / 4.0;
        assert_eq!(exact, -0.5);
        let at = legendre_weight_density(0.5).unwrap();
        assert!((at - exact).abs() < 1e-9, "{at}");
        let near = legendre_weight_density(0.5 - 4e-7).unwrap();
        assert!((near - exact).abs() < 1e-6);
        let outside = legendre_weight_density(0.5 - 1e-4).unwrap();
        assert!((outside - exact).abs() < 1e-3);
    }

    #[test]
    fn numerator_uses_public_legendre_values() {
        for &t in &[0.05, 0.2, 0.3, 0.45] {
            let x = 4.0 * t - 1.0;
            let direct = (16.0 * t - 5.0) * legendre_pnu(0.5, x).unwrap() - 3.0 * legendre_pnu(1.5, x).unwrap();
            assert!((numerator(t).unwrap() - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn logarithmic_growth_at_origin() {
        // w(t) ~ (1/π) ln t as t -> 0
        let a = legendre_weight_density(1e-10).unwrap();
        let b = legendre_weight_density(1e-12).unwrap();
        assert!(((a - b) - (100f64).ln() / std::f64::consts::PI).abs() < 1e-6, "{}", a - b);
    }

    #[test]
    fn density_domain() {
        assert!(legendre_weight_density(0.0).is_err());
        assert!(legendre_weight_density(0.51).is_err());
        assert!(legendre_weight_density(-0.1).is_err());
    }
}
