//! Adaptive quadrature on finite intervals, point atoms, and Gauss-Legendre rules.
//!
//! [`integrate`] is a globally adaptive 7/15-point Gauss-Kronrod scheme: the
//! subinterval with the largest error estimate is bisected until the summed
//! estimate meets the tolerance. Kronrod nodes are interior, so integrands
//! with integrable endpoint singularities are never evaluated at the ends.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

/// Hard cap on integrand evaluations per call.
pub const MAX_EVALUATIONS: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const EVALS_PER_PANEL: usize = 15;

/// Value of an integral with its error estimate and cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// A point mass `mass · δ(t - location)` attached to a weight function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightAtom {
    pub location: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |t: f64| {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: t })
        }
    };

    let fc = eval(center)?;
    let mut gauss = fc * WG[3];
    let mut kronrod = fc * WGK[7];
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let width = half.abs();
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: rescale_error((kronrod - gauss) * half, res_abs * width, res_asc * width),
    })
}

/// Integrate `f` over `[a, b]` until the error estimate is at most
/// `tol · max(1, |value|)`.
///
/// Fails with `NoConvergence` once [`MAX_EVALUATIONS`] is spent or the worst
/// panel cannot be bisected further in double precision, and with
/// `NonFinite` if `f` returns NaN or an infinity.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(domain(format!("integration needs finite a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(domain(format!("integration tolerance must be positive, got {tol}")));
    }

    let first = kronrod_panel(&f, a, b)?;
    let mut evaluations = EVALS_PER_PANEL;
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    while error > tol * value.abs().max(1.0) {
        let worst = *heap.peek().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        let splittable = worst.a < mid && mid < worst.b;
        if !splittable || evaluations + 2 * EVALS_PER_PANEL > MAX_EVALUATIONS {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature",
                work: evaluations,
                estimate: value,
                error,
            });
        }
        heap.pop();
        let left = kronrod_panel(&f, worst.a, mid)?;
        let right = kronrod_panel(&f, mid, worst.b)?;
        evaluations += 2 * EVALS_PER_PANEL;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Fixed summation order: left to right.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    let err_estimate = panels.iter().map(|p| p.error).sum();
    Ok(QuadratureResult {
        value,
        err_estimate,
        evaluations,
    })
}

/// `∫_a^b integrand(t) density(t) dt + Σ mass · integrand(location)`.
///
/// Atoms are added exactly, independent of `tol`.
pub fn integrate_with_atoms<D, G>(
    density: D,
    atoms: &[WeightAtom],
    a: f64,
    b: f64,
    tol: f64,
    integrand: G,
) -> Result<QuadratureResult>
where
    D: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    for atom in atoms {
        if !(atom.mass.is_finite() && atom.location >= a && atom.location <= b) {
            return Err(domain(format!(
                "atom {atom:?} must have finite mass and lie in [{a}, {b}]"
            )));
        }
    }
    let smooth = integrate(|t| integrand(t) * density(t), a, b, tol)?;
    let discrete: f64 = atoms.iter().map(|at| at.mass * integrand(at.location)).sum();
    Ok(QuadratureResult {
        value: smooth.value + discrete,
        ..smooth
    })
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// nodes ascending. Exact for polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            deriv = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / deriv;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::RefCell;
    use std::f64::consts::PI;

    #[test]
    fn constant_integrand() {
        let r = integrate(|_| 1.0, 0.0, 0.5, 1e-10).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        assert!(r.err_estimate >= 0.0 && r.evaluations >= 15);
    }

    #[test]
    fn inverse_square_root_singularity() {
        let r = integrate(|t: f64| 1.0 / t.sqrt(), 0.0, 1.0, 1e-8).unwrap();
        assert!((r.value - 2.0).abs() <= 2e-8, "{r:?}");
        assert!(r.err_estimate <= 1e-8 * 2.0);
    }

    #[test]
    fn sine_over_half_period() {
        let r = integrate(f64::sin, 0.0, PI, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn logarithmic_endpoint() {
        // ∫_0^1 ln t dt = -1
        let r = integrate(f64::ln, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn never_touches_endpoints() {
        let seen = RefCell::new(Vec::new());
        integrate(
            |t| {
                seen.borrow_mut().push(t);
                t.ln()
            },
            0.0,
            0.5,
            1e-10,
        )
        .unwrap();
        assert!(seen.borrow().iter().all(|&t| t > 0.0 && t < 0.5));
    }

    #[test]
    fn pure_atom() {
        for n in 0..6 {
            let r = integrate_with_atoms(
                |_| 0.0,
                &[WeightAtom { location: 0.5, mass: 1.0 }],
                0.0,
                0.5,
                1e-10,
                |t| t.powi(n),
            )
            .unwrap();
            assert_eq!(r.value, 0.5f64.powi(n));
        }
    }

    #[test]
    fn unit_density_no_atoms() {
        let r = integrate_with_atoms(|_| 1.0, &[], 0.0, 0.5, 1e-10, |_| 1.0).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn atom_outside_interval_rejected() {
        let r = integrate_with_atoms(
            |_| 1.0,
            &[WeightAtom { location: 0.7, mass: 1.0 }],
            0.0,
            0.5,
            1e-10,
            |_| 1.0,
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn linearity() {
        let f = |t: f64| (3.0 * t).cos();
        let g = |t: f64| t * t * (-t).exp();
        let (alpha, beta) = (2.5, -0.75);
        let i_f = integrate(f, -1.0, 2.0, 1e-13).unwrap().value;
        let i_g = integrate(g, -1.0, 2.0, 1e-13).unwrap().value;
        let i_h = integrate(|t| alpha * f(t) + beta * g(t), -1.0, 2.0, 1e-13).unwrap().value;
        assert!((i_h - (alpha * i_f + beta * i_g)).abs() < 1e-12);
    }

    #[test]
    fn non_finite_integrand_reported() {
        let r = integrate(|t: f64| if t > 0.3 { f64::NAN } else { t }, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn unattainable_tolerance_exhausts_budget() {
        let r = integrate(|t: f64| t.ln(), 0.0, 1.0, 1e-17);
        assert!(matches!(r, Err(Error::NoConvergence { .. })), "{r:?}");
    }

    #[test]
    fn bad_interval_rejected() {
        assert!(matches!(integrate(|t| t, 1.0, 0.0, 1e-10), Err(Error::Domain(_))));
        assert!(matches!(integrate(|t| t, 0.0, 1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in 1..=20 {
            let (x, w) = gauss_legendre(n);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            for deg in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
                assert!((q - exact).abs() < 1e-14, "n = {n}, degree {deg}");
            }
        }
    }
}
