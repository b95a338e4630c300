//! The check suite behind `losc verify`.
//!
//! Every check compares a computed number with an expected one. Hard checks
//! decide the exit status; findings and errata are reported alongside but
//! never fail a run. Errata record places where a closed form, taken as
//! written, disagrees with the quantity it is meant to express.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bg::{
    analytic_norm_sq, analytic_norm_sq_with_inverse_norm, analytic_repr, bg_measure, bg_measure_normalized,
    bg_overlap, bg_state, bg_wavefunction_closed, bg_wavefunction_series, bg_weight, coherent_transform,
    inner_product, verify_bg_moments, verify_bg_moments_with,
};
use crate::error::Result;
use crate::gk::{
    gk_evolve, gk_mean_h, gk_mean_n, gk_mean_n2, gk_mean_n2_direct, gk_mean_n2_elliptic, gk_mean_n_direct,
    gk_mean_n_elliptic, gk_overlap, gk_overlap_closed, gk_state, gk_variance_and_mandel,
    gk_variance_and_mandel_shorthand, gk_weight, spectrum_min_gap, verify_gk_moments,
};
use crate::oscillator::{
    build_ladder, build_number_hamiltonian, build_p, build_x, coherent_norm_sq, coherent_series,
    commutator_diagonal_exact,
};
use crate::specfun::{hyp2f1_real, legendre_pnu, SeriesControl};
use crate::weight::MomentReport;

/// Highest moment order checked.
pub const MOMENT_ORDER: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Hard,
    Finding,
    Erratum,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Hard => "hard",
            CheckKind::Finding => "finding",
            CheckKind::Erratum => "erratum",
        }
    }
}

/// Which error is held against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Abs,
    Rel,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Abs => "abs",
            Metric::Rel => "rel",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    pub kind: CheckKind,
    pub metric: Metric,
    pub computed: f64,
    pub expected: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tol: f64,
    pub passed: bool,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Fock-space dimension for operators and truncated states.
    pub truncation: usize,
    /// Relative tolerance of the quadrature-based checks.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            truncation: 128,
            tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl Report {
    /// True when every hard check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.kind == CheckKind::Hard).all(|c| c.passed)
    }

    pub fn failed_hard(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.kind == CheckKind::Hard && !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(
        &mut self,
        group: &'static str,
        name: impl Into<String>,
        kind: CheckKind,
        metric: Metric,
        tol: f64,
        outcome: Result<(f64, f64)>,
        note: &str,
    ) {
        let name = name.into();
        let check = match outcome {
            Ok((computed, expected)) => {
                let abs_error = (computed - expected).abs();
                let rel_error = if expected == 0.0 { abs_error } else { abs_error / expected.abs() };
                let err = match metric {
                    Metric::Abs => abs_error,
                    Metric::Rel => rel_error,
                };
                Check {
                    group,
                    name,
                    kind,
                    metric,
                    computed,
                    expected,
                    abs_error,
                    rel_error,
                    tol,
                    passed: err <= tol,
                    note: note.to_string(),
                }
            }
            Err(e) => Check {
                group,
                name,
                kind,
                metric,
                computed: f64::NAN,
                expected: f64::NAN,
                abs_error: f64::NAN,
                rel_error: f64::NAN,
                tol,
                passed: false,
                note: e.to_string(),
            },
        };
        self.checks.push(check);
    }

    fn hard(&mut self, group: &'static str, name: impl Into<String>, metric: Metric, tol: f64, outcome: Result<(f64, f64)>) {
        self.record(group, name, CheckKind::Hard, metric, tol, outcome, "");
    }

    fn moments(&mut self, group: &'static str, prefix: &str, report: Result<MomentReport>, tol: f64) {
        match report {
            Ok(r) => {
                for row in r.rows {
                    self.hard(group, format!("{prefix}_n{}", row.n), Metric::Rel, tol, Ok((row.computed, row.expected)));
                }
            }
            Err(e) => self.hard(group, format!("{prefix}_n0..{MOMENT_ORDER}"), Metric::Rel, tol, Err(e)),
        }
    }
}

/// Run every check.
pub fn run_suite(config: VerifyConfig) -> Report {
    let mut s = Suite { checks: Vec::new() };
    operator_checks(&mut s, config);
    bg_checks(&mut s, config);
    gk_checks(&mut s, config);
    statistics_checks(&mut s);
    Report { config, checks: s.checks }
}

fn operator_checks(s: &mut Suite, cfg: VerifyConfig) {
    let n = cfg.truncation;
    let g = "operators";
    let ops = (|| {
        let x = build_x(n)?;
        let p = build_p(n)?;
        let (raise, lower) = build_ladder(n)?;
        let (_, h) = build_number_hamiltonian(n)?;
        Ok((x, p, raise, lower, h))
    })();
    let (x, p, raise, lower, h) = match ops {
        Ok(v) => v,
        Err(e) => {
            s.hard(g, "operator_construction", Metric::Abs, 0.0, Err(e));
            return;
        }
    };
    let xx_pp = &(&x * &x) + &(&p * &p);
    s.hard(g, "hamiltonian_equals_ladder_form", Metric::Abs, 1e-14, Ok((xx_pp.interior_max_diff(&h), 0.0)));
    s.hard(g, "hamiltonian_lambda0", Metric::Abs, 1e-15, Ok((h.entry(0, 0).re, 2.0 / 3.0)));
    s.hard(g, "hamiltonian_lambda1", Metric::Abs, 1e-15, Ok((h.entry(1, 1).re, 6.0 / 5.0)));
    let ladder = lower.commutator(&raise);
    let xp = x.commutator(&p).scale(Complex64::new(0.0, -1.0));
    s.hard(g, "ladder_commutator_equals_xp", Metric::Abs, 1e-14, Ok((ladder.interior_max_diff(&xp), 0.0)));
    let diag = x.commutator(&p).diagonal();
    let worst = (0..n - 1)
        .map(|k| (diag[k] - commutator_diagonal_exact(k as u64)).norm())
        .fold(0.0, f64::max);
    s.hard(g, "xp_commutator_diagonal", Metric::Abs, 1e-15, Ok((worst, 0.0)));
    for k in 0..3u64 {
        let kf = k as f64;
        let printed = 2.0 / ((2.0 * kf - 1.0) * (2.0 * kf + 1.0) * (2.0 * kf + 3.0));
        s.record(
            g,
            format!("xp_commutator_printed_fraction_n{k}"),
            CheckKind::Erratum,
            Metric::Rel,
            1e-12,
            Ok((diag[k as usize].im, printed)),
            "imaginary part of [X,P] diagonal vs the printed fraction 2/((2n-1)(2n+1)(2n+3)); opposite sign",
        );
    }
}

const BG_RADII: [f64; 4] = [0.1, 0.3, 0.5, 0.6];

fn bg_checks(s: &mut Suite, cfg: VerifyConfig) {
    let g = "bg";
    for &r in &BG_RADII {
        let name = format!("eigenvector_interior_z{r}");
        match bg_state(Complex64::new(r, 0.0), cfg.truncation).and_then(|st| st.eigen_residual()) {
            Ok((full, interior)) => {
                s.hard(g, name, Metric::Abs, 1e-10, Ok((interior, 0.0)));
                s.record(
                    g,
                    format!("eigenvector_with_boundary_row_z{r}"),
                    CheckKind::Finding,
                    Metric::Abs,
                    1e-10,
                    Ok((full, 0.0)),
                    "includes the last row, which lacks the coupling to the first omitted state",
                );
            }
            Err(e) => s.hard(g, name, Metric::Abs, 1e-10, Err(e)),
        }
    }
    for k in 1..=13 {
        let r = 0.05 * k as f64;
        let res = (|| {
            let closed = coherent_norm_sq(2.0 * r * r)?;
            let brute = coherent_series(r * r, |_| 1.0, 0, 1e-17)?;
            Ok((closed, brute))
        })();
        s.hard(g, format!("normalization_r{r:.2}"), Metric::Rel, 1e-12, res);
    }
    s.hard(g, "normalization_divergence", Metric::Rel, 1e-3, divergence_check());
    s.hard(g, "wavefunction_grid_9x9", Metric::Abs, 1e-9, wavefunction_grid(cfg.truncation).map(|d| (d, 0.0)));
    for (i, &t) in [0.25, 0.4].iter().enumerate() {
        s.hard(g, format!("weight_derivative_form_{i}"), Metric::Rel, 1e-6, weight_derivative_form(t));
    }
    s.moments(g, "moments_normalized", verify_bg_moments_with(&bg_measure_normalized(), MOMENT_ORDER, cfg.tol), cfg.tol);
    match verify_bg_moments(MOMENT_ORDER, cfg.tol) {
        Ok(r) => {
            let worst = r.rows.iter().map(|row| (row.computed / row.expected - 2.0).abs()).fold(0.0, f64::max);
            s.record(
                g,
                "moments_printed_weight_n0",
                CheckKind::Erratum,
                Metric::Rel,
                cfg.tol,
                Ok((r.rows[0].computed, r.rows[0].expected)),
                &format!("closed-form weight with unit atom gives twice rho_n/pi for every n <= {MOMENT_ORDER} (max |ratio - 2| = {worst:.1e})"),
            );
        }
        Err(e) => s.record(g, "moments_printed_weight_n0", CheckKind::Erratum, Metric::Rel, cfg.tol, Err(e), ""),
    }
    overlap_checks(s, cfg);
    let e0 = [Complex64::new(1.0, 0.0)];
    let mixed = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.48), Complex64::new(0.64, 0.0)];
    s.hard(g, "analytic_norm_e0", Metric::Abs, 1e-6, analytic_norm_sq(&e0, &bg_measure_normalized(), 1e-11).map(|v| (v, 1.0)));
    s.hard(g, "analytic_norm_mixed", Metric::Abs, 1e-6, analytic_norm_sq(&mixed, &bg_measure_normalized(), 1e-11).map(|v| (v, 1.0)));
    s.record(
        g,
        "analytic_norm_with_inverse_normalization_e0",
        CheckKind::Erratum,
        Metric::Abs,
        1e-6,
        analytic_norm_sq_with_inverse_norm(&e0, &bg_measure(), 1e-11).map(|v| (v, 1.0)),
        "norm integral with the factor 2F1(1/2,3/2;1;2|z|^2)^-1 and the closed-form weight",
    );
    let e1 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let z = Complex64::new(0.2, 0.0);
    s.record(
        g,
        "analytic_repr_e1_z0.2",
        CheckKind::Erratum,
        Metric::Rel,
        1e-12,
        analytic_repr(&e1, z).and_then(|a| Ok((a.re, coherent_transform(&e1, z)?.re))),
        "(2z)^n series vs sqrt(F) <z|f>; the two agree after z -> z/sqrt(2)",
    );
}

fn divergence_check() -> Result<(f64, f64)> {
    // F(x) grows without bound and (1 - x) F(x) -> 2/π as x -> 1
    let mut last = 0.0;
    let mut scaled = 0.0;
    for k in 1..=4 {
        let gap = 10f64.powi(-k);
        let f = hyp2f1_real(0.5, 1.5, 1.0, 1.0 - gap, &SeriesControl::default())?;
        if !(f > last) {
            return Ok((f, f64::INFINITY));
        }
        last = f;
        scaled = gap * f;
    }
    Ok((scaled, 2.0 / PI))
}

fn wavefunction_grid(dim: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 1..=9 {
        let z = Complex64::new(0.05 * i as f64, 0.0);
        let state = bg_state(z, dim)?;
        for j in 0..9 {
            let x = -1.0 + 0.25 * j as f64;
            let d = (bg_wavefunction_series(&state, x) - bg_wavefunction_closed(z, x)?).norm();
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

fn weight_derivative_form(t: f64) -> Result<(f64, f64)> {
    let g = |t: f64| -> Result<f64> { Ok((2.0 * t).powf(-0.5) * legendre_pnu(0.5, 4.0 * t - 1.0)?) };
    let h = 1e-5;
    let oracle = -(2.0 * t).powf(1.5) * (g(t + h)? - g(t - h)?) / (2.0 * h);
    Ok((bg_weight(t)?, oracle))
}

fn overlap_checks(s: &mut Suite, cfg: VerifyConfig) {
    let g = "bg";
    let pairs = [
        (Complex64::new(0.2, 0.0), Complex64::new(0.0, 0.3)),
        (Complex64::new(0.1, 0.1), Complex64::new(0.4, -0.2)),
        (Complex64::new(0.5, 0.0), Complex64::new(0.45, 0.1)),
    ];
    for (i, &(z1, z2)) in pairs.iter().enumerate() {
        let res = (|| {
            let closed = bg_overlap(z1, z2)?;
            let direct = inner_product(bg_state(z1, cfg.truncation)?.amplitudes(), bg_state(z2, cfg.truncation)?.amplitudes());
            let back = bg_overlap(z2, z1)?;
            Ok(((closed - direct).norm().max((closed - back.conj()).norm()), 0.0))
        })();
        s.hard(g, format!("overlap_closed_vs_direct_{i}"), Metric::Abs, 1e-10, res);
    }
}

const GK_SAMPLES: [(f64, f64, f64); 4] = [(0.2, 1.0, 2.5), (0.1, 0.0, 10.0), (0.3, -2.0, 0.7), (0.35, 3.0, -4.0)];

fn action_grid() -> impl Iterator<Item = f64> {
    (1..=9).map(|k| 0.05 * k as f64)
}

fn gk_checks(s: &mut Suite, cfg: VerifyConfig) {
    let g = "gk";
    for j in action_grid() {
        let res = (|| Ok((coherent_norm_sq(2.0 * j)?, coherent_series(j, |_| 1.0, 0, 1e-17)?)))();
        s.hard(g, format!("normalization_J{j:.2}"), Metric::Rel, 1e-12, res);
    }
    s.moments(g, "moments", verify_gk_moments(MOMENT_ORDER, cfg.tol), cfg.tol);
    let gap = spectrum_min_gap(30);
    s.record(g, "spectrum_min_gap_n30", CheckKind::Hard, Metric::Abs, f64::INFINITY, Ok((gap, 0.0)), "");
    if let Some(last) = s.checks.last_mut() {
        last.passed = gap > 0.0;
        last.note = "smallest |lambda_n - lambda_m| for n != m <= 30; must be positive".into();
    }
    let worst_weight = [0.05, 0.2, 0.37, 0.45, 0.4999, 0.5]
        .iter()
        .map(|&j| Ok((gk_weight(j)? - std::f64::consts::FRAC_PI_2 * bg_weight(j)?).abs()))
        .collect::<Result<Vec<f64>>>()
        .map(|v| (v.into_iter().fold(0.0, f64::max), 0.0));
    s.hard(g, "weight_relation", Metric::Abs, 1e-13, worst_weight);
    for j in action_grid() {
        s.hard(g, format!("action_J{j:.2}"), Metric::Abs, 1e-10, gk_mean_h(j).map(|h| (h, j)));
    }
    for (i, &(j, gamma, t)) in GK_SAMPLES.iter().enumerate() {
        let res = (|| {
            let moved = gk_evolve(&gk_state(j, gamma, cfg.truncation)?, t);
            let direct = gk_state(j, gamma + t, cfg.truncation)?;
            let worst = moved
                .amplitudes()
                .iter()
                .zip(direct.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            Ok((worst, 0.0))
        })();
        s.hard(g, format!("temporal_stability_{i}"), Metric::Abs, 1e-15, res);
    }
    for &(j1, j2) in &[(0.1, 0.3), (0.05, 0.45), (0.25, 0.25), (0.0, 0.2)] {
        let res = (|| Ok((gk_overlap(j1, 0.6, j2, 0.6)?.re, gk_overlap_closed(j1, j2)?)))();
        s.hard(g, format!("overlap_closed_J{j1}_J{j2}"), Metric::Abs, 1e-10, res);
    }
    for (i, &(j1, g1, j2, g2)) in [(0.15, 0.3, 0.25, 1.1), (0.2, 0.0, 0.2, 1.0)].iter().enumerate() {
        let res = (|| {
            let ip = inner_product(gk_state(j2, g2, cfg.truncation)?.amplitudes(), gk_state(j1, g1, cfg.truncation)?.amplitudes());
            Ok(((gk_overlap(j1, g1, j2, g2)? - ip).norm(), 0.0))
        })();
        s.hard(g, format!("overlap_direct_vs_amplitudes_{i}"), Metric::Abs, 1e-10, res);
    }
}

fn statistics_checks(s: &mut Suite) {
    let g = "statistics";
    for j in action_grid() {
        s.hard(g, format!("mean_n_J{j:.2}"), Metric::Rel, 1e-10, (|| Ok((gk_mean_n(j)?, gk_mean_n_direct(j)?)))());
        s.hard(g, format!("mean_n2_J{j:.2}"), Metric::Rel, 1e-10, (|| Ok((gk_mean_n2(j)?, gk_mean_n2_direct(j)?)))());
    }
    s.hard(g, "mean_n_slope_J0.001", Metric::Rel, 0.01, gk_mean_n(1e-3).map(|n| (n / 1e-3, 1.5)));
    for &j in &[0.1, 0.2, 0.3] {
        let res = (|| {
            let st = gk_variance_and_mandel(j)?;
            let (n1, n2) = (gk_mean_n_direct(j)?, gk_mean_n2_direct(j)?);
            Ok((st.mandel_q, (n2 - n1 * n1) / n1 - 1.0))
        })();
        s.hard(g, format!("mandel_q_J{j}"), Metric::Abs, 1e-10, res);
        let res = (|| Ok((gk_variance_and_mandel_shorthand(j)?.1, gk_variance_and_mandel(j)?.mandel_q)))();
        s.record(
            g,
            format!("mandel_q_shorthand_J{j}"),
            CheckKind::Finding,
            Metric::Abs,
            1e-10,
            res,
            "printed Q with a = F(1/2,3/2;1;2J), b = F(3/2,5/2;1;2J), d = F(3/2,5/2;2;2J)",
        );
        s.record(
            g,
            format!("mean_n_elliptic_J{j}"),
            CheckKind::Finding,
            Metric::Rel,
            1e-8,
            (|| Ok((gk_mean_n_elliptic(j)?, gk_mean_n(j)?)))(),
            "elliptic form of <n> vs hypergeometric form",
        );
        s.record(
            g,
            format!("mean_n2_elliptic_J{j}"),
            CheckKind::Finding,
            Metric::Rel,
            1e-8,
            (|| Ok((gk_mean_n2_elliptic(j)?, gk_mean_n2(j)?)))(),
            "elliptic form of <n^2> vs hypergeometric form",
        );
    }
    s.record(
        g,
        "mean_n_elliptic_small_J_ratio",
        CheckKind::Finding,
        Metric::Rel,
        1e-3,
        gk_mean_n_elliptic(1e-4).map(|n| (n / 1.5e-4, 1.0)),
        "elliptic <n> divided by 3J/2 at J = 1e-4",
    );
    s.record(
        g,
        "mandel_q_small_J_slope",
        CheckKind::Finding,
        Metric::Rel,
        0.01,
        gk_variance_and_mandel(1e-3).map(|st| (st.mandel_q / 1e-3, 9.0 / 4.0)),
        "Q / J at J = 1e-3 against the leading coefficient 9/4",
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes_hard_checks() {
        let report = run_suite(VerifyConfig::default());
        let failed: Vec<_> = report.failed_hard().map(|c| (&c.name, c.computed, c.expected, &c.note)).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(!report.get("xp_commutator_printed_fraction_n1").unwrap().passed);
        assert!(!report.get("mean_n_elliptic_J0.1").unwrap().passed);
        assert!(report.get("mean_n2_elliptic_J0.1").unwrap().passed);
        assert!(!report.get("moments_printed_weight_n0").unwrap().passed);
    }

    #[test]
    fn small_truncation_fails_eigenvector_check() {
        let report = run_suite(VerifyConfig { truncation: 8, tol: 1e-8 });
        let c = report.get("eigenvector_interior_z0.6").unwrap();
        assert!(!c.passed && c.note.contains("truncation"), "{c:?}");
        assert!(!report.passed());
    }

    #[test]
    fn unreachable_tolerance_fails_quadrature_checks() {
        let report = run_suite(VerifyConfig { truncation: 128, tol: 1e-15 });
        assert!(report.failed_hard().any(|c| c.name.starts_with("moments") && c.note.contains("converge")));
    }
}
