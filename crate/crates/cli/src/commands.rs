//! The four subcommands, each producing a [`Document`].

use anyhow::Result;
use losc_core::bg::{bg_overlap, bg_state, bg_wavefunction_closed, bg_wavefunction_series, inner_product};
use losc_core::gk::{
    gk_mean_h, gk_mean_n, gk_mean_n2, gk_mean_n2_elliptic, gk_mean_n_elliptic, gk_overlap, gk_overlap_closed,
    gk_state, gk_variance_and_mandel,
};
use losc_core::verify::{run_suite, Check, CheckKind, Report, VerifyConfig};
use num_complex::Complex64;

use crate::args::Grid;
use crate::output::{Cell, Document, Section};
use crate::UsageError;

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn meta(command: &str, truncation: usize) -> Vec<(&'static str, Cell)> {
    vec![
        ("command", command.into()),
        ("version", VERSION.into()),
        ("truncation", truncation.into()),
    ]
}

pub fn check_truncation(truncation: usize) -> Result<()> {
    if truncation < 3 {
        return Err(UsageError(format!("--truncation must be at least 3, got {truncation}")).into());
    }
    Ok(())
}

const CHECK_COLUMNS: [&str; 11] = [
    "group", "name", "kind", "computed", "expected", "abs_error", "rel_error", "metric", "tol", "passed", "note",
];

fn check_row(c: &Check) -> Vec<Cell> {
    vec![
        c.group.into(),
        c.name.clone().into(),
        c.kind.as_str().into(),
        c.computed.into(),
        c.expected.into(),
        c.abs_error.into(),
        c.rel_error.into(),
        c.metric.as_str().into(),
        c.tol.into(),
        c.passed.into(),
        c.note.clone().into(),
    ]
}

pub fn verify(truncation: usize, tol: f64) -> Result<(Document, Report)> {
    check_truncation(truncation)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(UsageError(format!("--tol must be positive and finite, got {tol}")).into());
    }
    let report = run_suite(VerifyConfig { truncation, tol });
    let mut rows = Section::new("rows", &CHECK_COLUMNS);
    let mut errata = Section::new("errata", &CHECK_COLUMNS);
    for c in &report.checks {
        match c.kind {
            CheckKind::Hard => rows.push(check_row(c)),
            CheckKind::Finding | CheckKind::Erratum => errata.push(check_row(c)),
        }
    }
    let hard = rows.rows.len();
    let failed = report.failed_hard().count();
    let mut m = meta("verify", truncation);
    m.push(("tol", tol.into()));
    m.push(("hard_checks", hard.into()));
    m.push(("hard_failed", failed.into()));
    m.push(("passed", report.passed().into()));
    Ok((
        Document {
            meta: m,
            rows,
            extra: vec![errata],
        },
        report,
    ))
}

pub fn table(grid: Grid) -> Result<Document> {
    let points = grid.points();
    if let Some(bad) = points.iter().find(|j| !(0.0..0.5).contains(*j)) {
        return Err(UsageError(format!("J grid must lie in [0, 1/2), found {bad}")).into());
    }
    let mut rows = Section::new(
        "rows",
        &[
            "J",
            "mean_H",
            "mean_n_series",
            "mean_n_elliptic",
            "mean_n2_series",
            "mean_n2_elliptic",
            "variance",
            "mandel_Q",
        ],
    );
    for j in points {
        let stats = gk_variance_and_mandel(j)?;
        rows.push(vec![
            j.into(),
            gk_mean_h(j)?.into(),
            gk_mean_n(j)?.into(),
            gk_mean_n_elliptic(j)?.into(),
            gk_mean_n2(j)?.into(),
            gk_mean_n2_elliptic(j)?.into(),
            stats.variance.into(),
            stats.mandel_q.into(),
        ]);
    }
    let mut m = vec![("command", "table".into()), ("version", VERSION.into())];
    m.push(("grid_j", format!("{}:{}:{}", grid.start, grid.stop, grid.count).into()));
    Ok(Document {
        meta: m,
        rows,
        extra: Vec::new(),
    })
}

fn amplitude_section(amplitudes: &[Complex64]) -> Section {
    let mut s = Section::new("rows", &["n", "re", "im", "modulus"]);
    for (n, a) in amplitudes.iter().enumerate() {
        s.push(vec![n.into(), a.re.into(), a.im.into(), a.norm().into()]);
    }
    s
}

pub fn eval_bg(z: Complex64, grid_x: Grid, truncation: usize) -> Result<Document> {
    check_truncation(truncation)?;
    if grid_x.start < -1.0 || grid_x.stop > 1.0 {
        return Err(UsageError("x grid must lie in [-1, 1]".into()).into());
    }
    let state = bg_state(z, truncation)?;
    let mut wave = Section::new(
        "wavefunction",
        &["x", "series_re", "series_im", "closed_re", "closed_im", "abs_diff"],
    );
    let mut worst = 0.0f64;
    for x in grid_x.points() {
        let series = bg_wavefunction_series(&state, x);
        let closed = bg_wavefunction_closed(z, x)?;
        let d = (series - closed).norm();
        worst = worst.max(d);
        wave.push(vec![x.into(), series.re.into(), series.im.into(), closed.re.into(), closed.im.into(), d.into()]);
    }
    let mut m = meta("eval", truncation);
    m.extend([
        ("state", "barut_girardello".into()),
        ("z_re", z.re.into()),
        ("z_im", z.im.into()),
        ("norm_sq_raw", state.norm_sq_raw().into()),
        ("tail_bound", state.tail_bound().into()),
        ("max_abs_diff", worst.into()),
    ]);
    Ok(Document {
        meta: m,
        rows: amplitude_section(state.amplitudes()),
        extra: vec![wave],
    })
}

pub fn eval_gk(j: f64, gamma: f64, truncation: usize) -> Result<Document> {
    check_truncation(truncation)?;
    let state = gk_state(j, gamma, truncation)?;
    let mut m = meta("eval", truncation);
    m.extend([("state", "gazeau_klauder".into()), ("J", j.into()), ("gamma", gamma.into())]);
    Ok(Document {
        meta: m,
        rows: amplitude_section(state.amplitudes()),
        extra: Vec::new(),
    })
}

/// Row `(i, j)` holds `⟨z_i|z_j⟩`.
pub fn overlap_bg(zs: &[Complex64], truncation: usize) -> Result<Document> {
    check_truncation(truncation)?;
    let states = zs.iter().map(|&z| bg_state(z, truncation)).collect::<losc_core::Result<Vec<_>>>()?;
    let mut rows = Section::new(
        "rows",
        &[
            "i", "j", "z1_re", "z1_im", "z2_re", "z2_im", "closed_re", "closed_im", "direct_re", "direct_im", "abs_diff",
        ],
    );
    for (i, (z1, s1)) in zs.iter().zip(&states).enumerate() {
        for (j, (z2, s2)) in zs.iter().zip(&states).enumerate() {
            let closed = bg_overlap(*z1, *z2)?;
            let direct = inner_product(s1.amplitudes(), s2.amplitudes());
            rows.push(vec![
                i.into(),
                j.into(),
                z1.re.into(),
                z1.im.into(),
                z2.re.into(),
                z2.im.into(),
                closed.re.into(),
                closed.im.into(),
                direct.re.into(),
                direct.im.into(),
                (closed - direct).norm().into(),
            ]);
        }
    }
    let mut m = meta("overlap", truncation);
    m.push(("state", "barut_girardello".into()));
    Ok(Document {
        meta: m,
        rows,
        extra: Vec::new(),
    })
}

/// Row `(i, j)` holds `⟨J_i, γ_i|J_j, γ_j⟩`; the closed form exists only for equal angles.
pub fn overlap_gk(labels: &[(f64, f64)], truncation: usize) -> Result<Document> {
    check_truncation(truncation)?;
    let states = labels
        .iter()
        .map(|&(j, g)| gk_state(j, g, truncation))
        .collect::<losc_core::Result<Vec<_>>>()?;
    let mut rows = Section::new(
        "rows",
        &[
            "i", "j", "J1", "gamma1", "J2", "gamma2", "series_re", "series_im", "closed", "direct_re", "direct_im",
            "abs_diff",
        ],
    );
    for (i, (&(j1, g1), s1)) in labels.iter().zip(&states).enumerate() {
        for (k, (&(j2, g2), s2)) in labels.iter().zip(&states).enumerate() {
            let series = gk_overlap(j2, g2, j1, g1)?;
            let closed = if g1 == g2 { gk_overlap_closed(j1, j2)? } else { f64::NAN };
            let direct = inner_product(s1.amplitudes(), s2.amplitudes());
            rows.push(vec![
                i.into(),
                k.into(),
                j1.into(),
                g1.into(),
                j2.into(),
                g2.into(),
                series.re.into(),
                series.im.into(),
                closed.into(),
                direct.re.into(),
                direct.im.into(),
                (series - direct).norm().into(),
            ]);
        }
    }
    let mut m = meta("overlap", truncation);
    m.push(("state", "gazeau_klauder".into()));
    Ok(Document {
        meta: m,
        rows,
        extra: Vec::new(),
    })
}
