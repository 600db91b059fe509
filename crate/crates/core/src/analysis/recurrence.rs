//! Recurrence experiment: circle averages of `ℓ^{−(1+δ)}` along the
//! geodesic flow, and a fit of `I(T, X) ≤ c₀·e^{−(1−2δ)T}·α(X) + b`.

use serde::{Deserialize, Serialize};

use crate::analysis::circle::{check_delta, circle_integral, CircleIntegrand};
use crate::error::AnalysisError;
use crate::geometry::{shortest_saddle, AffineSurface};

/// Relative spread allowed among the last three grid values of a curve.
pub const TAIL_FLATNESS: f64 = 0.10;
/// Relative change of `b` allowed when the family is split in half.
pub const B_STABILITY: f64 = 0.20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceCurve {
    pub label: String,
    /// Normalized `ℓ(X)`.
    pub shortest_saddle: f64,
    /// `I(T, X)` per grid point.
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub alpha: f64,
    /// `(max − min)/max` over the last three grid values.
    pub tail_spread: f64,
    pub tail_flat: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub delta: f64,
    pub t_grid: Vec<f64>,
    pub tol: f64,
    pub curves: Vec<RecurrenceCurve>,
    pub c0: f64,
    pub b: f64,
    /// `b` refitted on the first and second contiguous halves of the family.
    pub split_b: (f64, f64),
    pub b_stable: bool,
    pub violations: usize,
    pub max_violation: f64,
    /// Whether fitted `α` is nonincreasing in `ℓ(X)`; reported only.
    pub alpha_monotone_in_ell: bool,
    pub verdict: bool,
}

fn tail(values: &[f64]) -> &[f64] {
    &values[values.len().saturating_sub(3)..]
}

/// Largest tail value across `curves`.
fn tail_envelope(curves: &[Vec<f64>]) -> f64 {
    curves.iter().flat_map(|c| tail(c).iter().copied()).fold(0.0, f64::max)
}

/// Fits `c₀ = 1`, `b` = tail envelope, then the smallest `α(X)` with no
/// violation. Only the product `c₀·α(X)` is identifiable.
fn fit(curves: &[Vec<f64>], t_grid: &[f64], delta: f64) -> (f64, f64, Vec<f64>) {
    let c0 = 1.0;
    let b = tail_envelope(curves);
    let rate = 1.0 - 2.0 * delta;
    let alphas = curves
        .iter()
        .map(|c| {
            c.iter()
                .zip(t_grid)
                .map(|(&i, &t)| (i - b).max(0.0) * (rate * t).exp() / c0)
                .fold(0.0, f64::max)
        })
        .collect();
    (c0, b, alphas)
}

/// Runs the experiment on labelled surfaces over `t_grid`.
pub fn recurrence_experiment(
    family: &[(String, AffineSurface)],
    delta: f64,
    t_grid: &[f64],
    tol: f64,
) -> Result<RecurrenceReport, AnalysisError> {
    check_delta(delta)?;
    if family.is_empty() {
        return Err(AnalysisError::InvalidParameter("family must be nonempty".into()));
    }
    if t_grid.len() < 3 {
        return Err(AnalysisError::InvalidParameter("T grid needs at least three points".into()));
    }
    let integrand = CircleIntegrand::InverseEll { delta };
    let mut values = Vec::new();
    let mut errors = Vec::new();
    let mut ells = Vec::new();
    for (_, s) in family {
        ells.push(shortest_saddle(s)?.normalized);
        let mut v = Vec::new();
        let mut e = Vec::new();
        for &t in t_grid {
            let q = circle_integral(s, t, &integrand, tol)?;
            if !q.value.is_finite() {
                return Err(AnalysisError::InvalidParameter(format!("I({t}) is not finite")));
            }
            v.push(q.value);
            e.push(q.error);
        }
        values.push(v);
        errors.push(e);
    }

    let (c0, b, alphas) = fit(&values, t_grid, delta);
    let rate = 1.0 - 2.0 * delta;
    let mut violations = 0;
    let mut max_violation = 0.0f64;
    for (curve, &alpha) in values.iter().zip(&alphas) {
        for (&i, &t) in curve.iter().zip(t_grid) {
            let excess = i - (c0 * (-rate * t).exp() * alpha + b);
            if excess > 1e-12 * i.abs() {
                violations += 1;
            }
            max_violation = max_violation.max(excess);
        }
    }

    let half = values.len().div_ceil(2);
    let (first, second) = values.split_at(half);
    let b1 = tail_envelope(first);
    let b2 = if second.is_empty() { b1 } else { tail_envelope(second) };
    let b_stable = (b1 - b).abs() <= B_STABILITY * b && (b2 - b).abs() <= B_STABILITY * b;

    let curves: Vec<RecurrenceCurve> = family
        .iter()
        .zip(values.iter().zip(&errors))
        .zip(alphas.iter().zip(&ells))
        .map(|(((label, _), (v, e)), (&alpha, &ell))| {
            let tl = tail(v);
            let hi = tl.iter().copied().fold(f64::MIN, f64::max);
            let lo = tl.iter().copied().fold(f64::MAX, f64::min);
            let tail_spread = (hi - lo) / hi;
            RecurrenceCurve {
                label: label.clone(),
                shortest_saddle: ell,
                values: v.clone(),
                errors: e.clone(),
                alpha,
                tail_spread,
                tail_flat: tail_spread <= TAIL_FLATNESS,
            }
        })
        .collect();

    let mut by_ell: Vec<(f64, f64)> = curves.iter().map(|c| (c.shortest_saddle, c.alpha)).collect();
    by_ell.sort_by(|x, y| x.0.total_cmp(&y.0));
    let alpha_monotone_in_ell = by_ell.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-9));

    let verdict = violations == 0 && b_stable && curves.iter().all(|c| c.tail_flat);
    Ok(RecurrenceReport {
        delta,
        t_grid: t_grid.to_vec(),
        tol,
        curves,
        c0,
        b,
        split_b: (b1, b2),
        b_stable,
        violations,
        max_violation,
        alpha_monotone_in_ell,
        verdict,
    })
}
