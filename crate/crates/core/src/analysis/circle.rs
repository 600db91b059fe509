//! Circle integrals `∫₀^{2π} F(g_T r_θ · s) dθ`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::quad::{simpson_rel, Quadrature};
use crate::analysis::testfn::TestFunction;
use crate::error::AnalysisError;
use crate::geometry::affine::shortest_saddle_under;
use crate::geometry::{enumerate_affine, AffineSurface, HolonomyKind, Mat2, Normalization};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "integrand", rename_all = "kebab-case")]
pub enum CircleIntegrand {
    /// `ℓ^{−(1+δ)}` with `ℓ` the normalized shortest saddle.
    InverseEll { delta: f64 },
    /// Siegel–Veech transform `f̂`.
    Transform { f: TestFunction },
}

fn check(t: f64, tol: f64) -> Result<(), AnalysisError> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(AnalysisError::InvalidParameter(format!("T must be finite and nonnegative, got {t}")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(AnalysisError::InvalidParameter(format!("tol must lie in (0, 1), got {tol}")));
    }
    Ok(())
}

pub(crate) fn check_delta(delta: f64) -> Result<(), AnalysisError> {
    if delta > 0.0 && delta < 0.5 {
        Ok(())
    } else {
        Err(AnalysisError::InvalidParameter(format!("delta must lie in (0, 1/2), got {delta}")))
    }
}

fn finish(q: Quadrature) -> Result<Quadrature, AnalysisError> {
    if q.converged {
        Ok(q)
    } else {
        Err(AnalysisError::ToleranceNotMet { lo: q.value - q.error, hi: q.value + q.error })
    }
}

/// `∫₀^{2π} f(θ) dθ` to relative tolerance `tol`.
pub fn circle_integral_fn<F: Fn(f64) -> f64 + Sync>(f: F, tol: f64) -> Result<Quadrature, AnalysisError> {
    check(0.0, tol)?;
    finish(simpson_rel(&f, 0.0, 2.0 * PI, tol, 16))
}

/// Unit-area `ℓ(g_T r_θ A·X)`.
pub fn ell_on_circle(s: &AffineSurface, t: f64, theta: f64) -> Result<f64, AnalysisError> {
    let b = Mat2::geodesic(t).mul(&Mat2::rotation(theta)).mul(s.matrix());
    Ok(shortest_saddle_under(s.base(), &b, &mut Vec::new())?.normalized)
}

/// Coarse panels over `[0, π]`: the integrand has features of angular width
/// about `e^{−2T}`, one per short vector, so the coarse grid must resolve
/// that scale.
fn inverse_ell_panels(t: f64) -> usize {
    (8.0 * (2.0 * t).exp()).ceil() as usize + 64
}

fn inverse_ell(s: &AffineSurface, t: f64, delta: f64, tol: f64) -> Result<Quadrature, AnalysisError> {
    check_delta(delta)?;
    s.base().require_singularities()?;
    let g = Mat2::geodesic(t);
    let scale = s.unit_scale();
    let f = |theta: f64| {
        let b = g.mul(&Mat2::rotation(theta)).mul(s.matrix());
        thread_local! {
            static SCRATCH: std::cell::RefCell<Vec<crate::sl2z::Letter>> = const { std::cell::RefCell::new(Vec::new()) };
        }
        let ell = SCRATCH
            .with(|sc| shortest_saddle_under(s.base(), &b, &mut sc.borrow_mut()))
            .expect("surface checked for singularities")
            .length
            / scale;
        ell.powf(-(1.0 + delta))
    };
    // ℓ is π-periodic in θ
    let half = simpson_rel(&f, 0.0, PI, tol, inverse_ell_panels(t));
    finish(half.scaled(2.0))
}

fn transform(s: &AffineSurface, t: f64, f: &TestFunction, tol: f64) -> Result<Quadrature, AnalysisError> {
    f.validate()?;
    // |g_T r_θ v| ≥ e^{−T}|v|, so only |v| ≤ e^T·support can contribute
    let reach = t.exp() * f.support_radius();
    let set = enumerate_affine(s, reach, HolonomyKind::Cylinders, Normalization::UnitArea)?;
    let scale = set.scale();
    let mut rhos: Vec<f64> = set.records.iter().map(|r| r.holonomy.norm() / scale).collect();
    rhos.sort_by(f64::total_cmp);
    let mut distinct: Vec<(f64, u64)> = Vec::new();
    for rho in rhos {
        match distinct.last_mut() {
            Some((r, m)) if *r == rho => *m += 1,
            _ => distinct.push((rho, 1)),
        }
    }
    let parts: Vec<Quadrature> = distinct
        .par_iter()
        .map(|&(rho, mult)| {
            // tolerance relative to this vector's own contribution
            let coarse = f.circle_profile(rho, t, f64::INFINITY).value.abs();
            let q = f.circle_profile(rho, t, tol * coarse.max(f64::MIN_POSITIVE));
            q.scaled(mult as f64)
        })
        .collect();
    let mut out = Quadrature::exact(0.0);
    for q in &parts {
        out.add(q);
    }
    finish(out)
}

/// `∫₀^{2π} F(g_T r_θ · s) dθ` to relative tolerance `tol`.
///
/// For `InverseEll`, `ℓ` is recomputed with a certified cutoff at every
/// quadrature node. For `Transform`, the sum over holonomies is exchanged
/// with the integral: each vector `v` contributes a one-dimensional profile
/// in `|v|` whose breakpoints are known in closed form.
pub fn circle_integral(
    s: &AffineSurface,
    t: f64,
    integrand: &CircleIntegrand,
    tol: f64,
) -> Result<Quadrature, AnalysisError> {
    check(t, tol)?;
    match integrand {
        CircleIntegrand::InverseEll { delta } => inverse_ell(s, t, *delta, tol),
        CircleIntegrand::Transform { f } => transform(s, t, f, tol),
    }
}
