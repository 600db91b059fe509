//! Counting functions, Siegel–Veech transforms and quadratic growth
//! constants. Lengths are unit-area normalized throughout.

use serde::{Deserialize, Serialize};

use crate::analysis::testfn::TestFunction;
use crate::error::{AnalysisError, GeometryError};
use crate::geometry::{count_profile, enumerate_affine, AffineSurface, HolonomyKind, HolonomySet, Normalization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    Unweighted,
    /// Each cylinder counts with its area fraction `w·h/n`.
    Area,
}

/// `N(A·X, R)` for each `R` in `radii`.
pub fn count_series(
    s: &AffineSurface,
    radii: &[f64],
    kind: HolonomyKind,
    weighting: Weighting,
) -> Result<Vec<f64>, AnalysisError> {
    let scale = s.unit_scale();
    let raw: Vec<f64> = radii.iter().map(|r| r * scale).collect();
    for (&r, &rr) in radii.iter().zip(&raw) {
        if !(rr.is_finite() && rr > 0.0) {
            return Err(GeometryError::BadRadius(r).into());
        }
    }
    let n = s.base().n() as f64;
    Ok(count_profile(s, &raw, kind)?
        .into_iter()
        .map(|p| match weighting {
            Weighting::Unweighted => p.count as f64,
            Weighting::Area => p.squares as f64 / n,
        })
        .collect())
}

/// Number (or area-weighted sum) of records with normalized length `≤ R`.
#[allow(non_snake_case)]
pub fn count_N(s: &AffineSurface, r: f64, kind: HolonomyKind, weighting: Weighting) -> Result<f64, AnalysisError> {
    Ok(count_series(s, &[r], kind, weighting)?[0])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// `N(R_max)/R_max²`.
    pub estimate: f64,
    /// Least-squares `c` in `N(R) ≈ c·R²` over the sample grid.
    pub least_squares: f64,
    /// `(R, N(R))`, decreasing `R`.
    pub samples: Vec<(f64, f64)>,
    /// `N(R)/R² − least_squares` per sample.
    pub residuals: Vec<f64>,
    pub method: String,
}

impl FitResult {
    /// Largest residual magnitude.
    pub fn residual_band(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Samples taken at `R_max/2^k`.
pub const FIT_LEVELS: u32 = 5;

/// Quadratic growth constant of cylinder counts from `N(R)` at
/// `R_max/2^k`, `k = 0..5`.
pub fn svc_estimate(s: &AffineSurface, r_max: f64) -> Result<FitResult, AnalysisError> {
    let radii: Vec<f64> = (0..FIT_LEVELS).map(|k| r_max / f64::powi(2.0, k as i32)).collect();
    let counts = count_series(s, &radii, HolonomyKind::Cylinders, Weighting::Unweighted)?;
    if counts[0] == 0.0 {
        return Err(AnalysisError::DegenerateCount(r_max));
    }
    let num: f64 = radii.iter().zip(&counts).map(|(r, n)| n * r * r).sum();
    let den: f64 = radii.iter().map(|r| r.powi(4)).sum();
    let least_squares = num / den;
    Ok(FitResult {
        estimate: counts[0] / (r_max * r_max),
        least_squares,
        samples: radii.iter().copied().zip(counts.iter().copied()).collect(),
        residuals: radii.iter().zip(&counts).map(|(r, n)| n / (r * r) - least_squares).collect(),
        method: "point N(Rmax)/Rmax^2; least squares N = c R^2 over Rmax/2^k, k=0..4".into(),
    })
}

/// `f̂` over a precomputed cylinder set, which must reach the support of `f`.
pub fn transform_over(set: &HolonomySet, f: &TestFunction) -> Result<f64, AnalysisError> {
    f.validate()?;
    let needed = f.support_radius();
    let scale = set.scale();
    // compare raw radii: normalizing set.radius back can lose an ulp
    if set.radius < needed * scale {
        return Err(AnalysisError::InsufficientRadius { certified: set.normalized_radius(), needed });
    }
    Ok(set
        .records
        .iter()
        .map(|r| r.multiplicity as f64 * f.value_scaled(r.holonomy.x, r.holonomy.y, scale))
        .sum())
}

/// `f̂(A·X) = Σ f(v)` over unit-area cylinder holonomies in the upper
/// half-plane convention.
pub fn siegel_veech_transform(s: &AffineSurface, f: &TestFunction) -> Result<f64, AnalysisError> {
    f.validate()?;
    let set = enumerate_affine(s, f.support_radius(), HolonomyKind::Cylinders, Normalization::UnitArea)?;
    transform_over(&set, f)
}
