//! Doubling inequality `N(X,2R) − N(X,R) ≤ c·R²·∫₀^{2π} N(g_{log R} r_θ X, 4) dθ`
//! and the uniform quadratic bound `N(X,R) ≤ c_max·R²`.

use serde::{Deserialize, Serialize};

use crate::analysis::circle::{circle_integral, CircleIntegrand};
use crate::analysis::count::{count_series, Weighting};
use crate::analysis::testfn::TestFunction;
use crate::error::AnalysisError;
use crate::geometry::{AffineSurface, HolonomyKind};

/// Radius of the ball counted on the right-hand side.
pub const DOUBLING_BALL: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublingInstance {
    pub label: String,
    pub r: f64,
    pub n_r: f64,
    pub n_2r: f64,
    /// `N(2R) − N(R)`.
    pub lhs: f64,
    /// `∫₀^{2π} N(g_{log R} r_θ X, 4) dθ`.
    pub integral: f64,
    pub integral_error: f64,
    /// `lhs/(R²·integral)`; 0 when `lhs = 0`, infinite when only the
    /// integral vanishes.
    pub ratio: f64,
}

/// One `(X, R)` instance of the doubling inequality.
pub fn doubling_check(label: &str, s: &AffineSurface, r: f64, tol: f64) -> Result<DoublingInstance, AnalysisError> {
    if !(r.is_finite() && r >= 1.0) {
        return Err(AnalysisError::InvalidParameter(format!("R must be at least 1, got {r}")));
    }
    let counts = count_series(s, &[r, 2.0 * r], HolonomyKind::Cylinders, Weighting::Unweighted)?;
    let lhs = counts[1] - counts[0];
    let f = TestFunction::BallIndicator { radius: DOUBLING_BALL };
    let q = circle_integral(s, r.ln(), &CircleIntegrand::Transform { f }, tol)?;
    let ratio = if lhs == 0.0 {
        0.0
    } else if q.value > 0.0 {
        lhs / (r * r * q.value)
    } else {
        f64::INFINITY
    };
    Ok(DoublingInstance {
        label: label.to_string(),
        r,
        n_r: counts[0],
        n_2r: counts[1],
        lhs,
        integral: q.value,
        integral_error: q.error,
        ratio,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublingSummary {
    pub instances: Vec<DoublingInstance>,
    /// Smallest constant dominating every instance.
    pub c: f64,
    pub dominated: bool,
}

pub fn summarize_doubling(instances: Vec<DoublingInstance>) -> DoublingSummary {
    let c = instances.iter().map(|i| i.ratio).fold(0.0, f64::max);
    DoublingSummary { dominated: c.is_finite(), c, instances }
}

/// Relative change between the last two grid ratios counted as stable.
pub const STABILIZATION: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformRow {
    pub label: String,
    /// `(R, N(R)/R²)`.
    pub ratios: Vec<(f64, f64)>,
    pub max_ratio: f64,
    pub last_change: f64,
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformReport {
    pub rows: Vec<UniformRow>,
    pub c_max: f64,
    pub argmax: (String, f64),
    pub all_stabilized: bool,
}

/// `max_R N(X,R)/R²` over the family and radius grid.
pub fn uniform_bound(family: &[(String, AffineSurface)], radii: &[f64]) -> Result<UniformReport, AnalysisError> {
    if family.is_empty() || radii.len() < 2 {
        return Err(AnalysisError::InvalidParameter("need a nonempty family and at least two radii".into()));
    }
    let mut rows = Vec::new();
    let mut c_max = 0.0;
    let mut argmax = (String::new(), 0.0);
    for (label, s) in family {
        let counts = count_series(s, radii, HolonomyKind::Cylinders, Weighting::Unweighted)?;
        let ratios: Vec<(f64, f64)> = radii.iter().zip(&counts).map(|(&r, &n)| (r, n / (r * r))).collect();
        let (r_best, max_ratio) = ratios.iter().copied().fold((0.0, 0.0), |m, x| if x.1 > m.1 { x } else { m });
        if max_ratio > c_max {
            c_max = max_ratio;
            argmax = (label.clone(), r_best);
        }
        let k = ratios.len();
        let last_change = (ratios[k - 1].1 - ratios[k - 2].1).abs() / ratios[k - 2].1;
        rows.push(UniformRow {
            label: label.clone(),
            ratios,
            max_ratio,
            last_change,
            stabilized: last_change <= STABILIZATION,
        });
    }
    let all_stabilized = rows.iter().all(|r| r.stabilized);
    Ok(UniformReport { rows, c_max, argmax, all_stabilized })
}
