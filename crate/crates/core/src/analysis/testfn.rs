//! Compactly supported test functions on the plane.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::analysis::quad::{simpson_abs, Quadrature};
use crate::error::AnalysisError;
use crate::geometry::lattice::within;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TestFunction {
    /// 1 on the disk of radius `radius − width`, smoothstep down to 0 at
    /// `radius`.
    RadialBump { radius: f64, width: f64 },
    /// Indicator of the trapezoid with vertices `(±1, 1)`, `(±2, 2)`.
    TrapezoidIndicator,
    /// Indicator of the closed disk of radius `radius`.
    BallIndicator { radius: f64 },
}

fn smoothstep_down(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    1.0 - t * t * (3.0 - 2.0 * t)
}

impl TestFunction {
    pub fn validate(&self) -> Result<(), AnalysisError> {
        let ok = match *self {
            TestFunction::RadialBump { radius, width } => {
                radius.is_finite() && width.is_finite() && width > 0.0 && width <= radius
            }
            TestFunction::TrapezoidIndicator => true,
            TestFunction::BallIndicator { radius } => radius.is_finite() && radius > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(AnalysisError::InvalidParameter(format!("test function {self:?}")))
        }
    }

    pub fn is_indicator(&self) -> bool {
        !matches!(self, TestFunction::RadialBump { .. })
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        match *self {
            TestFunction::RadialBump { radius, width } => {
                smoothstep_down((x.hypot(y) - (radius - width)) / width)
            }
            TestFunction::TrapezoidIndicator => {
                if (1.0..=2.0).contains(&y) && x.abs() <= y {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunction::BallIndicator { radius } => {
                if within(x.hypot(y), radius) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Value at `(x, y)/scale`. The ball indicator compares the raw norm
    /// against `radius·scale` so that it agrees exactly with counting.
    pub fn value_scaled(&self, x: f64, y: f64, scale: f64) -> f64 {
        match *self {
            TestFunction::BallIndicator { radius } => {
                if within(x.hypot(y), radius * scale) {
                    1.0
                } else {
                    0.0
                }
            }
            _ => self.value(x / scale, y / scale),
        }
    }

    /// Radius of a disk containing the support.
    pub fn support_radius(&self) -> f64 {
        match *self {
            TestFunction::RadialBump { radius, .. } => radius,
            TestFunction::TrapezoidIndicator => 4.0,
            TestFunction::BallIndicator { radius } => radius,
        }
    }

    /// `∫ f dλ`.
    pub fn plane_integral(&self) -> f64 {
        match *self {
            TestFunction::RadialBump { radius, width } => {
                let a = radius - width;
                2.0 * PI * (a * a / 2.0 + width * a / 2.0 + 0.15 * width * width)
            }
            TestFunction::TrapezoidIndicator => 3.0,
            TestFunction::BallIndicator { radius } => PI * radius * radius,
        }
    }

    /// Angles in `(0, π)` where `θ ↦ f(g_T r_θ (ρ, 0))` may jump or kink.
    pub fn breakpoints(&self, rho: f64, t: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let push_sin = |s: f64, out: &mut Vec<f64>| {
            if s > 0.0 && s < 1.0 {
                let th = s.asin();
                out.push(th);
                out.push(PI - th);
            }
        };
        // |g_T r_θ (ρ,0)|² = ρ²(e^{−2T} + (e^{2T} − e^{−2T}) sin²θ)
        let spread = (2.0 * t).exp() - (-2.0 * t).exp();
        let circle = |r: f64, out: &mut Vec<f64>| {
            if spread > 0.0 {
                let s2 = ((r / rho).powi(2) - (-2.0 * t).exp()) / spread;
                if s2 > 0.0 {
                    push_sin(s2.sqrt(), out);
                }
            }
        };
        match *self {
            TestFunction::RadialBump { radius, width } => {
                circle(radius - width, &mut out);
                circle(radius, &mut out);
            }
            TestFunction::BallIndicator { radius } => circle(radius, &mut out),
            TestFunction::TrapezoidIndicator => {
                let e = (-t).exp();
                push_sin(e / rho, &mut out);
                push_sin(2.0 * e / rho, &mut out);
                let th = (-2.0 * t).exp().atan();
                out.push(th);
                out.push(PI - th);
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// `J(ρ) = 2∫₀^π f(g_T r_θ (ρ, 0)) dθ`, which equals the full-circle
    /// integral of `f` summed over both orientations of a vector of length
    /// `ρ`, i.e. its contribution to `∫₀^{2π} f̂(g_T r_θ X) dθ`.
    ///
    /// Indicator pieces between breakpoints are constant and are measured
    /// exactly; bump pieces are integrated to absolute tolerance `tol`.
    pub fn circle_profile(&self, rho: f64, t: f64, tol: f64) -> Quadrature {
        let (et, emt) = (t.exp(), (-t).exp());
        let g = |th: f64| {
            let (s, c) = th.sin_cos();
            self.value(emt * rho * c, et * rho * s)
        };
        let mut cuts = vec![0.0];
        cuts.extend(self.breakpoints(rho, t));
        cuts.push(PI);
        let mut out = Quadrature::exact(0.0);
        let pieces = cuts.len() - 1;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            if self.is_indicator() {
                out.value += (b - a) * g(0.5 * (a + b));
                out.evaluations += 1;
            } else {
                out.add(&simpson_abs(&g, a, b, tol / pieces as f64));
            }
        }
        out.scaled(2.0)
    }
}
