//! Real 2×2 matrices.

use serde::{Deserialize, Serialize};

use crate::sl2z::IntegerMatrix;

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// `diag(e^{-t}, e^{t})`.
    pub fn geodesic(t: f64) -> Self {
        Mat2 { a: (-t).exp(), b: 0.0, c: 0.0, d: t.exp() }
    }

    /// Counterclockwise rotation by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Mat2 { a: c, b: -s, c: s, d: c }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        Mat2 { a: self.d / det, b: -self.b / det, c: -self.c / det, d: self.a / det }
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2 { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    #[inline]
    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    #[inline]
    pub fn norm_of(&self, x: f64, y: f64) -> f64 {
        let (u, v) = self.apply(x, y);
        u.hypot(v)
    }

    /// `(σ_max, σ_min)`.
    pub fn singular_values(&self) -> (f64, f64) {
        let frob = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        let det = self.det().abs();
        let disc = (frob * frob - 4.0 * det * det).max(0.0).sqrt();
        let smax = ((frob + disc) / 2.0).sqrt();
        let smin = if smax > 0.0 { det / smax } else { 0.0 };
        (smax, smin)
    }
}

impl From<IntegerMatrix> for Mat2 {
    fn from(m: IntegerMatrix) -> Self {
        Mat2 { a: m.a as f64, b: m.b as f64, c: m.c as f64, d: m.d as f64 }
    }
}
