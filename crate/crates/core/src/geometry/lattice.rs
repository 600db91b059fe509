//! Primitive integer directions `d` with `|B·d| ≤ r`.
//!
//! The lattice `B·ℤ²` is Lagrange-reduced first, so the scan works in a
//! basis whose Gram matrix is well conditioned even when `B` is a long thin
//! `g_t r_θ`. Each unoriented direction is produced once, in the upper
//! half-plane convention (`y > 0`, or `y = 0` and `x > 0`).

use num_integer::Integer;

use crate::geometry::mat2::Mat2;

/// Relative slack on every radius comparison.
pub const RADIUS_SLACK: f64 = 1e-12;

/// Inclusive radius test shared by all enumerations.
#[inline]
pub fn within(norm: f64, radius: f64) -> bool {
    norm <= radius * (1.0 + RADIUS_SLACK)
}

#[inline]
pub fn to_upper_half(x: i64, y: i64) -> (i64, i64) {
    if y < 0 || (y == 0 && x < 0) {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// Lagrange-reduced basis `u₁, u₂` of `ℤ²` for the quadratic form `|B·x|²`.
#[derive(Clone, Copy, Debug)]
pub struct ReducedBasis {
    pub u1: (i64, i64),
    pub u2: (i64, i64),
    g11: f64,
    g12: f64,
    g22: f64,
}

impl ReducedBasis {
    pub fn new(b: &Mat2) -> Self {
        let mut u1 = (1i64, 0i64);
        let mut u2 = (0i64, 1i64);
        let mut c1 = b.apply(1.0, 0.0);
        let mut c2 = b.apply(0.0, 1.0);
        let dot = |x: (f64, f64), y: (f64, f64)| x.0 * y.0 + x.1 * y.1;
        for _ in 0..200 {
            if dot(c2, c2) < dot(c1, c1) {
                std::mem::swap(&mut c1, &mut c2);
                std::mem::swap(&mut u1, &mut u2);
            }
            let mu = (dot(c1, c2) / dot(c1, c1)).round();
            if mu == 0.0 || !mu.is_finite() {
                break;
            }
            let k = mu as i64;
            c2 = (c2.0 - mu * c1.0, c2.1 - mu * c1.1);
            u2 = (u2.0 - k * u1.0, u2.1 - k * u1.1);
        }
        // recompute from integer coordinates to shed accumulated rounding
        let c1 = b.apply(u1.0 as f64, u1.1 as f64);
        let c2 = b.apply(u2.0 as f64, u2.1 as f64);
        ReducedBasis { u1, u2, g11: dot(c1, c1), g12: dot(c1, c2), g22: dot(c2, c2) }
    }

    fn gram_det(&self) -> f64 {
        (self.g11 * self.g22 - self.g12 * self.g12).max(f64::MIN_POSITIVE)
    }

    #[inline]
    fn to_standard(self, i: i64, j: i64) -> (i64, i64) {
        (i * self.u1.0 + j * self.u2.0, i * self.u1.1 + j * self.u2.1)
    }
}

/// Row-by-row scan of the primitive directions in `{d : |B·d| ≤ r}`.
#[derive(Clone, Copy, Debug)]
pub struct EllipseScan {
    basis: ReducedBasis,
    radius: f64,
    max_row: i64,
}

impl EllipseScan {
    pub fn new(b: &Mat2, radius: f64) -> Self {
        let basis = ReducedBasis::new(b);
        let r = radius * (1.0 + 1e-9);
        let max_row = (r * (basis.g11 / basis.gram_det()).sqrt()).floor() as i64;
        EllipseScan { basis, radius: r, max_row: max_row.max(0) }
    }

    /// Rows `0..=max_row` of the reduced coordinate `j`.
    pub fn rows(&self) -> std::ops::RangeInclusive<i64> {
        0..=self.max_row
    }

    /// Calls `f(p, q)` for each primitive candidate in row `j`. Candidates
    /// may overshoot the radius by the scan slack; callers filter with
    /// [`within`].
    pub fn scan_row(&self, j: i64, mut f: impl FnMut(i64, i64)) {
        let b = &self.basis;
        if j == 0 {
            if b.g11.sqrt() <= self.radius {
                let (p, q) = b.to_standard(1, 0);
                let (p, q) = to_upper_half(p, q);
                f(p, q);
            }
            return;
        }
        let jf = j as f64;
        let disc = b.g11 * self.radius * self.radius - b.gram_det() * jf * jf;
        if disc < 0.0 {
            return;
        }
        let s = disc.sqrt();
        let lo = ((-b.g12 * jf - s) / b.g11).ceil() as i64;
        let hi = ((-b.g12 * jf + s) / b.g11).floor() as i64;
        for i in lo..=hi {
            if i.gcd(&j) != 1 {
                continue;
            }
            let (p, q) = b.to_standard(i, j);
            let (p, q) = to_upper_half(p, q);
            f(p, q);
        }
    }

    pub fn for_each(&self, mut f: impl FnMut(i64, i64)) {
        for j in self.rows() {
            self.scan_row(j, &mut f);
        }
    }
}

/// Primitive directions with `|B·d| ≤ r`, sorted by `(|B·d|, p, q)`.
pub fn primitive_directions(b: &Mat2, radius: f64) -> Vec<(i64, i64)> {
    let scan = EllipseScan::new(b, radius);
    let mut out = Vec::new();
    scan.for_each(|p, q| {
        if within(b.norm_of(p as f64, q as f64), radius) {
            out.push((p, q));
        }
    });
    out.sort_by(|x, y| {
        let nx = b.norm_of(x.0 as f64, x.1 as f64);
        let ny = b.norm_of(y.0 as f64, y.1 as f64);
        nx.total_cmp(&ny).then(x.cmp(y))
    });
    out
}
