//! Adaptive Simpson quadrature.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Depth cap of the recursive bisection.
pub const MAX_DEPTH: u32 = 40;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of `|S₂ − S₁|` over accepted intervals. This overstates the
    /// Richardson error estimate by a factor of 15.
    pub error: f64,
    pub evaluations: u64,
    /// False when some interval hit the depth cap before meeting its share of
    /// the tolerance.
    pub converged: bool,
}

impl Quadrature {
    pub fn exact(value: f64) -> Self {
        Quadrature { value, error: 0.0, evaluations: 0, converged: true }
    }

    pub fn add(&mut self, other: &Quadrature) {
        self.value += other.value;
        self.error += other.error;
        self.evaluations += other.evaluations;
        self.converged &= other.converged;
    }

    pub fn scaled(mut self, s: f64) -> Self {
        self.value *= s;
        self.error *= s.abs();
        self
    }
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    out: &mut Quadrature,
) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    out.evaluations += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    let settled = delta.abs() <= 15.0 * tol && depth >= 2;
    if settled || depth >= MAX_DEPTH || !(m > a && b > m) {
        if !settled {
            out.converged = false;
        }
        out.value += left + right + delta / 15.0;
        out.error += delta.abs();
        return;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, out);
    adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, out);
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn simpson_abs<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Quadrature {
    let mut out = Quadrature { converged: true, ..Default::default() };
    if b <= a {
        return out;
    }
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    out.evaluations = 3;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adapt(f, a, b, fa, fm, fb, whole, tol, 0, &mut out);
    out
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
}

impl Panel {
    fn whole(&self) -> f64 {
        (self.b - self.a) / 6.0 * (self.fa + 4.0 * self.fm + self.fb)
    }
}

fn coarse_panels<F: Fn(f64) -> f64 + Sync>(f: &F, a: f64, b: f64, panels: usize) -> Vec<Panel> {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let nodes: Vec<f64> = (0..=2 * panels).into_par_iter().map(|k| f(a + 0.5 * h * k as f64)).collect();
    (0..panels)
        .map(|i| Panel {
            a: a + h * i as f64,
            b: if i + 1 == panels { b } else { a + h * (i + 1) as f64 },
            fa: nodes[2 * i],
            fm: nodes[2 * i + 1],
            fb: nodes[2 * i + 2],
        })
        .collect()
}

/// `∫_a^b f` to relative tolerance `rel_tol`, starting from `panels` equal
/// panels refined in parallel. The relative target is turned into an
/// absolute one from the coarse panel sum; the result does not depend on the
/// number of worker threads.
pub fn simpson_rel<F: Fn(f64) -> f64 + Sync>(f: &F, a: f64, b: f64, rel_tol: f64, panels: usize) -> Quadrature {
    if b <= a {
        return Quadrature::exact(0.0);
    }
    let coarse = coarse_panels(f, a, b, panels);
    let estimate: f64 = coarse.iter().map(|p| p.whole().abs()).sum();
    let total_tol = (rel_tol * estimate).max(f64::MIN_POSITIVE);
    let parts: Vec<Quadrature> = coarse
        .par_iter()
        .map(|p| {
            let mut q = Quadrature { converged: true, ..Default::default() };
            let tol = total_tol * (p.b - p.a) / (b - a);
            adapt(f, p.a, p.b, p.fa, p.fm, p.fb, p.whole(), tol, 0, &mut q);
            q
        })
        .collect();
    let mut out = Quadrature { evaluations: 2 * coarse.len() as u64 + 1, converged: true, ..Default::default() };
    for q in &parts {
        out.add(q);
    }
    out
}
