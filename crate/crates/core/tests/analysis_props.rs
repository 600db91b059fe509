use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use svorigami::analysis::{
    circle_integral, count_N, siegel_veech_transform, svc_estimate, CircleIntegrand, TestFunction, Weighting,
};
use svorigami::geometry::{AffineSurface, HolonomyKind, Mat2, Surface};
use svorigami::{generate_stratum_origamis, sl2z_orbit, Origami, StratumSignature};

fn pool() -> Vec<AffineSurface> {
    let mut v = vec![
        AffineSurface::identity(Surface::marked_torus()),
        AffineSurface::identity(Surface::unmarked(Origami::l_shape())),
    ];
    for o in generate_stratum_origamis(4, &StratumSignature::h2()).unwrap().into_iter().take(2) {
        v.push(AffineSurface::identity(Surface::unmarked(o)));
    }
    v
}

/// Shortest nonzero vector of the lattice spanned by the columns of `m`,
/// by Lagrange reduction.
fn lagrange_shortest(m: &Mat2) -> f64 {
    let mut u = (m.a, m.c);
    let mut v = (m.b, m.d);
    let dot = |x: (f64, f64), y: (f64, f64)| x.0 * y.0 + x.1 * y.1;
    if dot(u, u) > dot(v, v) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let k = (dot(u, v) / dot(u, u)).round();
        v = (v.0 - k * u.0, v.1 - k * u.1);
        if dot(v, v) >= dot(u, u) {
            return dot(u, u).sqrt();
        }
        std::mem::swap(&mut u, &mut v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ball_transform_equals_count(idx in 0usize..4, r in 0.5f64..30.0, t in 0.0f64..2.0, theta in 0.0..TAU) {
        let s = pool()[idx].rotated(theta).geodesic(t);
        let f = TestFunction::BallIndicator { radius: r };
        let transform = siegel_veech_transform(&s, &f).unwrap();
        let count = count_N(&s, r, HolonomyKind::Cylinders, Weighting::Unweighted).unwrap();
        prop_assert_eq!(transform, count);
    }
}

#[test]
fn halving_tol_stays_within_error_estimate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a7);
    let surfaces = pool();
    for _ in 0..20 {
        let s = surfaces[rng.gen_range(0..surfaces.len())].rotated(rng.gen_range(0.0..TAU));
        let t = rng.gen_range(0.0..2.0);
        let integrand = if rng.gen_bool(0.5) {
            CircleIntegrand::InverseEll { delta: rng.gen_range(0.05..0.45) }
        } else {
            CircleIntegrand::Transform { f: TestFunction::RadialBump { radius: 3.0, width: rng.gen_range(0.3..1.5) } }
        };
        let tol = 1e-5;
        let coarse = circle_integral(&s, t, &integrand, tol).unwrap();
        let fine = circle_integral(&s, t, &integrand, tol / 2.0).unwrap();
        let diff = (coarse.value - fine.value).abs();
        assert!(
            diff <= coarse.error + 1e-13 * coarse.value.abs(),
            "{integrand:?} T={t}: |{} - {}| = {diff} > {}",
            coarse.value,
            fine.value,
            coarse.error
        );
    }
}

/// The marked torus has `ℓ(g_T r_θ ℤ²)` equal to the lattice's shortest
/// vector, so a fine midpoint grid over Lagrange-reduced bases is an
/// independent check of the inverse-ℓ circle integral.
#[test]
fn inverse_ell_on_marked_torus_matches_grid() {
    let (t, delta, tol) = (2.0, 0.25, 1e-6);
    let torus = AffineSurface::identity(Surface::marked_torus());
    let q = circle_integral(&torus, t, &CircleIntegrand::InverseEll { delta }, tol).unwrap();
    let m = 100_000;
    let h = TAU / m as f64;
    let grid: f64 = (0..m)
        .map(|k| {
            let theta = (k as f64 + 0.5) * h;
            let ell = lagrange_shortest(&Mat2::geodesic(t).mul(&Mat2::rotation(theta)));
            ell.powf(-(1.0 + delta))
        })
        .sum::<f64>()
        * h;
    assert!((q.value - grid).abs() <= 3.0 * tol * grid, "{} vs {grid}", q.value);
}

#[test]
fn circle_integrals_are_rotation_invariant() {
    let l3 = AffineSurface::identity(Surface::unmarked(Origami::l_shape()));
    let tol = 1e-6;
    for integrand in [
        CircleIntegrand::InverseEll { delta: 0.25 },
        CircleIntegrand::Transform { f: TestFunction::TrapezoidIndicator },
    ] {
        let base = circle_integral(&l3, 1.5, &integrand, tol).unwrap().value;
        for phi in [0.3, 1.1, 2.9] {
            let turned = circle_integral(&l3.rotated(phi), 1.5, &integrand, tol).unwrap().value;
            assert!((turned - base).abs() <= 3.0 * tol * base, "{integrand:?} phi={phi}: {turned} vs {base}");
        }
    }
}

/// On a closed orbit the growth constant is the same for every member.
#[test]
fn growth_constant_is_constant_on_an_orbit() {
    for seed in [Origami::l_shape(), generate_stratum_origamis(4, &StratumSignature::h2()).unwrap()[0].clone()] {
        let cs: Vec<f64> = sl2z_orbit(&seed)
            .representatives()
            .iter()
            .map(|o| svc_estimate(&AffineSurface::identity(Surface::unmarked(o.clone())), 400.0).unwrap().estimate)
            .collect();
        let mean = cs.iter().sum::<f64>() / cs.len() as f64;
        for c in &cs {
            assert!((c - mean).abs() <= 0.01 * mean, "{cs:?}");
        }
    }
}

/// Marked torus: primitive vectors have density `3/π` per unit area and
/// every cylinder fills the surface, so area weighting changes nothing.
#[test]
fn marked_torus_counts() {
    let torus = AffineSurface::identity(Surface::marked_torus());
    let plain = count_N(&torus, 200.0, HolonomyKind::Cylinders, Weighting::Unweighted).unwrap();
    let weighted = count_N(&torus, 200.0, HolonomyKind::Cylinders, Weighting::Area).unwrap();
    assert_eq!(plain, weighted);
    assert!((plain / 200.0f64.powi(2) - 3.0 / PI).abs() < 0.01);
    let saddles = count_N(&torus, 200.0, HolonomyKind::Saddles, Weighting::Unweighted).unwrap();
    assert_eq!(saddles, plain);
}

#[test]
fn circle_integral_is_independent_of_thread_count() {
    let s = AffineSurface::identity(Surface::unmarked(Origami::l_shape())).rotated(0.4);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let a = circle_integral(&s, 1.0, &CircleIntegrand::InverseEll { delta: 0.25 }, 1e-6).unwrap();
            let b = circle_integral(&s, 2.0, &CircleIntegrand::Transform { f: TestFunction::TrapezoidIndicator }, 1e-6)
                .unwrap();
            (a.value.to_bits(), b.value.to_bits())
        })
    };
    assert_eq!(run(1), run(3));
}

/// `g_{−t} = r_{π/2}·g_t·r_{−π/2}` and `ℤ²` is invariant under quarter
/// turns, so the torus counts at `t` and `−t` coincide.
#[test]
fn torus_counts_are_symmetric_in_t() {
    let torus = AffineSurface::identity(Surface::marked_torus());
    for t in [0.3, 1.0, 1.7] {
        let a = count_N(&torus.geodesic(t), 50.0, HolonomyKind::Cylinders, Weighting::Unweighted).unwrap();
        let b = count_N(&torus.geodesic(-t), 50.0, HolonomyKind::Cylinders, Weighting::Unweighted).unwrap();
        assert_eq!(a, b);
    }
}
