use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use svorigami::analysis::{count_N, Weighting};
use svorigami::geometry::{
    enumerate_affine, enumerate_ball, enumerate_in_direction, shortest_saddle, trace_separatrices, transform_set,
    AffineSurface, HolonomyKind, HolonomyRecord, Mat2, Normalization, Surface,
};
use svorigami::{generate_stratum_origamis, Origami, StratumSignature};

fn h2_pool() -> &'static [Origami] {
    static POOL: OnceLock<Vec<Origami>> = OnceLock::new();
    POOL.get_or_init(|| {
        (3..=6)
            .flat_map(|n| generate_stratum_origamis(n, &StratumSignature::h2()).unwrap())
            .collect()
    })
}

fn primitive_direction() -> impl Strategy<Value = (i64, i64)> {
    (-15i64..=15, 0i64..=15).prop_filter("primitive upper half", |&(p, q)| {
        (q > 0 || p > 0) && p.gcd(&q) == 1
    })
}

fn random_sl2r(rng: &mut ChaCha8Rng) -> Mat2 {
    let a = Mat2::rotation(rng.gen_range(0.0..std::f64::consts::TAU));
    let g = Mat2::geodesic(rng.gen_range(-2.0..2.0));
    let b = Mat2::rotation(rng.gen_range(0.0..std::f64::consts::TAU));
    a.mul(&g).mul(&b)
}

fn preimages(rs: Vec<HolonomyRecord>) -> Vec<(i64, i64)> {
    let mut v: Vec<_> = rs.into_iter().map(|r| r.holonomy.preimage).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cylinders_partition_the_area(idx in 0usize..10_000, (p, q) in primitive_direction()) {
        let o = &h2_pool()[idx % h2_pool().len()];
        let s = Surface::unmarked(o.clone());
        let cyl = enumerate_in_direction(&s, p, q, HolonomyKind::Cylinders).unwrap();
        prop_assert_eq!(cyl.iter().map(|c| c.squares()).sum::<u64>(), o.n() as u64);
        // cylinders are bounded by saddle connections in the same direction
        let saddles = enumerate_in_direction(&s, p, q, HolonomyKind::Saddles).unwrap();
        prop_assert!(!cyl.is_empty() && !saddles.is_empty());
        for c in &cyl {
            let (x, y) = c.holonomy.preimage;
            prop_assert_eq!((x, y), (c.width as i64 * p, c.width as i64 * q));
        }
    }

    #[test]
    fn tracer_agrees_beyond_the_acceptance_window(idx in 0usize..10_000, (p, q) in primitive_direction()) {
        let o = &h2_pool()[idx % h2_pool().len()];
        let s = Surface::unmarked(o.clone());
        let traced = preimages(trace_separatrices(&s, p, q).unwrap());
        let piped = preimages(enumerate_in_direction(&s, p, q, HolonomyKind::Saddles).unwrap());
        prop_assert_eq!(traced, piped);
    }

    #[test]
    fn count_is_rotation_invariant(idx in 0usize..10_000, theta in 0.0..std::f64::consts::TAU, r in 1.0f64..12.0) {
        let o = &h2_pool()[idx % h2_pool().len()];
        let s = AffineSurface::identity(Surface::unmarked(o.clone()));
        for kind in [HolonomyKind::Cylinders, HolonomyKind::Saddles] {
            let a = count_N(&s, r, kind, Weighting::Unweighted).unwrap();
            let b = count_N(&s.rotated(theta), r, kind, Weighting::Unweighted).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn marked_torus_shortest_saddle_under_geodesic_flow(t in 0.0f64..6.0) {
        let torus = AffineSurface::identity(Surface::marked_torus());
        let ell = shortest_saddle(&torus.geodesic(t)).unwrap();
        prop_assert!((ell.normalized - (-t).exp()).abs() <= 1e-12 * (-t).exp());
        prop_assert_eq!(ell.preimage, (1, 0));
    }
}

/// Doubling the enumeration radius past the certified radius never finds a
/// shorter saddle.
#[test]
fn shortest_saddle_cutoff_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xce47);
    let mut pool: Vec<Surface> = h2_pool().iter().cloned().map(Surface::unmarked).collect();
    pool.push(Surface::marked_torus());
    for _ in 0..50 {
        let base = pool[rng.gen_range(0..pool.len())].clone();
        let s = AffineSurface::new(base, random_sl2r(&mut rng)).unwrap();
        let found = shortest_saddle(&s).unwrap();
        let set = enumerate_affine(&s, 2.0 * found.certified_radius, HolonomyKind::Saddles, Normalization::Raw).unwrap();
        let shortest = set.records.iter().map(|r| r.holonomy.norm()).fold(f64::INFINITY, f64::min);
        assert!((shortest - found.length).abs() <= 1e-12 * found.length, "{shortest} vs {}", found.length);
        assert!(found.certified_radius >= found.length * (1.0 - 1e-12));
    }
}

/// Affine images: the ball of `A·X` is `A` applied to a large enough ball of
/// `X`, for real matrices as well as integer ones.
#[test]
fn affine_enumeration_matches_transformed_ball() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xaff1);
    for _ in 0..40 {
        let o = h2_pool()[rng.gen_range(0..h2_pool().len())].clone();
        let a = random_sl2r(&mut rng);
        let r = rng.gen_range(1.0..6.0);
        let base = Surface::unmarked(o);
        let s = AffineSurface::new(base.clone(), a).unwrap();
        let (_, smin) = a.singular_values();
        for kind in [HolonomyKind::Cylinders, HolonomyKind::Saddles] {
            let direct = enumerate_affine(&s, r, kind, Normalization::Raw).unwrap();
            let big = enumerate_ball(&base, r / smin * (1.0 + 1e-9), kind).unwrap();
            let moved = transform_set(&big, &a).restrict(r);
            let key = |set: &svorigami::geometry::HolonomySet| {
                let mut v: Vec<_> = set.records.iter().map(|x| (x.holonomy.preimage, x.width, x.height)).collect();
                v.sort();
                v
            };
            assert_eq!(key(&direct), key(&moved));
        }
    }
}

#[test]
fn enumeration_is_independent_of_thread_count() {
    let o = h2_pool()[h2_pool().len() - 1].clone();
    let s = AffineSurface::new(Surface::unmarked(o), Mat2::rotation(0.3).mul(&Mat2::geodesic(0.7))).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| enumerate_affine(&s, 40.0, HolonomyKind::Cylinders, Normalization::UnitArea).unwrap())
    };
    let (one, four) = (run(1), run(4));
    assert_eq!(one.records, four.records);
    assert!(!one.records.is_empty());
}
