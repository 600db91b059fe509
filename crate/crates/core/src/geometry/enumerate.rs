//! Cylinder and saddle enumeration by direction and by radius.

use rayon::prelude::*;

use crate::error::{GeometryError, OrigamiError};
use crate::geometry::affine::AffineSurface;
use crate::geometry::holonomy::{HolonomyKind, HolonomyRecord, HolonomySet, HolonomyVector, Normalization};
use crate::geometry::horizontal::{cylinder_shapes, saddle_lengths};
use crate::geometry::lattice::{to_upper_half, within, EllipseScan};
use crate::geometry::mat2::Mat2;
use crate::geometry::surface::{DirectionTable, Surface};
use crate::sl2z::{direction_normalizer, Letter};

fn cylinder_record(p: i64, q: i64, w: u32, h: u32, a: &Mat2) -> HolonomyRecord {
    HolonomyRecord {
        holonomy: HolonomyVector::mapped((w as i64 * p, w as i64 * q), a),
        width: w,
        height: h,
        multiplicity: 1,
    }
}

fn saddle_record(p: i64, q: i64, len: u32, a: &Mat2) -> HolonomyRecord {
    HolonomyRecord {
        holonomy: HolonomyVector::mapped((len as i64 * p, len as i64 * q), a),
        width: len,
        height: 0,
        multiplicity: 1,
    }
}

/// Horizontal cylinders as records along `(1, 0)`.
pub fn horizontal_cylinders(s: &Surface) -> Vec<HolonomyRecord> {
    cylinder_shapes(s.origami(), s.is_marked())
        .into_iter()
        .map(|(w, h)| cylinder_record(1, 0, w, h, &Mat2::IDENTITY))
        .collect()
}

/// Horizontal saddle connections as records along `(1, 0)`.
pub fn horizontal_saddles(s: &Surface) -> Result<Vec<HolonomyRecord>, GeometryError> {
    s.require_singularities()?;
    Ok(saddle_lengths(s.origami(), s.is_marked())
        .into_iter()
        .map(|len| saddle_record(1, 0, len, &Mat2::IDENTITY))
        .collect())
}

/// Cylinders or saddles in the primitive direction `(p, q)`, found by
/// retiling with the direction normalizer and reading horizontal data.
pub fn enumerate_in_direction(s: &Surface, p: i64, q: i64, kind: HolonomyKind) -> Result<Vec<HolonomyRecord>, GeometryError> {
    let (p, q) = to_upper_half(p, q);
    let a = direction_normalizer(p, q)?;
    let o = s.origami().retile(&a)?;
    let mut out: Vec<HolonomyRecord> = match kind {
        HolonomyKind::Cylinders => cylinder_shapes(&o, s.is_marked())
            .into_iter()
            .map(|(w, h)| cylinder_record(p, q, w, h, &Mat2::IDENTITY))
            .collect(),
        HolonomyKind::Saddles => {
            s.require_singularities()?;
            saddle_lengths(&o, s.is_marked())
                .into_iter()
                .map(|len| saddle_record(p, q, len, &Mat2::IDENTITY))
                .collect()
        }
    };
    out.sort_by_key(|r| (r.width, r.height));
    Ok(out)
}

/// Runs `f(p, q, |B·(p,q)|, node, acc)` on every primitive direction inside
/// the ellipse, one accumulator per row, rows in parallel.
fn par_rows<A, F>(table: &DirectionTable, b: &Mat2, dir_radius: f64, f: F) -> Result<Vec<A>, OrigamiError>
where
    A: Default + Send,
    F: Fn(i64, i64, f64, usize, &mut A) + Sync,
{
    let scan = EllipseScan::new(b, dir_radius);
    scan.rows()
        .into_par_iter()
        .map_init(Vec::<Letter>::new, |scratch, j| {
            let mut acc = A::default();
            let mut err = None;
            scan.scan_row(j, |p, q| {
                if err.is_some() {
                    return;
                }
                let norm = b.norm_of(p as f64, q as f64);
                if !within(norm, dir_radius) {
                    return;
                }
                match table.node_for(p, q, scratch) {
                    Ok(node) => f(p, q, norm, node, &mut acc),
                    Err(e) => err = Some(e),
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(acc),
            }
        })
        .collect()
}

fn check_radius(r: f64) -> Result<(), GeometryError> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(GeometryError::BadRadius(r))
    }
}

/// Every record of `A·X` whose holonomy has length at most `radius`
/// (in units of `normalization`), sorted by `(|v|, x, y)`.
pub fn enumerate_affine(
    s: &AffineSurface,
    radius: f64,
    kind: HolonomyKind,
    normalization: Normalization,
) -> Result<HolonomySet, GeometryError> {
    check_radius(radius)?;
    let surface = s.base();
    let n = surface.n();
    let scale = match normalization {
        Normalization::Raw => 1.0,
        Normalization::UnitArea => surface.unit_scale(),
    };
    let raw = radius * scale;
    let mut set = HolonomySet { kind, radius: raw, normalization, n, records: Vec::new() };
    if kind == HolonomyKind::Saddles && !surface.has_singularities() {
        return Ok(set);
    }
    let table = surface.table();
    let b = s.matrix();
    let rows: Vec<Vec<HolonomyRecord>> = par_rows(table, b, raw, |p, q, norm, node, acc: &mut Vec<HolonomyRecord>| {
        match kind {
            HolonomyKind::Cylinders => {
                for &(w, h) in table.cylinders(node) {
                    if within(w as f64 * norm, raw) {
                        acc.push(cylinder_record(p, q, w, h, b));
                    }
                }
            }
            HolonomyKind::Saddles => {
                for &len in table.saddles(node) {
                    if within(len as f64 * norm, raw) {
                        acc.push(saddle_record(p, q, len, b));
                    }
                }
            }
        }
    })?;
    set.records = rows.into_iter().flatten().collect();
    set.sort();
    Ok(set)
}

/// Raw-radius ball around the origin on the untransformed origami.
pub fn enumerate_ball(s: &Surface, radius: f64, kind: HolonomyKind) -> Result<HolonomySet, GeometryError> {
    enumerate_affine(&AffineSurface::identity(s.clone()), radius, kind, Normalization::Raw)
}

/// Cumulative counts at several raw radii.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountProfile {
    /// Records with `|A·v| ≤ radius`.
    pub count: u64,
    /// Σ `w·h` over those records (0 for saddles).
    pub squares: u64,
}

#[derive(Default)]
struct Histogram(Vec<CountProfile>);

/// `CountProfile` of `A·X` at each raw radius in `radii` (any order).
///
/// Integer histograms per row make the result independent of the
/// thread count.
pub fn count_profile(s: &AffineSurface, radii: &[f64], kind: HolonomyKind) -> Result<Vec<CountProfile>, GeometryError> {
    for &r in radii {
        check_radius(r)?;
    }
    if radii.is_empty() {
        return Ok(Vec::new());
    }
    let surface = s.base();
    if kind == HolonomyKind::Saddles && !surface.has_singularities() {
        return Ok(vec![CountProfile::default(); radii.len()]);
    }
    let mut order: Vec<usize> = (0..radii.len()).collect();
    order.sort_by(|&i, &j| radii[i].total_cmp(&radii[j]));
    let sorted: Vec<f64> = order.iter().map(|&i| radii[i]).collect();
    let max = *sorted.last().unwrap();
    let k = sorted.len();
    let table = surface.table();
    let b = s.matrix();
    let bin = |len: f64| sorted.partition_point(|&r| !within(len, r));
    let rows: Vec<Histogram> = par_rows(table, b, max, |_, _, norm, node, acc: &mut Histogram| {
        if acc.0.is_empty() {
            acc.0 = vec![CountProfile::default(); k + 1];
        }
        match kind {
            HolonomyKind::Cylinders => {
                for &(w, h) in table.cylinders(node) {
                    let slot = &mut acc.0[bin(w as f64 * norm)];
                    slot.count += 1;
                    slot.squares += w as u64 * h as u64;
                }
            }
            HolonomyKind::Saddles => {
                for &len in table.saddles(node) {
                    acc.0[bin(len as f64 * norm)].count += 1;
                }
            }
        }
    })?;
    let mut hist = vec![CountProfile::default(); k + 1];
    for row in rows {
        for (slot, add) in hist.iter_mut().zip(row.0) {
            slot.count += add.count;
            slot.squares += add.squares;
        }
    }
    let mut cumulative = vec![CountProfile::default(); k];
    let mut running = CountProfile::default();
    for i in 0..k {
        running.count += hist[i].count;
        running.squares += hist[i].squares;
        cumulative[i] = running;
    }
    let mut out = vec![CountProfile::default(); k];
    for (pos, &i) in order.iter().enumerate() {
        out[i] = cumulative[pos];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::Origami;

    fn holonomies(rs: &[HolonomyRecord]) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = rs.iter().map(|r| r.holonomy.preimage).collect();
        v.sort();
        v
    }

    #[test]
    fn horizontal_examples() {
        let l3 = Surface::unmarked(Origami::l_shape());
        let mut shapes: Vec<_> = horizontal_cylinders(&l3).iter().map(|r| (r.width, r.height)).collect();
        shapes.sort();
        assert_eq!(shapes, vec![(1, 1), (2, 1)]);
        assert_eq!(horizontal_saddles(&l3).unwrap().len(), 3);
        assert_eq!(horizontal_saddles(&Surface::unmarked(Origami::torus())), Err(GeometryError::NoZeros));
    }

    #[test]
    fn direction_examples() {
        let torus = Surface::unmarked(Origami::torus());
        let r = enumerate_in_direction(&torus, 1, 1, HolonomyKind::Cylinders).unwrap();
        assert_eq!(holonomies(&r), vec![(1, 1)]);

        let l3 = Surface::unmarked(Origami::l_shape());
        let r = enumerate_in_direction(&l3, 0, 1, HolonomyKind::Cylinders).unwrap();
        assert_eq!(holonomies(&r), vec![(0, 1), (0, 2)]);
        let r = enumerate_in_direction(&l3, 1, 0, HolonomyKind::Cylinders).unwrap();
        assert_eq!(holonomies(&r), holonomies(&horizontal_cylinders(&l3)));
        assert!(matches!(
            enumerate_in_direction(&l3, 2, 4, HolonomyKind::Cylinders),
            Err(GeometryError::Origami(OrigamiError::NotPrimitive(2, 4)))
        ));
    }

    #[test]
    fn ball_examples() {
        let torus = Surface::marked_torus();
        let b = enumerate_ball(&torus, 2.0, HolonomyKind::Cylinders).unwrap();
        assert_eq!(holonomies(&b.records), vec![(-1, 1), (0, 1), (1, 0), (1, 1)]);
        let l3 = Surface::unmarked(Origami::l_shape());
        assert!(enumerate_ball(&l3, 0.9, HolonomyKind::Cylinders).unwrap().is_empty());
        let b = enumerate_ball(&l3, 1.0, HolonomyKind::Cylinders).unwrap();
        assert_eq!(holonomies(&b.records), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn table_path_matches_direct_retile() {
        let l3 = Surface::unmarked(Origami::l_shape());
        for kind in [HolonomyKind::Cylinders, HolonomyKind::Saddles] {
            let ball = enumerate_ball(&l3, 9.0, kind).unwrap();
            let mut direct = Vec::new();
            for q in 0..=9i64 {
                for p in -9..=9i64 {
                    if (q == 0 && p <= 0) || num_integer::gcd(p, q) != 1 {
                        continue;
                    }
                    for r in enumerate_in_direction(&l3, p, q, kind).unwrap() {
                        if within(r.holonomy.norm(), 9.0) {
                            direct.push(r.holonomy.preimage);
                        }
                    }
                }
            }
            direct.sort();
            assert_eq!(holonomies(&ball.records), direct);
        }
    }

    #[test]
    fn profile_matches_ball_sizes() {
        let l3 = AffineSurface::identity(Surface::unmarked(Origami::l_shape()));
        let radii = [7.0, 2.0, 30.0];
        let prof = count_profile(&l3, &radii, HolonomyKind::Cylinders).unwrap();
        for (r, p) in radii.iter().zip(&prof) {
            let ball = enumerate_affine(&l3, *r, HolonomyKind::Cylinders, Normalization::Raw).unwrap();
            assert_eq!(p.count, ball.len() as u64);
            assert_eq!(p.squares, ball.records.iter().map(|r| r.squares()).sum::<u64>());
        }
    }
}
