//! Holonomy vectors, records and radius-complete holonomy multisets.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::geometry::lattice::within;
use crate::geometry::mat2::Mat2;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HolonomyKind {
    Cylinders,
    Saddles,
}

impl HolonomyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HolonomyKind::Cylinders => "cylinder",
            HolonomyKind::Saddles => "saddle",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    Raw,
    /// Lengths divided by `√n`.
    UnitArea,
}

/// Holonomy of a cylinder core or saddle connection.
///
/// `preimage` is the exact integer holonomy on the base origami; `(x, y)` is
/// its image under the surface's affine matrix, flipped together with
/// `preimage` into the upper half-plane convention.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct HolonomyVector {
    pub preimage: (i64, i64),
    pub x: f64,
    pub y: f64,
}

impl HolonomyVector {
    pub fn integer(p: i64, q: i64) -> Self {
        HolonomyVector { preimage: (p, q), x: p as f64, y: q as f64 }
    }

    /// `A·preimage`, normalized to the upper half-plane.
    pub fn mapped(preimage: (i64, i64), a: &Mat2) -> Self {
        let (x, y) = a.apply(preimage.0 as f64, preimage.1 as f64);
        HolonomyVector { preimage, x, y }.upper()
    }

    fn upper(self) -> Self {
        if self.y < 0.0 || (self.y == 0.0 && self.x < 0.0) {
            HolonomyVector { preimage: (-self.preimage.0, -self.preimage.1), x: -self.x, y: -self.y }
        } else {
            self
        }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// One cylinder or saddle connection.
///
/// For cylinders `width` is the core length in units of the primitive
/// direction and `height` the height in the direction-normalized frame, so
/// `width·height` is the area in squares. For saddles `width` is the length
/// multiple and `height` is 0. Equal holonomies stay separate records with
/// `multiplicity` 1 unless explicitly merged.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct HolonomyRecord {
    pub holonomy: HolonomyVector,
    pub width: u32,
    pub height: u32,
    pub multiplicity: u32,
}

impl HolonomyRecord {
    pub fn squares(&self) -> u64 {
        self.width as u64 * self.height as u64
    }
}

/// Every record with `|holonomy| ≤ radius` (raw units of the image frame).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HolonomySet {
    pub kind: HolonomyKind,
    pub radius: f64,
    pub normalization: Normalization,
    /// Square count of the base origami, for unit-area normalization.
    pub n: usize,
    pub records: Vec<HolonomyRecord>,
}

impl HolonomySet {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn scale(&self) -> f64 {
        match self.normalization {
            Normalization::Raw => 1.0,
            Normalization::UnitArea => (self.n as f64).sqrt(),
        }
    }

    pub fn normalized_length(&self, r: &HolonomyRecord) -> f64 {
        r.holonomy.norm() / self.scale()
    }

    /// Completeness radius in the set's normalization.
    pub fn normalized_radius(&self) -> f64 {
        self.radius / self.scale()
    }

    pub fn area_fraction(&self, r: &HolonomyRecord) -> f64 {
        r.squares() as f64 / self.n as f64
    }

    /// Records inside `radius` (in the set's normalization).
    pub fn restrict(&self, radius: f64) -> HolonomySet {
        let raw = radius * self.scale();
        HolonomySet {
            records: self.records.iter().copied().filter(|r| within(r.holonomy.norm(), raw)).collect(),
            radius: raw.min(self.radius),
            ..self.clone()
        }
    }

    /// Sorts by `(|v|, x, y)` then by width and height.
    pub fn sort(&mut self) {
        self.records.sort_by(|a, b| {
            a.holonomy
                .norm()
                .total_cmp(&b.holonomy.norm())
                .then(a.holonomy.x.total_cmp(&b.holonomy.x))
                .then(a.holonomy.y.total_cmp(&b.holonomy.y))
                .then(a.width.cmp(&b.width))
                .then(a.height.cmp(&b.height))
        });
    }

    /// Groups records with equal preimage holonomy and shape, summing
    /// multiplicities.
    pub fn merged(&self) -> HolonomySet {
        let mut out = self.clone();
        out.sort();
        let mut merged: Vec<HolonomyRecord> = Vec::new();
        for r in out.records {
            match merged.last_mut() {
                Some(last)
                    if last.holonomy.preimage == r.holonomy.preimage
                        && last.width == r.width
                        && last.height == r.height =>
                {
                    last.multiplicity += r.multiplicity
                }
                _ => merged.push(r),
            }
        }
        out.records = merged;
        out
    }

    /// CSV with columns `kind,x,y,width,height,multiplicity,normalized_length`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["kind", "x", "y", "width", "height", "multiplicity", "normalized_length"])?;
        for r in &self.records {
            wtr.write_record([
                self.kind.as_str().to_string(),
                format_float(r.holonomy.x),
                format_float(r.holonomy.y),
                r.width.to_string(),
                r.height.to_string(),
                r.multiplicity.to_string(),
                format_float(self.normalized_length(r)),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Applies `A` to every holonomy. The new completeness radius is
/// `radius·σ_min(A)`: any image vector shorter than that has its preimage
/// inside the old radius.
pub fn transform_set(s: &HolonomySet, a: &Mat2) -> HolonomySet {
    let (_, smin) = a.singular_values();
    let records = s
        .records
        .iter()
        .map(|r| {
            let (x, y) = a.apply(r.holonomy.x, r.holonomy.y);
            let flip = y < 0.0 || (y == 0.0 && x < 0.0);
            let sign = if flip { -1 } else { 1 };
            let holonomy = HolonomyVector {
                preimage: (sign * r.holonomy.preimage.0, sign * r.holonomy.preimage.1),
                x: sign as f64 * x,
                y: sign as f64 * y,
            };
            HolonomyRecord { holonomy, ..*r }
        })
        .collect();
    let mut out = HolonomySet { records, radius: s.radius * smin, ..s.clone() };
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_ball() -> HolonomySet {
        let records = [(1, 0), (0, 1), (1, 1), (-1, 1)]
            .into_iter()
            .map(|(p, q)| HolonomyRecord {
                holonomy: HolonomyVector::integer(p, q),
                width: 1,
                height: 1,
                multiplicity: 1,
            })
            .collect();
        HolonomySet { kind: HolonomyKind::Cylinders, radius: 2.0, normalization: Normalization::Raw, n: 1, records }
    }

    #[test]
    fn rotation_keeps_norms() {
        let s = torus_ball();
        let r = transform_set(&s, &Mat2::rotation(0.4));
        assert!((r.radius - 2.0).abs() < 1e-12);
        let mut a: Vec<f64> = s.records.iter().map(|r| r.holonomy.norm()).collect();
        let mut b: Vec<f64> = r.records.iter().map(|r| r.holonomy.norm()).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(r.records.iter().all(|r| r.holonomy.y >= 0.0));
    }

    #[test]
    fn geodesic_contracts_horizontal() {
        let t = 0.8;
        let r = transform_set(&torus_ball(), &Mat2::geodesic(t));
        let h = r.records.iter().find(|r| r.holonomy.preimage == (1, 0)).unwrap();
        assert!((h.holonomy.x - (-t).exp()).abs() < 1e-15);
        assert_eq!(h.holonomy.y, 0.0);
        assert!((r.radius - 2.0 * (-t).exp()).abs() < 1e-12);
    }

    #[test]
    fn round_trip_shrinks_radius() {
        let a = Mat2::geodesic(0.5).mul(&Mat2::rotation(1.0));
        let s = torus_ball();
        let back = transform_set(&transform_set(&s, &a), &a.inverse());
        let (_, smin) = a.singular_values();
        let (_, smin_inv) = a.inverse().singular_values();
        assert!((back.radius - 2.0 * smin * smin_inv).abs() < 1e-12);
        let mut pre: Vec<_> = back.records.iter().map(|r| r.holonomy.preimage).collect();
        pre.sort();
        assert_eq!(pre, vec![(-1, 1), (0, 1), (1, 0), (1, 1)]);
        for r in &back.records {
            assert!((r.holonomy.x - r.holonomy.preimage.0 as f64).abs() < 1e-12);
            assert!((r.holonomy.y - r.holonomy.preimage.1 as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_columns() {
        let mut buf = Vec::new();
        torus_ball().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "kind,x,y,width,height,multiplicity,normalized_length");
        assert_eq!(lines.count(), 4);
    }

    #[test]
    fn merge_counts_equal_holonomies() {
        let mut s = torus_ball();
        s.records.push(s.records[0]);
        let m = s.merged();
        assert_eq!(m.len(), 4);
        assert_eq!(m.records.iter().map(|r| r.multiplicity).sum::<u32>(), 5);
    }
}
