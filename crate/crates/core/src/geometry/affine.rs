//! Affine images `A·X` of square-tiled surfaces and their shortest saddle
//! connection.

use crate::error::GeometryError;
use crate::geometry::lattice::{to_upper_half, within, EllipseScan, ReducedBasis};
use crate::geometry::mat2::Mat2;
use crate::geometry::surface::Surface;

/// Tolerance on `|det A − 1|`.
pub const DET_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct AffineSurface {
    base: Surface,
    matrix: Mat2,
}

impl AffineSurface {
    pub fn new(base: Surface, matrix: Mat2) -> Result<Self, GeometryError> {
        let det = matrix.det();
        if !det.is_finite() || (det - 1.0).abs() > DET_TOLERANCE {
            return Err(GeometryError::NotUnimodular(det));
        }
        Ok(AffineSurface { base, matrix })
    }

    pub fn identity(base: Surface) -> Self {
        AffineSurface { base, matrix: Mat2::IDENTITY }
    }

    pub fn base(&self) -> &Surface {
        &self.base
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    /// `M·(A·X)`.
    pub fn transformed(&self, m: &Mat2) -> Result<AffineSurface, GeometryError> {
        AffineSurface::new(self.base.clone(), m.mul(&self.matrix))
    }

    /// `g_t·(A·X)`.
    pub fn geodesic(&self, t: f64) -> AffineSurface {
        AffineSurface { base: self.base.clone(), matrix: Mat2::geodesic(t).mul(&self.matrix) }
    }

    /// `r_θ·(A·X)`.
    pub fn rotated(&self, theta: f64) -> AffineSurface {
        AffineSurface { base: self.base.clone(), matrix: Mat2::rotation(theta).mul(&self.matrix) }
    }

    pub fn unit_scale(&self) -> f64 {
        self.base.unit_scale()
    }
}

/// Shortest saddle connection of `A·X` with its base holonomy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShortestSaddle {
    /// Raw length `|A·v|`.
    pub length: f64,
    /// Length after dividing by `√n`.
    pub normalized: f64,
    pub preimage: (i64, i64),
    /// Every saddle with `|A·v|` at most this radius was examined.
    pub certified_radius: f64,
}

/// `min |B·v|` over saddle holonomies `v` of `surface`.
///
/// A witness bound `m₀` comes from the shortest saddles along the reduced
/// basis directions of `B·ℤ²`; any shorter saddle lies in a direction `d`
/// with `|B·d| ≤ m₀`, and those directions are enumerated exhaustively.
pub(crate) fn shortest_saddle_under(surface: &Surface, b: &Mat2, scratch: &mut Vec<crate::sl2z::Letter>) -> Result<ShortestSaddle, GeometryError> {
    surface.require_singularities()?;
    let table = surface.table();
    let basis = ReducedBasis::new(b);
    let (u1, u2) = (basis.u1, basis.u2);
    let mut best = (f64::INFINITY, (0i64, 0i64));
    let consider = |p: i64, q: i64, scratch: &mut Vec<crate::sl2z::Letter>, best: &mut (f64, (i64, i64))| -> Result<(), GeometryError> {
        let node = table.node_for(p, q, scratch)?;
        let k = table.shortest_saddle(node) as i64;
        let len = k as f64 * b.norm_of(p as f64, q as f64);
        if len < best.0 || (len == best.0 && (k * p, k * q) < best.1) {
            *best = (len, (k * p, k * q));
        }
        Ok(())
    };
    for (p, q) in [u1, u2, (u1.0 + u2.0, u1.1 + u2.1), (u1.0 - u2.0, u1.1 - u2.1)] {
        let (p, q) = to_upper_half(p, q);
        consider(p, q, scratch, &mut best)?;
    }
    let witness = best.0;
    let scan = EllipseScan::new(b, witness);
    let mut err = None;
    scan.for_each(|p, q| {
        if err.is_some() || !within(b.norm_of(p as f64, q as f64), witness) {
            return;
        }
        if let Err(e) = consider(p, q, scratch, &mut best) {
            err = Some(e);
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(ShortestSaddle {
        length: best.0,
        normalized: best.0 / surface.unit_scale(),
        preimage: best.1,
        certified_radius: witness,
    })
}

/// Shortest saddle connection `ℓ(A·X)`.
pub fn shortest_saddle(s: &AffineSurface) -> Result<ShortestSaddle, GeometryError> {
    shortest_saddle_under(s.base(), s.matrix(), &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::Origami;

    #[test]
    fn rejects_non_unimodular() {
        let s = Surface::unmarked(Origami::l_shape());
        assert!(matches!(
            AffineSurface::new(s, Mat2::new(2.0, 0.0, 0.0, 1.0)),
            Err(GeometryError::NotUnimodular(_))
        ));
    }

    #[test]
    fn identity_gives_unit_saddle() {
        let l3 = AffineSurface::identity(Surface::unmarked(Origami::l_shape()));
        let s = shortest_saddle(&l3).unwrap();
        assert_eq!(s.length, 1.0);
        let torus = AffineSurface::identity(Surface::marked_torus());
        assert_eq!(shortest_saddle(&torus).unwrap().length, 1.0);
    }

    #[test]
    fn rotation_invariant() {
        let l3 = AffineSurface::identity(Surface::unmarked(Origami::l_shape()));
        let a = shortest_saddle(&l3).unwrap().length;
        for theta in [0.1, 0.77, 2.0, 4.4] {
            let b = shortest_saddle(&l3.rotated(theta)).unwrap().length;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_contracts_horizontal_saddle() {
        let l3 = AffineSurface::identity(Surface::unmarked(Origami::l_shape()));
        for s in [0.5, 1.0, 2.5] {
            let r = shortest_saddle(&l3.geodesic(s)).unwrap();
            assert!((r.length - (-s).exp()).abs() < 1e-14);
            assert_eq!(r.preimage, (1, 0));
        }
    }

    #[test]
    fn torus_without_marks_has_no_saddles() {
        let t = AffineSurface::identity(Surface::unmarked(Origami::torus()));
        assert_eq!(shortest_saddle(&t), Err(GeometryError::NoZeros));
    }
}
