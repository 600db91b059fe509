//! Saddle connections found by following straight rays across the square
//! grid. Shares nothing with the retiling pipeline except the origami, so it
//! serves as an oracle for it.

use num_integer::Integer;

use crate::error::{GeometryError, OrigamiError};
use crate::geometry::holonomy::{HolonomyRecord, HolonomyVector};
use crate::geometry::lattice::to_upper_half;
use crate::geometry::surface::Surface;

/// Saddle connections in the primitive direction `(p, q)`, one record per
/// unoriented segment.
///
/// Every outgoing ray in direction `(p, q)` from a singular corner is
/// followed until it lands on a singular corner. With `q ≥ 0` a ray leaves a
/// singular corner into the square having it as bottom-left corner (`p > 0`
/// or `p = 0`) or bottom-right corner (`p < 0`), so there is exactly one ray
/// per singular corner copy and each segment is met once, from its start.
pub fn trace_separatrices(s: &Surface, p: i64, q: i64) -> Result<Vec<HolonomyRecord>, GeometryError> {
    if p.gcd(&q) != 1 {
        return Err(OrigamiError::NotPrimitive(p, q).into());
    }
    s.require_singularities()?;
    let (p, q) = to_upper_half(p, q);
    let o = s.origami();
    let n = o.n() as u64;
    let singular = s.singular_corners();
    let h = o.h();
    let v = o.v();
    let h_inv = h.inverse();
    let limit = n * n * (p.unsigned_abs() + q.unsigned_abs());
    let guard = |steps: u64, square: usize| {
        if steps > limit {
            Err(GeometryError::NonTermination { square: square as u32, p, q })
        } else {
            Ok(())
        }
    };

    let mut out = Vec::new();
    for start in (0..o.n()).filter(|&x| singular[x]) {
        let mut steps = 0u64;
        let len: u64 = if q == 0 {
            // along bottom edges
            let mut cell = start;
            let mut k = 0;
            loop {
                cell = h.apply(cell as u32) as usize;
                k += 1;
                steps += 1;
                guard(steps, start)?;
                if singular[cell] {
                    break k;
                }
            }
        } else if p == 0 {
            // along left edges
            let mut cell = start;
            let mut k = 0;
            loop {
                cell = v.apply(cell as u32) as usize;
                k += 1;
                steps += 1;
                guard(steps, start)?;
                if singular[cell] {
                    break k;
                }
            }
        } else {
            // Unfolded cell (i, j) counted from the start cell in the
            // direction of travel. The ray crosses the far vertical side at
            // height (i+1)·q/|p| and the top side at (j+1)·|p|/q; comparing
            // (i+1)·q with (j+1)·|p| decides which comes first.
            let ap = p.unsigned_abs();
            let qq = q as u64;
            let right = p > 0;
            let mut cell = if right { start } else { h_inv.apply(start as u32) as usize };
            let (mut i, mut j) = (0u64, 0u64);
            loop {
                steps += 1;
                guard(steps, start)?;
                let side = (i + 1) * qq;
                let top = (j + 1) * ap;
                if side < top {
                    cell = if right { h.apply(cell as u32) } else { h_inv.apply(cell as u32) } as usize;
                    i += 1;
                } else if side > top {
                    cell = v.apply(cell as u32) as usize;
                    j += 1;
                } else {
                    // through the far top corner
                    let up = v.apply(cell as u32);
                    let corner_owner = if right { v.apply(h.apply(cell as u32)) } else { up } as usize;
                    i += 1;
                    j += 1;
                    if singular[corner_owner] {
                        break i / ap;
                    }
                    cell = if right { corner_owner } else { h_inv.apply(up) as usize };
                }
            }
        };
        let len = len as i64;
        out.push(HolonomyRecord {
            holonomy: HolonomyVector::integer(len * p, len * q),
            width: len as u32,
            height: 0,
            multiplicity: 1,
        });
    }
    out.sort_by_key(|r| r.width);
    Ok(out)
}
