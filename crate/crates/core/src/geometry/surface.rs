//! Square-tiled surfaces with a precomputed table of horizontal data over
//! their `SL₂(ℤ)`-orbit.
//!
//! The cylinders and saddle connections of `X` in a primitive direction
//! `(p, q)` are the horizontal ones of `A·X` with `A = direction_normalizer(p, q)`.
//! Horizontal data is an isomorphism invariant, so it only depends on the
//! orbit member `A·X` lands on; [`DirectionTable`] walks the orbit graph
//! along the word of `A` instead of re-cutting permutations.

use std::sync::Arc;

use crate::error::{GeometryError, OrigamiError};
use crate::geometry::horizontal::{cylinder_shapes, saddle_lengths, singular_corners};
use crate::orbit::{sl2z_orbit, OrbitClass};
use crate::origami::{stratum_of, Origami, StratumSignature};
use crate::sl2z::{decompose_into, direction_normalizer, Letter};

/// Horizontal data of every orbit member plus the orbit's `S`/`T` maps.
#[derive(Debug)]
pub struct DirectionTable {
    orbit: OrbitClass,
    start: usize,
    cylinders: Vec<Vec<(u32, u32)>>,
    saddles: Vec<Vec<u32>>,
    shortest_saddle: Vec<u32>,
    t_cycles: Vec<Vec<u32>>,
    t_position: Vec<(u32, u32)>,
}

impl DirectionTable {
    fn build(o: &Origami, marked: bool) -> Self {
        let orbit = sl2z_orbit(o);
        let start = orbit.index_of(o).expect("seed belongs to its orbit");
        let members = orbit.representatives();
        let cylinders: Vec<_> = members.iter().map(|m| cylinder_shapes(m, marked)).collect();
        let saddles: Vec<Vec<u32>> = members
            .iter()
            .map(|m| {
                let mut s = saddle_lengths(m, marked);
                s.sort_unstable();
                s
            })
            .collect();
        let shortest_saddle = saddles.iter().map(|s| s.first().copied().unwrap_or(0)).collect();

        let t = orbit.t_image();
        let mut t_position = vec![(u32::MAX, 0); t.len()];
        let mut t_cycles = Vec::new();
        for s in 0..t.len() {
            if t_position[s].0 != u32::MAX {
                continue;
            }
            let id = t_cycles.len() as u32;
            let mut cycle = Vec::new();
            let mut x = s;
            while t_position[x].0 == u32::MAX {
                t_position[x] = (id, cycle.len() as u32);
                cycle.push(x as u32);
                x = t[x];
            }
            t_cycles.push(cycle);
        }
        DirectionTable { orbit, start, cylinders, saddles, shortest_saddle, t_cycles, t_position }
    }

    pub fn orbit(&self) -> &OrbitClass {
        &self.orbit
    }

    fn t_pow(&self, node: usize, k: i64) -> usize {
        let (id, pos) = self.t_position[node];
        let cycle = &self.t_cycles[id as usize];
        let len = cycle.len() as i64;
        cycle[(pos as i64 + k).rem_euclid(len) as usize] as usize
    }

    /// Orbit index of `A·X` for `A = direction_normalizer(p, q)`.
    pub fn node_for(&self, p: i64, q: i64, scratch: &mut Vec<Letter>) -> Result<usize, OrigamiError> {
        let a = direction_normalizer(p, q)?;
        decompose_into(&a, scratch)?;
        let s = self.orbit.s_image();
        let mut node = self.start;
        for &letter in scratch.iter().rev() {
            node = match letter {
                Letter::S => s[node],
                Letter::T(k) => self.t_pow(node, k),
            };
        }
        Ok(node)
    }

    pub fn cylinders(&self, node: usize) -> &[(u32, u32)] {
        &self.cylinders[node]
    }

    pub fn saddles(&self, node: usize) -> &[u32] {
        &self.saddles[node]
    }

    /// Shortest horizontal saddle length at `node`, 0 if there are none.
    pub fn shortest_saddle(&self, node: usize) -> u32 {
        self.shortest_saddle[node]
    }
}

/// An origami, optionally with every vertex treated as a marked point.
///
/// Marked mode supplies saddle connections on torus covers; on the one-square
/// torus the primitive lattice vectors become the saddle connections.
#[derive(Clone, Debug)]
pub struct Surface {
    origami: Origami,
    marked: bool,
    table: Arc<DirectionTable>,
}

impl Surface {
    pub fn new(origami: Origami, marked: bool) -> Self {
        let table = Arc::new(DirectionTable::build(&origami, marked));
        Surface { origami, marked, table }
    }

    pub fn unmarked(origami: Origami) -> Self {
        Surface::new(origami, false)
    }

    pub fn marked_torus() -> Self {
        Surface::new(Origami::torus(), true)
    }

    pub fn origami(&self) -> &Origami {
        &self.origami
    }

    pub fn n(&self) -> usize {
        self.origami.n()
    }

    pub fn is_marked(&self) -> bool {
        self.marked
    }

    pub fn stratum(&self) -> StratumSignature {
        stratum_of(&self.origami)
    }

    pub fn table(&self) -> &DirectionTable {
        &self.table
    }

    /// True when saddle connections exist (a zero, or marked mode).
    pub fn has_singularities(&self) -> bool {
        self.marked || !self.stratum().zero_orders.is_empty()
    }

    pub(crate) fn require_singularities(&self) -> Result<(), GeometryError> {
        if self.has_singularities() {
            Ok(())
        } else {
            Err(GeometryError::NoZeros)
        }
    }

    pub(crate) fn singular_corners(&self) -> Vec<bool> {
        singular_corners(&self.origami, self.marked)
    }

    /// `√n`, the length scale of unit-area normalization.
    pub fn unit_scale(&self) -> f64 {
        (self.n() as f64).sqrt()
    }
}
