//! Flat geometry of square-tiled surfaces and their affine images.

pub mod affine;
pub mod enumerate;
pub mod holonomy;
mod horizontal;
pub mod lattice;
pub mod mat2;
pub mod surface;
pub mod tracer;

pub use affine::{shortest_saddle, AffineSurface, ShortestSaddle};
pub use enumerate::{
    count_profile, enumerate_affine, enumerate_ball, enumerate_in_direction, horizontal_cylinders, horizontal_saddles,
    CountProfile,
};
pub use holonomy::{transform_set, HolonomyKind, HolonomyRecord, HolonomySet, HolonomyVector, Normalization};
pub use mat2::Mat2;
pub use surface::{DirectionTable, Surface};
pub use tracer::trace_separatrices;
