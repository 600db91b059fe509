//! Square-tiled translation surfaces: origami combinatorics, cylinder and
//! saddle-connection counting, and Siegel–Veech style experiments.

pub mod analysis;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod orbit;
pub mod origami;
pub mod perm;
pub mod sl2z;

pub use error::{AnalysisError, GeometryError, OrigamiError};
pub use generate::generate_stratum_origamis;
pub use orbit::{group_into_orbits, sl2z_orbit, OrbitClass};
pub use origami::{canonical_form, make_origami, retile, stratum_of, Origami, StratumSignature};
pub use perm::Permutation;
pub use sl2z::{decompose_sl2z, direction_normalizer, IntegerMatrix, Letter, Word};
