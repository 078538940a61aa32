//! Exact geometry of closed polygonal curves in R^3: linking numbers by
//! signed crossings, pushoffs along normal fields, self-linking, and the
//! framing-extension parity predicate, with a floating-point
//! Gauss-integral oracle.

pub mod corpus;
mod curve;
mod gauss;
mod linking;
mod vec3;

pub use curve::{
    curve_file_text, parse_curve_file, pushoff, GeomError, NormalField, PolyCurve3, Pushoff,
};
pub use gauss::gauss_linking;
pub use linking::{
    crossing_sum_in_direction, direction_sequence, extends_over_seifert, linking_number,
    self_linking, so3_loop_class,
};
pub use vec3::QVec3;
