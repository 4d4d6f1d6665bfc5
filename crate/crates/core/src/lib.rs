//! Generalized normal ruled surfaces: construction, differential invariants,
//! classification and a finite-difference reference oracle.

pub mod curve;
pub mod developable;
pub mod expr;
pub mod gallery;
pub mod grid;
pub mod invariants;
pub mod oracle;
pub mod parallel;
pub mod ruled_frame;
pub mod surface;
pub mod tolerance;
