//! Computational model of flat connections on AdS3, the left/right
//! hyperbolic metrics of space-like surfaces, triangulated hyperbolic
//! cone surfaces with surgeries, and the slice-graph data model with
//! holonomy assembly and admissibility checks.

pub mod connections;
pub mod lorentz;

pub use lorentz::{AdsPoint, AdsTangent, HyperbolicIsometry, SpacetimeIsometry};
