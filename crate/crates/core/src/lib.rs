//! Pursuit-evasion planning for teams of point robots with omnidirectional
//! vision in 2D polygonal environments.
//!
//! The crate computes guaranteed intruder-detection strategies: a complete
//! single-pursuer algorithm over a surveillance state graph, environment
//! division by cuts at delegation points, and a deliberation protocol that
//! grows the team only when cooperation fails. Everything is deterministic:
//! identical inputs produce identical traces, byte for byte.
//!
//! All modules are generic over the scalar type through [`scalar::Real`];
//! the `f64` instantiations used by the CLI are aliased at the crate root.

pub mod division;
pub mod geometry;
pub mod grid;
pub mod planner;
pub mod protocol;
pub mod render;
pub mod scalar;
pub mod simulator;
pub mod surveillance;
pub mod visgraph;

pub use scalar::Real;

/// Default scalar for the command-line pipeline.
pub type Scalar = f64;

pub type Point = geometry::Point<Scalar>;
pub type Polygon = geometry::Polygon<Scalar>;
pub type Environment = geometry::Environment<Scalar>;
pub type CriticalPoint = geometry::CriticalPoint<Scalar>;
