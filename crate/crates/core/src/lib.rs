//! Time-convex hulls of planar point sets in the presence of two orthogonal
//! highways placed on the coordinate axes.
//!
//! Two travel models are supported: L1 walking with a finite highway speed
//! `V > 1`, and Euclidean walking with infinitely fast highways. Every
//! routine is generic over [`Scalar`]; [`Rational`] gives exact results and
//! `f64` is available for large timing runs.

pub mod assembly;
pub mod boundary;
pub mod clustering;
pub mod cross;
pub mod drag;
pub mod envelope;
pub mod error;
pub mod geometry;
pub mod hull;
pub mod merge;
pub mod oracle;
pub mod pipeline;
pub mod polygon;
pub mod scalar;
pub mod side;
pub mod surd;
pub mod walking;

pub use assembly::{assemble, attachment_feet, Axis, HighwayLink, TimeConvexHull};
pub use boundary::{wr_boundary_l1, wr_boundary_l2inf, BoundaryChain, BoundaryPiece};
pub use error::{HullError, Result};
pub use geometry::{
    highway_path_costs, in_walking_region, metric_distance, time_distance, HighwayConfig, Metric,
    PathCandidate, PathKind, Point, TimeValue,
};
pub use merge::{FinalCluster, MarkSet};
pub use pipeline::{compute_hull, HullRun, RunStats};
pub use scalar::{format_rational, parse_rational, Scalar};
pub use walking::{segments_related, wr_edge_membership};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
pub type ExactPoint = Point<Rational>;
pub type ExactConfig = HighwayConfig<Rational>;
pub type FloatPoint = Point<f64>;
pub type FloatConfig = HighwayConfig<f64>;
