use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("highway speed must be finite and greater than 1 under the L1 metric")]
    InvalidSpeed,
    #[error("point ({x}, {y}) lies outside the closed first quadrant")]
    NegativeCoordinate { x: String, y: String },
    #[error("operation requires x >= y (side H_x canonical form)")]
    NotCanonical,
    #[error("operation is only defined for the {0} metric")]
    UnsupportedMetric(&'static str),
    #[error("segment has zero extent along the drag axis")]
    DegenerateSegment,
    #[error("cluster range is empty or out of bounds")]
    EmptyRange,
    #[error("cross-side marks are asymmetric: only one side received a mark")]
    AsymmetricMarks,
}

pub type Result<T> = std::result::Result<T, HullError>;
