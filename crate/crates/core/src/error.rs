use thiserror::Error;

use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("segment endpoints coincide")]
    DegenerateInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} repeats its predecessor")]
    DuplicateVertex(usize),
    #[error("edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("segment endpoint {0} lies outside the polygon")]
    EndpointOutside(Point),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeodesicError {
    #[error("point {0} lies outside the polygon")]
    PointOutside(Point),
    #[error("shortest path is not unique up to 1e-9 in length (near tie at {0})")]
    InstanceRejected(Point),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("instance has no robots")]
    NoRobots,
    #[error("{0} segment is degenerate")]
    DegenerateSegment(&'static str),
    #[error("{0} segment is not contained in the polygon")]
    SegmentOutside(&'static str),
    #[error("start of robot {0} does not lie on S")]
    StartOffSegment(usize),
    #[error("target of robot {0} does not lie on T")]
    TargetOffSegment(usize),
    #[error("S and T overlap along a common subsegment")]
    OverlappingSegments,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorridorError {
    #[error("S and T intersect at {0}; use the crossing analysis instead")]
    Crossing(Point),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
    #[error("no admissible corridor triangle at sweep segment ({0}, {1})")]
    NoAdvance(Point, Point),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchedulerError {
    #[error(transparent)]
    Corridor(#[from] CorridorError),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
    #[error("path does not meet sweep segment ({0}, {1})")]
    NoIntersection(Point, Point),
    #[error("time {0} outside [0, {1}]")]
    TimeOutOfRange(String, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("expected {expected} trajectories, got {got}")]
    CountMismatch { expected: usize, got: usize },
    #[error("trajectories have unequal step counts")]
    RaggedTrajectories,
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossingError {
    #[error("S and T do not intersect")]
    NotCrossing,
    #[error("S and T overlap along a common subsegment")]
    OverlappingSegments,
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
    #[error("strip parameter must be positive")]
    InvalidEps,
    #[error("line does not meet the carrier chain")]
    NoIntersection,
    #[error("blocking edge endpoints are not consecutive chain vertices")]
    NotAChainEdge,
    #[error("angular_steps must be at least 8, got {0}")]
    TooFewSteps(usize),
}
