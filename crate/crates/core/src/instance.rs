use crate::error::InstanceError;
use crate::geometry::{point_on_segment, segment_intersection, Intersection, Point, Segment};
use crate::polygon::{segment_inside, SimplePolygon};

/// A robot's start and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Robot {
    pub start: Point,
    pub target: Point,
}

/// A polygon, start segment `S`, target segment `T` and the robots.
///
/// `S.a` is the "top" end of the start segment and `T.a` the "top" end of the
/// target segment. Robots keep their input order; [`Instance::start_order`]
/// gives them sorted along `S` from the top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    polygon: SimplePolygon,
    start_segment: Segment,
    target_segment: Segment,
    robots: Vec<Robot>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    NonCrossing,
    Crossing(Point),
}

impl Instance {
    pub fn new(
        polygon: SimplePolygon,
        start_segment: Segment,
        target_segment: Segment,
        robots: Vec<Robot>,
    ) -> Result<Self, InstanceError> {
        if robots.is_empty() {
            return Err(InstanceError::NoRobots);
        }
        for (name, seg) in [("S", &start_segment), ("T", &target_segment)] {
            if seg.is_degenerate() {
                return Err(InstanceError::DegenerateSegment(name));
            }
            match segment_inside(&polygon, seg) {
                Ok(true) => {}
                _ => return Err(InstanceError::SegmentOutside(name)),
            }
        }
        for (i, r) in robots.iter().enumerate() {
            if !point_on_segment(&r.start, &start_segment) {
                return Err(InstanceError::StartOffSegment(i));
            }
            if !point_on_segment(&r.target, &target_segment) {
                return Err(InstanceError::TargetOffSegment(i));
            }
        }
        Ok(Instance {
            polygon,
            start_segment,
            target_segment,
            robots,
        })
    }

    pub fn polygon(&self) -> &SimplePolygon {
        &self.polygon
    }

    pub fn start_segment(&self) -> &Segment {
        &self.start_segment
    }

    pub fn target_segment(&self) -> &Segment {
        &self.target_segment
    }

    pub fn robots(&self) -> &[Robot] {
        &self.robots
    }

    pub fn len(&self) -> usize {
        self.robots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.robots.is_empty()
    }

    /// Robot indices ordered along `S` from `S.a`; ties keep input order.
    pub fn start_order(&self) -> Vec<usize> {
        order_along(&self.start_segment, self.robots.iter().map(|r| &r.start))
    }

    /// Robot indices ordered along `T` from `T.a`; ties keep input order.
    pub fn target_order(&self) -> Vec<usize> {
        order_along(&self.target_segment, self.robots.iter().map(|r| &r.target))
    }

    pub fn classify(&self) -> Result<Classification, InstanceError> {
        classify_instance(self)
    }
}

fn order_along<'a>(seg: &Segment, pts: impl Iterator<Item = &'a Point>) -> Vec<usize> {
    let mut keyed: Vec<_> = pts.enumerate().map(|(i, p)| (seg.param_of(p), i)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, i)| i).collect()
}

/// Crossing iff `S` and `T` meet in a single point.
pub fn classify_instance(inst: &Instance) -> Result<Classification, InstanceError> {
    match segment_intersection(&inst.start_segment, &inst.target_segment)
        .map_err(|_| InstanceError::DegenerateSegment("S or T"))?
    {
        Intersection::Empty => Ok(Classification::NonCrossing),
        Intersection::At(q) => Ok(Classification::Crossing(q)),
        Intersection::Overlap(_) => Err(InstanceError::OverlappingSegments),
    }
}
