//! Synchronized motion through the corridor triangles.
//!
//! At step `k` every robot sits where its geodesic meets sweep segment `σ_k`.
//! Between steps all robots move in straight lines inside the convex triangle
//! swept by that step, under one global clock.

use num_traits::{One, Zero};

use crate::corridor::{build_corridor, Corridor, StepCase};
use crate::error::SchedulerError;
use crate::geodesic::{GeodesicPath, Geodesics};
use crate::geometry::{
    intersect_unchecked, point_on_segment, Intersection, Point, Rational, Segment,
};
use crate::instance::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Init,
    A,
    B,
    C,
    D,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Init => "Init",
            CaseTag::A => "A",
            CaseTag::B => "B",
            CaseTag::C => "C",
            CaseTag::D => "D",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "Init" => CaseTag::Init,
            "A" => CaseTag::A,
            "B" => CaseTag::B,
            "C" => CaseTag::C,
            "D" => CaseTag::D,
            _ => return None,
        })
    }
}

impl From<StepCase> for CaseTag {
    fn from(c: StepCase) -> Self {
        match c {
            StepCase::A => CaseTag::A,
            StepCase::B => CaseTag::B,
            StepCase::C => CaseTag::C,
            StepCase::D => CaseTag::D,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    /// `σ_0 .. σ_K`.
    pub sweeps: Vec<Segment>,
    /// One tag per step; the first step is always `Init`.
    pub case_tags: Vec<CaseTag>,
}

impl Schedule {
    pub fn steps(&self) -> usize {
        self.sweeps.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub robot_index: usize,
    /// `w_0 .. w_K`; `w_k` lies on `σ_k`.
    pub waypoints: Vec<Point>,
}

/// Everything `solve` computes, including intermediate structures.
#[derive(Clone, Debug)]
pub struct Solution {
    pub schedule: Schedule,
    pub trajectories: Vec<Trajectory>,
    pub paths: Vec<GeodesicPath>,
    pub corridor: Corridor,
}

/// Solves a non-crossing instance.
pub fn solve(inst: &Instance) -> Result<(Schedule, Vec<Trajectory>), SchedulerError> {
    let geo = Geodesics::new(inst.polygon());
    solve_with(inst, &geo).map(|s| (s.schedule, s.trajectories))
}

pub fn solve_with(inst: &Instance, geo: &Geodesics<'_>) -> Result<Solution, SchedulerError> {
    let corridor = build_corridor(inst, geo)?;
    let sweeps = corridor.sweep_segments();
    let case_tags = corridor
        .steps()
        .iter()
        .enumerate()
        .map(|(k, s)| if k == 0 { CaseTag::Init } else { s.case.into() })
        .collect();

    let mut paths = Vec::with_capacity(inst.len());
    let mut trajectories = Vec::with_capacity(inst.len());
    for (i, r) in inst.robots().iter().enumerate() {
        let path = geo.shortest_path(&r.start, &r.target)?;
        let mut walker = PathWalker::new(&path);
        let mut waypoints = Vec::with_capacity(sweeps.len());
        for (k, sweep) in sweeps.iter().enumerate() {
            let w = if k == 0 {
                r.start.clone()
            } else if k + 1 == sweeps.len() {
                r.target.clone()
            } else {
                walker.advance(sweep)?
            };
            waypoints.push(w);
        }
        paths.push(path);
        trajectories.push(Trajectory {
            robot_index: i,
            waypoints,
        });
    }
    Ok(Solution {
        schedule: Schedule { sweeps, case_tags },
        trajectories,
        paths,
        corridor,
    })
}

/// Where `path` meets `sweep`, taking the point furthest along the path when
/// they overlap.
pub fn waypoint(path: &GeodesicPath, sweep: &Segment) -> Result<Point, SchedulerError> {
    let mut walker = PathWalker::new(path);
    walker.advance(sweep)
}

/// Intersection of path edge `(p, q)` with a sweep, furthest toward `q`.
fn edge_hit(p: &Point, q: &Point, sweep: &Segment) -> Option<Point> {
    let edge = Segment::new(p.clone(), q.clone());
    if sweep.is_degenerate() {
        return point_on_segment(&sweep.a, &edge).then(|| sweep.a.clone());
    }
    match intersect_unchecked(&edge, sweep) {
        Intersection::Empty => None,
        Intersection::At(x) => Some(x),
        Intersection::Overlap(o) => {
            let (ta, tb) = (edge.param_of(&o.a), edge.param_of(&o.b));
            Some(if ta >= tb { o.a } else { o.b })
        }
    }
}

/// Finds successive sweep crossings along a path without rescanning it.
struct PathWalker<'a> {
    pts: &'a [Point],
    edge: usize,
    pos: Point,
}

impl<'a> PathWalker<'a> {
    fn new(path: &'a GeodesicPath) -> Self {
        PathWalker {
            pts: path.waypoints(),
            edge: 0,
            pos: path.source().clone(),
        }
    }

    fn advance(&mut self, sweep: &Segment) -> Result<Point, SchedulerError> {
        if self.pts.len() == 1 {
            let p = &self.pts[0];
            let hit = if sweep.is_degenerate() {
                sweep.a == *p
            } else {
                point_on_segment(p, sweep)
            };
            return if hit {
                Ok(p.clone())
            } else {
                Err(SchedulerError::NoIntersection(
                    sweep.a.clone(),
                    sweep.b.clone(),
                ))
            };
        }
        let mut found: Option<(usize, Point)> = None;
        let mut e = self.edge;
        while e + 1 < self.pts.len() {
            let (p, q) = (&self.pts[e], &self.pts[e + 1]);
            let hit = edge_hit(p, q, sweep).filter(|x| {
                e > self.edge || {
                    let edge = Segment::new(p.clone(), q.clone());
                    edge.param_of(x) >= edge.param_of(&self.pos)
                }
            });
            match hit {
                Some(x) => found = Some((e, x)),
                None if found.is_some() => break,
                None => {}
            }
            e += 1;
        }
        let (e, x) = found
            .ok_or_else(|| SchedulerError::NoIntersection(sweep.a.clone(), sweep.b.clone()))?;
        self.edge = e;
        self.pos = x.clone();
        Ok(x)
    }
}

/// Robot positions at global time `time` in `[0, K]`.
pub fn positions_at(trajs: &[Trajectory], time: &Rational) -> Result<Vec<Point>, SchedulerError> {
    let steps = trajs.first().map_or(0, |t| t.waypoints.len() - 1);
    if *time < Rational::zero() || *time > Rational::from_integer(steps.into()) {
        return Err(SchedulerError::TimeOutOfRange(time.to_string(), steps));
    }
    let floor = time.floor();
    let mut k: usize = num_traits::ToPrimitive::to_usize(&floor.to_integer()).unwrap_or(0);
    let mut lambda = time - &floor;
    if k == steps && steps > 0 {
        k -= 1;
        lambda = Rational::one();
    }
    Ok(trajs
        .iter()
        .map(|t| {
            if steps == 0 {
                t.waypoints[0].clone()
            } else {
                t.waypoints[k].lerp(&t.waypoints[k + 1], &lambda)
            }
        })
        .collect())
}

/// Indices of the sweep segments in the order `path` crosses them.
///
/// Each sweep is located independently on the whole path; the robot visits
/// the corridor triangles in schedule order iff the result is `0..=K`.
pub fn sweep_visit_order(
    path: &GeodesicPath,
    sweeps: &[Segment],
) -> Result<Vec<usize>, SchedulerError> {
    let pts = path.waypoints();
    let mut keyed = Vec::with_capacity(sweeps.len());
    for (j, sweep) in sweeps.iter().enumerate() {
        let x = waypoint(path, sweep)?;
        // Arc position as (edge index, parameter on that edge).
        let mut key = (usize::MAX, Rational::zero());
        if pts.len() == 1 {
            key = (0, Rational::zero());
        } else {
            for e in (0..pts.len() - 1).rev() {
                let edge = Segment::new(pts[e].clone(), pts[e + 1].clone());
                if point_on_segment(&x, &edge) {
                    key = (e, edge.param_of(&x));
                    break;
                }
            }
        }
        keyed.push((key, j));
    }
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, j)| j).collect())
}
