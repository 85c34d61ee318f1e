//! The corridor between the start and target spans.
//!
//! The corridor is bounded by the span of the starts on `S`, the span of the
//! targets on `T`, and two geodesic chains: `U` from the top start to one end
//! of the target span and `V` from the bottom start to the other end. Every
//! robot geodesic lies inside it. When the chains share vertices the corridor
//! pinches into two funnels joined by the shared path.
//!
//! The corridor is triangulated by a sweep that keeps a segment `(u_a, v_b)`
//! between the chains and advances one or both ends per step, so every
//! triangle touches both chains and the triangles come out ordered from `S`
//! to `T`.

use num_traits::{Signed, Zero};

use crate::error::CorridorError;
use crate::geodesic::{GeodesicPath, Geodesics};
use crate::geometry::{
    orient, point_in_segment_interior, signed_area2, Orientation, Point, Segment,
};
use crate::instance::{Classification, Instance};

pub use crate::instance::classify_instance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorridorKind {
    TwoChains,
    /// `pinch` is the first vertex of `U` that `V` also visits; `shared` is the
    /// common subpath starting there.
    PinchedAt {
        pinch: Point,
        shared: Vec<Point>,
    },
}

/// Which rule advanced the sweep segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepCase {
    /// Point to point along a shared edge.
    A,
    /// Point to segment, leaving a pinch.
    B,
    /// Segment to point, entering a pinch.
    C,
    /// Segment to segment across one triangle.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorridorStep {
    pub case: StepCase,
    /// Possibly degenerate triangle swept by this step.
    pub triangle: [Point; 3],
    /// Chain indices `(a, b)` of the sweep segment after the step.
    pub indices: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct Corridor {
    upper: GeodesicPath,
    lower: GeodesicPath,
    kind: CorridorKind,
    sense: Orientation,
    steps: Vec<CorridorStep>,
}

impl Corridor {
    /// Chain `U` from the top start.
    pub fn upper(&self) -> &GeodesicPath {
        &self.upper
    }

    /// Chain `V` from the bottom start.
    pub fn lower(&self) -> &GeodesicPath {
        &self.lower
    }

    pub fn kind(&self) -> &CorridorKind {
        &self.kind
    }

    /// Orientation of `(u, v, p)` for any point `p` ahead of a sweep segment `(u, v)`.
    pub fn sense(&self) -> Orientation {
        self.sense
    }

    pub fn steps(&self) -> &[CorridorStep] {
        &self.steps
    }

    pub fn triangles(&self) -> impl Iterator<Item = &[Point; 3]> {
        self.steps.iter().map(|s| &s.triangle)
    }

    pub fn start_span(&self) -> Segment {
        Segment::new(self.upper.source().clone(), self.lower.source().clone())
    }

    pub fn target_span(&self) -> Segment {
        Segment::new(self.upper.target().clone(), self.lower.target().clone())
    }

    /// Sweep segments `σ_0 .. σ_K`, from the start span to the target span.
    pub fn sweep_segments(&self) -> Vec<Segment> {
        sweep_segments(self)
    }

    /// Closed boundary polyline: `U`, then `V` backwards.
    pub fn boundary_loop(&self) -> Vec<Point> {
        let mut pts = self.upper.waypoints().to_vec();
        pts.extend(self.lower.waypoints().iter().rev().cloned());
        pts
    }
}

pub fn sweep_segments(c: &Corridor) -> Vec<Segment> {
    let u = c.upper.waypoints();
    let v = c.lower.waypoints();
    let mut out = vec![c.start_span()];
    out.extend(
        c.steps
            .iter()
            .map(|s| Segment::new(u[s.indices.0].clone(), v[s.indices.1].clone())),
    );
    out
}

/// Builds the corridor of a non-crossing instance.
pub fn build_corridor(inst: &Instance, geo: &Geodesics<'_>) -> Result<Corridor, CorridorError> {
    if let Ok(Classification::Crossing(q)) = inst.classify() {
        return Err(CorridorError::Crossing(q));
    }
    let robots = inst.robots();
    let starts = inst.start_order();
    let targets = inst.target_order();
    let s_top = &robots[starts[0]].start;
    let s_bot = &robots[*starts.last().expect("n >= 1")].start;
    let t_top = &robots[targets[0]].target;
    let t_bot = &robots[*targets.last().expect("n >= 1")].target;

    let straight = (
        geo.shortest_path(s_top, t_top)?,
        geo.shortest_path(s_bot, t_bot)?,
    );
    let (upper, lower) = if s_top == s_bot || t_top == t_bot {
        straight
    } else {
        // The right pairing bounds a region whose two funnels are traversed
        // with the same orientation; the crossed pairing partially cancels.
        let swapped = (
            geo.shortest_path(s_top, t_bot)?,
            geo.shortest_path(s_bot, t_top)?,
        );
        if loop_area2(&swapped.0, &swapped.1).abs() > loop_area2(&straight.0, &straight.1).abs() {
            swapped
        } else {
            straight
        }
    };

    // Walking U forward then V backward circles the corridor clockwise when U
    // is on the left of the direction of travel.
    let sense = if loop_area2(&upper, &lower).is_positive() {
        Orientation::Clockwise
    } else {
        Orientation::CounterClockwise
    };
    let kind = classify_chains(&upper, &lower);
    let steps = sweep(&upper, &lower, sense)?;
    Ok(Corridor {
        upper,
        lower,
        kind,
        sense,
        steps,
    })
}

fn loop_area2(upper: &GeodesicPath, lower: &GeodesicPath) -> crate::geometry::Rational {
    let mut pts = upper.waypoints().to_vec();
    pts.extend(lower.waypoints().iter().rev().cloned());
    signed_area2(&pts)
}

fn classify_chains(upper: &GeodesicPath, lower: &GeodesicPath) -> CorridorKind {
    let (u, v) = (upper.waypoints(), lower.waypoints());
    for (i, p) in u.iter().enumerate() {
        if let Some(j) = v.iter().position(|q| q == p) {
            let shared = u[i..]
                .iter()
                .zip(&v[j..])
                .take_while(|(a, b)| a == b)
                .map(|(a, _)| a.clone())
                .collect();
            return CorridorKind::PinchedAt {
                pinch: p.clone(),
                shared,
            };
        }
    }
    CorridorKind::TwoChains
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Fit {
    Strict,
    Flat,
}

struct Boundary<'a> {
    u: &'a [Point],
    v: &'a [Point],
    sense: Orientation,
}

impl Boundary<'_> {
    fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let chain_edges = self
            .u
            .windows(2)
            .chain(self.v.windows(2))
            .map(|w| (&w[0], &w[1]));
        let spans = [
            (&self.u[0], &self.v[0]),
            (self.u.last().unwrap(), self.v.last().unwrap()),
        ];
        chain_edges.chain(spans.into_iter().filter(|(a, b)| a != b))
    }

    fn vertices(&self) -> impl Iterator<Item = &Point> {
        self.u.iter().chain(self.v.iter())
    }

    /// Whether triangle `(p, q, r)` with new diagonal `diag` fits in the
    /// corridor without crossing its boundary.
    fn fit(&self, p: &Point, q: &Point, r: &Point, diag: (&Point, &Point)) -> Option<Fit> {
        let o = orient(p, q, r);
        if o == self.sense.reversed() {
            return None;
        }
        let (d0, d1) = diag;
        for (e0, e1) in self.edges() {
            if properly_cross(d0, d1, e0, e1) {
                return None;
            }
        }
        let diag_seg = Segment::new(d0.clone(), d1.clone());
        for w in self.vertices() {
            if d0 != d1 && point_in_segment_interior(w, &diag_seg) {
                return None;
            }
            if o == self.sense
                && orient(p, q, w) == self.sense
                && orient(q, r, w) == self.sense
                && orient(r, p, w) == self.sense
            {
                return None;
            }
        }
        Some(if o == self.sense {
            Fit::Strict
        } else {
            Fit::Flat
        })
    }
}

fn properly_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if a == b || c == d {
        return false;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == Orientation::Collinear || o2 == Orientation::Collinear || o1 == o2 {
        return false;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o3 != Orientation::Collinear && o4 != Orientation::Collinear && o3 != o4
}

fn sweep(
    upper: &GeodesicPath,
    lower: &GeodesicPath,
    sense: Orientation,
) -> Result<Vec<CorridorStep>, CorridorError> {
    let (u, v) = (upper.waypoints(), lower.waypoints());
    let boundary = Boundary { u, v, sense };
    let (k, l) = (u.len(), v.len());
    let (mut a, mut b) = (0usize, 0usize);
    let mut steps = Vec::with_capacity(k + l);
    while a + 1 < k || b + 1 < l {
        let (ua, vb) = (&u[a], &v[b]);
        let un = u.get(a + 1);
        let vn = v.get(b + 1);
        let step = if ua == vb {
            match (un, vn) {
                (Some(x), Some(y)) if x == y => CorridorStep {
                    case: StepCase::A,
                    triangle: [ua.clone(), x.clone(), x.clone()],
                    indices: (a + 1, b + 1),
                },
                (Some(x), Some(y)) if boundary.fit(ua, y, x, (x, y)).is_some() => CorridorStep {
                    case: StepCase::B,
                    triangle: [ua.clone(), y.clone(), x.clone()],
                    indices: (a + 1, b + 1),
                },
                (Some(x), _) => CorridorStep {
                    case: StepCase::B,
                    triangle: [ua.clone(), ua.clone(), x.clone()],
                    indices: (a + 1, b),
                },
                (None, Some(y)) => CorridorStep {
                    case: StepCase::B,
                    triangle: [ua.clone(), ua.clone(), y.clone()],
                    indices: (a, b + 1),
                },
                (None, None) => unreachable!("loop guard"),
            }
        } else {
            let to_pinch = match (un, vn) {
                (Some(x), Some(y)) if x == y && boundary.fit(ua, vb, x, (x, x)).is_some() => {
                    Some(CorridorStep {
                        case: StepCase::C,
                        triangle: [ua.clone(), vb.clone(), x.clone()],
                        indices: (a + 1, b + 1),
                    })
                }
                _ => None,
            };
            match to_pinch {
                Some(step) => step,
                None => {
                    let up = un.and_then(|x| boundary.fit(ua, vb, x, (x, vb)).map(|f| (f, true)));
                    let down =
                        vn.and_then(|y| boundary.fit(ua, vb, y, (ua, y)).map(|f| (f, false)));
                    let choice = [up, down].into_iter().flatten().min_by_key(|(fit, _)| *fit);
                    match choice {
                        Some((_, true)) => CorridorStep {
                            case: StepCase::D,
                            triangle: [ua.clone(), vb.clone(), un.unwrap().clone()],
                            indices: (a + 1, b),
                        },
                        Some((_, false)) => CorridorStep {
                            case: StepCase::D,
                            triangle: [ua.clone(), vb.clone(), vn.unwrap().clone()],
                            indices: (a, b + 1),
                        },
                        None => return Err(CorridorError::NoAdvance(ua.clone(), vb.clone())),
                    }
                }
            }
        };
        (a, b) = step.indices;
        steps.push(step);
    }
    Ok(steps)
}

/// Twice the signed area of a corridor triangle.
pub fn triangle_area2(t: &[Point; 3]) -> crate::geometry::Rational {
    let area = crate::geometry::cross(&t[0], &t[1], &t[2]);
    if area.is_zero() {
        area
    } else {
        area.abs()
    }
}
