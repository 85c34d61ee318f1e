//! Analysis of instances whose start and target segments cross.
//!
//! Let `a`, `b` be the ends of `S` (`a` on top) and `c`, `d` the ends of `T`
//! (`c` on top), with `S ∩ T = q`. The four regions around `q` are
//!
//! * `A1`: `(a, q)`, `(d, q)` and the geodesic from `a` to `d`,
//! * `A2`: `(a, q)`, `(c, q)` and the geodesic from `a` to `c`,
//! * `A3`: `(b, q)`, `(c, q)` and the geodesic from `b` to `c`,
//! * `A4`: `(b, q)`, `(d, q)` and the geodesic from `b` to `d`.
//!
//! So `R1` robots travel from the upper half of `S` to the lower half of `T`,
//! `R3` robots from the lower half of `S` to the upper half of `T`, and `R2`,
//! `R4` stay on the upper and lower sides respectively. The regions are built
//! from the segment endpoints rather than the extreme robots, so empty groups
//! still get a well-defined region.
//!
//! Nothing here solves crossing instances. [`rotating_line_run`] simulates the
//! strategy that keeps two opposite groups on a line through `q` and reports
//! where it stops; the exact content of the impossibility argument is in the
//! ordering of [`critical_points`] on the stuck fixture.

use num_traits::{One, Signed, Zero};

use crate::error::CrossingError;
use crate::geodesic::{GeodesicPath, Geodesics};
use crate::geometry::{cross, int, ratio, to_f64, Point, Rational, Segment};
use crate::instance::{classify_instance, Classification, Instance, Robot};
use crate::polygon::{point_location, segment_inside, Location, SimplePolygon};

#[derive(Clone, Debug)]
pub struct Region {
    /// The two segments through `q`: from the `S` end and from the `T` end.
    pub sides: [Segment; 2],
    /// Geodesic between the two outer corners.
    pub chain: GeodesicPath,
    /// `None` when chain and `q` do not bound a simple polygon.
    pub polygon: Option<SimplePolygon>,
}

impl Region {
    /// Chain followed by `q`.
    pub fn vertices(&self) -> Vec<Point> {
        let mut v = self.chain.waypoints().to_vec();
        v.push(self.sides[0].b.clone());
        v
    }

    fn contains_path(&self, path: &GeodesicPath) -> bool {
        let Some(poly) = &self.polygon else {
            return false;
        };
        let pts = path.waypoints();
        if pts.len() == 1 {
            return point_location(poly, &pts[0]) != Location::Exterior;
        }
        path.edges()
            .all(|e| segment_inside(poly, &e).unwrap_or(false))
    }
}

#[derive(Clone, Debug)]
pub struct CrossingDecomposition {
    pub q: Point,
    pub regions: [Region; 4],
    /// `R1..R4` as robot indices.
    pub partition: [Vec<usize>; 4],
    /// Robots whose geodesic fits in no region.
    pub unassigned: Vec<usize>,
    pub paths: Vec<GeodesicPath>,
}

fn crossing_point(inst: &Instance) -> Result<Point, CrossingError> {
    match classify_instance(inst) {
        Ok(Classification::Crossing(q)) => Ok(q),
        Ok(Classification::NonCrossing) => Err(CrossingError::NotCrossing),
        Err(_) => Err(CrossingError::OverlappingSegments),
    }
}

pub fn decompose(inst: &Instance) -> Result<CrossingDecomposition, CrossingError> {
    let q = crossing_point(inst)?;
    let geo = Geodesics::new(inst.polygon());
    let (s, t) = (inst.start_segment(), inst.target_segment());
    let (a, b, c, d) = (&s.a, &s.b, &t.a, &t.b);
    let region = |from: &Point, to: &Point| -> Result<Region, CrossingError> {
        let chain = geo.shortest_path(from, to)?;
        let mut ring = chain.waypoints().to_vec();
        ring.push(q.clone());
        Ok(Region {
            sides: [
                Segment::new(from.clone(), q.clone()),
                Segment::new(to.clone(), q.clone()),
            ],
            chain,
            polygon: SimplePolygon::new(ring).ok(),
        })
    };
    let regions = [region(a, d)?, region(a, c)?, region(b, c)?, region(b, d)?];

    let mut partition: [Vec<usize>; 4] = Default::default();
    let mut unassigned = Vec::new();
    let mut paths = Vec::with_capacity(inst.len());
    for (i, r) in inst.robots().iter().enumerate() {
        let path = geo.shortest_path(&r.start, &r.target)?;
        match regions.iter().position(|reg| reg.contains_path(&path)) {
            Some(k) => partition[k].push(i),
            None => unassigned.push(i),
        }
        paths.push(path);
    }
    Ok(CrossingDecomposition {
        q,
        regions,
        partition,
        unassigned,
        paths,
    })
}

/// Where a point sits on a polyline: edge index, then parameter on that edge.
pub type CarrierPosition = (usize, Rational);

/// First point of `carrier` on the line through `blocking_edge`.
///
/// The edge must join two consecutive vertices of `chain`, in either order.
pub fn critical_points(
    chain: &GeodesicPath,
    blocking_edge: (&Point, &Point),
    carrier: &GeodesicPath,
) -> Result<Point, CrossingError> {
    let w = chain.waypoints();
    let (u, v) = blocking_edge;
    let consecutive = w
        .windows(2)
        .any(|e| (&e[0] == u && &e[1] == v) || (&e[0] == v && &e[1] == u));
    if !consecutive {
        return Err(CrossingError::NotAChainEdge);
    }
    line_hit_on_carrier(u, v, carrier)
        .map(|(_, p)| p)
        .ok_or(CrossingError::NoIntersection)
}

fn line_hit_on_carrier(
    u: &Point,
    v: &Point,
    carrier: &GeodesicPath,
) -> Option<(CarrierPosition, Point)> {
    let pts = carrier.waypoints();
    if pts.len() == 1 {
        return (cross(u, v, &pts[0]).is_zero()).then(|| ((0, Rational::zero()), pts[0].clone()));
    }
    for (i, e) in pts.windows(2).enumerate() {
        let (cp, cq) = (cross(u, v, &e[0]), cross(u, v, &e[1]));
        if cp.is_zero() {
            return Some(((i, Rational::zero()), e[0].clone()));
        }
        if cq.is_zero() || cp.is_positive() != cq.is_positive() {
            let s = &cp / (&cp - &cq);
            return Some(((i, s.clone()), e[0].lerp(&e[1], &s)));
        }
    }
    None
}

/// Position of a point known to lie on `carrier`.
pub fn carrier_position(carrier: &GeodesicPath, p: &Point) -> Option<CarrierPosition> {
    let pts = carrier.waypoints();
    if pts.len() == 1 {
        return (pts[0] == *p).then(|| (0, Rational::zero()));
    }
    carrier
        .edges()
        .enumerate()
        .find_map(|(i, e)| crate::geometry::point_on_segment(p, &e).then(|| (i, e.param_of(p))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub point: Point,
    /// Which geodesic the point lies on, e.g. `"a-c"`.
    pub carrier: &'static str,
    pub position: CarrierPosition,
}

/// The four projections of the stuck argument.
///
/// `x` and `y` lie on the `a-c` geodesic: `x` on the line through the last
/// edge of the `a-d` geodesic that ends at a bend, `y` on the line through
/// the first edge of the `b-c` geodesic. `x'` and `y'` are the mirror
/// construction on the `a-d` geodesic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoints {
    pub x: CriticalPoint,
    pub y: CriticalPoint,
    pub x_prime: Option<CriticalPoint>,
    pub y_prime: Option<CriticalPoint>,
}

impl CriticalPoints {
    pub fn y_before_x(&self) -> bool {
        self.y.position < self.x.position
    }

    pub fn y_prime_before_x_prime(&self) -> Option<bool> {
        Some(self.y_prime.as_ref()?.position < self.x_prime.as_ref()?.position)
    }
}

/// `None` when the geodesics lack the bends the construction needs.
pub fn stuck_critical_points(inst: &Instance) -> Result<Option<CriticalPoints>, CrossingError> {
    crossing_point(inst)?;
    let geo = Geodesics::new(inst.polygon());
    let (s, t) = (inst.start_segment(), inst.target_segment());
    let (a, b, c, d) = (&s.a, &s.b, &t.a, &t.b);
    let g_ad = geo.shortest_path(a, d)?;
    let g_ac = geo.shortest_path(a, c)?;
    let g_bc = geo.shortest_path(b, c)?;
    let g_bd = geo.shortest_path(b, d)?;

    let project = |chain: &GeodesicPath, edge: (&Point, &Point), carrier: &GeodesicPath, name| {
        let point = critical_points(chain, edge, carrier).ok()?;
        let position = carrier_position(carrier, &point)?;
        Some(CriticalPoint {
            point,
            carrier: name,
            position,
        })
    };
    let last_bend_edge = |g: &GeodesicPath| {
        let w = g.waypoints();
        (w.len() >= 4).then(|| (w[w.len() - 3].clone(), w[w.len() - 2].clone()))
    };
    let first_edge = |g: &GeodesicPath| {
        let w = g.waypoints();
        (w.len() >= 3).then(|| (w[0].clone(), w[1].clone()))
    };

    let (Some((u, v)), Some((b0, w))) = (last_bend_edge(&g_ad), first_edge(&g_bc)) else {
        return Ok(None);
    };
    let (Some(x), Some(y)) = (
        project(&g_ad, (&u, &v), &g_ac, "a-c"),
        project(&g_bc, (&b0, &w), &g_ac, "a-c"),
    ) else {
        return Ok(None);
    };
    let (mut x_prime, mut y_prime) = (None, None);
    if let (Some((u2, v2)), Some((b2, w2))) = (last_bend_edge(&g_ac), first_edge(&g_bd)) {
        x_prime = project(&g_ac, (&u2, &v2), &g_ad, "a-d");
        y_prime = project(&g_bd, (&b2, &w2), &g_ad, "a-d");
    }
    Ok(Some(CriticalPoints {
        x,
        y,
        x_prime,
        y_prime,
    }))
}

/// Which pair of groups the line through `q` carries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pivot {
    /// `R1` on the ray, `R3` opposite; the ray turns from `a` to `d`.
    #[default]
    OneThree,
    /// `R2` on the ray, `R4` opposite; the ray turns from `a` to `c`.
    TwoFour,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RotatingOutcome {
    Completed,
    Stuck {
        /// Index of the failing angle, `0..=angular_steps`.
        step: usize,
        /// Ray direction at that step.
        direction: (Rational, Rational),
        /// The two robots that cannot see each other.
        pair: (usize, usize),
        positions: Vec<Point>,
    },
}

impl RotatingOutcome {
    pub fn is_stuck(&self) -> bool {
        matches!(self, RotatingOutcome::Stuck { .. })
    }
}

/// Subdivisions per geodesic edge for the robots not on the line.
const FREE_SAMPLES: i64 = 32;

pub fn rotating_line_run(
    inst: &Instance,
    angular_steps: usize,
) -> Result<RotatingOutcome, CrossingError> {
    rotating_line_run_with(inst, angular_steps, Pivot::OneThree)
}

/// Turns a line about `q` in `angular_steps` equal increments of its
/// direction vector.
///
/// Robots of the carried groups sit at the last point where their geodesic
/// meets the ray (or the opposite ray). The other robots advance lazily: at
/// each step each one takes the first sample of its geodesic, at or after its
/// current spot, that sees every other robot. Failing that, the run is stuck.
pub fn rotating_line_run_with(
    inst: &Instance,
    angular_steps: usize,
    pivot: Pivot,
) -> Result<RotatingOutcome, CrossingError> {
    if angular_steps < 8 {
        return Err(CrossingError::TooFewSteps(angular_steps));
    }
    let dec = decompose(inst)?;
    let q = &dec.q;
    let (s, t) = (inst.start_segment(), inst.target_segment());
    let (from, to, on_ray, opposite) = match pivot {
        Pivot::OneThree => (&s.a, &t.b, 0, 2),
        Pivot::TwoFour => (&s.a, &t.a, 1, 3),
    };
    let d0 = (from.x() - q.x(), from.y() - q.y());
    let d1 = (to.x() - q.x(), to.y() - q.y());

    let n = inst.len();
    let mut pinned = vec![None; n];
    for &i in &dec.partition[on_ray] {
        pinned[i] = Some(false);
    }
    for &i in &dec.partition[opposite] {
        pinned[i] = Some(true);
    }
    let samples: Vec<Vec<Point>> = dec.paths.iter().map(sample_path).collect();
    let mut cursor = vec![0usize; n];
    let mut pos: Vec<Point> = inst.robots().iter().map(|r| r.start.clone()).collect();
    let poly = inst.polygon();
    let sees = |p: &Point, r: &Point| {
        p == r || segment_inside(poly, &Segment::new(p.clone(), r.clone())).unwrap_or(false)
    };

    for step in 0..=angular_steps {
        let lambda = ratio(step as i64, angular_steps as i64);
        let dir = (
            &d0.0 + (&d1.0 - &d0.0) * &lambda,
            &d0.1 + (&d1.1 - &d0.1) * &lambda,
        );
        let stuck = |pair, positions: &[Point]| RotatingOutcome::Stuck {
            step,
            direction: dir.clone(),
            pair,
            positions: positions.to_vec(),
        };
        for i in 0..n {
            if let Some(flip) = pinned[i] {
                let d = if flip {
                    (-dir.0.clone(), -dir.1.clone())
                } else {
                    dir.clone()
                };
                if let Some(p) = last_ray_hit(q, &d, &dec.paths[i]) {
                    pos[i] = p;
                }
            }
        }
        let fixed: Vec<usize> = (0..n).filter(|&i| pinned[i].is_some()).collect();
        for (x, &i) in fixed.iter().enumerate() {
            for &j in &fixed[x + 1..] {
                if !sees(&pos[i], &pos[j]) {
                    return Ok(stuck((i, j), &pos));
                }
            }
        }
        let last = step == angular_steps;
        for i in (0..n).filter(|&i| pinned[i].is_none()) {
            let visible_from =
                |p: &Point, pos: &[Point]| (0..n).all(|j| j == i || sees(p, &pos[j]));
            let candidates = &samples[i];
            let start = if last {
                candidates.len() - 1
            } else {
                cursor[i]
            };
            match (start..candidates.len()).find(|&k| visible_from(&candidates[k], &pos)) {
                Some(k) if !last || k == candidates.len() - 1 => {
                    cursor[i] = k;
                    pos[i] = candidates[k].clone();
                }
                _ => {
                    if last {
                        pos[i] = candidates[candidates.len() - 1].clone();
                    }
                    let j = (0..n)
                        .find(|&j| j != i && !sees(&pos[i], &pos[j]))
                        .unwrap_or(i);
                    return Ok(stuck((i.min(j), i.max(j)), &pos));
                }
            }
        }
    }
    Ok(RotatingOutcome::Completed)
}

fn sample_path(path: &GeodesicPath) -> Vec<Point> {
    let w = path.waypoints();
    let mut out = vec![w[0].clone()];
    for e in w.windows(2) {
        for k in 1..=FREE_SAMPLES {
            out.push(e[0].lerp(&e[1], &ratio(k, FREE_SAMPLES)));
        }
    }
    out
}

/// Last point of `path` on the closed ray from `q` along `dir`.
fn last_ray_hit(q: &Point, dir: &(Rational, Rational), path: &GeodesicPath) -> Option<Point> {
    let on_ray = |p: &Point| {
        let (px, py) = (p.x() - q.x(), p.y() - q.y());
        (&px * &dir.1 - &py * &dir.0).is_zero() && !(&px * &dir.0 + &py * &dir.1).is_negative()
    };
    let w = path.waypoints();
    let mut hit = None;
    if w.len() == 1 {
        return on_ray(&w[0]).then(|| w[0].clone());
    }
    for e in w.windows(2) {
        let (p, r) = (&e[0], &e[1]);
        let ex = r.x() - p.x();
        let ey = r.y() - p.y();
        // cross(e, dir)
        let det = &ex * &dir.1 - &ey * &dir.0;
        if det.is_zero() {
            if on_ray(r) {
                hit = Some(r.clone());
            } else if on_ray(p) {
                hit = Some(p.clone());
            }
            continue;
        }
        let qx = q.x() - p.x();
        let qy = q.y() - p.y();
        let s = (&qx * &dir.1 - &qy * &dir.0) / &det;
        let t = (&qx * &ey - &qy * &ex) / &det;
        if !s.is_negative() && s <= Rational::one() && !t.is_negative() {
            hit = Some(p.lerp(r, &s));
        }
    }
    hit
}

/// Ray direction as an angle in degrees, for reports.
pub fn direction_degrees(dir: &(Rational, Rational)) -> f64 {
    to_f64(&dir.1).atan2(to_f64(&dir.0)).to_degrees()
}

/// Hexagon `v1..v6` with `v2 = (0, ε)` and `v5 = (0, -ε)` pinching the middle.
///
/// `S = v1 v4` and `T = v3 v6` cross at the origin. `R1` robots go from near
/// `v1` to near `v6`, `R3` robots from near `v4` to near `v3`.
pub fn hexagon_fixture(eps: &Rational, per_group: usize) -> Result<Instance, CrossingError> {
    if !eps.is_positive() || *eps >= int(10) {
        return Err(CrossingError::InvalidEps);
    }
    let p = |x: i64, y: i64| Point::from_ints(x, y);
    let zero = Rational::zero();
    let v = [
        p(-10, 10),
        Point::new(zero.clone(), eps.clone()),
        p(10, 10),
        p(10, -10),
        Point::new(zero, -eps.clone()),
        p(-10, -10),
    ];
    let poly = SimplePolygon::new(v.to_vec()).map_err(|_| CrossingError::InvalidEps)?;
    let mut robots = Vec::new();
    for k in 0..per_group as i64 {
        let m = 9 - k % 8;
        robots.push(Robot {
            start: p(-m, m),
            target: p(-m, -m),
        });
    }
    for k in 0..per_group as i64 {
        let m = 9 - k % 8;
        robots.push(Robot {
            start: p(m, -m),
            target: p(m, m),
        });
    }
    Instance::new(
        poly,
        Segment::new(v[0].clone(), v[3].clone()),
        Segment::new(v[2].clone(), v[5].clone()),
        robots,
    )
    .map_err(|_| CrossingError::InvalidEps)
}

/// Width of the strip through `v2` parallel to the line `v1 v5`.
///
/// Robots near `v1` and near `v4` can only see each other inside this strip.
pub fn strip_width(eps: &Rational) -> Result<f64, CrossingError> {
    let inst = hexagon_fixture(eps, 1)?;
    let v = inst.polygon().vertices();
    let find = |x: i64, y: &Rational| {
        v.iter()
            .find(|p| *p.x() == int(x) && p.y() == y)
            .cloned()
            .expect("fixture vertex")
    };
    let v1 = find(-10, &int(10));
    let v2 = find(0, eps);
    let v5 = find(0, &-eps.clone());
    let c = cross(&v1, &v5, &v2);
    Ok(to_f64(&(&c * &c / v1.distance_sq(&v5))).sqrt())
}

/// Polygon with concave chains `a u v d`, `b w c`, `a u' v' c` and `b w' d`
/// on which both line-keeping strategies get stuck.
///
/// Four robots: `a→d`, `a→c`, `b→c`, `b→d`.
pub fn stuck_fixture() -> Instance {
    let p = |x: i64, y: i64| Point::from_ints(x, y);
    let (a, b, c, d) = (p(-10, 10), p(10, -10), p(10, 10), p(-10, -10));
    let poly = SimplePolygon::new(vec![
        a.clone(),
        p(-1, 3),
        p(3, 5),
        c.clone(),
        p(1, 0),
        b.clone(),
        p(0, -1),
        d.clone(),
        p(-5, -3),
        p(-3, 1),
    ])
    .expect("stuck fixture polygon");
    let robots = vec![
        Robot {
            start: a.clone(),
            target: d.clone(),
        },
        Robot {
            start: a.clone(),
            target: c.clone(),
        },
        Robot {
            start: b.clone(),
            target: c.clone(),
        },
        Robot {
            start: b.clone(),
            target: d.clone(),
        },
    ];
    Instance::new(poly, Segment::new(a, b), Segment::new(c, d), robots).expect("stuck fixture")
}

/// Square with `S` and `T` on the diagonals and one robot per region.
pub fn convex_crossing_fixture() -> Instance {
    let p = |x: i64, y: i64| Point::from_ints(x, y);
    let poly =
        SimplePolygon::new(vec![p(-10, -10), p(10, -10), p(10, 10), p(-10, 10)]).expect("square");
    let robots = vec![
        Robot {
            start: p(-8, 8),
            target: p(-8, -8),
        },
        Robot {
            start: p(-6, 6),
            target: p(6, 6),
        },
        Robot {
            start: p(8, -8),
            target: p(8, 8),
        },
        Robot {
            start: p(6, -6),
            target: p(-6, -6),
        },
    ];
    Instance::new(
        poly,
        Segment::new(p(-8, 8), p(8, -8)),
        Segment::new(p(8, 8), p(-8, -8)),
        robots,
    )
    .expect("convex crossing fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn hexagon_partition() {
        let inst = hexagon_fixture(&ratio(1, 10), 2).unwrap();
        let dec = decompose(&inst).unwrap();
        assert_eq!(dec.q, p(0, 0));
        assert_eq!(dec.partition, [vec![0, 1], vec![], vec![2, 3], vec![]]);
        assert!(dec.unassigned.is_empty());
        assert!(dec.regions.iter().all(|r| r.polygon.is_some()));
    }

    #[test]
    fn shared_boundary_goes_to_lowest_region() {
        // This geodesic runs along (a, q), shared by A1 and A2.
        let inst = Instance::new(
            convex_crossing_fixture().polygon().clone(),
            Segment::new(p(-8, 8), p(8, -8)),
            Segment::new(p(8, 8), p(-8, -8)),
            vec![Robot {
                start: p(-4, 4),
                target: p(0, 0),
            }],
        )
        .unwrap();
        let dec = decompose(&inst).unwrap();
        assert_eq!(dec.partition[0], vec![0]);
    }

    #[test]
    fn one_quadrant_leaves_three_empty_sets() {
        let inst = hexagon_fixture(&ratio(1, 10), 1).unwrap();
        let only_r1 = Instance::new(
            inst.polygon().clone(),
            inst.start_segment().clone(),
            inst.target_segment().clone(),
            vec![inst.robots()[0].clone()],
        )
        .unwrap();
        let dec = decompose(&only_r1).unwrap();
        assert_eq!(dec.partition.iter().filter(|r| r.is_empty()).count(), 3);
    }

    #[test]
    fn non_crossing_is_rejected() {
        let inst = Instance::new(
            SimplePolygon::new(vec![p(0, 0), p(10, 0), p(10, 10), p(0, 10)]).unwrap(),
            Segment::new(p(0, 8), p(0, 2)),
            Segment::new(p(10, 8), p(10, 2)),
            vec![Robot {
                start: p(0, 8),
                target: p(10, 8),
            }],
        )
        .unwrap();
        assert!(matches!(decompose(&inst), Err(CrossingError::NotCrossing)));
        assert!(matches!(
            rotating_line_run(&inst, 8),
            Err(CrossingError::NotCrossing)
        ));
    }

    #[test]
    fn axis_aligned_projection() {
        let chain = GeodesicPath::from_points(&[p(0, 1), p(1, 1), p(3, 0)]);
        let carrier = GeodesicPath::from_points(&[p(0, 0), p(2, 2)]);
        assert_eq!(
            critical_points(&chain, (&p(0, 1), &p(1, 1)), &carrier).unwrap(),
            p(1, 1)
        );
        assert!(matches!(
            critical_points(&chain, (&p(0, 1), &p(3, 0)), &carrier),
            Err(CrossingError::NotAChainEdge)
        ));
        let far = GeodesicPath::from_points(&[p(5, 0), p(6, 0)]);
        assert!(matches!(
            critical_points(&chain, (&p(0, 1), &p(1, 1)), &far),
            Err(CrossingError::NoIntersection)
        ));
    }

    #[test]
    fn stuck_fixture_orderings() {
        let inst = stuck_fixture();
        let cp = stuck_critical_points(&inst).unwrap().unwrap();
        // Both land on the first edge of the a-c geodesic, (-10,10)-(-1,3).
        assert_eq!(cp.x.point, Point::new(ratio(-43, 25), ratio(89, 25)));
        assert_eq!(cp.x.position, (0, ratio(23, 25)));
        assert_eq!(cp.y.point, Point::new(ratio(-10, 3), ratio(130, 27)));
        assert_eq!(cp.y.position, (0, ratio(20, 27)));
        assert!(cp.y_before_x());
        assert_eq!(cp.y_prime_before_x_prime(), Some(true));
    }

    #[test]
    fn stuck_fixture_gets_stuck() {
        let inst = stuck_fixture();
        let dec = decompose(&inst).unwrap();
        assert_eq!(dec.partition, [vec![0], vec![1], vec![2], vec![3]]);
        for steps in [8, 64, 1024] {
            for pivot in [Pivot::OneThree, Pivot::TwoFour] {
                let out = rotating_line_run_with(&inst, steps, pivot).unwrap();
                assert!(out.is_stuck(), "{steps} {pivot:?}");
            }
        }
    }

    #[test]
    fn convex_control_completes() {
        let inst = convex_crossing_fixture();
        for steps in [8, 64] {
            assert_eq!(
                rotating_line_run(&inst, steps).unwrap(),
                RotatingOutcome::Completed
            );
        }
        let single = Instance::new(
            inst.polygon().clone(),
            inst.start_segment().clone(),
            inst.target_segment().clone(),
            vec![inst.robots()[0].clone()],
        )
        .unwrap();
        assert_eq!(
            rotating_line_run(&single, 8).unwrap(),
            RotatingOutcome::Completed
        );
        assert!(matches!(
            rotating_line_run(&inst, 7),
            Err(CrossingError::TooFewSteps(7))
        ));
    }

    #[test]
    fn strip_width_matches_closed_form() {
        let oracle = |e: f64| 2.0 * e / (1.0 + ((10.0 + e) / 10.0).powi(2)).sqrt();
        let mut prev = f64::INFINITY;
        for den in [10, 20, 40, 80] {
            let w = strip_width(&ratio(1, den)).unwrap();
            assert!((w - oracle(1.0 / den as f64)).abs() < 1e-12);
            assert!(w < prev);
            prev = w;
        }
        let r = strip_width(&ratio(1, 20)).unwrap() / strip_width(&ratio(1, 40)).unwrap();
        assert!((1.8..=2.2).contains(&r));
        assert!(matches!(
            strip_width(&Rational::zero()),
            Err(CrossingError::InvalidEps)
        ));
    }
}
