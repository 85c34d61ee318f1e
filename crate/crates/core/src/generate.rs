//! Seeded random non-crossing instances with integer polygon coordinates.
//!
//! Polygons come from random points untangled by 2-opt moves: while two
//! non-adjacent edges cross, the chain between them is reversed, which strictly
//! shortens the tour and therefore terminates in a simple polygon.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{
    orient, ratio, segment_intersection, Intersection, Orientation, Point, Rational, Segment,
};
use crate::instance::{Classification, Instance, Robot};
use crate::polygon::{segment_inside, Location, SimplePolygon, Triangulation};

pub const MAX_COORD: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub vertices: usize,
    pub robots: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("need at least 4 vertices and 1 robot")]
    BadParams,
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),
}

const ATTEMPTS: usize = 200;

pub fn generate_instance(params: GenParams) -> Result<Instance, GenError> {
    if params.vertices < 4 || params.robots == 0 {
        return Err(GenError::BadParams);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..ATTEMPTS {
        let Some(coords) = random_simple_polygon(&mut rng, params.vertices) else {
            continue;
        };
        let pts = coords
            .iter()
            .map(|&(x, y)| Point::from_ints(x, y))
            .collect();
        let Ok(poly) = SimplePolygon::new(pts) else {
            continue;
        };
        if let Some(inst) = place_segments(&mut rng, poly, params.robots) {
            return Ok(inst);
        }
    }
    Err(GenError::GenerationFailed(ATTEMPTS))
}

fn cross_i(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn segments_cross(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    // General position is enforced beforehand, so only proper crossings occur.
    let d1 = cross_i(a, b, c).signum();
    let d2 = cross_i(a, b, d).signum();
    let d3 = cross_i(c, d, a).signum();
    let d4 = cross_i(c, d, b).signum();
    d1 * d2 < 0 && d3 * d4 < 0
}

fn random_simple_polygon(rng: &mut ChaCha8Rng, m: usize) -> Option<Vec<(i64, i64)>> {
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(m);
    while pts.len() < m {
        let p = (rng.gen_range(0..=MAX_COORD), rng.gen_range(0..=MAX_COORD));
        if pts.contains(&p) {
            continue;
        }
        let collinear =
            (0..pts.len()).any(|i| (i + 1..pts.len()).any(|j| cross_i(pts[i], pts[j], p) == 0));
        if !collinear {
            pts.push(p);
        }
    }
    pts.shuffle(rng);
    let limit = 50 * m * m;
    let mut moves = 0;
    'outer: loop {
        for i in 0..m {
            for j in (i + 2)..m {
                if i == 0 && j == m - 1 {
                    continue;
                }
                if segments_cross(pts[i], pts[i + 1], pts[j], pts[(j + 1) % m]) {
                    pts[i + 1..=j].reverse();
                    moves += 1;
                    if moves > limit {
                        return None;
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    Some(pts)
}

fn random_point_in_triangle(
    rng: &mut ChaCha8Rng,
    poly: &SimplePolygon,
    tri: &Triangulation,
    t: usize,
) -> Option<Point> {
    let [a, b, c] = tri.corners(poly, t);
    for _ in 0..32 {
        let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        let [ax, ay] = a.approx();
        let [bx, by] = b.approx();
        let [cx, cy] = c.approx();
        let x = (ax + u * (bx - ax) + v * (cx - ax)).round() as i64;
        let y = (ay + u * (by - ay) + v * (cy - ay)).round() as i64;
        let p = Point::from_ints(x, y);
        if tri.contains(poly, t, &p) && poly.locate(&p) == Location::Interior {
            return Some(p);
        }
    }
    None
}

fn dual_distances(tri: &Triangulation, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; tri.len()];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(t) = queue.pop_front() {
        for n in tri.neighbors[t].iter().flatten() {
            if dist[*n] == usize::MAX {
                dist[*n] = dist[t] + 1;
                queue.push_back(*n);
            }
        }
    }
    dist
}

/// A segment with endpoints in triangle `t` and a triangle near it.
fn random_segment_near(
    rng: &mut ChaCha8Rng,
    poly: &SimplePolygon,
    tri: &Triangulation,
    t: usize,
) -> Option<Segment> {
    let dist = dual_distances(tri, t);
    let near: Vec<usize> = (0..tri.len()).filter(|&u| dist[u] <= 2).collect();
    for _ in 0..16 {
        let a = random_point_in_triangle(rng, poly, tri, t)?;
        let u = *near.choose(rng)?;
        let Some(b) = random_point_in_triangle(rng, poly, tri, u) else {
            continue;
        };
        if a == b {
            continue;
        }
        let seg = Segment::new(a, b);
        if segment_inside(poly, &seg).unwrap_or(false) {
            return Some(seg);
        }
    }
    None
}

/// Each segment lies strictly on one side of the other's supporting line.
pub fn facing(s: &Segment, t: &Segment) -> bool {
    let side = |l: &Segment, p: &Point| orient(&l.a, &l.b, p);
    let one_side = |l: &Segment, o: &Segment| {
        let (x, y) = (side(l, &o.a), side(l, &o.b));
        x == y && x != Orientation::Collinear
    };
    one_side(s, t) && one_side(t, s)
}

fn place_segments(rng: &mut ChaCha8Rng, poly: SimplePolygon, n: usize) -> Option<Instance> {
    let tri = poly.triangulate();
    for _ in 0..16 {
        let ts = rng.gen_range(0..tri.len());
        let dist = dual_distances(&tri, ts);
        let far = *dist.iter().max()?;
        let candidates: Vec<usize> = (0..tri.len()).filter(|&u| 2 * dist[u] >= far).collect();
        let tt = *candidates.choose(rng)?;
        let (Some(s), Some(t)) = (
            random_segment_near(rng, &poly, &tri, ts),
            random_segment_near(rng, &poly, &tri, tt),
        ) else {
            continue;
        };
        if !matches!(segment_intersection(&s, &t), Ok(Intersection::Empty)) || !facing(&s, &t) {
            continue;
        }
        let spots = |seg: &Segment| -> Vec<Point> {
            (0..n)
                .map(|i| {
                    let f: Rational = if n == 1 {
                        ratio(1, 2)
                    } else {
                        ratio(i as i64, (n - 1) as i64)
                    };
                    seg.at(&f)
                })
                .collect()
        };
        let starts = spots(&s);
        let mut targets = spots(&t);
        targets.shuffle(rng);
        let robots = starts
            .into_iter()
            .zip(targets)
            .map(|(start, target)| Robot { start, target })
            .collect();
        let inst = Instance::new(poly.clone(), s, t, robots).ok()?;
        if inst.classify().ok()? == Classification::NonCrossing {
            return Some(inst);
        }
    }
    None
}
