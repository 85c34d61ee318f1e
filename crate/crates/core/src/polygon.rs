//! Simple polygons: validation, exact point location, segment containment and
//! ear-clipping triangulation.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::PolygonError;
use crate::geometry::{
    intersect_unchecked, orient, point_on_segment, signed_area2, Intersection, Orientation, Point,
    Rational, Segment,
};

/// A simple polygon with counterclockwise vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Outcome of testing a segment against the closed polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    /// The segment properly crosses polygon edge `edge` (from vertex `edge` to `edge + 1`).
    Crosses {
        edge: usize,
        at: Point,
    },
    /// A stretch of the segment between two boundary contacts leaves the polygon.
    Leaves {
        witness: Point,
    },
}

impl SimplePolygon {
    /// Validates the vertex list and returns it in counterclockwise order.
    pub fn new(vertices: Vec<Point>) -> Result<Self, PolygonError> {
        validate_simple(vertices)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(
            self.vertices[i].clone(),
            self.vertices[(i + 1) % self.vertices.len()].clone(),
        )
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    /// Twice the (positive) area.
    pub fn area2(&self) -> Rational {
        signed_area2(&self.vertices)
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        let m = self.len();
        orient(
            &self.vertices[(i + m - 1) % m],
            &self.vertices[i],
            &self.vertices[(i + 1) % m],
        ) == Orientation::Clockwise
    }

    pub fn reflex_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_reflex(i)).collect()
    }

    pub fn locate(&self, p: &Point) -> Location {
        point_location(self, p)
    }

    pub fn contains_segment(&self, s: &Segment) -> Result<bool, PolygonError> {
        segment_inside(self, s)
    }

    pub fn triangulate(&self) -> Triangulation {
        triangulate(self)
    }
}

/// Checks simplicity and normalizes the orientation to counterclockwise.
pub fn validate_simple(mut vertices: Vec<Point>) -> Result<SimplePolygon, PolygonError> {
    let m = vertices.len();
    if m < 3 {
        return Err(PolygonError::TooFewVertices(m));
    }
    for i in 0..m {
        if vertices[i] == vertices[(i + m - 1) % m] {
            return Err(PolygonError::DuplicateVertex(i));
        }
    }
    let edges: Vec<Segment> = (0..m)
        .map(|i| Segment::new(vertices[i].clone(), vertices[(i + 1) % m].clone()))
        .collect();
    for i in 0..m {
        for j in (i + 1)..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            match intersect_unchecked(&edges[i], &edges[j]) {
                Intersection::Empty => {}
                Intersection::At(_) if adjacent => {}
                _ => return Err(PolygonError::NotSimple(i, j)),
            }
        }
    }
    let area = signed_area2(&vertices);
    if area.is_zero() {
        return Err(PolygonError::ZeroArea);
    }
    if area.is_negative() {
        vertices.reverse();
    }
    Ok(SimplePolygon { vertices })
}

/// Exact classification by crossing number.
pub fn point_location(poly: &SimplePolygon, p: &Point) -> Location {
    let vs = &poly.vertices;
    let m = vs.len();
    let mut inside = false;
    for i in 0..m {
        let a = &vs[i];
        let b = &vs[(i + 1) % m];
        let o = orient(a, b, p);
        if o == Orientation::Collinear && point_on_segment(p, &Segment::new(a.clone(), b.clone())) {
            return Location::Boundary;
        }
        let a_above = a.y() > p.y();
        let b_above = b.y() > p.y();
        if a_above != b_above {
            // Upward edges cross the rightward ray when p is to their left.
            let upward = b_above;
            if (upward && o == Orientation::CounterClockwise)
                || (!upward && o == Orientation::Clockwise)
            {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// True iff the closed segment lies in the closed polygon.
pub fn segment_inside(poly: &SimplePolygon, s: &Segment) -> Result<bool, PolygonError> {
    segment_containment(poly, s).map(|c| c == Containment::Inside)
}

/// Like [`segment_inside`], but reports where containment fails.
pub fn segment_containment(poly: &SimplePolygon, s: &Segment) -> Result<Containment, PolygonError> {
    let loc_a = point_location(poly, &s.a);
    if loc_a == Location::Exterior {
        return Err(PolygonError::EndpointOutside(s.a.clone()));
    }
    if s.is_degenerate() {
        return Ok(Containment::Inside);
    }
    let loc_b = point_location(poly, &s.b);
    if loc_b == Location::Exterior {
        return Err(PolygonError::EndpointOutside(s.b.clone()));
    }

    let [ax, ay] = s.a.approx();
    let [bx, by] = s.b.approx();
    let (sx0, sx1) = (ax.min(bx), ax.max(bx));
    let (sy0, sy1) = (ay.min(by), ay.max(by));
    let slack = 1e-9 * (1.0 + sx0.abs().max(sx1.abs()).max(sy0.abs()).max(sy1.abs()));

    let mut contacts: Vec<Point> = Vec::new();
    let vs = &poly.vertices;
    let m = vs.len();
    for i in 0..m {
        let c = &vs[i];
        let d = &vs[(i + 1) % m];
        let [cx, cy] = c.approx();
        let [dx, dy] = d.approx();
        if cx.max(dx) < sx0 - slack
            || cx.min(dx) > sx1 + slack
            || cy.max(dy) < sy0 - slack
            || cy.min(dy) > sy1 + slack
        {
            continue;
        }
        let o1 = orient(&s.a, &s.b, c);
        let o2 = orient(&s.a, &s.b, d);
        if o1 != Orientation::Collinear && o1 == o2 {
            continue;
        }
        let o3 = orient(c, d, &s.a);
        let o4 = orient(c, d, &s.b);
        if o3 != Orientation::Collinear && o3 == o4 {
            continue;
        }
        let all_nonzero = [o1, o2, o3, o4]
            .iter()
            .all(|o| *o != Orientation::Collinear);
        if all_nonzero {
            let at = crate::geometry::line_intersection(&s.a, &s.b, c, d)
                .expect("proper crossing of non-parallel segments");
            return Ok(Containment::Crosses { edge: i, at });
        }
        match intersect_unchecked(s, &Segment::new(c.clone(), d.clone())) {
            Intersection::Empty => {}
            Intersection::At(p) => contacts.push(p),
            Intersection::Overlap(o) => {
                contacts.push(o.a);
                contacts.push(o.b);
            }
        }
    }

    if contacts.is_empty() {
        // Both endpoints are interior and nothing touches the boundary.
        return Ok(Containment::Inside);
    }
    let mut params: Vec<Rational> = contacts.iter().map(|p| s.param_of(p)).collect();
    params.push(Rational::zero());
    params.push(num_traits::One::one());
    params.sort();
    params.dedup();
    for w in params.windows(2) {
        let mid = s.at(&((&w[0] + &w[1]) / Rational::from_integer(2.into())));
        if point_location(poly, &mid) == Location::Exterior {
            return Ok(Containment::Leaves { witness: mid });
        }
    }
    Ok(Containment::Inside)
}

/// Triangles as counterclockwise vertex-index triples into the polygon.
///
/// `neighbors[t][k]` is the triangle across edge `(tri[k], tri[(k + 1) % 3])`,
/// or `None` on the polygon boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    pub neighbors: Vec<[Option<usize>; 3]>,
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners<'a>(&self, poly: &'a SimplePolygon, t: usize) -> [&'a Point; 3] {
        let [i, j, k] = self.triangles[t];
        let v = poly.vertices();
        [&v[i], &v[j], &v[k]]
    }

    pub fn is_degenerate(&self, poly: &SimplePolygon, t: usize) -> bool {
        let [a, b, c] = self.corners(poly, t);
        orient(a, b, c) == Orientation::Collinear
    }

    /// True iff `p` lies in the closed triangle `t`.
    pub fn contains(&self, poly: &SimplePolygon, t: usize, p: &Point) -> bool {
        let [a, b, c] = self.corners(poly, t);
        orient(a, b, p) != Orientation::Clockwise
            && orient(b, c, p) != Orientation::Clockwise
            && orient(c, a, p) != Orientation::Clockwise
    }

    /// First non-degenerate triangle containing `p`, scanning linearly.
    pub fn locate(&self, poly: &SimplePolygon, p: &Point) -> Option<usize> {
        let mut fallback = None;
        for t in 0..self.len() {
            if self.contains(poly, t, p) {
                if !self.is_degenerate(poly, t) {
                    return Some(t);
                }
                fallback.get_or_insert(t);
            }
        }
        fallback
    }
}

/// Ear clipping; produces exactly `m - 2` counterclockwise triangles.
pub fn triangulate(poly: &SimplePolygon) -> Triangulation {
    let vs = poly.vertices();
    let m = vs.len();
    let mut prev: Vec<usize> = (0..m).map(|i| (i + m - 1) % m).collect();
    let mut next: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let mut alive = vec![true; m];
    let mut remaining = m;
    let mut triangles = Vec::with_capacity(m.saturating_sub(2));

    let is_ear = |i: usize, prev: &[usize], next: &[usize], alive: &[bool]| -> bool {
        let (p, n) = (prev[i], next[i]);
        if orient(&vs[p], &vs[i], &vs[n]) != Orientation::CounterClockwise {
            return false;
        }
        let mut j = next[n];
        while j != p {
            debug_assert!(alive[j]);
            let q = &vs[j];
            if orient(&vs[p], &vs[i], q) != Orientation::Clockwise
                && orient(&vs[i], &vs[n], q) != Orientation::Clockwise
                && orient(&vs[n], &vs[p], q) != Orientation::Clockwise
            {
                return false;
            }
            j = next[j];
        }
        true
    };

    let mut ear: Vec<bool> = (0..m).map(|i| is_ear(i, &prev, &next, &alive)).collect();
    let mut cursor = 0;
    while remaining > 3 {
        let mut chosen = None;
        let mut j = cursor;
        for _ in 0..remaining {
            if ear[j] {
                chosen = Some(j);
                break;
            }
            j = next[j];
        }
        let i = match chosen {
            Some(i) => i,
            None => {
                // Only collinear runs remain clippable: cut a straight vertex,
                // which yields a zero-area triangle.
                let mut j = cursor;
                let mut pick = None;
                for _ in 0..remaining {
                    if orient(&vs[prev[j]], &vs[j], &vs[next[j]]) == Orientation::Collinear {
                        pick = Some(j);
                        break;
                    }
                    j = next[j];
                }
                pick.unwrap_or(cursor)
            }
        };
        let (p, n) = (prev[i], next[i]);
        triangles.push([p, i, n]);
        alive[i] = false;
        next[p] = n;
        prev[n] = p;
        remaining -= 1;
        ear[i] = false;
        ear[p] = is_ear(p, &prev, &next, &alive);
        ear[n] = is_ear(n, &prev, &next, &alive);
        cursor = n;
    }
    if remaining == 3 {
        let a = cursor;
        triangles.push([prev[a], a, next[a]]);
    }

    let mut edge_owner: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut neighbors = vec![[None; 3]; triangles.len()];
    for (t, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let (u, v) = (tri[k], tri[(k + 1) % 3]);
            let key = (u.min(v), u.max(v));
            if let Some((t2, k2)) = edge_owner.remove(&key) {
                neighbors[t][k] = Some(t2);
                neighbors[t2][k2] = Some(t);
            } else {
                edge_owner.insert(key, (t, k));
            }
        }
    }
    Triangulation {
        triangles,
        neighbors,
    }
}
