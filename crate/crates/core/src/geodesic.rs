//! Euclidean shortest paths inside a simple polygon.
//!
//! [`Geodesics`] runs the funnel algorithm over the polygon triangulation and
//! is what the solver uses. [`VisibilityGraph`] computes the same paths with
//! Dijkstra over the reflex-vertex visibility graph; it shares only the exact
//! predicates with the funnel code and serves as an independent check.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::GeodesicError;
use crate::geometry::{normalize_polyline, orient, Orientation, Point, Segment};
use crate::polygon::{segment_inside, Location, SimplePolygon, Triangulation};

/// A shortest path in canonical form: no repeated points and no collinear
/// interior waypoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeodesicPath {
    waypoints: Vec<Point>,
}

impl GeodesicPath {
    /// Canonicalizes `points` into a path.
    pub fn from_points(points: &[Point]) -> Self {
        GeodesicPath {
            waypoints: normalize_polyline(points),
        }
    }

    pub fn waypoints(&self) -> &[Point] {
        &self.waypoints
    }

    pub fn source(&self) -> &Point {
        &self.waypoints[0]
    }

    pub fn target(&self) -> &Point {
        self.waypoints.last().expect("paths are never empty")
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        self.waypoints
            .windows(2)
            .map(|w| Segment::new(w[0].clone(), w[1].clone()))
    }

    pub fn reversed(&self) -> Self {
        let mut waypoints = self.waypoints.clone();
        waypoints.reverse();
        GeodesicPath { waypoints }
    }

    pub fn length(&self) -> f64 {
        path_length(self)
    }
}

/// Sum of Euclidean distances between consecutive waypoints.
pub fn path_length(path: &GeodesicPath) -> f64 {
    path.waypoints
        .windows(2)
        .map(|w| w[0].distance(&w[1]))
        .sum()
}

/// Funnel-algorithm shortest paths over a fixed triangulation.
#[derive(Clone, Debug)]
pub struct Geodesics<'a> {
    poly: &'a SimplePolygon,
    tri: Triangulation,
}

impl<'a> Geodesics<'a> {
    pub fn new(poly: &'a SimplePolygon) -> Self {
        Geodesics {
            poly,
            tri: poly.triangulate(),
        }
    }

    pub fn with_triangulation(poly: &'a SimplePolygon, tri: Triangulation) -> Self {
        Geodesics { poly, tri }
    }

    pub fn polygon(&self) -> &'a SimplePolygon {
        self.poly
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn shortest_path(&self, s: &Point, t: &Point) -> Result<GeodesicPath, GeodesicError> {
        shortest_path_funnel(self.poly, &self.tri, s, t)
    }
}

/// Shortest path from `s` to `t` by the funnel algorithm.
pub fn shortest_path_funnel(
    poly: &SimplePolygon,
    tri: &Triangulation,
    s: &Point,
    t: &Point,
) -> Result<GeodesicPath, GeodesicError> {
    let ts = tri
        .locate(poly, s)
        .ok_or_else(|| GeodesicError::PointOutside(s.clone()))?;
    let tt = tri
        .locate(poly, t)
        .ok_or_else(|| GeodesicError::PointOutside(t.clone()))?;
    if s == t {
        return Ok(GeodesicPath::from_points(std::slice::from_ref(s)));
    }
    if ts == tt {
        return Ok(GeodesicPath::from_points(&[s.clone(), t.clone()]));
    }

    let sleeve = sleeve(tri, ts, tt);
    // A point on a shared edge or at a shared vertex belongs to several
    // sleeve triangles; starting from the last one containing `s` and stopping
    // at the first containing `t` keeps it off the portals.
    let first = sleeve
        .iter()
        .rposition(|&k| tri.contains(poly, k, s))
        .unwrap_or(0);
    let last = first
        + sleeve[first..]
            .iter()
            .position(|&k| tri.contains(poly, k, t))
            .unwrap_or(sleeve.len() - 1 - first);
    let sleeve = &sleeve[first..=last];
    if sleeve.len() == 1 {
        return Ok(GeodesicPath::from_points(&[s.clone(), t.clone()]));
    }
    let vs = poly.vertices();
    let mut portals: Vec<(&Point, &Point)> = Vec::with_capacity(sleeve.len() + 1);
    portals.push((s, s));
    for w in sleeve.windows(2) {
        let (from, to) = (w[0], w[1]);
        let k = (0..3)
            .find(|&k| tri.neighbors[from][k] == Some(to))
            .expect("consecutive sleeve triangles are adjacent");
        let tri_from = tri.triangles[from];
        // The triangle we leave lies to the left of its ccw edge a -> b, so
        // looking across the edge `b` is on the left and `a` on the right.
        let right = &vs[tri_from[k]];
        let left = &vs[tri_from[(k + 1) % 3]];
        portals.push((left, right));
    }
    portals.push((t, t));
    Ok(GeodesicPath::from_points(&string_pull(&portals)))
}

/// Triangle sequence from `from` to `to` in the dual tree.
fn sleeve(tri: &Triangulation, from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; tri.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(t) = queue.pop_front() {
        if t == to {
            break;
        }
        for n in tri.neighbors[t].iter().flatten() {
            if parent[*n] == usize::MAX {
                parent[*n] = t;
                queue.push_back(*n);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Simple stupid funnel over `(left, right)` portals.
fn string_pull(portals: &[(&Point, &Point)]) -> Vec<Point> {
    use Orientation::*;
    let mut path = vec![portals[0].0.clone()];
    let mut apex = portals[0].0;
    let mut left = portals[0].0;
    let mut right = portals[0].1;
    let (mut left_idx, mut right_idx) = (0usize, 0usize);
    let mut i = 1;
    while i < portals.len() {
        let (pl, pr) = portals[i];

        // Right side: the new right point must not lie strictly right of the
        // current right leg.
        if orient(apex, right, pr) != Clockwise {
            if apex == right || left == apex || orient(apex, left, pr) == Clockwise {
                right = pr;
                right_idx = i;
            } else {
                path.push(left.clone());
                let apex_idx = left_idx;
                apex = left;
                right = apex;
                left_idx = apex_idx;
                right_idx = apex_idx;
                i = apex_idx + 1;
                continue;
            }
        }

        if orient(apex, left, pl) != CounterClockwise {
            if apex == left || right == apex || orient(apex, right, pl) == CounterClockwise {
                left = pl;
                left_idx = i;
            } else {
                path.push(right.clone());
                let apex_idx = right_idx;
                apex = right;
                left = apex;
                left_idx = apex_idx;
                right_idx = apex_idx;
                i = apex_idx + 1;
                continue;
            }
        }
        i += 1;
    }
    path.push(portals[portals.len() - 1].0.clone());
    path
}

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Relative slack under which two Dijkstra distances count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Visibility graph on the reflex vertices of a polygon.
#[derive(Clone, Debug)]
pub struct VisibilityGraph<'a> {
    poly: &'a SimplePolygon,
    nodes: Vec<Point>,
    adjacency: Vec<Vec<usize>>,
}

impl<'a> VisibilityGraph<'a> {
    pub fn new(poly: &'a SimplePolygon) -> Self {
        let nodes: Vec<Point> = poly
            .reflex_vertices()
            .into_iter()
            .map(|i| poly.vertices()[i].clone())
            .collect();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for i in 0..nodes.len() {
            for j in (i + 1)..nodes.len() {
                let seg = Segment::new(nodes[i].clone(), nodes[j].clone());
                if segment_inside(poly, &seg).unwrap_or(false) {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        VisibilityGraph {
            poly,
            nodes,
            adjacency,
        }
    }

    /// Shortest path from `s` to `t`; near ties between different routes are
    /// resolved silently in favour of the first one found.
    pub fn shortest_path(&self, s: &Point, t: &Point) -> Result<GeodesicPath, GeodesicError> {
        self.search(s, t, false)
    }

    /// Like [`Self::shortest_path`], but fails with `InstanceRejected` when two
    /// geometrically different routes tie within [`TIE_TOLERANCE`].
    pub fn shortest_path_checked(
        &self,
        s: &Point,
        t: &Point,
    ) -> Result<GeodesicPath, GeodesicError> {
        self.search(s, t, true)
    }

    fn search(&self, s: &Point, t: &Point, strict: bool) -> Result<GeodesicPath, GeodesicError> {
        for p in [s, t] {
            if self.poly.locate(p) == Location::Exterior {
                return Err(GeodesicError::PointOutside(p.clone()));
            }
        }
        let visible = |a: &Point, b: &Point| {
            segment_inside(self.poly, &Segment::new(a.clone(), b.clone())).unwrap_or(false)
        };
        if visible(s, t) {
            return Ok(GeodesicPath::from_points(&[s.clone(), t.clone()]));
        }

        // Node layout: reflex vertices, then s, then t.
        let k = self.nodes.len();
        let (src, dst) = (k, k + 1);
        let point = |i: usize| -> &Point {
            match i {
                i if i < k => &self.nodes[i],
                i if i == src => s,
                _ => t,
            }
        };
        let from_s: Vec<usize> = (0..k).filter(|&i| visible(s, &self.nodes[i])).collect();
        let to_t: Vec<bool> = (0..k).map(|i| visible(&self.nodes[i], t)).collect();

        let mut dist = vec![f64::INFINITY; k + 2];
        let mut pred = vec![usize::MAX; k + 2];
        let mut done = vec![false; k + 2];
        dist[src] = 0.0;
        let mut heap = BinaryHeap::from([HeapEntry {
            dist: 0.0,
            node: src,
        }]);
        while let Some(HeapEntry { dist: d, node: u }) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            if u == dst {
                break;
            }
            let neighbors: Box<dyn Iterator<Item = usize>> = if u == src {
                Box::new(from_s.iter().copied())
            } else {
                let direct = to_t[u].then_some(dst);
                Box::new(self.adjacency[u].iter().copied().chain(direct))
            };
            for v in neighbors {
                if done[v] {
                    continue;
                }
                let nd = d + point(u).distance(point(v));
                let tie = (nd - dist[v]).abs() <= TIE_TOLERANCE * nd.max(1.0);
                if tie && strict && pred[v] != usize::MAX {
                    let current = self.route(&pred, v, point);
                    let mut alt = self.route(&pred, u, point);
                    alt.push(point(v).clone());
                    if GeodesicPath::from_points(&current) != GeodesicPath::from_points(&alt) {
                        return Err(GeodesicError::InstanceRejected(point(v).clone()));
                    }
                }
                if (nd < dist[v] && !tie) || pred[v] == usize::MAX {
                    dist[v] = nd;
                    pred[v] = u;
                    heap.push(HeapEntry { dist: nd, node: v });
                }
            }
        }
        if pred[dst] == usize::MAX {
            // Unreachable only if the polygon predicates disagree with each other.
            return Err(GeodesicError::PointOutside(t.clone()));
        }
        Ok(GeodesicPath::from_points(&self.route(&pred, dst, point)))
    }

    fn route<'p>(
        &self,
        pred: &[usize],
        end: usize,
        point: impl Fn(usize) -> &'p Point,
    ) -> Vec<Point> {
        let mut out = vec![point(end).clone()];
        let mut cur = end;
        while pred[cur] != usize::MAX {
            cur = pred[cur];
            out.push(point(cur).clone());
        }
        out.reverse();
        out
    }
}

/// Shortest path by Dijkstra over the reflex-vertex visibility graph.
pub fn shortest_path_vgraph(
    poly: &SimplePolygon,
    s: &Point,
    t: &Point,
) -> Result<GeodesicPath, GeodesicError> {
    VisibilityGraph::new(poly).shortest_path(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, ratio};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn poly(pts: &[(i64, i64)]) -> SimplePolygon {
        SimplePolygon::new(pts.iter().map(|&(x, y)| p(x, y)).collect()).unwrap()
    }

    fn l_shape() -> SimplePolygon {
        poly(&[(0, 0), (10, 0), (10, 10), (6, 10), (6, 4), (0, 4)])
    }

    #[test]
    fn funnel_examples() {
        let sq = poly(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let g = Geodesics::new(&sq);
        assert_eq!(
            g.shortest_path(&p(1, 1), &p(9, 9)).unwrap().waypoints(),
            &[p(1, 1), p(9, 9)]
        );
        assert_eq!(
            g.shortest_path(&p(5, 5), &p(5, 5)).unwrap().waypoints(),
            &[p(5, 5)]
        );
        let l = l_shape();
        let g = Geodesics::new(&l);
        assert_eq!(
            g.shortest_path(&p(1, 3), &p(9, 9)).unwrap().waypoints(),
            &[p(1, 3), p(6, 4), p(9, 9)]
        );
        assert!(matches!(
            g.shortest_path(&p(3, 8), &p(9, 9)),
            Err(GeodesicError::PointOutside(_))
        ));
    }

    #[test]
    fn vgraph_examples() {
        let sq = poly(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        assert_eq!(
            shortest_path_vgraph(&sq, &p(1, 1), &p(9, 9))
                .unwrap()
                .waypoints(),
            &[p(1, 1), p(9, 9)]
        );
        let l = l_shape();
        assert_eq!(
            shortest_path_vgraph(&l, &p(1, 3), &p(9, 9))
                .unwrap()
                .waypoints(),
            &[p(1, 3), p(6, 4), p(9, 9)]
        );
        assert_eq!(
            shortest_path_vgraph(&l, &p(1, 3), &p(1, 1))
                .unwrap()
                .waypoints(),
            &[p(1, 3), p(1, 1)]
        );
    }

    #[test]
    fn lengths() {
        assert_eq!(GeodesicPath::from_points(&[p(0, 0), p(3, 4)]).length(), 5.0);
        assert_eq!(GeodesicPath::from_points(&[p(5, 5)]).length(), 0.0);
        let l = GeodesicPath::from_points(&[p(1, 3), p(6, 4), p(9, 9)]).length();
        assert!((l - (26f64.sqrt() + 34f64.sqrt())).abs() < 1e-12);
        assert!((l - 10.930).abs() < 1e-3);
    }

    #[test]
    fn comb_polygon_matches_oracle() {
        // Teeth force the path to zig-zag around several reflex vertices.
        let comb = poly(&[
            (0, 0),
            (20, 0),
            (20, 10),
            (16, 10),
            (16, 3),
            (12, 3),
            (12, 10),
            (8, 10),
            (8, 3),
            (4, 3),
            (4, 10),
            (0, 10),
        ]);
        let g = Geodesics::new(&comb);
        let vg = VisibilityGraph::new(&comb);
        let pts = [
            p(2, 9),
            p(18, 9),
            p(10, 8),
            p(6, 1),
            p(0, 0),
            p(16, 3),
            p(10, 10),
            p(14, 2),
        ];
        for a in &pts {
            for b in &pts {
                let f = g.shortest_path(a, b).unwrap();
                let o = vg.shortest_path(a, b).unwrap();
                assert_eq!(f, o, "{a} -> {b}");
            }
        }
    }

    #[test]
    fn path_through_vertex_source() {
        let l = l_shape();
        let g = Geodesics::new(&l);
        let vg = VisibilityGraph::new(&l);
        for (a, b) in [
            ((6, 4), (0, 0)),
            ((0, 4), (10, 10)),
            ((6, 10), (0, 4)),
            ((0, 0), (10, 10)),
        ] {
            let (a, b) = (p(a.0, a.1), p(b.0, b.1));
            assert_eq!(
                g.shortest_path(&a, &b).unwrap(),
                vg.shortest_path(&a, &b).unwrap()
            );
        }
        assert_eq!(
            g.shortest_path(&p(0, 4), &p(6, 10)).unwrap().waypoints(),
            &[p(0, 4), p(6, 4), p(6, 10)]
        );
    }

    #[test]
    fn endpoints_on_diagonals() {
        let eps = ratio(1, 10);
        let poly = SimplePolygon::new(vec![
            p(-10, 10),
            Point::new(int(0), eps.clone()),
            p(10, 10),
            p(10, -10),
            Point::new(int(0), -eps),
            p(-10, -10),
        ])
        .unwrap();
        let geo = Geodesics::new(&poly);
        let tri = geo.triangulation();
        let vs = poly.vertices();
        let mut probes: Vec<Point> = vs.to_vec();
        for t in &tri.triangles {
            for k in 0..3 {
                probes.push(vs[t[k]].midpoint(&vs[t[(k + 1) % 3]]));
            }
        }
        probes.push(p(9, -9));
        probes.push(p(9, 9));
        for s in &probes {
            for t in &probes {
                assert_eq!(
                    geo.shortest_path(s, t).unwrap(),
                    shortest_path_vgraph(&poly, s, t).unwrap(),
                    "{s:?} -> {t:?}"
                );
            }
        }
    }
}
