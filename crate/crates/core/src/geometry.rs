//! Exact planar primitives over arbitrary-precision rationals.
//!
//! Every point carries a cached `f64` approximation of its coordinates. The
//! orientation predicate evaluates the determinant in floating point first and
//! only falls back to rational arithmetic when the result is within a
//! conservative error bound of zero, so results are always exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::GeometryError;

pub type Rational = BigRational;

/// Builds a rational from an integer numerator and denominator.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[derive(Clone)]
pub struct Point {
    x: Rational,
    y: Rational,
    approx: [f64; 2],
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        let approx = [to_f64(&x), to_f64(&y)];
        Point { x, y, approx }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    /// Floating-point approximation `[x, y]`.
    pub fn approx(&self) -> [f64; 2] {
        self.approx
    }

    /// Affine combination `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        self.lerp(other, &ratio(1, 2))
    }

    pub fn distance(&self, other: &Point) -> f64 {
        let dx = self.approx[0] - other.approx[0];
        let dy = self.approx[1] - other.approx[1];
        dx.hypot(dy)
    }

    /// Exact squared distance.
    pub fn distance_sq(&self, other: &Point) -> Rational {
        let dx = &other.x - &self.x;
        let dy = &other.y - &self.y;
        &dx * &dx + &dy * &dy
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

/// Lexicographic order on `(x, y)`.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    fn from_sign(sign: Ordering) -> Self {
        match sign {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

/// Sign of the cross product `(q - p) x (r - p)`.
pub fn orient(p: &Point, q: &Point, r: &Point) -> Orientation {
    let [px, py] = p.approx;
    let [qx, qy] = q.approx;
    let [rx, ry] = r.approx;
    let det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    let scale = px
        .abs()
        .max(py.abs())
        .max(qx.abs())
        .max(qy.abs())
        .max(rx.abs())
        .max(ry.abs());
    // Each coordinate carries a relative rounding error of at most 2^-53, so
    // the determinant error is bounded by a small multiple of scale^2.
    let bound = 1e-12 * scale * scale;
    if det.is_finite() && bound.is_finite() && det.abs() > bound {
        return Orientation::from_sign(det.partial_cmp(&0.0).unwrap_or(Ordering::Equal));
    }
    orient_exact(p, q, r)
}

pub(crate) fn orient_exact(p: &Point, q: &Point, r: &Point) -> Orientation {
    let lhs = (&q.x - &p.x) * (&r.y - &p.y);
    let rhs = (&q.y - &p.y) * (&r.x - &p.x);
    Orientation::from_sign(lhs.cmp(&rhs))
}

/// Exact cross product `(q - p) x (r - p)`.
pub fn cross(p: &Point, q: &Point, r: &Point) -> Rational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

/// Exact dot product `(q - p) . (r - p)`.
pub fn dot(p: &Point, q: &Point, r: &Point) -> Rational {
    (&q.x - &p.x) * (&r.x - &p.x) + (&q.y - &p.y) * (&r.y - &p.y)
}

/// A closed segment. `a == b` is allowed and represents a single point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn point(p: Point) -> Self {
        Segment { a: p.clone(), b: p }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn reversed(&self) -> Self {
        Segment::new(self.b.clone(), self.a.clone())
    }

    /// Parameter of `p` along the supporting line, `0` at `a` and `1` at `b`.
    ///
    /// Only meaningful for points on the line; panics on a degenerate segment.
    pub fn param_of(&self, p: &Point) -> Rational {
        dot(&self.a, &self.b, p) / self.a.distance_sq(&self.b)
    }

    pub fn at(&self, t: &Rational) -> Point {
        self.a.lerp(&self.b, t)
    }

    pub fn midpoint(&self) -> Point {
        self.a.midpoint(&self.b)
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    At(Point),
    Overlap(Segment),
}

/// Exact intersection of two closed, non-degenerate segments.
pub fn segment_intersection(s1: &Segment, s2: &Segment) -> Result<Intersection, GeometryError> {
    if s1.is_degenerate() || s2.is_degenerate() {
        return Err(GeometryError::DegenerateInput);
    }
    Ok(intersect_unchecked(s1, s2))
}

pub(crate) fn intersect_unchecked(s1: &Segment, s2: &Segment) -> Intersection {
    let (a, b, c, d) = (&s1.a, &s1.b, &s2.a, &s2.b);
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        let lo = std::cmp::max(std::cmp::min(a, b), std::cmp::min(c, d));
        let hi = std::cmp::min(std::cmp::max(a, b), std::cmp::max(c, d));
        return match lo.cmp(hi) {
            Ordering::Greater => Intersection::Empty,
            Ordering::Equal => Intersection::At(lo.clone()),
            Ordering::Less => Intersection::Overlap(Segment::new(lo.clone(), hi.clone())),
        };
    }
    if o1 != Orientation::Collinear && o1 == o2 {
        return Intersection::Empty;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o3 != Orientation::Collinear && o3 == o4 {
        return Intersection::Empty;
    }
    // Shared endpoints and touching endpoints are returned verbatim so that
    // callers can compare them with `==` without re-deriving them.
    if o1 == Orientation::Collinear {
        return Intersection::At(c.clone());
    }
    if o2 == Orientation::Collinear {
        return Intersection::At(d.clone());
    }
    if o3 == Orientation::Collinear {
        return Intersection::At(a.clone());
    }
    if o4 == Orientation::Collinear {
        return Intersection::At(b.clone());
    }
    Intersection::At(line_intersection(a, b, c, d).expect("non-parallel by orientation"))
}

/// Intersection of the infinite lines `ab` and `cd`, or `None` when parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let rx = &b.x - &a.x;
    let ry = &b.y - &a.y;
    let sx = &d.x - &c.x;
    let sy = &d.y - &c.y;
    let denom = &rx * &sy - &ry * &sx;
    if denom.is_zero() {
        return None;
    }
    let t = ((&c.x - &a.x) * &sy - (&c.y - &a.y) * &sx) / denom;
    Some(Point::new(&a.x + &rx * &t, &a.y + &ry * &t))
}

/// True iff `p` lies on the closed segment `s`.
pub fn point_on_segment(p: &Point, s: &Segment) -> bool {
    if s.is_degenerate() {
        return *p == s.a;
    }
    if orient(&s.a, &s.b, p) != Orientation::Collinear {
        return false;
    }
    let (lo, hi) = if s.a <= s.b {
        (&s.a, &s.b)
    } else {
        (&s.b, &s.a)
    };
    lo <= p && p <= hi
}

/// True iff `p` lies strictly inside segment `s` (not at an endpoint).
pub fn point_in_segment_interior(p: &Point, s: &Segment) -> bool {
    *p != s.a && *p != s.b && point_on_segment(p, s)
}

/// Twice the signed area of the closed polyline.
pub fn signed_area2(points: &[Point]) -> Rational {
    let mut acc = Rational::zero();
    for (i, p) in points.iter().enumerate() {
        let q = &points[(i + 1) % points.len()];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Removes repeated points and interior points that do not change direction.
///
/// A point is dropped when it lies between its neighbours on a straight run, so
/// the result has no zero-length segments and no collinear interior vertices.
pub fn normalize_polyline(points: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if out.last() == Some(p) {
            continue;
        }
        while out.len() >= 2 {
            let prev = &out[out.len() - 2];
            let mid = &out[out.len() - 1];
            if orient(prev, mid, p) == Orientation::Collinear
                && dot(mid, prev, p) <= Rational::zero()
            {
                out.pop();
            } else {
                break;
            }
        }
        if out.last() != Some(p) {
            out.push(p.clone());
        }
    }
    out
}
