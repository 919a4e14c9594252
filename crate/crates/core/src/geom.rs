//! Floating-point plane geometry: points, segments, discs and the site set.
//!
//! Coordinates are plain `f64`. A single absolute tolerance (`EPS_GEOM` by
//! default) decides coincidence, boundary membership and collinearity, so
//! inputs are expected to live at roughly unit scale.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default absolute geometric tolerance at unit scale.
pub const EPS_GEOM: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    #[inline]
    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    /// Rotate counter-clockwise by `angle` radians about the origin.
    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed line segment with a distinguished parametrization
/// `a + t (b - a)`; values of `t` outside `[0, 1]` address the supporting line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    #[inline]
    pub const fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn from_coords(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        Self::new(Point::new(x1, y1), Point::new(x2, y2))
    }

    /// A point site: both endpoints equal.
    pub fn point(p: Point) -> Self {
        Self::new(p, p)
    }

    #[inline]
    pub fn dir(&self) -> Point {
        self.b - self.a
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.dir().norm()
    }

    #[inline]
    pub fn at(&self, t: f64) -> Point {
        param_point(self, t)
    }

    pub fn midpoint(&self) -> Point {
        self.a.midpoint(self.b)
    }

    pub fn is_degenerate(&self, eps: f64) -> bool {
        self.len() <= eps
    }

    /// Parameter of the point of the closed segment closest to `p`.
    pub fn closest_param(&self, p: Point) -> f64 {
        let d = self.dir();
        let l2 = d.norm2();
        if l2 == 0.0 {
            return 0.0;
        }
        ((p - self.a).dot(d) / l2).clamp(0.0, 1.0)
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Segment {
        Segment::new(f(self.a), f(self.b))
    }
}

/// `a + t (b - a)`, exact at `t = 0` and `t = 1`.
#[inline]
pub fn param_point(s: &Segment, t: f64) -> Point {
    if t == 1.0 {
        return s.b;
    }
    s.a + (s.b - s.a) * t
}

/// Unsigned angle at `v` between rays towards `a` and `b`, in `[0, pi]`.
pub fn angle_at(v: Point, a: Point, b: Point) -> Result<f64> {
    let u = a - v;
    let w = b - v;
    if u.norm() <= EPS_GEOM || w.norm() <= EPS_GEOM {
        return Err(Error::CoincidentPoints);
    }
    Ok(u.cross(w).abs().atan2(u.dot(w)))
}

/// Image of `s` under the homothety with the given center and ratio.
pub fn homothety_segment(center: Point, ratio: f64, s: &Segment) -> Result<Segment> {
    if !ratio.is_finite() || ratio <= 0.0 {
        return Err(Error::NonPositiveRatio(ratio));
    }
    Ok(s.map(|e| center + (e - center) * ratio))
}

pub fn dist_point_segment(p: Point, s: &Segment) -> f64 {
    let t = s.closest_param(p);
    p.dist(param_point(s, t))
}

/// Distance from `p` to the supporting line of a non-degenerate segment.
pub fn dist_point_line(p: Point, s: &Segment) -> f64 {
    let d = s.dir();
    (p - s.a).cross(d).abs() / d.norm()
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

pub fn dist_segment_segment(s: &Segment, r: &Segment) -> f64 {
    let d1 = orient(s.a, s.b, r.a);
    let d2 = orient(s.a, s.b, r.b);
    let d3 = orient(r.a, r.b, s.a);
    let d4 = orient(r.a, r.b, s.b);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return 0.0;
    }
    dist_point_segment(r.a, s)
        .min(dist_point_segment(r.b, s))
        .min(dist_point_segment(s.a, r))
        .min(dist_point_segment(s.b, r))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    pub center: Point,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Self { center, radius }
    }
}

/// Which endpoint of a site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    A,
    B,
}

/// First general-position violation found in a site set.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Degenerate { site: usize },
    NotDisjoint { i: usize, j: usize },
    Collinear { endpoints: [(usize, End); 3] },
}

impl Violation {
    /// Collinearity is reported but does not prevent graph construction.
    pub fn is_fatal(&self) -> bool {
        !matches!(self, Violation::Collinear { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degenerate { site } => write!(f, "site {site} is degenerate"),
            Violation::NotDisjoint { i, j } => write!(f, "sites {i} and {j} intersect"),
            Violation::Collinear { endpoints } => {
                let [p, q, r] = endpoints;
                write!(
                    f,
                    "endpoints {:?} of site {}, {:?} of site {} and {:?} of site {} are collinear",
                    p.1, p.0, q.1, q.0, r.1, r.0
                )
            }
        }
    }
}

/// The input sites together with the tolerance used by every predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSet {
    sites: Vec<Segment>,
    tolerance: f64,
    point_sites: bool,
}

impl SegmentSet {
    /// Builds a set of proper (non-degenerate) segments.
    pub fn new(sites: Vec<Segment>) -> Result<Self> {
        Self::build(sites, EPS_GEOM, false)
    }

    /// Allows sites whose endpoints coincide within tolerance (point sites).
    pub fn with_point_sites(sites: Vec<Segment>) -> Result<Self> {
        Self::build(sites, EPS_GEOM, true)
    }

    pub fn with_tolerance(sites: Vec<Segment>, tolerance: f64, point_sites: bool) -> Result<Self> {
        Self::build(sites, tolerance, point_sites)
    }

    fn build(sites: Vec<Segment>, tolerance: f64, point_sites: bool) -> Result<Self> {
        for (i, s) in sites.iter().enumerate() {
            if !s.a.is_finite() || !s.b.is_finite() {
                return Err(Error::NonFinite(i));
            }
            if !point_sites && s.is_degenerate(tolerance) {
                return Err(Error::DegenerateSegment(i));
            }
        }
        Ok(Self {
            sites,
            tolerance,
            point_sites,
        })
    }

    #[inline]
    pub fn sites(&self) -> &[Segment] {
        &self.sites
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    #[inline]
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn point_sites(&self) -> bool {
        self.point_sites
    }

    pub fn get(&self, i: usize) -> Result<&Segment> {
        self.sites.get(i).ok_or(Error::IndexOutOfRange(i))
    }

    /// Same set with every endpoint mapped through `f`.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        Self::build(
            self.sites.iter().map(|s| s.map(&f)).collect(),
            self.tolerance,
            self.point_sites,
        )
    }

    /// Disjointness (and non-degeneracy unless point sites are enabled).
    pub fn validate_disjoint(&self) -> Result<(), Violation> {
        let eps = self.tolerance;
        for (i, s) in self.sites.iter().enumerate() {
            if !self.point_sites && s.is_degenerate(eps) {
                return Err(Violation::Degenerate { site: i });
            }
        }
        for i in 0..self.sites.len() {
            for j in i + 1..self.sites.len() {
                if dist_segment_segment(&self.sites[i], &self.sites[j]) <= eps {
                    return Err(Violation::NotDisjoint { i, j });
                }
            }
        }
        Ok(())
    }

    fn endpoints(&self) -> Vec<(usize, End, Point)> {
        let mut out = Vec::with_capacity(2 * self.sites.len());
        for (i, s) in self.sites.iter().enumerate() {
            out.push((i, End::A, s.a));
            if !s.is_degenerate(self.tolerance) {
                out.push((i, End::B, s.b));
            }
        }
        out
    }
}

/// Checks pairwise disjointness, then that no three endpoints are collinear
/// within the set tolerance. Returns the first violation found.
pub fn validate_general_position(set: &SegmentSet) -> Result<(), Violation> {
    set.validate_disjoint()?;
    let eps = set.tolerance;
    let pts = set.endpoints();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let (p, q, r) = (pts[i].2, pts[j].2, pts[k].2);
                let longest = p.dist(q).max(q.dist(r)).max(r.dist(p));
                if longest == 0.0 || orient(p, q, r).abs() / longest <= eps {
                    return Err(Violation::Collinear {
                        endpoints: [
                            (pts[i].0, pts[i].1),
                            (pts[j].0, pts[j].1),
                            (pts[k].0, pts[k].1),
                        ],
                    });
                }
            }
        }
    }
    Ok(())
}
