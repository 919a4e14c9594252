//! Gabriel graph of segments and the sliding-diameter apparatus behind it.
//!
//! A Gabriel edge between `s1` and `s2` is a disc whose diameter `v1 v2`
//! joins the two sites and whose interior meets no other site. The disc center
//! is the midpoint of `v1 v2`, so centers range over the parallelogram of
//! midpoints; for a fixed radius `r` they trace an ellipse in a frame where
//! `P(s1)` is the x-axis. The clearance curves against a blocker `s` are that
//! ellipse cut by the offset line of `s` at distance `r` (closest point interior
//! to `s`) or by the radius-`r` circles about the endpoints of `s`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{dist_point_segment, param_point, Point, Segment, SegmentSet, EPS_GEOM};
use crate::graph::{GeneratorPair, SkeletonGraph};
use crate::poly;
use crate::solver::{search_free_region, Feasibility, FreeRegionCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    Quadrilateral,
    Segment,
    Point,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MidpointRegion {
    pub kind: RegionKind,
    pub vertices: Vec<Point>,
}

fn nearly_parallel(d1: Point, d2: Point) -> bool {
    d1.cross(d2).abs() <= 1e-12 * d1.norm() * d2.norm()
}

/// Midpoint of `q1(t1) q2(t2)`; affine in `(t1, t2)`.
pub fn midpoint_map(s1: &Segment, s2: &Segment, t1: f64, t2: f64) -> Point {
    param_point(s1, t1).midpoint(param_point(s2, t2))
}

/// Parameters whose generator midpoint is `p`, when the sites are not parallel.
pub fn midpoint_preimage(s1: &Segment, s2: &Segment, p: Point) -> Option<(f64, f64)> {
    let (d1, d2) = (s1.dir(), s2.dir());
    let det = d1.cross(d2);
    if nearly_parallel(d1, d2) || det == 0.0 {
        return None;
    }
    // d1 t1 + d2 t2 = 2p - a1 - a2
    let rhs = p * 2.0 - s1.a - s2.a;
    Some((rhs.cross(d2) / det, d1.cross(rhs) / det))
}

/// All midpoints of segments with one end on `s1` and the other on `s2`.
pub fn midpoint_region(s1: &Segment, s2: &Segment) -> MidpointRegion {
    let corners = [
        s1.a.midpoint(s2.a),
        s1.b.midpoint(s2.a),
        s1.b.midpoint(s2.b),
        s1.a.midpoint(s2.b),
    ];
    let deg1 = s1.is_degenerate(EPS_GEOM);
    let deg2 = s2.is_degenerate(EPS_GEOM);
    if deg1 && deg2 {
        return MidpointRegion {
            kind: RegionKind::Point,
            vertices: vec![corners[0]],
        };
    }
    if deg1 || deg2 || nearly_parallel(s1.dir(), s2.dir()) {
        let axis = if deg1 { s2.dir() } else { s1.dir() };
        let key = |p: &Point| p.dot(axis);
        let lo = corners.iter().copied().min_by(|a, b| key(a).total_cmp(&key(b))).unwrap();
        let hi = corners.iter().copied().max_by(|a, b| key(a).total_cmp(&key(b))).unwrap();
        return MidpointRegion {
            kind: RegionKind::Segment,
            vertices: vec![lo, hi],
        };
    }
    MidpointRegion {
        kind: RegionKind::Quadrilateral,
        vertices: corners.to_vec(),
    }
}

/// Rigid frame with `P(s1)` on the x-axis, `s1` on its negative side, and the
/// crossing of `P(s1)` and `P(s2)` at the origin. `P(s2)` is spanned by the
/// unit direction `(x1, y1)` with `y1 >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GabrielFrame {
    origin: Point,
    angle: f64,
    pub x1: f64,
    pub y1: f64,
    pub parallel_case: bool,
}

impl GabrielFrame {
    pub fn new(s1: &Segment, s2: &Segment) -> Self {
        let (d1, d2) = (s1.dir(), s2.dir());
        if nearly_parallel(d1, d2) {
            // Origin at the middle of s1, s1 along the x-axis, s2 above it.
            let origin = s1.midpoint();
            let mut angle = -d1.y.atan2(d1.x);
            if (s2.a - origin).rotate(angle).y < 0.0 {
                angle += PI;
            }
            return Self {
                origin,
                angle,
                x1: 1.0,
                y1: 0.0,
                parallel_case: true,
            };
        }
        let lambda = (s2.a - s1.a).cross(d2) / d1.cross(d2);
        let origin = s1.a + d1 * lambda;
        let mut v = s1.midpoint() - origin;
        if v.norm() <= EPS_GEOM {
            v = d1;
        }
        let angle = PI - v.y.atan2(v.x);
        let mut u = d2.rotate(angle);
        u = u * (1.0 / u.norm());
        if u.y < 0.0 {
            u = -u;
        }
        Self {
            origin,
            angle,
            x1: u.x,
            y1: u.y,
            parallel_case: false,
        }
    }

    pub fn to_local(&self, p: Point) -> Point {
        (p - self.origin).rotate(self.angle)
    }

    pub fn to_world(&self, p: Point) -> Point {
        p.rotate(-self.angle) + self.origin
    }

    /// Cotangent `x1 / y1` of the angle between the two supporting lines.
    pub fn slope_ratio(&self) -> Result<f64> {
        if self.parallel_case || self.y1 <= 0.0 {
            return Err(Error::ParallelFrame);
        }
        Ok(self.x1 / self.y1)
    }
}

fn quad_form(k: f64, u: Point, v: Point) -> f64 {
    u.x * v.x - 2.0 * k * (u.x * v.y + u.y * v.x) + (1.0 + 4.0 * k * k) * u.y * v.y
}

/// `x^2 + y^2 (1 + 4 k^2) - 4 k x y - r^2` at a frame-local point, `k = x1/y1`.
pub fn ellipse_residual(frame: &GabrielFrame, r: f64, p: Point) -> Result<f64> {
    let k = frame.slope_ratio()?;
    Ok(quad_form(k, p, p) - r * r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveTarget {
    /// Closest point inside the blocker; `left` picks the offset line on the
    /// left of the blocker's direction (in frame coordinates).
    Interior { left: bool },
    Endpoint1,
    Endpoint2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveCase {
    /// `A t^2 + B t + C = r^2` along `origin + t dir`.
    Line {
        a: f64,
        b: f64,
        c: f64,
        origin: Point,
        dir: Point,
    },
    /// `x = (N1 y^2 + N2 y + N3) / (N4 y + N5)` and
    /// `M1 y^4 + M2 y^3 + M3 y^2 + M4 y + M5 = 0`.
    Endpoint {
        n: [f64; 5],
        m: [f64; 5],
        center: Point,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GabrielCurves {
    pub r: f64,
    pub target: CurveTarget,
    pub case: CurveCase,
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    // lowest degree first
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Clearance curve coefficients for blocker `s` (world coordinates) at radius `r`.
pub fn curve_case_coeffs(
    frame: &GabrielFrame,
    s: &Segment,
    r: f64,
    target: CurveTarget,
) -> Result<GabrielCurves> {
    let k = frame.slope_ratio()?;
    if r.is_nan() || r <= 0.0 {
        return Err(Error::NonPositiveRadius(r));
    }
    let local = s.map(|p| frame.to_local(p));
    let case = match target {
        CurveTarget::Interior { left } => {
            let d = local.dir();
            let mut nrm = d.perp() * (1.0 / d.norm());
            if !left {
                nrm = -nrm;
            }
            let origin = local.a + nrm * r;
            CurveCase::Line {
                a: quad_form(k, d, d),
                b: 2.0 * quad_form(k, origin, d),
                c: quad_form(k, origin, origin),
                origin,
                dir: d,
            }
        }
        CurveTarget::Endpoint1 | CurveTarget::Endpoint2 => {
            let e = if target == CurveTarget::Endpoint1 { local.a } else { local.b };
            let n = [-4.0 * k * k, -2.0 * e.y, e.x * e.x + e.y * e.y, -4.0 * k, 2.0 * e.x];
            // (P - ex Q)^2 + ((y - ey)^2 - r^2) Q^2, polynomials lowest degree first
            let p = [n[2], n[1], n[0]];
            let q = [n[4], n[3]];
            let pq = [p[0] - e.x * q[0], p[1] - e.x * q[1], p[2]];
            let circ = [e.y * e.y - r * r, -2.0 * e.y, 1.0];
            let lhs = poly_mul(&pq, &pq);
            let rhs = poly_mul(&circ, &poly_mul(&q, &q));
            let mut m = [0.0; 5];
            for deg in 0..5 {
                m[4 - deg] = lhs[deg] + rhs[deg];
            }
            CurveCase::Endpoint { n, m, center: e }
        }
    };
    Ok(GabrielCurves { r, target, case })
}

impl GabrielCurves {
    /// Frame-local points where the ellipse meets the clearance curve.
    pub fn crossings(&self) -> Vec<Point> {
        match self.case {
            CurveCase::Line { a, b, c, origin, dir } => poly::real_roots(&[a, b, c - self.r * self.r])
                .into_iter()
                .map(|t| origin + dir * t)
                .collect(),
            CurveCase::Endpoint { n, m, .. } => poly::real_roots(&m)
                .into_iter()
                .filter_map(|y| {
                    let den = n[3] * y + n[4];
                    let num = (n[0] * y + n[1]) * y + n[2];
                    // A vanishing denominator forces a vanishing numerator: no
                    // unique crossing there.
                    (den.abs() > 1e-12 * (1.0 + num.abs())).then(|| Point::new(num / den, y))
                })
                .collect(),
        }
    }
}

/// A certified Gabriel disc: center, radius and the generator parameters of
/// its diameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GabrielWitness {
    pub center: Point,
    pub radius: f64,
    pub pair: GeneratorPair,
}

struct ClearanceSearch<'a> {
    s1: &'a Segment,
    s2: &'a Segment,
    blockers: Vec<&'a Segment>,
    eps: f64,
}

impl ClearanceSearch<'_> {
    /// `min_s d(p, s) - |v1 v2| / 2` with `p` the generator midpoint.
    fn margin(&self, t1: f64, t2: f64) -> f64 {
        let v1 = param_point(self.s1, t1);
        let v2 = param_point(self.s2, t2);
        let p = v1.midpoint(v2);
        let r = 0.5 * v1.dist(v2);
        self.blockers
            .iter()
            .map(|s| dist_point_segment(p, s))
            .fold(f64::INFINITY, f64::min)
            - r
    }
}

impl Feasibility for ClearanceSearch<'_> {
    fn is_free(&self, t1: f64, t2: f64) -> bool {
        self.margin(t1, t2) > self.eps
    }

    fn cell_blocked(&self, cell: &FreeRegionCell) -> bool {
        let c = cell.center();
        let (h1, h2) = cell.half_widths();
        // Midpoint and radius each move by at most half the generator motion.
        let motion = h1 * self.s1.len() + h2 * self.s2.len();
        self.margin(c.t1, c.t2) + motion < self.eps - 1e-12
    }
}

/// Decides the Gabriel edge between sites `i` and `j` by searching for a
/// generator pair whose diameter disc clears every other site by more than
/// the set tolerance.
pub fn gg_edge_exists(set: &SegmentSet, i: usize, j: usize, epsilon: f64) -> Option<GabrielWitness> {
    assert_ne!(i, j, "generator sites must differ");
    let sites = set.sites();
    let search = ClearanceSearch {
        s1: &sites[i],
        s2: &sites[j],
        blockers: sites
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, s)| s)
            .collect(),
        eps: set.tolerance(),
    };
    let pair = search_free_region(&search, epsilon)?;
    let v1 = param_point(&sites[i], pair.t1);
    let v2 = param_point(&sites[j], pair.t2);
    Some(GabrielWitness {
        center: v1.midpoint(v2),
        radius: 0.5 * v1.dist(v2),
        pair,
    })
}

/// Gabriel graph over all site pairs.
pub fn gg_graph(set: &SegmentSet, epsilon: f64) -> Result<SkeletonGraph> {
    set.validate_disjoint().map_err(Error::InvalidInput)?;
    let n = set.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let found: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| gg_edge_exists(set, i, j, epsilon).map(|w| (i, j, w.pair)))
        .collect();
    let mut g = SkeletonGraph::new(n);
    for (i, j, w) in found.into_iter().flatten() {
        g.insert(i, j, Some(w));
    }
    Ok(g)
}
