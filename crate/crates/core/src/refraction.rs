//! Ray refraction between three supporting lines.
//!
//! A ray leaves `q1(t1)` on `P(s1)`, hits `P(s)` at `q(t)` and turns there so
//! that the angle at `q` between the way back to `q1` and the outgoing ray is
//! `delta`. Where the outgoing half-line crosses `P(s2)` gives `t2(t)`, a
//! quadratic-over-linear function of `t` for fixed `t1`.
//!
//! With `w(t) = q(t) - q1(t1) = [A1 t + B1 t1 + C1, A2 t + B2 t1 + C2]` and the
//! outgoing direction `u = R w` (rotation by the turning angle `pi - delta`),
//! Cramer's rule on `q2(t2) = q(t) + z u` yields
//!
//! ```text
//! t2(t) = (M t^2 + p1(t1) t + p2(t1)) / (N t + p3(t1))
//! ```

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{homothety_segment, param_point, Point, Segment, SegmentSet, EPS_GEOM};
use crate::neighborhoods::{BetaSpec, Neighborhood};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Outgoing ray turns clockwise from the incoming direction.
    Cw,
    Ccw,
}

/// Coefficients of one refraction configuration. Polynomials in `t1` are
/// stored lowest degree first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefractionCoeffs {
    pub a1: f64,
    pub b1: f64,
    pub c1: f64,
    pub a2: f64,
    pub b2: f64,
    pub c2: f64,
    /// x-equation of the outgoing ray: `z = (j t2 + k t + l) / (d t + e t1 + f)`.
    pub j: f64,
    pub k: f64,
    pub l: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    /// y-component of the rotated ray: `g t + h t1 + i`.
    pub g: f64,
    pub h: f64,
    pub i: f64,
    pub m: f64,
    pub n: f64,
    pub p1: [f64; 3],
    pub p2: [f64; 3],
    pub p3: [f64; 3],
    /// Numerator of `z` (Cramer form), linear in `t`.
    pub z_num: [f64; 2],
    pub delta: f64,
    pub orientation: Orientation,
}

#[inline]
fn poly(c: &[f64; 3], x: f64) -> f64 {
    (c[2] * x + c[1]) * x + c[0]
}

pub fn refraction_coeffs(
    s1: &Segment,
    s: &Segment,
    s2: &Segment,
    delta: f64,
    orientation: Orientation,
) -> Result<RefractionCoeffs> {
    if !(delta > 0.0 && delta < PI) {
        return Err(Error::DeltaOutOfRange(delta));
    }
    for seg in [s1, s, s2] {
        if seg.is_degenerate(EPS_GEOM) {
            return Err(Error::CoincidentPoints);
        }
    }
    let d1 = s1.dir();
    let ds = s.dir();
    let d2 = s2.dir();

    let (a1, b1, c1) = (ds.x, -d1.x, s.a.x - s1.a.x);
    let (a2, b2, c2) = (ds.y, -d1.y, s.a.y - s1.a.y);

    let turn = PI - delta;
    let (sn, cs) = turn.sin_cos();
    let sg = match orientation {
        Orientation::Cw => 1.0,
        Orientation::Ccw => -1.0,
    };
    // u = (cs wx + sg sn wy, -sg sn wx + cs wy)
    let rx = |x: f64, y: f64| cs * x + sg * sn * y;
    let ry = |x: f64, y: f64| -sg * sn * x + cs * y;
    let (d, e, f) = (rx(a1, a2), rx(b1, b2), rx(c1, c2));
    let (g, h, i) = (ry(a1, a2), ry(b1, b2), ry(c1, c2));

    // e(t) = q(t) - s2.a = ds t + (s.a - s2.a)
    let ex0 = s.a.x - s2.a.x;
    let ey0 = s.a.y - s2.a.y;

    // numerator: u_x e_y - u_y e_x ; denominator: u_x d2y - u_y d2x
    let m = d * ds.y - g * ds.x;
    let p1 = [d * ey0 + f * ds.y - g * ex0 - i * ds.x, e * ds.y - h * ds.x, 0.0];
    let p2 = [f * ey0 - i * ex0, e * ey0 - h * ex0, 0.0];
    let n = d * d2.y - g * d2.x;
    let p3 = [f * d2.y - i * d2.x, e * d2.y - h * d2.x, 0.0];
    let z_num = [d2.x * ey0 - d2.y * ex0, d2.x * ds.y - d2.y * ds.x];

    Ok(RefractionCoeffs {
        a1,
        b1,
        c1,
        a2,
        b2,
        c2,
        j: d2.x,
        k: -ds.x,
        l: s2.a.x - s.a.x,
        d,
        e,
        f,
        g,
        h,
        i,
        m,
        n,
        p1,
        p2,
        p3,
        z_num,
        delta,
        orientation,
    })
}

impl RefractionCoeffs {
    /// Denominator `N t + p3(t1)`; zero when the outgoing ray is parallel to `P(s2)`.
    #[inline]
    pub fn denominator(&self, t1: f64, t: f64) -> f64 {
        self.n * t + poly(&self.p3, t1)
    }

    #[inline]
    pub fn numerator(&self, t1: f64, t: f64) -> f64 {
        (self.m * t + poly(&self.p1, t1)) * t + poly(&self.p2, t1)
    }

    /// Line value of the hyperbola, ignoring the half-line constraint.
    pub fn line_t2(&self, t1: f64, t: f64) -> Option<f64> {
        let den = self.denominator(t1, t);
        (den.abs() >= EPS_GEOM).then(|| self.numerator(t1, t) / den)
    }

    /// Ray length parameter at which the outgoing ray meets `P(s2)`.
    pub fn z(&self, t1: f64, t: f64) -> Option<f64> {
        let den = self.denominator(t1, t);
        (den.abs() >= EPS_GEOM).then(|| (self.z_num[1] * t + self.z_num[0]) / den)
    }
}

/// `t2(t)` for fixed `t1`, or `None` when the outgoing half-line misses `P(s2)`.
pub fn t2_of(c: &RefractionCoeffs, t1: f64, t: f64) -> Option<f64> {
    let z = c.z(t1, t)?;
    if z < 0.0 {
        return None;
    }
    c.line_t2(t1, t)
}

/// Stationary points of `t2(t)`: real roots of
/// `M N t^2 + 2 M p3 t + (p1 p3 - N p2)`, poles excluded.
pub fn extreme_t(c: &RefractionCoeffs, t1: f64) -> Vec<f64> {
    let p1 = poly(&c.p1, t1);
    let p2 = poly(&c.p2, t1);
    let p3 = poly(&c.p3, t1);
    let qa = c.m * c.n;
    let qb = 2.0 * c.m * p3;
    let qc = p1 * p3 - c.n * p2;
    let scale = qa.abs().max(qb.abs()).max(qc.abs());
    if c.m == 0.0 || scale == 0.0 {
        return Vec::new();
    }
    let mut roots = Vec::with_capacity(2);
    if qa.abs() <= 1e-14 * scale {
        if qb != 0.0 {
            roots.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return Vec::new();
        }
        let sq = disc.sqrt();
        let q = -0.5 * (qb + sq.copysign(qb));
        if q != 0.0 {
            roots.push(q / qa);
            roots.push(qc / q);
        } else {
            roots.push(0.0);
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup();
    }
    roots.retain(|&t| c.denominator(t1, t).abs() >= EPS_GEOM);
    roots
}

/// Image of `s` under the homothety centered at `q1` with ratio `1/beta`.
pub fn aux_segment(s: &Segment, q1: Point, beta: f64) -> Result<Segment> {
    if beta.is_nan() || beta < 1.0 {
        return Err(Error::BetaOutOfRange {
            beta,
            what: "the auxiliary segment (needs beta >= 1)",
        });
    }
    homothety_segment(q1, 1.0 / beta, s)
}

/// Which part of the neighborhood the blocker has to meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Full,
    /// The bounding disc whose circle passes through the first generator.
    Disc1,
    Disc2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockedRegionQuery {
    pub s1: usize,
    pub s: usize,
    pub s2: usize,
    pub spec: BetaSpec,
    pub side: Side,
}

/// Whether site `s` meets the neighborhood generated by `q1(t1)` and `q2(t2)`.
pub fn blocked(set: &SegmentSet, q: &BlockedRegionQuery, t1: f64, t2: f64) -> bool {
    let sites = set.sites();
    let v1 = param_point(&sites[q.s1], t1);
    let v2 = param_point(&sites[q.s2], t2);
    let blocker = &sites[q.s];
    let Ok(n) = Neighborhood::with_tolerance(v1, v2, q.spec, set.tolerance()) else {
        // Coincident generators: the neighborhood shrinks to the point itself.
        return crate::geom::dist_point_segment(v1, blocker) <= set.tolerance();
    };
    match q.side {
        Side::Full => n.intersects_segment(blocker),
        Side::Disc1 => n.disc_intersects_segment(0, blocker),
        Side::Disc2 => n.disc_intersects_segment(1, blocker),
    }
}
