//! Beta-neighborhoods of a generator pair, in the lune-based and circle-based
//! variants, with point membership and exact segment clipping.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{dist_point_segment, param_point, Disc, Point, Segment, EPS_GEOM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Lune,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Closure {
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaSpec {
    beta: f64,
    variant: Variant,
    closure: Closure,
}

impl BetaSpec {
    /// Uses the conventional closure: closed for `beta <= 1`, open above.
    pub fn new(beta: f64, variant: Variant) -> Result<Self> {
        let closure = if beta <= 1.0 { Closure::Closed } else { Closure::Open };
        Self::with_closure(beta, variant, closure)
    }

    pub fn with_closure(beta: f64, variant: Variant, closure: Closure) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::BetaOutOfRange {
                beta,
                what: "a neighborhood (must be finite and positive)",
            });
        }
        Ok(Self {
            beta,
            variant,
            closure,
        })
    }

    /// The closed 1-skeleton.
    pub fn gabriel() -> Self {
        Self {
            beta: 1.0,
            variant: Variant::Lune,
            closure: Closure::Closed,
        }
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn variant(&self) -> Variant {
        self.variant
    }

    #[inline]
    pub fn closure(&self) -> Closure {
        self.closure
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Single,
    Intersection,
    Union,
}

/// Per-disc affine description: center = `w1 v1 + w2 v2 + offset perp(v2 - v1)`,
/// radius = `rho |v2 - v1|`.
#[derive(Debug, Clone, Copy)]
struct DiscForm {
    w1: f64,
    w2: f64,
    offset: f64,
    rho: f64,
}

fn disc_forms(spec: &BetaSpec) -> (Combine, [DiscForm; 2]) {
    let beta = spec.beta;
    let chord = |rho: f64, k: f64| {
        [
            DiscForm { w1: 0.5, w2: 0.5, offset: k, rho },
            DiscForm { w1: 0.5, w2: 0.5, offset: -k, rho },
        ]
    };
    if beta == 1.0 {
        let f = DiscForm { w1: 0.5, w2: 0.5, offset: 0.0, rho: 0.5 };
        return (Combine::Single, [f, f]);
    }
    if beta < 1.0 {
        // Both variants coincide below 1: two discs of radius d/(2 beta) on the chord.
        let k = 0.5 * (1.0 / (beta * beta) - 1.0).sqrt();
        return (Combine::Intersection, chord(0.5 / beta, k));
    }
    match spec.variant {
        Variant::Lune => {
            let h = 0.5 * beta;
            // First disc has v1 on its boundary, second has v2.
            (
                Combine::Intersection,
                [
                    DiscForm { w1: 1.0 - h, w2: h, offset: 0.0, rho: h },
                    DiscForm { w1: h, w2: 1.0 - h, offset: 0.0, rho: h },
                ],
            )
        }
        Variant::Circle => {
            let k = 0.5 * (beta * beta - 1.0).sqrt();
            (Combine::Union, chord(0.5 * beta, k))
        }
    }
}

/// Constant angle under which boundary points of the neighborhood see the
/// generator chord.
pub fn delta_of_beta(spec: &BetaSpec) -> Result<f64> {
    let beta = spec.beta;
    if beta == 1.0 {
        return Ok(FRAC_PI_2);
    }
    if beta < 1.0 {
        return Ok(PI - beta.asin());
    }
    match spec.variant {
        Variant::Circle => Ok((1.0 / beta).asin()),
        Variant::Lune => Err(Error::BetaOutOfRange {
            beta,
            what: "the inscribed angle of a lune (needs beta <= 1)",
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    combine: Combine,
    discs: [Disc; 2],
    generators: (Point, Point),
    spec: BetaSpec,
    eps: f64,
}

pub fn make_neighborhood(v1: Point, v2: Point, spec: BetaSpec) -> Result<Neighborhood> {
    Neighborhood::with_tolerance(v1, v2, spec, EPS_GEOM)
}

impl Neighborhood {
    pub fn with_tolerance(v1: Point, v2: Point, spec: BetaSpec, eps: f64) -> Result<Self> {
        let chord = v2 - v1;
        let d = chord.norm();
        if d <= eps {
            return Err(Error::CoincidentPoints);
        }
        let (combine, forms) = disc_forms(&spec);
        let n = chord.perp();
        let disc = |f: &DiscForm| {
            let c = v1 * f.w1 + v2 * f.w2 + n * f.offset;
            Disc::new(c, f.rho * d)
        };
        Ok(Self {
            combine,
            discs: [disc(&forms[0]), disc(&forms[1])],
            generators: (v1, v2),
            spec,
            eps,
        })
    }

    pub fn combine(&self) -> Combine {
        self.combine
    }

    /// One disc for `beta = 1`, two otherwise.
    pub fn discs(&self) -> &[Disc] {
        match self.combine {
            Combine::Single => &self.discs[..1],
            _ => &self.discs,
        }
    }

    pub fn generators(&self) -> (Point, Point) {
        self.generators
    }

    pub fn spec(&self) -> &BetaSpec {
        &self.spec
    }

    fn closed(&self) -> bool {
        self.spec.closure == Closure::Closed
    }

    fn disc_contains(&self, disc: &Disc, p: Point) -> bool {
        let d = p.dist(disc.center);
        if self.closed() {
            d <= disc.radius + self.eps
        } else {
            d < disc.radius - self.eps
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        let mut it = self.discs().iter().map(|d| self.disc_contains(d, p));
        match self.combine {
            Combine::Union => it.any(|x| x),
            _ => it.all(|x| x),
        }
    }

    /// Signed penetration of `p`: positive inside, negative outside.
    pub fn depth(&self, p: Point) -> f64 {
        let it = self.discs().iter().map(|d| d.radius - p.dist(d.center));
        match self.combine {
            Combine::Union => it.fold(f64::NEG_INFINITY, f64::max),
            _ => it.fold(f64::INFINITY, f64::min),
        }
    }

    /// Raw parameter interval of the supporting line of `s` inside `disc`
    /// (before clipping to `[0, 1]`).
    fn clip(&self, disc: &Disc, s: &Segment) -> Option<(f64, f64)> {
        let closed = self.closed();
        let r = if closed {
            disc.radius + self.eps
        } else {
            disc.radius - self.eps
        };
        if r <= 0.0 {
            return None;
        }
        let d = s.dir();
        let f = s.a - disc.center;
        let a = d.norm2();
        let c = f.norm2() - r * r;
        if a == 0.0 {
            let inside = if closed { c <= 0.0 } else { c < 0.0 };
            return inside.then_some((f64::NEG_INFINITY, f64::INFINITY));
        }
        let b = f.dot(d);
        let disc2 = b * b - a * c;
        if disc2 < 0.0 || (!closed && disc2 <= 0.0) {
            return None;
        }
        let sq = disc2.sqrt();
        let q = -(b + sq.copysign(b));
        let (t0, t1) = if q == 0.0 {
            (0.0, 0.0)
        } else {
            let (x, y) = (q / a, c / q);
            (x.min(y), x.max(y))
        };
        Some((t0, t1))
    }

    fn interval_hits_unit(&self, lo: f64, hi: f64) -> bool {
        if self.closed() {
            lo.max(0.0) <= hi.min(1.0)
        } else {
            lo < hi && lo < 1.0 && hi > 0.0
        }
    }

    /// Whether the closed segment meets the neighborhood, by intersecting or
    /// uniting the per-disc parameter intervals.
    pub fn intersects_segment(&self, s: &Segment) -> bool {
        match self.combine {
            Combine::Single => self.disc_intersects_segment(0, s),
            Combine::Union => {
                self.disc_intersects_segment(0, s) || self.disc_intersects_segment(1, s)
            }
            Combine::Intersection => {
                let (Some(a), Some(b)) = (self.clip(&self.discs[0], s), self.clip(&self.discs[1], s))
                else {
                    return false;
                };
                self.interval_hits_unit(a.0.max(b.0), a.1.min(b.1))
            }
        }
    }

    /// Whether `s` meets the single bounding disc `k` (0 or 1; `beta = 1` has
    /// only one disc and both indices address it).
    pub fn disc_intersects_segment(&self, k: usize, s: &Segment) -> bool {
        let disc = &self.discs()[k.min(self.discs().len() - 1)];
        self.clip(disc, s)
            .is_some_and(|(lo, hi)| self.interval_hits_unit(lo, hi))
    }

    /// Largest depth reached by a point of `s`, with the parameter reaching it.
    pub fn max_depth_on_segment(&self, s: &Segment) -> (f64, f64) {
        match self.combine {
            Combine::Single | Combine::Union => self
                .discs()
                .iter()
                .map(|d| {
                    let t = s.closest_param(d.center);
                    (d.radius - dist_point_segment(d.center, s), t)
                })
                .fold((f64::NEG_INFINITY, 0.0), |acc, x| if x.0 > acc.0 { x } else { acc }),
            Combine::Intersection => {
                // Depth along the segment is concave (minimum of concave functions).
                let f = |t: f64| self.depth(param_point(s, t));
                let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
                for _ in 0..80 {
                    let m1 = lo + (hi - lo) / 3.0;
                    let m2 = hi - (hi - lo) / 3.0;
                    if f(m1) < f(m2) {
                        lo = m1;
                    } else {
                        hi = m2;
                    }
                }
                let t = 0.5 * (lo + hi);
                [(f(t), t), (f(0.0), 0.0), (f(1.0), 1.0)]
                    .into_iter()
                    .fold((f64::NEG_INFINITY, 0.0), |acc, x| if x.0 > acc.0 { x } else { acc })
            }
        }
    }
}

pub fn nbhd_contains(n: &Neighborhood, p: Point) -> bool {
    n.contains(p)
}

pub fn segment_intersects_nbhd(n: &Neighborhood, s: &Segment) -> bool {
    n.intersects_segment(s)
}

/// Bounds on how fast the depth of a fixed point can change when the
/// generators move: `|delta depth| <= l1 |dv1| + l2 |dv2|`.
pub fn depth_lipschitz(spec: &BetaSpec) -> (f64, f64) {
    let (combine, forms) = disc_forms(spec);
    let used = if combine == Combine::Single { &forms[..1] } else { &forms[..] };
    used.iter().fold((0.0_f64, 0.0_f64), |(l1, l2), f| {
        let k = f.offset.abs();
        (
            l1.max(f.w1.abs() + k + f.rho),
            l2.max(f.w2.abs() + k + f.rho),
        )
    })
}
