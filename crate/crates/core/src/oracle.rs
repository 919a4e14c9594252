//! Brute-force reference graphs.
//!
//! Everything here trades speed for obviousness: generator pairs are scanned on
//! a full grid and point graphs are built from their textbook definitions.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{param_point, Point, SegmentSet, EPS_GEOM};
use crate::graph::{GeneratorPair, SkeletonGraph};
use crate::neighborhoods::{make_neighborhood, BetaSpec, Neighborhood};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Intervals per parameter axis; `grid + 1` samples each.
    pub grid: usize,
    /// Sample count along a segment for region checks.
    pub probes: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid: 256,
            probes: 1000,
        }
    }
}

/// First free generator pair in row-major order over `t = k / grid`.
pub fn oracle_witness(
    set: &SegmentSet,
    i: usize,
    j: usize,
    spec: BetaSpec,
    cfg: &OracleConfig,
) -> Option<GeneratorPair> {
    let sites = set.sites();
    let g = cfg.grid.max(1);
    for a in 0..=g {
        let t1 = a as f64 / g as f64;
        let v1 = param_point(&sites[i], t1);
        for b in 0..=g {
            let t2 = b as f64 / g as f64;
            let v2 = param_point(&sites[j], t2);
            let Ok(n) = Neighborhood::with_tolerance(v1, v2, spec, set.tolerance()) else {
                continue;
            };
            let blocked = sites
                .iter()
                .enumerate()
                .any(|(k, s)| k != i && k != j && n.intersects_segment(s));
            if !blocked {
                return Some(GeneratorPair::new(t1, t2));
            }
        }
    }
    None
}

pub fn oracle_edge(set: &SegmentSet, i: usize, j: usize, spec: BetaSpec, cfg: &OracleConfig) -> bool {
    oracle_witness(set, i, j, spec, cfg).is_some()
}

/// Skeleton over all pairs with no candidate filtering.
pub fn oracle_skeleton(set: &SegmentSet, spec: BetaSpec, cfg: &OracleConfig) -> SkeletonGraph {
    let n = set.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let found: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| oracle_witness(set, i, j, spec, cfg).map(|w| (i, j, w)))
        .collect();
    let mut g = SkeletonGraph::new(n);
    for (i, j, w) in found.into_iter().flatten() {
        g.insert(i, j, Some(w));
    }
    g
}

/// Whether `n` meets the segment `a b`, judged from `probes + 1` evenly
/// spaced points.
pub fn sampled_hit(n: &Neighborhood, a: Point, b: Point, probes: usize) -> bool {
    let m = probes.max(1);
    (0..=m).any(|k| n.contains(a.lerp(b, k as f64 / m as f64)))
}

fn check_distinct(points: &[Point]) -> Result<()> {
    for i in 0..points.len() {
        if !points[i].is_finite() {
            return Err(Error::NonFinite(i));
        }
        for j in i + 1..points.len() {
            if points[i].dist(points[j]) <= EPS_GEOM {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    Ok(())
}

/// Beta-skeleton of a point set: `p_i p_j` is an edge iff no other point lies
/// in the neighborhood generated by the pair.
pub fn point_skeleton_oracle(points: &[Point], spec: BetaSpec) -> Result<SkeletonGraph> {
    check_distinct(points)?;
    let n = points.len();
    let mut g = SkeletonGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let nb = make_neighborhood(points[i], points[j], spec)?;
            let empty = (0..n).all(|k| k == i || k == j || !nb.contains(points[k]));
            if empty {
                g.insert(i, j, None);
            }
        }
    }
    Ok(g)
}

fn circumcircle(a: Point, b: Point, c: Point) -> Option<(Point, f64)> {
    let d = 2.0 * (b - a).cross(c - a);
    if d.abs() <= 1e-12 * (b - a).norm2().max((c - a).norm2()) {
        return None;
    }
    let (ab, ac) = (b - a, c - a);
    let ux = (ac.y * ab.norm2() - ab.y * ac.norm2()) / d;
    let uy = (ab.x * ac.norm2() - ac.x * ab.norm2()) / d;
    let center = a + Point::new(ux, uy);
    Some((center, center.dist(a)))
}

/// Delaunay graph of points in general position from the empty-circumcircle
/// rule over all triples.
pub fn point_delaunay_oracle(points: &[Point]) -> Result<SkeletonGraph> {
    check_distinct(points)?;
    let n = points.len();
    let mut g = SkeletonGraph::new(n);
    if n == 2 {
        g.insert(0, 1, None);
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let Some((c, r)) = circumcircle(points[i], points[j], points[k]) else {
                    continue;
                };
                let empty = (0..n)
                    .all(|m| m == i || m == j || m == k || points[m].dist(c) > r - EPS_GEOM);
                if empty {
                    g.insert(i, j, None);
                    g.insert(j, k, None);
                    g.insert(i, k, None);
                }
            }
        }
    }
    Ok(g)
}
