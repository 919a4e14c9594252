//! Segment Delaunay graph as the dual of a rasterized segment Voronoi diagram.
//!
//! Adjacent grid samples with different nearest sites propose an edge. The
//! edge is accepted only when a point of the bisector between the two samples
//! is strictly closer to both sites than to every other site, i.e. a disc
//! touching both sites with an empty interior exists. Cells where three or
//! more regions meet are resampled at finer pitch to catch short Voronoi edges.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{dist_point_segment, Point, SegmentSet};
use crate::graph::{GeneratorPair, SkeletonGraph};

pub const DEFAULT_DT_RESOLUTION: usize = 512;
pub const MIN_RESOLUTION: usize = 16;

const REFINE_FACTOR: usize = 8;
const REFINE_LEVELS: u32 = 4;
const FAR_SAMPLES: usize = 4096;
const FAR_RADII: [f64; 5] = [2.0, 16.0, 128.0, 1024.0, 8192.0];
const OUTER_ZOOMS: [f64; 4] = [4.0, 16.0, 64.0, 256.0];
const OUTER_RESOLUTION: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct GridVoronoi {
    pub min: Point,
    pub max: Point,
    pub resolution: usize,
    labels: Vec<u32>,
}

impl GridVoronoi {
    pub fn side(&self) -> usize {
        self.resolution + 1
    }

    pub fn sample_count(&self) -> usize {
        self.labels.len()
    }

    pub fn sample_point(&self, ix: usize, iy: usize) -> Point {
        lattice_point(self.min, self.max, self.resolution, ix, iy)
    }

    pub fn label(&self, ix: usize, iy: usize) -> usize {
        self.labels[iy * self.side() + ix] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }
}

fn lattice_point(min: Point, max: Point, res: usize, ix: usize, iy: usize) -> Point {
    let fx = ix as f64 / res as f64;
    let fy = iy as f64 / res as f64;
    Point::new(min.x + (max.x - min.x) * fx, min.y + (max.y - min.y) * fy)
}

/// Index of the nearest site, ties to the lowest index.
pub fn nearest_site(set: &SegmentSet, p: Point) -> usize {
    let mut best = (f64::INFINITY, 0);
    for (k, s) in set.sites().iter().enumerate() {
        let d = dist_point_segment(p, s);
        if d < best.0 {
            best = (d, k);
        }
    }
    best.1
}

fn label_lattice(set: &SegmentSet, min: Point, max: Point, res: usize) -> Vec<u32> {
    let side = res + 1;
    let mut labels = vec![0u32; side * side];
    labels
        .par_chunks_mut(side)
        .enumerate()
        .for_each(|(iy, row)| {
            for (ix, l) in row.iter_mut().enumerate() {
                *l = nearest_site(set, lattice_point(min, max, res, ix, iy)) as u32;
            }
        });
    labels
}

/// Labels `(resolution + 1)^2` samples over the bounding box of all
/// endpoints, padded by half its diagonal.
pub fn grid_voronoi(set: &SegmentSet, resolution: usize) -> Result<GridVoronoi> {
    if set.is_empty() {
        return Err(Error::EmptySiteSet);
    }
    if resolution < MIN_RESOLUTION {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let mut min = Point::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for s in set.sites() {
        for p in [s.a, s.b] {
            min = Point::new(min.x.min(p.x), min.y.min(p.y));
            max = Point::new(max.x.max(p.x), max.y.max(p.y));
        }
    }
    let diag = min.dist(max);
    let pad = if diag > 0.0 { 0.5 * diag } else { 1.0 };
    let min = min - Point::new(pad, pad);
    let max = max + Point::new(pad, pad);
    let labels = label_lattice(set, min, max, resolution);
    Ok(GridVoronoi {
        min,
        max,
        resolution,
        labels,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelaunayReport {
    /// Certified edges; the witness holds the closest points of the empty
    /// disc on both sites.
    pub graph: SkeletonGraph,
    /// Sites that own no grid sample: the resolution is too coarse to
    /// separate them.
    pub unseen_sites: Vec<usize>,
    /// Pairs seen adjacent on the grid for which no empty disc was found.
    pub uncertified_pairs: Vec<(usize, usize)>,
}

impl DelaunayReport {
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for &k in &self.unseen_sites {
            out.push(format!(
                "site {k} owns no Voronoi grid sample; increase the resolution"
            ));
        }
        for &(i, j) in &self.uncertified_pairs {
            out.push(format!(
                "sites {i} and {j} look adjacent on the grid but no empty tangent disc was certified"
            ));
        }
        out
    }
}

struct Certifier<'a> {
    set: &'a SegmentSet,
    found: BTreeMap<(usize, usize), (Point, f64)>,
    seen: BTreeSet<(usize, usize)>,
}

impl Certifier<'_> {
    /// Bisects between `pa` (owned by `i`) and `pb` (owned by `j`) for the
    /// bisector point and tests whether its disc is empty.
    fn try_pair(&mut self, i: usize, pa: Point, j: usize, pb: Point) {
        let key = (i.min(j), i.max(j));
        self.seen.insert(key);
        if self.found.contains_key(&key) {
            return;
        }
        let sites = self.set.sites();
        let f = |p: Point| dist_point_segment(p, &sites[i]) - dist_point_segment(p, &sites[j]);
        let (mut lo, mut hi) = (pa, pb);
        for _ in 0..64 {
            let mid = lo.midpoint(hi);
            if f(mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let p = lo.midpoint(hi);
        let r = dist_point_segment(p, &sites[i]).max(dist_point_segment(p, &sites[j]));
        let eps = self.set.tolerance();
        let empty = sites
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .all(|(_, s)| dist_point_segment(p, s) > r + eps);
        if empty {
            self.found.insert(key, (p, r));
        }
    }

    /// Scans a lattice for adjacent label changes and recursively refines
    /// cells where three or more regions meet.
    fn scan(&mut self, min: Point, max: Point, res: usize, labels: &[u32], level: u32) {
        let side = res + 1;
        let at = |ix: usize, iy: usize| labels[iy * side + ix] as usize;
        let pt = |ix: usize, iy: usize| lattice_point(min, max, res, ix, iy);
        for iy in 0..side {
            for ix in 0..side {
                let a = at(ix, iy);
                if ix + 1 < side && at(ix + 1, iy) != a {
                    self.try_pair(a, pt(ix, iy), at(ix + 1, iy), pt(ix + 1, iy));
                }
                if iy + 1 < side && at(ix, iy + 1) != a {
                    self.try_pair(a, pt(ix, iy), at(ix, iy + 1), pt(ix, iy + 1));
                }
            }
        }
        if level >= REFINE_LEVELS {
            return;
        }
        let mut junctions = Vec::new();
        for iy in 0..res {
            for ix in 0..res {
                let mut ls = [at(ix, iy), at(ix + 1, iy), at(ix, iy + 1), at(ix + 1, iy + 1)];
                ls.sort_unstable();
                let mut uniq = ls.to_vec();
                uniq.dedup();
                if uniq.len() < 3 {
                    continue;
                }
                let open = uniq.iter().enumerate().any(|(a, &x)| {
                    uniq[a + 1..]
                        .iter()
                        .any(|&y| !self.found.contains_key(&(x, y)))
                });
                if open {
                    junctions.push((ix, iy));
                }
            }
        }
        let dx = (max.x - min.x) / res as f64;
        let dy = (max.y - min.y) / res as f64;
        for (ix, iy) in junctions {
            // The junction cell plus one cell of margin on every side.
            let lo = Point::new(min.x + (ix as f64 - 1.0) * dx, min.y + (iy as f64 - 1.0) * dy);
            let hi = Point::new(min.x + (ix as f64 + 2.0) * dx, min.y + (iy as f64 + 2.0) * dy);
            let sub = 3 * REFINE_FACTOR;
            let sub_labels = label_lattice(self.set, lo, hi, sub);
            self.scan(lo, hi, sub, &sub_labels, level + 1);
        }
    }

    /// Walks circles far outside the grid, where unbounded Voronoi edges of
    /// convex-hull neighbors separate.
    fn scan_far(&mut self, center: Point, scale: f64) {
        for k in FAR_RADII {
            let r = k * scale;
            let pts: Vec<Point> = (0..FAR_SAMPLES)
                .map(|m| {
                    let a = std::f64::consts::TAU * m as f64 / FAR_SAMPLES as f64;
                    center + Point::new(a.cos(), a.sin()) * r
                })
                .collect();
            let labels: Vec<usize> = pts.par_iter().map(|&p| nearest_site(self.set, p)).collect();
            for m in 0..FAR_SAMPLES {
                let next = (m + 1) % FAR_SAMPLES;
                if labels[m] != labels[next] {
                    self.try_pair(labels[m], pts[m], labels[next], pts[next]);
                }
            }
        }
    }
}

/// Dual graph of the segment Voronoi diagram. Every reported edge carries an
/// empty-disc certificate; pairs whose shared Voronoi edge is too short for
/// the raster may be missed and are listed in the report.
pub fn delaunay_graph(set: &SegmentSet, resolution: usize) -> Result<DelaunayReport> {
    let grid = grid_voronoi(set, resolution)?;
    let n = set.len();
    let mut cert = Certifier {
        set,
        found: BTreeMap::new(),
        seen: BTreeSet::new(),
    };
    cert.scan(grid.min, grid.max, grid.resolution, &grid.labels, 0);
    if n > 1 {
        // Voronoi edges of nearly collinear sites can lie outside the grid.
        let c = grid.min.midpoint(grid.max);
        let half = (grid.max - grid.min) * 0.5;
        for z in OUTER_ZOOMS {
            let (lo, hi) = (c - half * z, c + half * z);
            let labels = label_lattice(set, lo, hi, OUTER_RESOLUTION);
            cert.scan(lo, hi, OUTER_RESOLUTION, &labels, 0);
        }
        cert.scan_far(c, grid.min.dist(grid.max));
    }

    let mut owned = vec![false; n];
    for &l in &grid.labels {
        owned[l as usize] = true;
    }
    let unseen_sites = (0..n).filter(|&k| !owned[k]).collect();

    let sites = set.sites();
    let mut graph = SkeletonGraph::new(n);
    for (&(i, j), &(p, _)) in &cert.found {
        let w = GeneratorPair::new(sites[i].closest_param(p), sites[j].closest_param(p));
        graph.insert(i, j, Some(w));
    }
    let uncertified_pairs = cert
        .seen
        .iter()
        .filter(|k| !cert.found.contains_key(k))
        .copied()
        .collect();
    Ok(DelaunayReport {
        graph,
        unseen_sites,
        uncertified_pairs,
    })
}
