//! Edge decisions by searching the generator square `[0,1]^2` for a pair whose
//! neighborhood avoids every other site.
//!
//! The search is an adaptive quadtree over dyadic parameters. Every sample it
//! evaluates lies on the grid of pitch `2^-depth`, where `2^-depth <= epsilon`,
//! so a free sample is an exact witness and a negative answer means no grid
//! point of that pitch is free. Whole cells are discarded early only when a
//! single blocker penetrates the neighborhood deeper than the generators can
//! move inside the cell.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::delaunay::{delaunay_graph, DEFAULT_DT_RESOLUTION};
use crate::error::{Error, Result};
use crate::geom::{param_point, Segment, SegmentSet};
use crate::graph::{GeneratorPair, SkeletonGraph};
use crate::neighborhoods::{depth_lipschitz, BetaSpec, Neighborhood};

pub const DEFAULT_EPSILON: f64 = 1.0 / 256.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Free,
    Blocked,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeRegionCell {
    pub t1_lo: f64,
    pub t1_hi: f64,
    pub t2_lo: f64,
    pub t2_hi: f64,
    pub status: CellStatus,
}

impl FreeRegionCell {
    pub fn center(&self) -> GeneratorPair {
        GeneratorPair::new(0.5 * (self.t1_lo + self.t1_hi), 0.5 * (self.t2_lo + self.t2_hi))
    }

    pub fn half_widths(&self) -> (f64, f64) {
        (0.5 * (self.t1_hi - self.t1_lo), 0.5 * (self.t2_hi - self.t2_lo))
    }
}

/// A predicate over generator pairs that the subdivision search can query.
pub trait Feasibility {
    /// Whether the generator pair is free of every blocker.
    fn is_free(&self, t1: f64, t2: f64) -> bool;

    /// `true` only if every pair in the cell is certainly blocked.
    fn cell_blocked(&self, cell: &FreeRegionCell) -> bool;
}

/// Number of halvings so that the leaf side `2^-depth` does not exceed `epsilon`.
pub fn subdivision_depth(epsilon: f64) -> u32 {
    assert!(epsilon > 0.0, "resolution must be positive");
    let mut depth = 0;
    while depth < 30 && (0.5_f64).powi(depth as i32) > epsilon {
        depth += 1;
    }
    depth
}

/// Depth-first quadtree search. Within a cell the center is tried before the
/// corners, and children are visited in (lo-lo, lo-hi, hi-lo, hi-hi) order.
pub fn search_free_region<F: Feasibility + ?Sized>(f: &F, epsilon: f64) -> Option<GeneratorPair> {
    let depth = subdivision_depth(epsilon);
    let n = 1u32 << depth;
    let scale = 1.0 / n as f64;
    let mut cache: HashMap<(u32, u32), bool> = HashMap::new();
    let mut free_at = |i: u32, j: u32| -> bool {
        *cache
            .entry((i, j))
            .or_insert_with(|| f.is_free(i as f64 * scale, j as f64 * scale))
    };
    let pair = |i: u32, j: u32| GeneratorPair::new(i as f64 * scale, j as f64 * scale);

    // (i0, j0, size) in grid units; pushed in reverse so pops follow visiting order.
    let mut stack = vec![(0u32, 0u32, n)];
    while let Some((i0, j0, size)) = stack.pop() {
        if size > 1 {
            let (ic, jc) = (i0 + size / 2, j0 + size / 2);
            if free_at(ic, jc) {
                return Some(pair(ic, jc));
            }
        }
        for (i, j) in [(i0, j0), (i0, j0 + size), (i0 + size, j0), (i0 + size, j0 + size)] {
            if free_at(i, j) {
                return Some(pair(i, j));
            }
        }
        if size == 1 {
            continue;
        }
        let cell = FreeRegionCell {
            t1_lo: i0 as f64 * scale,
            t1_hi: (i0 + size) as f64 * scale,
            t2_lo: j0 as f64 * scale,
            t2_hi: (j0 + size) as f64 * scale,
            status: CellStatus::Mixed,
        };
        if f.cell_blocked(&cell) {
            continue;
        }
        let h = size / 2;
        for (di, dj) in [(h, h), (h, 0), (0, h), (0, 0)] {
            stack.push((i0 + di, j0 + dj, h));
        }
    }
    None
}

/// Blocking test for one site pair against all other sites under a
/// beta-neighborhood.
pub struct NeighborhoodSearch<'a> {
    s1: &'a Segment,
    s2: &'a Segment,
    blockers: Vec<&'a Segment>,
    spec: BetaSpec,
    eps: f64,
    lipschitz: (f64, f64),
}

impl<'a> NeighborhoodSearch<'a> {
    pub fn new(set: &'a SegmentSet, i: usize, j: usize, spec: BetaSpec) -> Self {
        let sites = set.sites();
        Self {
            s1: &sites[i],
            s2: &sites[j],
            blockers: sites
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, s)| s)
                .collect(),
            spec,
            eps: set.tolerance(),
            lipschitz: depth_lipschitz(&spec),
        }
    }

    fn neighborhood(&self, t1: f64, t2: f64) -> Option<Neighborhood> {
        let v1 = param_point(self.s1, t1);
        let v2 = param_point(self.s2, t2);
        Neighborhood::with_tolerance(v1, v2, self.spec, self.eps).ok()
    }
}

impl Feasibility for NeighborhoodSearch<'_> {
    fn is_free(&self, t1: f64, t2: f64) -> bool {
        match self.neighborhood(t1, t2) {
            Some(n) => !self.blockers.iter().any(|s| n.intersects_segment(s)),
            None => false,
        }
    }

    fn cell_blocked(&self, cell: &FreeRegionCell) -> bool {
        let c = cell.center();
        let Some(n) = self.neighborhood(c.t1, c.t2) else {
            return false;
        };
        let (h1, h2) = cell.half_widths();
        let motion = self.lipschitz.0 * h1 * self.s1.len() + self.lipschitz.1 * h2 * self.s2.len();
        let need = motion + self.eps + 1e-12;
        self.blockers
            .iter()
            .any(|s| n.max_depth_on_segment(s).0 > need)
    }
}

/// Searches for a generator pair on sites `i` and `j` whose neighborhood
/// meets no other site. A returned pair is always verified; `None` means no
/// free pair on the grid of pitch `epsilon` (rounded down to a power of two).
pub fn find_witness(
    set: &SegmentSet,
    i: usize,
    j: usize,
    spec: BetaSpec,
    epsilon: f64,
) -> Option<GeneratorPair> {
    assert_ne!(i, j, "generator sites must differ");
    search_free_region(&NeighborhoodSearch::new(set, i, j, spec), epsilon)
}

/// Pairs worth testing: every pair below `beta = 1`, otherwise the segment
/// Delaunay edges (computed here when not supplied).
pub fn candidate_pairs(
    set: &SegmentSet,
    spec: BetaSpec,
    dt: Option<&SkeletonGraph>,
) -> Result<Vec<(usize, usize)>> {
    let n = set.len();
    if spec.beta() < 1.0 || n < 3 {
        return Ok((0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect());
    }
    match dt {
        Some(g) => Ok(g.pairs()),
        None => Ok(delaunay_graph(set, DEFAULT_DT_RESOLUTION)?.graph.pairs()),
    }
}

fn check_input(set: &SegmentSet) -> Result<()> {
    set.validate_disjoint().map_err(Error::InvalidInput)
}

pub fn beta_skeleton(set: &SegmentSet, spec: BetaSpec, epsilon: f64) -> Result<SkeletonGraph> {
    check_input(set)?;
    let pairs = candidate_pairs(set, spec, None)?;
    Ok(skeleton_over(set, &pairs, spec, epsilon))
}

/// Like [`beta_skeleton`] with a precomputed Delaunay graph as the candidate filter.
pub fn beta_skeleton_with_dt(
    set: &SegmentSet,
    spec: BetaSpec,
    epsilon: f64,
    dt: &SkeletonGraph,
) -> Result<SkeletonGraph> {
    check_input(set)?;
    let pairs = candidate_pairs(set, spec, Some(dt))?;
    Ok(skeleton_over(set, &pairs, spec, epsilon))
}

fn skeleton_over(
    set: &SegmentSet,
    pairs: &[(usize, usize)],
    spec: BetaSpec,
    epsilon: f64,
) -> SkeletonGraph {
    let found: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| find_witness(set, i, j, spec, epsilon).map(|w| (i, j, w)))
        .collect();
    let mut g = SkeletonGraph::new(set.len());
    for (i, j, w) in found.into_iter().flatten() {
        g.insert(i, j, Some(w));
    }
    g
}
