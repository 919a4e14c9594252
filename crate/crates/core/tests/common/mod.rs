#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segskel_core::{validate_general_position, Point, Segment, SegmentSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point(rng: &mut impl Rng) -> Point {
    Point::new(rng.gen(), rng.gen())
}

/// `n` disjoint sites in general position inside the unit box, each at least
/// `gap` away from the others.
pub fn scene(rng: &mut impl Rng, n: usize) -> SegmentSet {
    let gap = 0.03;
    'retry: loop {
        let mut sites: Vec<Segment> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut placed = false;
            for _ in 0..200 {
                let c = Point::new(rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
                let len = rng.gen_range(0.05..0.3);
                let a: f64 = rng.gen_range(0.0..std::f64::consts::PI);
                let h = Point::new(a.cos(), a.sin()) * (0.5 * len);
                let s = Segment::new(c - h, c + h);
                if sites
                    .iter()
                    .all(|o| segskel_core::geom::dist_segment_segment(o, &s) > gap)
                {
                    sites.push(s);
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'retry;
            }
        }
        let set = SegmentSet::new(sites).unwrap();
        if validate_general_position(&set).is_ok() {
            return set;
        }
    }
}

/// Points pairwise at least `gap` apart.
pub fn point_cloud(rng: &mut impl Rng, n: usize, gap: f64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = point(rng);
        if pts.iter().all(|q| q.dist(p) > gap) {
            pts.push(p);
        }
    }
    pts
}

/// Segments of the given length centered on each point.
pub fn shrink_to_points(pts: &[Point], len: f64) -> SegmentSet {
    let h = Point::new(0.6, 0.8) * (0.5 * len);
    SegmentSet::with_point_sites(pts.iter().map(|&p| Segment::new(p - h, p + h)).collect()).unwrap()
}
