//! Small named scenes used by tests, examples and the CLI golden files.

use crate::geom::{Point, Segment, SegmentSet};

/// Builds a set from `[x1, y1, x2, y2]` rows. Panics on invalid input.
pub fn from_coords(rows: &[[f64; 4]]) -> SegmentSet {
    SegmentSet::new(
        rows.iter()
            .map(|r| Segment::from_coords(r[0], r[1], r[2], r[3]))
            .collect(),
    )
    .expect("fixture sites are valid")
}

/// Three stacked parallel unit segments at heights 0, 1 and 2.
pub fn e1() -> SegmentSet {
    from_coords(&[
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 1.0, 1.0],
        [0.0, 2.0, 1.0, 2.0],
    ])
}

/// Corner positions of [`near_square`], in cyclic order.
pub const NEAR_SQUARE_CORNERS: [Point; 4] = [
    Point::new(0.0, 0.0),
    Point::new(0.95, 0.05),
    Point::new(1.0, 1.0),
    Point::new(-0.1, 1.1),
];

/// Four very short sites near the corners of the unit square, perturbed into
/// general position. Corner 1 sees the diagonal 0-2 at an obtuse angle, so
/// that diagonal is a Delaunay edge but not a Gabriel edge.
pub fn near_square() -> SegmentSet {
    let d = Point::new(1e-3, 5e-4);
    SegmentSet::new(
        NEAR_SQUARE_CORNERS
            .iter()
            .map(|&c| Segment::new(c, c + d))
            .collect(),
    )
    .expect("fixture sites are valid")
}
