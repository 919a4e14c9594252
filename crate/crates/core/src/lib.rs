//! Proximity graphs of disjoint line segments in the plane.
//!
//! Two sites `s1`, `s2` are joined in the beta-skeleton when some pair of
//! generators `v1` on `s1` and `v2` on `s2` has a beta-neighborhood that no
//! other site touches. Edges carry the generator parameters that prove them.
//! Gabriel graphs (`beta = 1`) and segment Delaunay graphs are also provided,
//! together with brute-force oracles for checking.

pub mod delaunay;
pub mod error;
pub mod fixtures;
pub mod gabriel;
pub mod geom;
pub mod graph;
pub mod neighborhoods;
pub mod oracle;
pub mod poly;
pub mod refraction;
pub mod solver;

pub use delaunay::{delaunay_graph, DelaunayReport, DEFAULT_DT_RESOLUTION};
pub use error::{Error, Result};
pub use gabriel::{gg_edge_exists, gg_graph, GabrielWitness};
pub use geom::{validate_general_position, Point, Segment, SegmentSet, Violation, EPS_GEOM};
pub use graph::{GeneratorPair, SkeletonEdge, SkeletonGraph};
pub use neighborhoods::{make_neighborhood, BetaSpec, Closure, Neighborhood, Variant};
pub use solver::{beta_skeleton, beta_skeleton_with_dt, find_witness, DEFAULT_EPSILON};
