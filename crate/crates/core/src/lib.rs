//! Edge unfoldings of convex polyhedra after an affine stretch.
//!
//! A convex polyhedron is rotated and stretched along the x axis until every
//! edge is within a small angle of horizontal. Cutting along a spanning tree
//! in which every vertex climbs to a rightward neighbor then always unfolds
//! to a non-overlapping net. The crate builds that net and certifies it
//! independently.

pub mod cli;
pub mod geometry;
pub mod mesh;
pub mod oracle;
pub mod pipeline;
pub mod shapes;
pub mod transform;
pub mod tree;
pub mod unfold;
pub mod verify;

pub use pipeline::{stretch_and_unfold, unfold_tree, Error, NetResult, Options, Unfolding};
