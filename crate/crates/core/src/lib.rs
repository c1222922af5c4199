//! Exact-arithmetic workbench for two differential graded colored operads
//! built from planar trees: the relative braces and the relative
//! surjections, together with the nested-interval combinatorics of their
//! cellular decompositions, integer homology via Smith normal form, and
//! the deformation complexes of affine actions that the brace operad acts
//! on. Everything is computed over the integers or over an exact field;
//! there is no floating point anywhere.

pub(crate) mod idtree;
pub mod posets;
pub mod rbr;
pub mod hochschild;
pub mod homology;
pub mod rs;
pub mod trees;
