//! Exact computations around distinct distances between points on two plane
//! curves: polynomial algebra, curves and their intersections, isometries
//! preserving a curve, the Elekes-Sharir style reduction to curve incidences,
//! and an experiment harness.

pub mod algebra;
pub mod curves;
pub mod elekes;
pub mod harness;
pub mod symmetry;
