//! Grid knots and links, their canonical planar and Gauss diagrams, and
//! linking-number and finite-type counting by diagram-based and
//! crossing-field algorithms.

pub mod bench;
pub mod diagram;
pub mod fast_count;
pub mod grid;
pub mod invariants;
