//! Canonical projection of grid links into planar and Gauss diagrams.
//!
//! The projection is the top-down view under an infinitesimal shear
//! `(x, y, z) -> (x + a z, y + b z)` with `0 < b << a << 1/L`. Under it every
//! crossing lies in one of `2L^2` triangular fields next to a lattice
//! column, and over/under is decided by comparing integer heights.

mod build;
mod crossing;
mod field;
mod gauss;
mod oracle;

pub use build::{build_diagram, field_crossings, DiagramSignature, Endpoint, PlanarDiagram, Role};
pub use crossing::{sign_table, Crossing, CrossingType, FieldId, Position};
pub(crate) use field::for_each_incidence;
pub use field::{enumerate_fields, field_at, field_count, field_index, fields_of, CrossingField, FieldKind};
pub use gauss::{to_gauss, Arrow, GaussDiagram};
pub use oracle::{oracle_shear_diagram, OracleError};
