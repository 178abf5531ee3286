//! Linking number by both pipelines and the subdiagram map φ_d.

mod lk;
mod phi;

pub use lk::{field_pair_count, lk_2d, lk_3d};
pub(crate) use phi::RawEnd;
pub use phi::{
    apply_functional, expected_mass, omega_lk, phi_2d, CodeParseError, Functional, GaussCode, PhiVector, MAX_ARROWS,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("expected a {expected}-component link, found {found} components")]
    ComponentCount { expected: usize, found: usize },
    #[error("signed sum of mixed crossings is odd ({0}); the diagram is malformed")]
    OddSignedSum(i64),
    #[error("order d={order} is outside 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },
}
