//! Counting kernels for subdiagram counts and the crossing-field engine
//! for φ_d.

mod instance;
mod kernels;
mod labeled;
mod phi3d;

pub use instance::{brute_count, CountingInstance, InstanceParseError, Token, BRUTE_FORCE_LIMIT};
pub use kernels::{count_increasing, count_with_z, height_bits};
pub use labeled::{build_instance, enumerate_labeled_diagrams, LabeledGaussDiagram};
pub use phi3d::{phi_3d, phi_3d_by_labeled_diagrams};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("brute force would enumerate {product} tuples (limit {limit})")]
    TooLarge { product: u128, limit: u128 },
    #[error("order d={order} is outside 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("invalid counting instance: {0}")]
    InvalidInstance(String),
}
