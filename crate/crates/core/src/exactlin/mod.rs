//! Exact linear algebra over `QQ` and prime fields.

mod enumerate;
mod mat;
mod scalar;
mod subspace;

pub use enumerate::{enum_lines, enum_subspaces, gaussian_binomial, SubspaceIter};
pub use mat::{preimage, Mat};
pub use scalar::{dot, Field, Scalar};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("mixed fields: {0} and {1}")]
    MixedFields(Field, Field),
    #[error("{what} {value} outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("subspace enumeration requires a prime field")]
    RationalEnumeration,
}
