//! Exact computation of the decomposition of half-integral weight cusp form
//! spaces into the theta subspace and newform-indexed joint eigenspaces.
//!
//! All arithmetic is exact: rationals are arbitrary precision and algebraic
//! numbers live in explicit number fields Q[x]/(F(x)). No floating point is
//! used anywhere. Linear algebra and q-series are generic over the scalar
//! [`field::Field`], instantiated at [`Rationals`] for rational work and at
//! [`NumberField`] for eigenvalue computations; the aliases below fix the
//! concrete types most callers want.

pub mod arith;
pub mod chars;
pub mod decomp;
pub mod error;
pub mod field;
pub mod hecke;
pub mod lift;
pub mod lmfdb;
pub mod newforms;
pub mod linalg;
pub mod poly;
pub mod qseries;
pub mod serial;
pub mod theta;

pub use error::{Error, Result};
pub use field::{compositum, Field, NfElement, NumberField, Rationals};

/// Exact rational scalar used throughout.
pub type Rat = num_rational::BigRational;
/// Matrix over the rationals.
pub type QMatrix = linalg::Matrix<Rationals>;
/// Matrix over a number field.
pub type NfMatrix = linalg::Matrix<NumberField>;
/// q-expansion with rational coefficients.
pub type QSeries = qseries::QExpansion<Rationals>;
/// q-expansion with number field coefficients.
pub type NfSeries = qseries::QExpansion<NumberField>;

#[cfg(test)]
mod thread_safety {
    // every value is immutable after construction and freely shareable
    // between tasks; these assertions pin that contract at compile time
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable() {
        assert_send_sync::<crate::NumberField>();
        assert_send_sync::<crate::NfElement>();
        assert_send_sync::<crate::chars::DirichletCharacter>();
        assert_send_sync::<crate::NfSeries>();
        assert_send_sync::<crate::QSeries>();
        assert_send_sync::<crate::NfMatrix>();
        assert_send_sync::<crate::newforms::NewformPacket>();
        assert_send_sync::<crate::decomp::AmbientSpace>();
        assert_send_sync::<crate::decomp::DecompositionReport>();
    }
}
