//! Exact arithmetic in the extended affine Hecke algebra of type D, realized
//! on periodic symmetric permutation matrices.
//!
//! The core types are generic over the coefficient ring (any [`Coefficient`]);
//! the aliases below fix it to arbitrary-precision integers or `i64`.

pub mod audit;
pub mod composition;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod machine;
pub mod oracle;
pub mod relations;
pub mod scalar;
pub mod weyl;

pub use composition::{enumerate_compositions, Composition};
pub use error::{Error, Result};
pub use hecke::HeckeElt;
pub use kl::KlTable;
pub use laurent::LaurentPoly;
pub use relations::{verify_relations, RelationReport};
pub use scalar::Coefficient;
pub use weyl::{AffinePerm, GenLabel, ReducedWord};

pub use num_bigint::BigInt;

pub type Laurent = LaurentPoly<BigInt>;
pub type Hecke = HeckeElt<BigInt>;
pub type Table = KlTable<BigInt>;

pub type Laurent64 = LaurentPoly<i64>;
pub type Hecke64 = HeckeElt<i64>;
pub type Table64 = KlTable<i64>;
