//! Coefficient rings for Laurent polynomials.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{FromPrimitive, Signed};

/// An exact signed integer type usable as a coefficient of `v^k`.
///
/// Blanket-implemented; `BigInt` is the default (see the crate-root
/// aliases), fixed-width integers are fine for small computations.
pub trait Coefficient:
    Clone + Debug + Display + Eq + Ord + Hash + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self {
        <Self as FromPrimitive>::from_i64(value).expect("coefficient type cannot hold i64 value")
    }
}

impl<T> Coefficient for T where
    T: Clone + Debug + Display + Eq + Ord + Hash + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
}
