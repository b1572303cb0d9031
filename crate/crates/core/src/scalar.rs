use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed scalars for root and weight arithmetic: machine integers or
/// rationals. Equality must be exact since weights are hashed, which rules
/// out floating point.
pub trait Scalar:
    Signed + Copy + Ord + Hash + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the scalar type")
    }
}

impl<T> Scalar for T where
    T: Signed + Copy + Ord + Hash + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}
