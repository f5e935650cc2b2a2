use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Div, Neg, Sub};

use num_traits::{One, Zero};

/// The coefficient-field interface the polynomial kernel is generic
/// over. `Zero`/`One` come from num-traits, so a scalar type must be
/// able to produce its constants without external context; the prime
/// moduli are therefore const-generic parameters of the concrete
/// scalars rather than runtime state.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
}
