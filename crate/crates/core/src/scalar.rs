//! Capacity scalar abstraction.
//!
//! The cut machinery only needs an ordered signed field-like scalar, so it is
//! written against [`Scalar`] rather than a concrete number type. `BigRational`
//! gives the exact arithmetic the verification paths rely on; `f64`/`f32`
//! satisfy the bounds too for quick approximate experiments.

use num_traits::{Num, Signed};
use std::fmt::{Debug, Display};

/// Anything usable as an edge capacity.
pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug + Display {}

impl<T> Scalar for T where T: Num + Signed + PartialOrd + Clone + Debug + Display {}

/// `2` in the scalar domain, for the halving steps of star-triangle capacities.
pub(crate) fn two<S: Scalar>() -> S {
    S::one() + S::one()
}

pub(crate) fn min2<S: Scalar>(a: S, b: S) -> S {
    if a <= b {
        a
    } else {
        b
    }
}
