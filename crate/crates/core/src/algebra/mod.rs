//! Exact rational group algebra of `S_n`, the reduction map on transposition
//! weights, and the octopus elements.

mod element;
mod octopus;
mod weights;

pub use element::{AlgebraElement, AlgebraElementJson, JsonInt, TermJson};
pub use octopus::{octopus_hat, octopus_x, octopus_y, quartic_rhs};
pub use weights::{EdgeJson, TranspositionWeights, WeightsJson};

pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
