//! Exact coefficient arithmetic: Laurent polynomials over Z, their fraction
//! field, and specializations of q to rational or modular values.

mod fraction;
mod laurent;
mod ring;
mod special;

pub use fraction::FractionScalar;
pub use laurent::LaurentScalar;
pub use ring::{CoeffRing, FpRing, LaurentRing, RatRing};
pub use special::{default_battery, Specialization, SpecializedScalar};
