//! Small solutions of binomial quartic Thue equations `a^4 - g*b^4 = ±1` and
//! power integral bases of pure quartic fields `Q(m^(1/4))`.

pub mod arith;
pub mod cf;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod pib;
pub mod poly;
pub mod report;
pub mod sweep;
pub mod thue;

pub use num_bigint::{BigInt, BigUint};
