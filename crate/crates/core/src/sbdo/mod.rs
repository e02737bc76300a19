//! Symmetry breaking differential operators built from the source operator
//! `F_{s,t}` and its specialization `E_{lambda,mu}`.

mod covariance;
mod emit;
mod family;
mod source;
mod symbols;

pub use covariance::*;
pub use emit::*;
pub use family::*;
pub use source::*;
pub use symbols::*;
