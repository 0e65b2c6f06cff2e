//! Closed-form evaluations and summation identities.

pub mod closed;
pub mod closed_decomp;
pub mod entries;
pub mod sums;

pub use closed::{Conjecture, PfFamily};
pub use entries::{Border, ParityRule, Point};
