//! Polynomial and rational-function arithmetic over Q, in one and two
//! variables, with canonical forms pinned down tightly enough that equality
//! of stored representations is equality of functions.

mod bi;
mod ring;
mod uni;

pub use bi::{Exp, Poly2, RatFunc2};
pub use uni::{eliminate_moebius_image, resultant, Poly1, RatFunc1};
