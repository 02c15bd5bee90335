//! Exact-arithmetic library for the moduli of classical Humbert curves:
//! genus-five curves cut out by three diagonal quadrics in P^4, carrying a
//! rank-four group of involutions. The quotient by that group is the sphere
//! with five order-two cone points (inf, 0, 1, l1, l2), so everything about
//! the moduli of these curves becomes finite symbolic computation on the
//! parameter pair (l1, l2):
//!
//! - the degree-120 averaged invariant map (j1, j2), whose value generates
//!   the field of moduli;
//! - conformal equivalence of parameter pairs, with an explicit witness;
//! - the finite Moebius group preserving the five cone points (the reduced
//!   automorphism group) and its classification;
//! - the descent certificates showing the field of moduli is a field of
//!   definition: an equivariant rational point in the order-two case, and
//!   citation branches (Wolfart; Huggins) where the literature already
//!   settles it.
//!
//! Exact computation happens in Q or Q(i); an approximate complex regime
//! with a global relative tolerance covers configurations outside Q(i).

pub mod curve;
pub mod descent;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod group;
pub mod invariants;
pub mod mobius;
pub mod poly;
pub mod scalar;
pub mod symmetry;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use group::{GroupElem, HumbertGroup, ParamPair, PermAction};
pub use mobius::{cross_ratio, MobiusMap, ProjPoint};
pub use scalar::{epsilon, set_epsilon, ApproxC, GaussRat, Rat, Scalar};
