//! Exact computation with the ideals generated by the entries of `X*Y`,
//! where `X` is a generic square, generic symmetric or one-extra-row generic
//! matrix of indeterminates and `Y` a generic column.
//!
//! The crate carries its own Groebner kernel (rational arithmetic, several
//! monomial orders, Buchberger with reduced-basis extraction), constructions
//! for the minor families attached to these ideals, elimination-based ideal
//! intersection and colon ideals, graded Betti tables with mapping cones,
//! and Hilbert-series numerators used as an independent cross-check. The
//! [`verify`] module packages all of that into named check suites.

pub mod betti;
pub mod detideal;
pub mod eliminate;
mod error;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use poly::ideal::Ideal;
pub use poly::{Monomial, MonomialOrder, Polynomial, RingContext, Term, Variable};
