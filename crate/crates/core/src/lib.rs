//! Exact computations around the tropical vertex group and its quantum
//! deformation.
//!
//! * [`exactnum`]: rationals, Gaussian rationals, Laurent polynomials and
//!   rational functions in `s = q^{1/2}`, quantum integers.
//! * [`torus`]: `t`-adically truncated series over the commutative Laurent
//!   ring or the quantum torus `x̂ŷ = qŷx̂`.
//! * [`vertexgroup`]: automorphisms given by generator images; the
//!   generators `S_ℓ`, `T_ℓ`, wall automorphisms, commutators.
//! * [`scattering`]: order-by-order factorization of a commutator into a
//!   slope-ordered product of walls.
//! * [`tropical`]: enumeration of rational tropical curves with ends pinned
//!   to lines, classical and refined multiplicities.
//! * [`realenum`]: `q = -1` specializations, per-curve structural
//!   contributions, and the Welschinger spectrum.
//!
//! The guide in `book/` walks through each piece; its code listings are
//! compiled and run as doc-tests of this crate.

pub mod exactnum;
pub mod realenum;
pub mod scattering;
pub mod torus;
pub mod tropical;
pub mod vertexgroup;

pub use exactnum::{
    quantum_integer, Evaluation, GaussianRational, LaurentPoly, Rational, RationalFunction,
};
pub use torus::{Mode, Monomial, TruncatedSeries};
pub use vertexgroup::{TorusAutomorphism, Wall};

/// Library version, embedded in every serialized result.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/quantum-torus.md")]
    mod quantum_torus {}
    #[doc = include_str!("../../../book/src/vertex-group.md")]
    mod vertex_group {}
    #[doc = include_str!("../../../book/src/scattering.md")]
    mod scattering {}
    #[doc = include_str!("../../../book/src/tropical-curves.md")]
    mod tropical_curves {}
    #[doc = include_str!("../../../book/src/real-enumeration.md")]
    mod real_enumeration {}
}
