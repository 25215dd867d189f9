//! Exact computations in the Hoffman algebra ℚ⟨x,y⟩ with coefficients in
//! ℚ[c]: the harmonic and diamond products, the derivations `∂ₙ`, the
//! quasi-derivations `∂ₙ^(c)`, the elements `qₙ`, and the relations among
//! multiple zeta values they produce, together with numeric and mod-p
//! evaluators to check those relations.
//!
//! Everything is generic over the coefficient ring ([`Coeff`]) and the
//! scalar field under the parameter ([`Scalar`]). The aliases below fix the
//! exact choices used throughout: arbitrary-precision rationals, and
//! polynomials in a formal `c` over them.

pub mod algebra;
pub mod error;
pub mod operators;
pub mod oracles;
pub mod products;
pub mod rational;
pub mod relations;
pub mod scalar;
pub mod selfcheck;

pub use algebra::{CPoly, Index, Letter, NcPoly, Word};
pub use error::{Error, Result};
pub use operators::Operators;
pub use rational::Rational;
pub use scalar::{Coeff, Scalar};

/// Polynomial in the formal parameter `c` with rational coefficients.
pub type ParamPoly = CPoly<Rational>;
/// Element of ℚ[c]⟨x,y⟩, the working type for formal-`c` identities.
pub type Poly = NcPoly<ParamPoly>;
/// Element of ℚ⟨x,y⟩, used once `c` has been specialized.
pub type QPoly = NcPoly<Rational>;
/// Floating-point variants.
pub type PolyF64 = NcPoly<CPoly<f64>>;
pub type PolyF32 = NcPoly<CPoly<f32>>;
