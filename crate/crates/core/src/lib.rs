//! Exact Haar-state evaluation and K-theory for free wreath products of
//! discrete group duals by the quantum permutation groups S_N⁺.
//!
//! The algebraic layers (`ncpart`, `grp`, `wreath`) are generic over a
//! [`Scalar`]; the crate-root aliases fix the exact rational instance.
//! K-theory (`kcalc`) works over arbitrary-precision integers.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod grp;
pub mod kcalc;
pub mod ncpart;
pub mod scalar;
pub mod wreath;

pub use error::{QwError, Result};
pub use scalar::Scalar;

/// Exact rational scalar used by every evaluator unless stated otherwise.
pub type Rational = num_rational::BigRational;
/// Linear combination of magic-unitary monomials over the rationals.
pub type SnPlusElement = ncpart::SnPlus<Rational>;

/// Dense rational matrix (Gram and Weingarten matrices).
pub type RationalMatrix = ncpart::Matrix<Rational>;



/// Element of Pol(Γ̂ ≀*,Λ̂ S_N⁺) over the rationals.
pub type WreathElement = wreath::Wreath<Rational>;
/// Element of the group algebra ℂ[Γ] with rational coefficients.
pub type GroupAlgebraElement = grp::GroupAlgebra<Rational>;
/// Integer matrix used for K-theory presentations.
pub type ZMatrix = kcalc::IntMatrix<num_bigint::BigInt>;
