//! The word algebra Pol(Γ̂ ≀*,Λ̂ S_N⁺): ν_i(g) commutes with row i of the
//! magic unitary, ν(h) for h ∈ Λ is shared by all copies and central with
//! respect to C(S_N⁺).

mod element;
mod haar;
mod monomial;
pub mod sample;
mod traces;

pub use element::Wreath;
pub use haar::BaseElement;
pub use monomial::{WreathCtx, WreathMonomial};
pub use traces::{k0_generator_trace, K0Generator};

#[cfg(test)]
mod tests;
