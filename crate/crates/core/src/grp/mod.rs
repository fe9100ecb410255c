//! Discrete groups Γ with decidable normal forms, their group algebras with
//! the Haar state of the dual, and subgroup conditional expectations.

mod algebra;
mod element;
mod parse;
mod spec;
mod subgroup;

pub use algebra::{group_haar, subgroup_expectation, GroupAlgebra};
pub use element::{AmalgamWord, GroupElement, Side};
pub use parse::parse_group_spec;
pub use spec::{parse_raw_word, AmalgamSpec, FiniteGroup, GroupSpec, RawLetter};
pub use subgroup::Subgroup;
