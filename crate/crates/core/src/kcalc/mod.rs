//! Finitely generated abelian groups, the six-term sequence of a graph of
//! C*-algebras, and K-theory of free wreath products by S_N⁺.

mod abgroup;
mod intmat;
pub mod kdata;
mod presets;
mod sixterm;
mod snf;
mod snplus_k;

pub use abgroup::{render_vector, AbHom, FgAbGroup, ZMat};
pub use intmat::{IntMatrix, IntRing};
pub use presets::{
    bs_group_k, bs_wreath_k, cyclic_k, free_group_k, reflection_generators, reflection_k, reflection_signature,
    render_signature, sl2z_wreath_k, wreath_k,
};
pub use sixterm::{solve_six_term, Edge, GraphKData, KPair, SixTermSolution, Vertex};
pub use snf::{integer_nullspace, integer_solve, lattice_basis, smith_normal_form, Smith};
pub use snplus_k::{k_snplus, u_class};
