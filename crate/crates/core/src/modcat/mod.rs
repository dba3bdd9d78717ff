//! Explicit modules over the q-exterior algebra `K<x, y>/(x^2, y^2, xy + q yx)`
//! and the Double Nakayama algebras `A(q^{-r})`, over the field `Q(q)`.
//!
//! Modules are stored blockwise by vertex. Radicals, socles, projective
//! covers and syzygies are computed by exact elimination; Hom spaces solve
//! the intertwining equations, and Ext dimensions come from stable Hom out
//! of syzygies, with a second engine working on `Hom(P_*, N)`.

mod algebra;
mod hom;
mod induce;
mod module;
mod structure;

pub use algebra::{
    build_family, make_dnak_algebra, make_qext_algebra, AlgebraRef, AlgebraSpec, BasisElement,
    Family,
};
pub use hom::{
    ext_dim, ext_dim_oracle, find_isomorphism, hom_space, is_isomorphic, stable_hom_dim, HomSpace,
};
pub use induce::{c_module_parameter, induce, is_free_over_qext, qext_embedding, restrict_to_qext};
pub use module::{make_c_module, BlockVectors, ModuleRep};
pub use structure::{
    assemble, dim_vector, free_map, projective_basis, projective_cover,
    projective_multiplicities, radical, socle, socle_equals_radical, strip_summands, syzygy,
    syzygy_data, syzygy_orbit, top_dims, top_generators, BlockSubspace, ProjectiveCover,
    Stripped, Syzygy,
};
