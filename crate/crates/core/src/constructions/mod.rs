//! Functors between categories, multigraphs and multicategories: E and its
//! adjoint, symmetrization, cells, free constructions, transport along
//! object maps, and the tensor product.

mod embed;
mod free;
mod product;
mod transport;

pub use embed::{
    counit, embed_e, embed_functor, unary_morphisms, underlying_1, underlying_functor,
};
pub use free::{
    cell_multigraph, forget, free_category, free_symmulticat, interval_graph, multigraph_tables,
    perm_tag, sym, Free,
};
pub use product::{discrete, indiscrete, tensor, tensor_map};
pub use transport::{
    extend_u, factor_cofibration_style, factor_through_image, full_inclusion, restrict_u, Extended,
    ObjectMap, Restricted,
};

pub use crate::standard::com;
