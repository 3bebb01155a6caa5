//! Connections with values in U(1), O(n) or U(n) acting on their defining
//! representation, forms with values in the fiber or its endomorphisms, and
//! the covariant calculus built on them.

mod connection;
mod covariant;
mod forms;
mod group;
mod laplacian;

pub use connection::{shifted, Connection, GaugeTransformation};
pub use covariant::{
    covariant_derivative_end, covariant_derivative_section, curvature, d_a_end, d_a_star_end, d_a_star_vector,
    d_a_vector, d_end, holonomy, is_flat, shifted_connection, wilson_curvature,
};
pub use forms::{EndForm, VectorForm};
pub use group::{Group, GroupKind, UNITARITY_TOL};
pub use laplacian::{
    apply_blocks, connection_laplacian, connection_laplacian_matrix, connection_laplacian_vertex,
    curvature_term_matrix, gauged_laplacian_matrix, generalized_weitzenboeck, GeneralizedWeitzenboeck,
};
