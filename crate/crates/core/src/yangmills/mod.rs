//! The Yang-Mills functional, its Euler-Lagrange residuals and gradient,
//! gauge fixing, multi-start optimization, U(1) oracles and the
//! Yang-Mills-Higgs extension.

mod functional;
mod gauge_fix;
mod higgs;
mod optimize;
mod oracle;

pub use functional::{
    ym_gradient, ym_residual, ym_upper_bound, ym_value, ym_value_curvature, ym_value_wilson, TriangleIndex,
    YmResidual, VALUE_AGREEMENT_TOL,
};
pub use gauge_fix::{max_connection, spanning_tree_gauge_fix};
pub use higgs::{left_perturb, ymh_pairing, ymh_residuals, ymh_value, Potential, YmhResidual};
pub use optimize::{
    holonomy_signature, optimize_from, ym_optimize, Direction, Endpoint, MultiStartReport, OptimizeOptions, YmReport,
    CLUSTER_TOL,
};
pub use oracle::{
    circle_distance, free_edges, known_families, named_graph, path_join, path_join_product_check,
    tree_gauge_connection, u1_grid_oracle, GridOracleReport, GridPoint, PathJoinReport, SolutionFamily,
    GRID_MEMBERSHIP_STEPS, MAX_FREE_EDGES,
};
