//! Mock modular coefficient functions and the combinatorics of their leading
//! coefficients.

mod compare;
mod extract;
mod level1;
pub mod linsolve;
mod tables;

pub use crate::characters::basis_function;
pub use compare::{compare_tables, Mismatch, TableComparison};
pub use extract::{
    degenerate_difference, degenerate_reconstruction, extract_h, extract_h_all, h_offset, limit_theta,
    peel_basis, solve_shifted, HSeries,
};
pub use level1::{level1_eta_h, level1_h, massive_stream, MassiveStream};
pub use tables::{
    alpha, beta, catalan, chebyshev_expand, coefficient_tables, gamma_closed, gamma_from_alpha,
    chebyshev_resum, gamma_staircase_oracle, CoefficientTables,
};
