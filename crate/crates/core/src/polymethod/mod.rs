//! Polynomials over the rationals and the query-complexity bounds built on
//! them.

mod bounds;
mod grover;
mod poly;
mod query;

pub use bounds::{
    chebyshev, chebyshev_derivative_at_one, chebyshev_tools, degree_lower_bound, derivative_floor_check,
    direct_product_bound, double_factorial_odd, factorial, markov_bounds, rescaled_chebyshev, Branch,
    ChebyshevTools, DegreeBound, FloorCheck, FloorCheckRow, MarkovBounds, MAX_CHEBYSHEV_DEGREE,
};
pub use grover::{grover_find_all, stage_probability, standard_schedule, GroverReport, MAX_ITEMS, MAX_MARKED};
pub use poly::{random_poly, real_roots, sup_norm, Poly};
pub use query::{
    acceptance_polynomial, library, Accept, MatrixSpec, Oracle, QueryAlgorithm, Stage, DEGREE_TOL,
    MAX_ORACLE_LENGTH, MAX_WORKSPACE_QUBITS,
};
