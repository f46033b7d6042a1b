//! Exact scalars, polynomials and rational functions in `q` and `s`.

pub mod field;
pub mod linear;
pub mod poly;
pub mod qseries;
pub mod ratfunc;
pub mod scalar;

pub use field::{Field, Ring};
pub use linear::solve_exact;
pub use poly::{Monomial, ParamPoly};
pub use qseries::{q_binomial, q_binomial_coeffs, q_binomial_value, q_pochhammer, q_pochhammer_recip};
pub use ratfunc::{poly_gcd, ParamRatFunc};
pub use scalar::ExactScalar;
