//! Exact arithmetic: rationals, ℚ[θ], commutative polynomials and linear algebra.

pub mod coeff;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod theta;

pub use coeff::{falling_scalar, Coeff};
pub use linalg::{
    express_in, nullspace, param_nullspace, rank, rank_of, solve, ParamKernel, Rref, SparseMatrix, SparseVec,
    SpecialPoint,
};
pub use poly::{CommPoly, VarSet};
pub use scalar::{binomial, format_scalar, frac, int, parse_scalar, scalar_arith, ArithError, ArithOp, Scalar};
pub use theta::{ThetaPoly, ThetaScalar};
