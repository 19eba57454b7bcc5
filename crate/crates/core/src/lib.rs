pub mod e510;
pub mod verma;
pub mod classify;
pub mod dops;
pub mod exactalg;
pub mod singular;

pub use exactalg::{Coeff, Scalar, ThetaScalar};
