//! Generalized Verma modules M(V ⊗ T) = U(L₋) ⊗ V ⊗ T.

pub mod action;
pub mod format;
pub mod kernel;
pub mod module;
pub mod monomial;
pub mod predicates;

pub use action::{Engine, KeyWeight, Operator, VermaError};
pub use module::{Context, Element, Family, Key, MElement, TModule, ThetaElement, VModule};
pub use monomial::{Letter, SuperMonomial, UElem, ULminus};
pub use predicates::{
    is_quasi_singular, is_semi_singular, is_singular, is_sl3_highest, phi_lift, s_singular_full_check,
    singular_full_check, weight, Weight, Witness,
};
