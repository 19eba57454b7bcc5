//! Operator calculus in S # U(sl₃): B, C, D_i{s}, K{s}, powers and identities.

pub mod dpower;
pub mod identities;
pub mod op;

pub use dpower::{
    by_dhat, compare, d2_power_expanded, d_power, d_power_closed, decompose_highest, decrement, indices_of_norm,
    leading_scalar, lex_highest_term, norm, predicted_leading, recompose, times_dhat, DecomposeError, MonoOrder,
    MultiIndex,
};
pub use identities::{
    c_relations, commute_e0, d_commute, k_leading_prediction, k_lemma, k_move, spanning_set, IdentityFailure, KMoveForm,
    OpIdentity, SecondDecrement,
};
pub use op::{b_op, b_op_alt, c_op, d_op, dhat_power, h2_shift, h_prime, k_op, k_op_expanded, DOp};
