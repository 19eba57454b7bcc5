//! Classification of highest, quasi-singular and semi-singular vectors.

pub mod lists;
pub mod notation;
pub mod solve;

pub use lists::{abcd_polys, amended, as_published, full_semi_list, highest_list, quasi_list, semi_list, Amendment, Listed};
pub use notation::{NotationError, Poly};
pub use solve::{
    by_top_sdeg, cell_of, compare, full_semi_singular_list, highest_vectors, in_span, lcell_of, quasi_singular_space,
    same_span, semi_singular_space, solve_space, all_highest_vectors, classification_report, ListKind, Cell, CellReport, ClassificationReport, FullSemi, LCell,
};
