//! The Lie superalgebra E(5,10) realized by vector fields and closed 2-forms, and
//! the generators of E(3,6) inside it.

pub mod bracket;
pub mod element;
pub mod generators;
pub mod relations;
pub mod table;

pub use bracket::{epsilon, E510};
pub use element::{Element510, Parity};
pub use generators::GeneratorId;
pub use relations::{check_relations, RelationReport};
pub use table::{express, structure_table, table_from_json, table_to_json, Combination, E510Error, StructureEntry};
