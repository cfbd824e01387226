//! Lattice data structure: a dynamic set of distinct keys kept in a
//! triangular grid with sorted rows, columns and diagonals, plus jump search,
//! degree-of-sortedness maintenance, closed-form analytics, a skip-list
//! baseline and the experiment harness.

pub mod analytics;
pub mod bench;
pub mod error;
pub mod jump;
pub mod lattice;
pub mod par;
pub mod skiplist;
pub mod sortedness;
pub mod textfmt;

pub use error::{Error, Result};
pub use jump::{search_jump, JumpOutcome, JumpStrategy};
pub use lattice::{CellValue, Coord, Key, Lattice, KEY_MAX};
pub use par::Execution;
pub use skiplist::SkipList;
pub use sortedness::{degree, sort_step, SortednessDegree};
