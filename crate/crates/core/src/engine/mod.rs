//! Dimension tables, closed-form series and the structural checks built on them.

pub mod checks;
pub mod dims;
pub mod lemmas;
pub mod poincare;
pub mod series;
pub mod theorems;
