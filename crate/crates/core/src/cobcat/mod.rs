//! Arrows of the categories generated by thickened and solid tori: formal
//! expressions, normal forms and the equality test.

mod expr;
mod normal;

pub use expr::{compose_expr, tensor_expr, ArrowExpr, Node};
pub use normal::{arrows_equal, canonical_factor, normalize, Factor, FactorKind, NormalForm, Perm};
