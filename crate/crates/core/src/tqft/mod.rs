//! TQFT data, axiom validation, and evaluation of arrows and invariants.

mod builtins;
mod closed;
mod datum;
mod matrix;

pub use builtins::builtin;
pub use closed::{funar_f1_brackets, funar_trace_closed_form, ClosedFormTqft};
pub use datum::{
    bundle_invariant, lens_invariant, rho, validate, AxiomCheck, Tqft, TqftDatum, ValidationReport,
};
pub use matrix::{leg_permutation, FieldMatrix};

use crate::cobcat::{ArrowExpr, NormalForm};
use crate::error::Result;

/// Either kind of arrow accepted by [`eval`].
pub enum Arrow<'a> {
    Expr(&'a ArrowExpr),
    Normal(&'a NormalForm),
}

pub fn eval(t: &Tqft, f: Arrow<'_>) -> Result<FieldMatrix> {
    match f {
        Arrow::Expr(e) => t.eval_expr(e),
        Arrow::Normal(nf) => t.eval_normal_form(nf),
    }
}
