//! SL(2,Z): matrices, Dehn-twist words, continued fractions, conjugacy and
//! the lens-space / torus-bundle classification tests.

mod catalog;
mod conjugacy;
mod lens;
mod matrix;
mod word;

pub use catalog::{named, named_matrices};
pub use conjugacy::{
    brute_force_conjugate, conjugacy_class, is_conjugate, torus_bundle_homeomorphic, ConjugacyClass,
};
pub use lens::{check_funar_triple, funar_pair, lens_inseparable, lens_params, LensParams};
pub use matrix::MatSL2;
pub use word::{decompose, evaluate_word, negative_cf, CFExpansion, Decomposition, Gen, GenWord};

/// `A B`.
pub fn mat_mul(a: &MatSL2, b: &MatSL2) -> MatSL2 {
    a.mat_mul(b)
}

/// `J A^{-1} J`.
pub fn j_flip(a: &MatSL2) -> MatSL2 {
    a.j_flip()
}
