#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_tqft::cobcat::ArrowExpr;
use torus_tqft::sl2z::{evaluate_word, Gen, GenWord, MatSL2};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn m(rows: [[i64; 2]; 2]) -> MatSL2 {
    MatSL2::from_rows(rows).unwrap()
}

/// A word of `1..=max_len` letters with nonzero exponents in `[-max_exp, max_exp]`.
pub fn random_word(rng: &mut impl Rng, max_len: usize, max_exp: i64) -> GenWord {
    let len = rng.gen_range(1..=max_len);
    GenWord::from_letters((0..len).map(|_| {
        let g = if rng.gen_bool(0.5) { Gen::A } else { Gen::B };
        let mut e = 0;
        while e == 0 {
            e = rng.gen_range(-max_exp..=max_exp);
        }
        (g, e)
    }))
}

pub fn random_matrix(rng: &mut impl Rng) -> MatSL2 {
    let a = evaluate_word(&random_word(rng, 6, 3));
    if rng.gen_bool(0.2) {
        a.neg()
    } else {
        a
    }
}

const MAX_WIDTH: usize = 3;

/// An arrow with source `src` and target at most three, of depth at most
/// `depth`. Without `unit`, `η` and `ε` never occur.
pub fn random_expr(rng: &mut impl Rng, src: usize, depth: usize, unit: bool) -> ArrowExpr {
    if depth > 1 {
        match rng.gen_range(0..10) {
            0..=4 => {
                let g = random_expr(rng, src, depth - 1, unit);
                let f = random_expr(rng, g.target(), depth - 1, unit);
                return ArrowExpr::compose(&f, &g).unwrap();
            }
            5..=7 if src >= 1 => {
                let left = rng.gen_range(0..=src);
                let f = random_expr(rng, left, depth - 1, unit);
                let g = random_expr(rng, src - left, depth - 1, unit);
                if f.target() + g.target() <= MAX_WIDTH {
                    return ArrowExpr::tensor(&f, &g);
                }
            }
            _ => {}
        }
    }
    random_atom(rng, src, unit)
}

fn random_atom(rng: &mut impl Rng, src: usize, unit: bool) -> ArrowExpr {
    let cyl = |rng: &mut _| ArrowExpr::cyl(random_matrix(rng));
    match src {
        0 => match rng.gen_range(0..if unit { 3 } else { 2 }) {
            0 => ArrowExpr::gamma(),
            1 => ArrowExpr::id(0),
            _ => ArrowExpr::eta(),
        },
        1 => match rng.gen_range(0..if unit { 4 } else { 3 }) {
            0 | 1 => cyl(rng),
            2 => ArrowExpr::tensor(&ArrowExpr::id(1), &ArrowExpr::gamma()),
            _ => ArrowExpr::eps(),
        },
        _ => {
            // an atom on some legs, identities around it
            let k = rng.gen_range(1..=src.min(2));
            let atom = random_atom(rng, k, unit);
            let before = rng.gen_range(0..=src - k);
            let after = src - k - before;
            let atom = if k == 2 {
                match rng.gen_range(0..3) {
                    0 => ArrowExpr::beta(),
                    1 => ArrowExpr::tau(1, 1),
                    _ => atom,
                }
            } else {
                atom
            };
            if before + atom.target() + after > MAX_WIDTH {
                return ArrowExpr::tau(before + k, after);
            }
            ArrowExpr::tensor_all(&[ArrowExpr::id(before), atom, ArrowExpr::id(after)])
        }
    }
}
