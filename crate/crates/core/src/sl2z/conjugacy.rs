//! Conjugacy in SL(2,Z), decided by trace type.
//!
//! * `|t| < 2`: the six finite-order classes, separated by the trace and by
//!   the sign of the (definite) binary form attached to `A`, i.e. `sign(q)`.
//! * `|t| = 2`: `±D_a^n`, with `|n|` the content of `±A - E` and its sign
//!   read off the nilpotent part.
//! * `|t| > 2`: the attracting fixed point is run through its negative
//!   continued fraction until the expansion becomes purely periodic; at that
//!   point the conjugated matrix is a positive word in `R = [[1,1],[0,1]]`
//!   and `L = [[1,0],[1,1]]`, unique up to cyclic rotation.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MatSL2;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjugacyClass {
    /// Finite order other than ±E: `trace ∈ {-1, 0, 1}`, `positive = q > 0`.
    Elliptic { trace: i8, positive: bool },
    /// `sign * D_a^n`; `n = 0` gives the centre `±E`.
    Parabolic { sign: i8, n: BigInt },
    /// `sign * (cyclic word in R, L)`, stored as the least rotation.
    Hyperbolic { sign: i8, word: String },
}

impl ConjugacyClass {
    /// A fixed representative matrix of the class.
    pub fn rep(&self) -> MatSL2 {
        match self {
            ConjugacyClass::Elliptic { trace, positive } => {
                let rows = match (trace, positive) {
                    (0, true) => [[0, -1], [1, 0]],
                    (0, false) => [[0, 1], [-1, 0]],
                    (1, true) => [[1, -1], [1, 0]],
                    (1, false) => [[0, 1], [-1, 1]],
                    (-1, true) => [[-1, -1], [1, 0]],
                    (-1, false) => [[0, 1], [-1, -1]],
                    _ => unreachable!("elliptic trace out of range"),
                };
                MatSL2::lit(rows)
            }
            ConjugacyClass::Parabolic { sign, n } => {
                let m = MatSL2::d_a_pow(n);
                if *sign < 0 {
                    m.neg()
                } else {
                    m
                }
            }
            ConjugacyClass::Hyperbolic { sign, word } => {
                let m = word.chars().fold(MatSL2::identity(), |acc, c| {
                    acc.mat_mul(&if c == 'R' {
                        MatSL2::lit([[1, 1], [0, 1]])
                    } else {
                        MatSL2::lit([[1, 0], [1, 1]])
                    })
                });
                if *sign < 0 {
                    m.neg()
                } else {
                    m
                }
            }
        }
    }
}

impl fmt::Display for ConjugacyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugacyClass::Elliptic { trace, positive } => {
                write!(
                    f,
                    "elliptic(trace {trace}, {})",
                    if *positive { "+" } else { "-" }
                )
            }
            ConjugacyClass::Parabolic { sign, n } => {
                let s = if *sign < 0 { "-" } else { "" };
                write!(f, "parabolic({s}D_a^{n})")
            }
            ConjugacyClass::Hyperbolic { sign, word } => {
                let s = if *sign < 0 { "-" } else { "" };
                write!(f, "hyperbolic({s}{word})")
            }
        }
    }
}

pub fn conjugacy_class(a: &MatSL2) -> ConjugacyClass {
    let t = a.trace();
    let two = BigInt::from(2);
    if t.abs() < two {
        let trace: i8 = (&t).try_into().unwrap();
        // t^2 < 4 makes the form definite, so q != 0
        return ConjugacyClass::Elliptic {
            trace,
            positive: a.q().is_positive(),
        };
    }
    if t.abs() == two {
        let (sign, m) = if t.is_negative() {
            (-1, a.neg())
        } else {
            (1, a.clone())
        };
        let g: BigInt = (m.p() - 1i32).gcd(m.r()).gcd(m.q());
        let n = if m.r().is_positive() || (m.r().is_zero() && m.q().is_negative()) {
            g
        } else {
            -g
        };
        return ConjugacyClass::Parabolic { sign, n };
    }
    let (sign, m) = if t.is_negative() {
        (-1, a.neg())
    } else {
        (1, a.clone())
    };
    ConjugacyClass::Hyperbolic {
        sign,
        word: least_rotation(&positive_word(&m)),
    }
}

pub fn is_conjugate(a: &MatSL2, b: &MatSL2) -> bool {
    a.trace() == b.trace() && conjugacy_class(a) == conjugacy_class(b)
}

/// Orientation-preserving homeomorphism of the mapping tori: conjugacy up
/// to the J-flip.
pub fn torus_bundle_homeomorphic(a: &MatSL2, b: &MatSL2) -> bool {
    is_conjugate(a, b) || is_conjugate(a, &b.j_flip())
}

/// For hyperbolic `m` with positive trace: conjugates `m` to a matrix with
/// non-negative entries and spells that matrix in `R` and `L`.
fn positive_word(m: &MatSL2) -> String {
    let (p, q, s) = (m.p(), m.q(), m.s());
    let t = p + s;
    let disc: BigInt = &t * &t - 4i32;
    let root = disc.sqrt();

    // Attracting fixed point alpha = (P + sqrt D) / Q.
    let mut pp: BigInt = p - s;
    let mut qq: BigInt = q * 2i32;
    // floor((P + sqrt D) / Q), using floor(sqrt D) = root and D not a square
    let floor_alpha = |pp: &BigInt, qq: &BigInt| -> BigInt {
        if qq.is_positive() {
            (pp + &root).div_floor(qq)
        } else {
            {
                let num: BigInt = -pp - &root - 1i32;
                let den: BigInt = -qq;
                num.div_floor(&den)
            }
        }
    };

    // C accumulates V_{n_i}^{-1} ... V_{n_1}^{-1}, V_n^{-1} = [[0,1],[-1,n]].
    let mut c = MatSL2::identity();
    let mut seen = HashSet::new();
    while seen.insert((pp.clone(), qq.clone())) {
        let n: BigInt = floor_alpha(&pp, &qq) + 1;
        let v_inv = MatSL2::unchecked(BigInt::zero(), BigInt::one(), -BigInt::one(), n.clone());
        c = v_inv.mat_mul(&c);
        let p1 = &n * &qq - &pp;
        let q1 = (&p1 * &p1 - &disc) / &qq;
        pp = p1;
        qq = q1;
    }
    // The current state repeats an earlier one, so its expansion is purely
    // periodic, and C maps alpha to it.
    let conj = c.mat_mul(m).mat_mul(&c.inverse());
    let rr = MatSL2::lit([[1, 1], [0, 1]]);
    let mut pos = rr.inverse().mat_mul(&conj).mat_mul(&rr);

    let mut word = String::new();
    while !pos.is_identity() {
        let (p, r, q, s) = (pos.p(), pos.r(), pos.q(), pos.s());
        assert!(
            !p.is_negative() && !r.is_negative() && !q.is_negative() && !s.is_negative(),
            "reduction produced a matrix with a negative entry"
        );
        if p >= q && r >= s {
            word.push('R');
            pos = MatSL2::unchecked(p - q, r - s, q.clone(), s.clone());
        } else {
            word.push('L');
            pos = MatSL2::unchecked(p.clone(), r.clone(), q - p, s - r);
        }
    }
    word
}

fn least_rotation(w: &str) -> String {
    (0..w.len().max(1))
        .map(|i| format!("{}{}", &w[i..], &w[..i]))
        .min()
        .unwrap_or_default()
}

fn witness_key(c: &[i128; 4]) -> (i128, i128, usize, [i128; 4]) {
    (
        c.iter().map(|x| x.abs()).max().unwrap(),
        c.iter().map(|x| x.abs()).sum(),
        c.iter().filter(|x| **x < 0).count(),
        *c,
    )
}

/// Exhaustive search for `C` with `|entries| <= bound` and `C A C^{-1} = B`.
///
/// Among all witnesses the one with smallest (max |entry|, sum |entry|,
/// number of negative entries, entries) is returned, so the answer is
/// deterministic.
pub fn brute_force_conjugate(a: &MatSL2, b: &MatSL2, bound: u32) -> Option<MatSL2> {
    if a.trace() != b.trace() {
        return None;
    }
    let to = |m: &MatSL2| -> Option<[i128; 4]> {
        let lim = BigInt::one() << 60;
        let ok = |x: &BigInt| x.abs() < lim;
        let [[p, r], [q, s]] = m.rows();
        (ok(p) && ok(r) && ok(q) && ok(s))
            .then(|| [p, r, q, s].map(|x| i128::try_from(x).expect("bounded entry")))
    };
    let (Some([p, r, q, s]), Some([p2, r2, q2, s2])) = (to(a), to(b)) else {
        // Entries beyond 2^60 are far outside any searchable box.
        return None;
    };
    let bound = bound as i128;

    if q == 0 && r == 0 {
        return (a == b).then(MatSL2::identity);
    }

    let mut best: Option<[i128; 4]> = None;
    let mut consider = |cand: [i128; 4]| {
        let [ca, cb, cc, cd] = cand;
        if cb.abs() > bound || cd.abs() > bound || ca.abs() > bound || cc.abs() > bound {
            return;
        }
        if ca * cd - cb * cc != 1 {
            return;
        }
        // C A = B C
        let ok = ca * p + cb * q == p2 * ca + r2 * cc
            && ca * r + cb * s == p2 * cb + r2 * cd
            && cc * p + cd * q == q2 * ca + s2 * cc
            && cc * r + cd * s == q2 * cb + s2 * cd;
        if ok && best.is_none_or(|b| witness_key(&cand) < witness_key(&b)) {
            best = Some(cand);
        }
    };

    for x in -bound..=bound {
        for y in -bound..=bound {
            if q != 0 {
                // (x, y) = (a, c): solve rows of C A = B C for b and d
                let nb = (p2 - p) * x + r2 * y;
                let nd = q2 * x + (s2 - p) * y;
                if nb % q == 0 && nd % q == 0 {
                    consider([x, nb / q, y, nd / q]);
                }
            } else {
                // (x, y) = (b, d), r != 0
                let na = (p2 - s) * x + r2 * y;
                let nc = q2 * x + (s2 - s) * y;
                if na % r == 0 && nc % r == 0 {
                    consider([na / r, x, nc / r, y]);
                }
            }
        }
    }
    best.map(|[ca, cb, cc, cd]| MatSL2::unchecked(ca.into(), cb.into(), cc.into(), cd.into()))
}
