use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MatSL2;
use crate::error::{Error, Result};
use crate::scalars::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn matrix_pow(self, k: &BigInt) -> MatSL2 {
        match self {
            Gen::A => MatSL2::d_a_pow(k),
            Gen::B => MatSL2::d_b_pow(k),
        }
    }
}

/// A word `D_{g1}^{e1} D_{g2}^{e2} ...` in the two Dehn twists, kept reduced:
/// no zero exponents and no two adjacent letters on the same generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenWord {
    letters: Vec<(Gen, BigInt)>,
}

impl GenWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters<I, E>(letters: I) -> Self
    where
        I: IntoIterator<Item = (Gen, E)>,
        E: Into<BigInt>,
    {
        let mut w = Self::new();
        for (g, e) in letters {
            w.push(g, e.into());
        }
        w
    }

    /// Appends `g^e`, merging with the last letter when it is on `g`.
    pub fn push(&mut self, g: Gen, e: BigInt) {
        if e.is_zero() {
            return;
        }
        if let Some((last, exp)) = self.letters.last_mut() {
            if *last == g {
                *exp += e;
                if exp.is_zero() {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn extend(&mut self, other: &GenWord) {
        for (g, e) in &other.letters {
            self.push(*g, e.clone());
        }
    }

    pub fn letters(&self) -> &[(Gen, BigInt)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// The word `(D_a D_b)^3`, which evaluates to `-E`.
    pub fn minus_identity() -> Self {
        Self::from_letters([
            (Gen::A, 1),
            (Gen::B, 1),
            (Gen::A, 1),
            (Gen::B, 1),
            (Gen::A, 1),
            (Gen::B, 1),
        ])
    }
}

/// Product of the letters, left to right.
pub fn evaluate_word(w: &GenWord) -> MatSL2 {
    w.letters.iter().fold(MatSL2::identity(), |acc, (g, e)| {
        acc.mat_mul(&g.matrix_pow(e))
    })
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let c = match g {
                Gen::A => 'a',
                Gen::B => 'b',
            };
            write!(f, "{c}^{e}")?;
        }
        Ok(())
    }
}

impl FromStr for GenWord {
    type Err = Error;

    /// Whitespace-separated tokens `a`, `b`, `a^k`, `b^-k`; `1` is the empty word.
    fn from_str(text: &str) -> Result<Self> {
        let mut w = GenWord::new();
        let mut offset = 0;
        for tok in text.split_whitespace() {
            let pos = offset + text[offset..].find(tok).unwrap_or(0);
            offset = pos + tok.len();
            if tok == "1" {
                continue;
            }
            let (g, rest) = tok.split_at(1);
            let g = match g {
                "a" => Gen::A,
                "b" => Gen::B,
                _ => return Err(Error::parse(pos, format!("unknown generator in `{tok}`"))),
            };
            let e = match rest.strip_prefix('^') {
                None if rest.is_empty() => BigInt::one(),
                Some(exp) => BigInt::from_str(exp)
                    .map_err(|_| Error::parse(pos, format!("bad exponent in `{tok}`")))?,
                None => return Err(Error::parse(pos, format!("malformed letter `{tok}`"))),
            };
            w.push(g, e);
        }
        Ok(w)
    }
}

/// Negative continued fraction `m1 - 1/(m2 - 1/(... - 1/mk))`, with
/// `mi >= 2` for `i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFExpansion {
    pub terms: Vec<BigInt>,
}

impl CFExpansion {
    pub fn evaluate(&self) -> BigRational {
        let mut it = self.terms.iter().rev();
        let mut acc = BigRational::from_integer(it.next().expect("non-empty expansion").clone());
        for m in it {
            acc = BigRational::from_integer(m.clone()) - acc.recip();
        }
        acc
    }
}

/// Expands `p/q` by the ceiling recurrence `m = ceil(p/q)`,
/// `p/q -> q/(mq - p)`.
pub fn negative_cf(p: &BigInt, q: &BigInt) -> Result<CFExpansion> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator(p.to_string()));
    }
    let (mut p, mut q) = if q.is_negative() {
        (-p, -q)
    } else {
        (p.clone(), q.clone())
    };
    let mut terms = Vec::new();
    loop {
        let m = p.div_ceil(&q);
        let rem = &m * &q - &p;
        terms.push(m);
        if rem.is_zero() {
            break;
        }
        p = std::mem::replace(&mut q, rem);
    }
    Ok(CFExpansion { terms })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub word: GenWord,
    /// The exponent `m` with `Â^{-1} A = D_a^m`.
    pub residual_m: BigInt,
    /// Whether the factor `-E` was split off (emitted as `(D_a D_b)^3`).
    pub negated: bool,
}

/// Writes `A` as a word in `D_a`, `D_b`.
///
/// After replacing `A` by `-A` when `q < 0`, the first column `(p, q)`
/// is expanded as `[m1, ..., mk]` and
/// `Â = D_a^{m1-1} D_b^{-1} D_a^{m2-2} D_b^{-1} ... D_a^{mk-2} D_b^{-1}`
/// has the same first column as `A`, so `Â^{-1} A` is a power of `D_a`.
pub fn decompose(a: &MatSL2) -> Decomposition {
    let one = BigInt::one();
    if a.q().is_zero() {
        // A = ±[[1, ±r], [0, 1]]
        let negated = a.p().is_negative();
        let m = a.p() * a.r();
        let mut word = if negated {
            GenWord::minus_identity()
        } else {
            GenWord::new()
        };
        word.push(Gen::A, m.clone());
        return Decomposition {
            word,
            residual_m: m,
            negated,
        };
    }

    let negated = a.q().is_negative();
    let target = if negated { a.neg() } else { a.clone() };
    let cf = negative_cf(target.p(), target.q()).expect("q is nonzero");

    let mut hat = GenWord::new();
    for (i, m) in cf.terms.iter().enumerate() {
        let shift = if i == 0 { &one } else { &(&one + &one) };
        hat.push(Gen::A, m - shift);
        hat.push(Gen::B, -&one);
    }
    let hat_m = evaluate_word(&hat);
    debug_assert_eq!((hat_m.p(), hat_m.q()), (target.p(), target.q()));
    let residual = hat_m.inverse().mat_mul(&target);
    let m = residual.r().clone();

    let mut word = if negated {
        GenWord::minus_identity()
    } else {
        GenWord::new()
    };
    word.extend(&hat);
    word.push(Gen::A, m.clone());
    Decomposition {
        word,
        residual_m: m,
        negated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(p: i64, q: i64) -> Vec<i64> {
        negative_cf(&p.into(), &q.into())
            .unwrap()
            .terms
            .iter()
            .map(|t| t.try_into().unwrap())
            .collect()
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(cf(7, 1), vec![7]);
        assert_eq!(cf(7, 2), vec![4, 2]);
        assert_eq!(cf(65, 8), vec![9, 2, 2, 2, 2, 2, 2, 2]);
        assert_eq!(cf(-3, 1), vec![-3]);
        assert_eq!(cf(0, 1), vec![0]);
        assert!(negative_cf(&1.into(), &0.into()).is_err());
    }

    #[test]
    fn continued_fraction_evaluates_back() {
        for (p, q) in [(7, 2), (65, 8), (-11, 4), (5, -3), (0, 7), (1, 9)] {
            let e = negative_cf(&BigInt::from(p), &BigInt::from(q)).unwrap();
            assert_eq!(e.evaluate(), BigRational::new(p.into(), q.into()));
            assert!(e.terms.iter().skip(1).all(|m| *m >= BigInt::from(2)));
        }
    }

    #[test]
    fn word_evaluation() {
        let ab = GenWord::from_letters([(Gen::A, 1), (Gen::B, 1)]);
        assert_eq!(evaluate_word(&ab), MatSL2::lit([[0, 1], [-1, 1]]));
        assert_eq!(
            evaluate_word(&GenWord::minus_identity()),
            MatSL2::minus_identity()
        );
        assert_eq!(
            evaluate_word(&GenWord::from_letters([(Gen::A, 1)])),
            MatSL2::d_a()
        );
    }

    #[test]
    fn words_stay_reduced() {
        let w = GenWord::from_letters([(Gen::A, 2), (Gen::A, -2), (Gen::B, 1), (Gen::B, 0)]);
        assert_eq!(w.letters(), &[(Gen::B, BigInt::one())]);
    }

    #[test]
    fn word_text() {
        let w: GenWord = "a^3 b^-1 a".parse().unwrap();
        assert_eq!(w.to_string(), "a^3 b^-1 a^1");
        assert_eq!(w.to_string().parse::<GenWord>().unwrap(), w);
        assert!("c^2".parse::<GenWord>().is_err());
        assert!("a^x".parse::<GenWord>().is_err());
        assert!("1".parse::<GenWord>().unwrap().is_empty());
    }

    #[test]
    fn decompose_identity_is_empty() {
        let d = decompose(&MatSL2::identity());
        assert!(d.word.is_empty());
        assert!(d.residual_m.is_zero());
        assert!(!d.negated);
    }

    #[test]
    fn decompose_special_shapes() {
        for m in [
            MatSL2::d_b(),
            MatSL2::d_a().pow(-5),
            MatSL2::minus_identity(),
            MatSL2::lit([[0, -1], [1, 0]]),
            MatSL2::lit([[0, 1], [-1, 0]]),
            MatSL2::lit([[-1, 3], [0, -1]]),
            MatSL2::lit([[-3, 2], [1, -1]]),
            MatSL2::lit([[7, -8], [1, -1]]),
            MatSL2::lit([[65, 18], [18, 5]]),
        ] {
            let d = decompose(&m);
            assert_eq!(evaluate_word(&d.word), m, "{m}");
        }
    }

    #[test]
    fn known_word_for_lambda1() {
        let w: GenWord = "a b a a b a a^7 b^-1 a b a".parse().unwrap();
        assert_eq!(evaluate_word(&w), MatSL2::lit([[7, -8], [1, -1]]));
    }
}
