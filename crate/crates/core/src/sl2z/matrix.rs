use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An integral matrix `[[p, r], [q, s]]` with `ps - qr = 1`.
///
/// The ordering is lexicographic in `(p, r, q, s)`; it is only used to pick
/// canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatSL2 {
    p: BigInt,
    r: BigInt,
    q: BigInt,
    s: BigInt,
}

impl MatSL2 {
    pub fn new(p: BigInt, r: BigInt, q: BigInt, s: BigInt) -> Result<Self> {
        let det = &p * &s - &q * &r;
        if !det.is_one() {
            return Err(Error::NotSpecialLinear {
                p: p.to_string(),
                r: r.to_string(),
                q: q.to_string(),
                s: s.to_string(),
                det: det.to_string(),
            });
        }
        Ok(MatSL2 { p, r, q, s })
    }

    /// Builds from rows `[[p, r], [q, s]]`.
    pub fn from_rows(rows: [[i64; 2]; 2]) -> Result<Self> {
        let [[p, r], [q, s]] = rows;
        Self::new(p.into(), r.into(), q.into(), s.into())
    }

    /// Like [`MatSL2::from_rows`] for compile-time constants that are known
    /// to have determinant one.
    pub(crate) fn lit(rows: [[i64; 2]; 2]) -> Self {
        Self::from_rows(rows).expect("literal has determinant 1")
    }

    pub(crate) fn unchecked(p: BigInt, r: BigInt, q: BigInt, s: BigInt) -> Self {
        debug_assert!((&p * &s - &q * &r).is_one());
        MatSL2 { p, r, q, s }
    }

    pub fn identity() -> Self {
        Self::lit([[1, 0], [0, 1]])
    }

    pub fn minus_identity() -> Self {
        Self::lit([[-1, 0], [0, -1]])
    }

    pub fn d_a() -> Self {
        Self::lit([[1, 1], [0, 1]])
    }

    pub fn d_b() -> Self {
        Self::lit([[1, 0], [-1, 1]])
    }

    /// `D_a^k = [[1, k], [0, 1]]`.
    pub fn d_a_pow(k: &BigInt) -> Self {
        MatSL2 {
            p: BigInt::one(),
            r: k.clone(),
            q: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// `D_b^k = [[1, 0], [-k, 1]]`.
    pub fn d_b_pow(k: &BigInt) -> Self {
        MatSL2 {
            p: BigInt::one(),
            r: BigInt::zero(),
            q: -k,
            s: BigInt::one(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn rows(&self) -> [[&BigInt; 2]; 2] {
        [[&self.p, &self.r], [&self.q, &self.s]]
    }

    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        MatSL2 {
            p: &self.p * &other.p + &self.r * &other.q,
            r: &self.p * &other.r + &self.r * &other.s,
            q: &self.q * &other.p + &self.s * &other.q,
            s: &self.q * &other.r + &self.s * &other.s,
        }
    }

    pub fn inverse(&self) -> Self {
        MatSL2 {
            p: self.s.clone(),
            r: -&self.r,
            q: -&self.q,
            s: self.p.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        MatSL2 {
            p: -&self.p,
            r: -&self.r,
            q: -&self.q,
            s: -&self.s,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mat_mul(&base);
            }
            base = base.mat_mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `J A^{-1} J` with `J = [[0, 1], [1, 0]]`.
    ///
    /// An involutive anti-automorphism of SL(2,Z) exchanging `D_a` and `D_b`.
    pub fn j_flip(&self) -> Self {
        MatSL2 {
            p: self.p.clone(),
            r: -&self.q,
            q: -&self.r,
            s: self.s.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.p.is_one() && self.s.is_one() && self.r.is_zero() && self.q.is_zero()
    }

    /// Largest absolute value among the entries.
    pub fn height(&self) -> BigInt {
        [&self.p, &self.r, &self.q, &self.s]
            .into_iter()
            .map(|x| x.abs())
            .max()
            .unwrap()
    }

    pub fn to_i64_rows(&self) -> Option<[[i64; 2]; 2]> {
        Some([
            [self.p.to_i64()?, self.r.to_i64()?],
            [self.q.to_i64()?, self.s.to_i64()?],
        ])
    }
}

impl Mul<&MatSL2> for &MatSL2 {
    type Output = MatSL2;
    fn mul(self, rhs: &MatSL2) -> MatSL2 {
        self.mat_mul(rhs)
    }
}

impl Mul for MatSL2 {
    type Output = MatSL2;
    fn mul(self, rhs: MatSL2) -> MatSL2 {
        self.mat_mul(&rhs)
    }
}

impl fmt::Display for MatSL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.p, self.r, self.q, self.s)
    }
}

impl FromStr for MatSL2 {
    type Err = Error;

    /// Accepts `[[p,r],[q,s]]` with arbitrary whitespace.
    fn from_str(text: &str) -> Result<Self> {
        let mut nums = Vec::with_capacity(4);
        let mut shape = String::new();
        let mut cur = String::new();
        let mut cur_pos = 0;
        for (i, c) in text.char_indices() {
            match c {
                '-' | '+' | '0'..='9' => {
                    if cur.is_empty() {
                        cur_pos = i;
                        shape.push('n');
                    }
                    cur.push(c);
                }
                '[' | ']' | ',' => {
                    if !cur.is_empty() {
                        nums.push((cur_pos, std::mem::take(&mut cur)));
                    }
                    shape.push(c);
                }
                c if c.is_whitespace() => {
                    if !cur.is_empty() {
                        nums.push((cur_pos, std::mem::take(&mut cur)));
                    }
                }
                _ => {
                    return Err(Error::parse(
                        i,
                        format!("unexpected `{c}` in matrix literal"),
                    ))
                }
            }
        }
        if !cur.is_empty() {
            nums.push((cur_pos, cur));
        }
        if shape != "[[n,n],[n,n]]" {
            return Err(Error::parse(0, "expected a matrix literal [[p,r],[q,s]]"));
        }
        let mut vals = Vec::with_capacity(4);
        for (pos, n) in nums {
            vals.push(
                BigInt::from_str(&n)
                    .map_err(|_| Error::parse(pos, format!("bad integer `{n}`")))?,
            );
        }
        let s = vals.pop().unwrap();
        let q = vals.pop().unwrap();
        let r = vals.pop().unwrap();
        let p = vals.pop().unwrap();
        MatSL2::new(p, r, q, s)
    }
}
