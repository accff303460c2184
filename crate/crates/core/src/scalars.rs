//! Exact scalars: the rationals and degree-two extensions `Q(w)` with
//! `w^2 = u + v*w`.
//!
//! Every element is kept in the canonical form `a + b*w` with `a`, `b`
//! reduced rationals, so structural equality coincides with equality of
//! field values. Elements of the plain rational field may be combined with
//! elements of any extension; they are promoted on the fly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `2^{-v}` exponent of the largest power of two dividing `x`, i.e. the
/// 2-adic valuation. `None` for zero.
pub fn two_adic_valuation(x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let tz = |n: &BigInt| n.trailing_zeros().unwrap_or(0) as i64;
    Some(tz(x.numer()) - tz(x.denom()))
}

fn is_rational_square(x: &BigRational) -> bool {
    if x.is_negative() {
        return false;
    }
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(x.numer()) && sq(x.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rational,
    /// `Q(w)` with `w^2 = u + v*w`.
    Quadratic {
        u: BigRational,
        v: BigRational,
    },
}

impl FieldDescriptor {
    pub fn quadratic(u: BigRational, v: BigRational) -> Result<Self> {
        // x^2 - v x - u splits iff its discriminant is a rational square.
        let disc = &v * &v + int(4) * &u;
        if is_rational_square(&disc) {
            return Err(Error::ReducibleField {
                u: u.to_string(),
                v: v.to_string(),
            });
        }
        Ok(FieldDescriptor::Quadratic { u, v })
    }

    /// `Q(sqrt 2)`.
    pub fn sqrt2() -> Self {
        FieldDescriptor::Quadratic {
            u: int(2),
            v: int(0),
        }
    }

    /// `Q(xi)` with `xi = e^{2 pi i/3}`, `xi^2 = -1 - xi`.
    pub fn zeta3() -> Self {
        FieldDescriptor::Quadratic {
            u: int(-1),
            v: int(-1),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldDescriptor::Rational)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Quadratic { u, v } => write!(f, "Q(w), w^2 = {u} + {v}*w"),
        }
    }
}

pub type Field = Arc<FieldDescriptor>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    a: BigRational,
    b: BigRational,
}

impl FieldElement {
    pub fn new(field: Field, a: BigRational, b: BigRational) -> Result<Self> {
        if field.is_rational() && !b.is_zero() {
            return Err(Error::Dimension(
                "rational field element with a nonzero w-coefficient".into(),
            ));
        }
        Ok(FieldElement { field, a, b })
    }

    pub fn from_rational(field: &Field, a: BigRational) -> Self {
        FieldElement {
            field: field.clone(),
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        Self::from_rational(field, int(n))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator `w` of a quadratic field.
    pub fn generator(field: &Field) -> Result<Self> {
        if field.is_rational() {
            return Err(Error::Dimension("Q has no quadratic generator".into()));
        }
        Ok(FieldElement {
            field: field.clone(),
            a: BigRational::zero(),
            b: BigRational::one(),
        })
    }

    /// `2^{m/2}` inside `Q(sqrt 2)`, stored as `2^{floor(m/2)} * sqrt(2)^{m mod 2}`.
    pub fn half_power_of_two(m: i64) -> Self {
        let field: Field = Arc::new(FieldDescriptor::sqrt2());
        let whole = Integer::div_floor(&m, &2);
        let odd = m.mod_floor(&2) == 1;
        let scale = if whole >= 0 {
            int(BigInt::one() << whole as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-whole) as usize)
        };
        if odd {
            FieldElement {
                field,
                a: BigRational::zero(),
                b: scale,
            }
        } else {
            FieldElement {
                field,
                a: scale,
                b: BigRational::zero(),
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Rational part `a` of `a + b*w`.
    pub fn re(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient `b` of `w`.
    pub fn w_coeff(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// The value as a rational, when it has no `w` component.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn common_field(&self, other: &Self) -> Result<Field> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            return Ok(self.field.clone());
        }
        match (self.field.is_rational(), other.field.is_rational()) {
            (true, _) => Ok(other.field.clone()),
            (_, true) => Ok(self.field.clone()),
            _ => Err(Error::DescriptorMismatch(
                self.field.to_string(),
                other.field.to_string(),
            )),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(FieldElement {
            field: self.common_field(other)?,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Ok(FieldElement {
            field: self.common_field(other)?,
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        })
    }

    /// `(a1 + b1 w)(a2 + b2 w)` reduced with `w^2 = u + v w`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let field = self.common_field(other)?;
        let (a, b) = match &*field {
            FieldDescriptor::Rational => (&self.a * &other.a, BigRational::zero()),
            FieldDescriptor::Quadratic { u, v } => {
                let bb = &self.b * &other.b;
                let a = &self.a * &other.a + &bb * u;
                let b = &self.a * &other.b + &self.b * &other.a + &bb * v;
                (a, b)
            }
        };
        Ok(FieldElement { field, a, b })
    }

    /// Multiplicative inverse through the norm `N(a + b w) = a^2 + a b v - b^2 u`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        match &*self.field {
            FieldDescriptor::Rational => Ok(FieldElement {
                field: self.field.clone(),
                a: self.a.recip(),
                b: BigRational::zero(),
            }),
            FieldDescriptor::Quadratic { u, v } => {
                // conjugate of w is v - w
                let norm = &self.a * &self.a + &self.a * &self.b * v - &self.b * &self.b * u;
                if norm.is_zero() {
                    return Err(Error::ZeroInverse);
                }
                Ok(FieldElement {
                    field: self.field.clone(),
                    a: (&self.a + &self.b * v) / &norm,
                    b: -&self.b / &norm,
                })
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = FieldElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Parses the textual form (`p/q`, `p/q + r/s*w`, `-w`, ...) inside `field`.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(0, "empty scalar"));
        }
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        // split into signed terms
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut i = 1;
        let mut terms = Vec::new();
        while i <= bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*')
            {
                terms.push((start, &s[start..i]));
                start = i;
            }
            i += 1;
        }
        for (pos, term) in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (coeff, is_w) = if body == "w" {
                (BigRational::one(), true)
            } else if let Some(c) = body.strip_suffix("*w") {
                (parse_rational(c, pos)?, true)
            } else {
                (parse_rational(body, pos)?, false)
            };
            let coeff = if neg { -coeff } else { coeff };
            if is_w {
                b += coeff;
            } else {
                a += coeff;
            }
        }
        FieldElement::new(field.clone(), a, b)
            .map_err(|_| Error::parse(0, format!("`{text}` uses w in the rational field")))
    }
}

fn parse_rational(s: &str, pos: usize) -> Result<BigRational> {
    let bad = || Error::parse(pos, format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `c*w` with the coefficient dropped when it is ±1
        let w_term = |c: &BigRational| {
            if c.is_one() {
                "w".to_string()
            } else {
                format!("{c}*w")
            }
        };
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return if self.b.is_negative() {
                write!(f, "-{}", w_term(&-&self.b))
            } else {
                write!(f, "{}", w_term(&self.b))
            };
        }
        if self.b.is_negative() {
            write!(f, "{} - {}", self.a, w_term(&-&self.b))
        } else {
            write!(f, "{} + {}", self.a, w_term(&self.b))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in incompatible fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field arithmetic")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
