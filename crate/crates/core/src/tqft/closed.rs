//! Closed-form traces of `ρ_G` and `ρ_H` for Funar's pairs, used as an
//! oracle independent of the word-by-word evaluation.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::datum::two_pow;
use crate::error::{Error, Result};
use crate::scalars::{BigRational, Field, FieldDescriptor, FieldElement};
use crate::sl2z::check_funar_triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormTqft {
    F1,
    F3,
}

impl std::str::FromStr for ClosedFormTqft {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(ClosedFormTqft::F1),
            "F3" => Ok(ClosedFormTqft::F3),
            _ => Err(Error::UnknownBuiltin(s.into())),
        }
    }
}

/// The exponents `(x, y)` with `ρ_G ~ (x = |k|q², y = |k|v)` and
/// `ρ_H ~ (x = |k|q²v, y = |k|)`.
fn exponents(k: i64, q: i64, v: i64) -> ((u64, u64), (u64, u64)) {
    let k = k.unsigned_abs();
    let (q, v) = (q as u64, v as u64);
    ((k * q * q, k * v), (k * q * q * v, k))
}

/// `1 + 2(2^y - 1)(2^x - 1) + 2^{x+y}`, the odd integer in the F1 trace.
fn f1_bracket(x: u64, y: u64) -> BigInt {
    let one = BigInt::one();
    &one + BigInt::from(2) * (two_pow(y) - &one) * (two_pow(x) - &one) + two_pow(x + y)
}

/// The bracketed integers of the F1 traces for `G` and `H`.
pub fn funar_f1_brackets(k: i64, q: i64, v: i64) -> Result<(BigInt, BigInt)> {
    check_funar_triple(k, q, v)?;
    let ((gx, gy), (hx, hy)) = exponents(k, q, v);
    Ok((f1_bracket(gx, gy), f1_bracket(hx, hy)))
}

fn f3_trace(x: u64, y: u64) -> BigRational {
    let one = BigInt::one();
    let a = two_pow(x) - &one;
    let b = two_pow(y) - &one;
    let ab = &a * &b;
    let e = x + y;
    let num = &one
        + BigInt::from(4) * &ab
        + two_pow(e)
        + BigInt::from(4) * &ab * &ab
        + two_pow(e + 2) * &ab
        + two_pow(2 * e);
    BigRational::new(num, two_pow(e))
}

/// `(tr ρ_G, tr ρ_H)` from the published closed forms.
pub fn funar_trace_closed_form(
    which: ClosedFormTqft,
    k: i64,
    q: i64,
    v: i64,
) -> Result<(FieldElement, FieldElement)> {
    check_funar_triple(k, q, v)?;
    let ((gx, gy), (hx, hy)) = exponents(k, q, v);
    Ok(match which {
        ClosedFormTqft::F1 => {
            let one = |x: u64, y: u64| {
                let scale = FieldElement::half_power_of_two(-((x + y) as i64));
                let field = scale.field().clone();
                &scale * &FieldElement::from_rational(&field, BigRational::from(f1_bracket(x, y)))
            };
            (one(gx, gy), one(hx, hy))
        }
        ClosedFormTqft::F3 => {
            let q: Field = Arc::new(FieldDescriptor::Rational);
            (
                FieldElement::from_rational(&q, f3_trace(gx, gy)),
                FieldElement::from_rational(&q, f3_trace(hx, hy)),
            )
        }
    })
}
