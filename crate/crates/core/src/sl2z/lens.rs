use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MatSL2;
use crate::error::{Error, Result};

/// `(p, q)` of the lens space glued along `A`: the first column of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LensParams {
    pub p: BigInt,
    pub q: BigInt,
}

pub fn lens_params(a: &MatSL2) -> LensParams {
    LensParams {
        p: a.p().clone(),
        q: a.q().clone(),
    }
}

/// Whether the lens spaces glued along `a` and `b` are homeomorphic:
/// `p = p'` and `q ≡ q'` or `q q' ≡ 1 (mod |p|)`.
///
/// `p` is compared with its sign. For `p = 0` the congruences degenerate to
/// the integer equalities `q = q'` and `q q' = 1`.
pub fn lens_inseparable(a: &MatSL2, b: &MatSL2) -> bool {
    let (p, q) = (a.p(), a.q());
    let (p2, q2) = (b.p(), b.q());
    if p != p2 {
        return false;
    }
    if p.is_zero() {
        return q == q2 || (q * q2).is_one();
    }
    let m = p.abs();
    let d: BigInt = q - q2;
    let e: BigInt = q * q2 - 1i32;
    d.mod_floor(&m).is_zero() || e.mod_floor(&m).is_zero()
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn has_prime_factor_3_mod_4(mut n: u64) -> bool {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            if d % 4 == 3 {
                return true;
            }
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    n > 1 && n % 4 == 3
}

/// Checks the hypotheses on `(k, q, v)` and names the first one that fails.
pub fn check_funar_triple(k: i64, q: i64, v: i64) -> Result<()> {
    let fail = |m: String| Err(Error::FunarPrecondition(m));
    if k == 0 {
        return fail("k must be nonzero".into());
    }
    if q <= 0 || !is_prime(q as u64) || q % 4 != 1 {
        return fail(format!("q = {q} is not a prime ≡ 1 mod 4"));
    }
    if v <= 0 {
        return fail(format!("v = {v} is not positive"));
    }
    let target = (-v).rem_euclid(q);
    if target == 0 || !(1..q).any(|x| (x * x) % q == target) {
        return fail(format!("-v = {} mod {q} is not a nonzero square", target));
    }
    if v % 4 != 0 && !has_prime_factor_3_mod_4(v as u64) {
        return fail(format!(
            "v = {v} is neither divisible by 4 nor by a prime ≡ 3 mod 4"
        ));
    }
    Ok(())
}

/// `G = [[1, kq²], [kv, 1 + k²q²v]]` and `H = [[1, k], [kq²v, 1 + k²q²v]]`.
pub fn funar_pair(k: i64, q: i64, v: i64) -> Result<(MatSL2, MatSL2)> {
    check_funar_triple(k, q, v)?;
    let (k, q, v) = (BigInt::from(k), BigInt::from(q), BigInt::from(v));
    let q2 = &q * &q;
    let corner = BigInt::one() + &k * &k * &q2 * &v;
    let g = MatSL2::new(BigInt::one(), &k * &q2, &k * &v, corner.clone())?;
    let h = MatSL2::new(BigInt::one(), k.clone(), &k * &q2 * &v, corner)?;
    Ok((g, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: [[i64; 2]; 2]) -> MatSL2 {
        MatSL2::lit(rows)
    }

    #[test]
    fn params_are_first_column() {
        let p = lens_params(&m([[7, -8], [1, -1]]));
        assert_eq!((p.p, p.q), (7.into(), 1.into()));
        let p = lens_params(&MatSL2::identity());
        assert_eq!((p.p, p.q), (1.into(), 0.into()));
    }

    #[test]
    fn inseparability() {
        let l1 = m([[7, -8], [1, -1]]);
        let l2 = m([[7, -4], [2, -1]]);
        assert!(!lens_inseparable(&l1, &l2));
        let a = m([[7, 3], [2, 1]]);
        let b = m([[7, 5], [4, 3]]);
        assert!(lens_inseparable(&a, &b));
        assert!(lens_inseparable(&l1, &l1.mat_mul(&MatSL2::d_a().pow(3))));
        assert!(lens_inseparable(&l2, &l2.j_flip()));
        // p = 0 uses plain equality
        assert!(lens_inseparable(
            &m([[0, -1], [1, 0]]),
            &m([[0, -1], [1, 5]])
        ));
        assert!(!lens_inseparable(
            &m([[0, -1], [1, 0]]),
            &m([[0, 1], [-1, 0]])
        ));
    }

    #[test]
    fn funar_matrices() {
        let (g, h) = funar_pair(1, 5, 4).unwrap();
        assert_eq!(g, m([[1, 25], [4, 101]]));
        assert_eq!(h, m([[1, 1], [100, 101]]));
        let (g, h) = funar_pair(-1, 5, 4).unwrap();
        assert_eq!(g, m([[1, -25], [-4, 101]]));
        assert_eq!(h, m([[1, -1], [-100, 101]]));
        assert_eq!(g.trace(), h.trace());
    }

    #[test]
    fn funar_preconditions() {
        assert!(matches!(
            funar_pair(1, 6, 4),
            Err(Error::FunarPrecondition(_))
        ));
        assert!(funar_pair(0, 5, 4).is_err());
        assert!(funar_pair(1, 5, 0).is_err());
        // -1 mod 5 = 4 = 2^2 but 1 has no prime factor ≡ 3 mod 4
        assert!(funar_pair(1, 5, 1).is_err());
        // -2 mod 5 = 3 is not a square
        assert!(funar_pair(1, 5, 2).is_err());
        assert!(funar_pair(2, 13, 3).is_ok());
    }
}
