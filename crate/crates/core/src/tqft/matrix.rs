use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalars::{Field, FieldElement};

/// A dense matrix over one exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            field: field.clone(),
            data: vec![FieldElement::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::one(field);
        }
        m
    }

    /// Builds from rows, embedding rational entries into `field`.
    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for x in rows.into_iter().flatten() {
            data.push(embed(field, x)?);
        }
        Ok(FieldMatrix {
            rows: r,
            cols: c,
            field: field.clone(),
            data,
        })
    }

    pub fn row_vector(field: &Field, entries: Vec<FieldElement>) -> Result<Self> {
        Self::from_rows(field, vec![entries])
    }

    pub fn column_vector(field: &Field, entries: Vec<FieldElement>) -> Result<Self> {
        Self::from_rows(field, entries.into_iter().map(|x| vec![x]).collect())
    }

    pub fn scalar(x: FieldElement) -> Self {
        FieldMatrix {
            rows: 1,
            cols: 1,
            field: x.field().clone(),
            data: vec![x],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) -> Result<()> {
        self.data[i * self.cols + j] = embed(&self.field, x)?;
        Ok(())
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    /// The single entry of a 1×1 matrix.
    pub fn as_scalar(&self) -> Option<&FieldElement> {
        (self.shape() == (1, 1)).then(|| &self.data[0])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.rows)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].checked_add(&a.checked_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; the left factor indexes the most significant digit.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(&self.field, r, c);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.data[(i1 * other.rows + i2) * c + j1 * other.cols + j2] =
                            a.checked_mul(b)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(
                "cannot add matrices of different shapes".into(),
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(FieldMatrix {
            data,
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::Dimension("trace of a non-square matrix".into()));
        }
        (0..self.rows).try_fold(FieldElement::zero(&self.field), |acc, i| {
            acc.checked_add(self.get(i, i))
        })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(&self.field, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::ZeroInverse)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a.get(col, col).inv()?;
            a.scale_row(col, &p)?;
            inv.scale_row(col, &p)?;
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &f)?;
                inv.sub_row_multiple(r, col, &f)?;
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, i: usize, f: &FieldElement) -> Result<()> {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            self.data[idx] = self.data[idx].checked_mul(f)?;
        }
        Ok(())
    }

    /// row_i -= f * row_j
    fn sub_row_multiple(&mut self, i: usize, j: usize, f: &FieldElement) -> Result<()> {
        for c in 0..self.cols {
            let t = self.data[j * self.cols + c].checked_mul(f)?;
            let idx = i * self.cols + c;
            self.data[idx] = self.data[idx].checked_sub(&t)?;
        }
        Ok(())
    }

    /// `self^e` for a square matrix; negative exponents use `inv`, which
    /// must be the inverse of `self`.
    pub fn pow_with_inverse(&self, inv: &Self, e: &BigInt) -> Result<Self> {
        let base0 = if e.is_negative() { inv } else { self };
        let mag = e.magnitude();
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = base0.clone();
        for bit in 0..mag.bits() {
            if mag.bit(bit) {
                acc = acc.mul(&base)?;
            }
            if bit + 1 < mag.bits() {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let inv = if e < 0 { self.inverse()? } else { self.clone() };
        self.pow_with_inverse(&inv, &BigInt::from(e))
    }

    /// Reorders rows: row `i` of `self` becomes row `map[i]`.
    pub fn permute_rows(&self, map: &[usize]) -> Self {
        let mut out = self.clone();
        for (i, &to) in map.iter().enumerate() {
            for c in 0..self.cols {
                out.data[to * self.cols + c] = self.data[i * self.cols + c].clone();
            }
        }
        out
    }

    /// Reorders columns: column `j` of the result is column `map[j]` of `self`.
    pub fn permute_cols(&self, map: &[usize]) -> Self {
        let mut out = self.clone();
        for r in 0..self.rows {
            for (j, &from) in map.iter().enumerate() {
                out.data[r * self.cols + j] = self.data[r * self.cols + from].clone();
            }
        }
        out
    }

    /// The permutation matrix with `P e_x = e_{map[x]}`.
    pub fn permutation(field: &Field, map: &[usize]) -> Self {
        let n = map.len();
        let mut m = Self::zeros(field, n, n);
        for (x, &y) in map.iter().enumerate() {
            m.data[y * n + x] = FieldElement::one(field);
        }
        m
    }
}

fn embed(field: &Field, x: FieldElement) -> Result<FieldElement> {
    if x.field() == field {
        return Ok(x);
    }
    if x.field().is_rational() {
        return Ok(FieldElement::from_rational(field, x.re().clone()));
    }
    Err(Error::DescriptorMismatch(
        x.field().to_string(),
        field.to_string(),
    ))
}

/// Index map of the leg permutation on `(F^n)^{⊗k}` sending leg `i` to
/// position `sigma[i]`, in big-endian tensor indexing.
pub fn leg_permutation(n: usize, sigma: &[usize]) -> Vec<usize> {
    let k = sigma.len();
    let total = n.pow(k as u32);
    let mut digits = vec![0; k];
    let mut out_digits = vec![0; k];
    (0..total)
        .map(|mut x| {
            for i in (0..k).rev() {
                digits[i] = x % n;
                x /= n;
            }
            for i in 0..k {
                out_digits[sigma[i]] = digits[i];
            }
            out_digits.iter().fold(0, |acc, d| acc * n + d)
        })
        .collect()
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
