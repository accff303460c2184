use std::sync::Arc;

use super::datum::TqftDatum;
use super::matrix::FieldMatrix;
use crate::error::{Error, Result};
use crate::scalars::{Field, FieldDescriptor, FieldElement};

fn parse_all(field: &Field, xs: &[&str]) -> Vec<FieldElement> {
    xs.iter()
        .map(|s| FieldElement::parse(field, s).expect("built-in literal"))
        .collect()
}

fn square(field: &Field, rows: &[&[&str]]) -> FieldMatrix {
    FieldMatrix::from_rows(field, rows.iter().map(|r| parse_all(field, r)).collect())
        .expect("built-in matrix")
}

fn row(field: &Field, xs: &[&str]) -> FieldMatrix {
    FieldMatrix::row_vector(field, parse_all(field, xs)).expect("built-in row")
}

fn col(field: &Field, xs: &[&str]) -> FieldMatrix {
    FieldMatrix::column_vector(field, parse_all(field, xs)).expect("built-in column")
}

/// Over `Q(√2)`, `w = √2`, so `1/√2 = w/2`. No unit: 1 is not an eigenvalue
/// of `ρ_a`.
fn f1() -> TqftDatum {
    let k: Field = Arc::new(FieldDescriptor::sqrt2());
    TqftDatum {
        name: "F1".into(),
        n: 2,
        rho_a: square(&k, &[&["1/2*w", "1/2*w"], &["0", "w"]]),
        rho_b: square(&k, &[&["w", "0"], &["-w", "1/2*w"]]),
        beta: row(&k, &["2", "1", "1", "-1"]),
        gamma: col(&k, &["1/3", "1/3", "1/3", "-2/3"]),
        eta: None,
        eps: None,
        field: k,
    }
}

/// Over `Q(ξ)`, `w = ξ = e^{2πi/3}`, `ξ² = -1 - ξ`.
fn f2() -> TqftDatum {
    let k: Field = Arc::new(FieldDescriptor::zeta3());
    TqftDatum {
        name: "F2".into(),
        n: 2,
        rho_a: square(&k, &[&["1", "1"], &["0", "w"]]),
        rho_b: square(&k, &[&["w", "0"], &["-w", "1"]]),
        beta: row(&k, &["-w", "1 - w", "1 - w", "1"]),
        // ½(ξ², 1 - ξ², 1 - ξ², -1)
        gamma: col(&k, &["-1/2 - 1/2*w", "1 + 1/2*w", "1 + 1/2*w", "-1/2"]),
        eta: Some(col(&k, &["1", "0"])),
        eps: Some(row(&k, &["-w", "1 - w"])),
        field: k,
    }
}

fn f3() -> TqftDatum {
    let k: Field = Arc::new(FieldDescriptor::Rational);
    TqftDatum {
        name: "F3".into(),
        n: 3,
        rho_a: square(
            &k,
            &[&["1/2", "2", "1"], &["0", "1", "1"], &["0", "0", "2"]],
        ),
        rho_b: square(
            &k,
            &[&["2", "0", "0"], &["-1", "1", "0"], &["1", "-2", "1/2"]],
        ),
        beta: row(&k, &["2", "4", "1", "4", "-4", "-4", "1", "-4", "2"]),
        gamma: col(
            &k,
            &[
                "8/36", "4/36", "4/36", "4/36", "-1/36", "-4/36", "4/36", "-4/36", "8/36",
            ],
        ),
        eta: Some(col(&k, &["4", "1", "0"])),
        eps: Some(row(&k, &["12", "12", "0"])),
        field: k,
    }
}

/// The three data sets `F1`, `F2`, `F3`, exactly as published.
pub fn builtin(name: &str) -> Result<TqftDatum> {
    match name.to_ascii_uppercase().as_str() {
        "F1" => Ok(f1()),
        "F2" => Ok(f2()),
        "F3" => Ok(f3()),
        _ => Err(Error::UnknownBuiltin(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tqft::validate;

    #[test]
    fn builtins_validate() {
        for name in ["F1", "F2", "F3"] {
            let report = validate(&builtin(name).unwrap());
            assert!(report.passed(), "{name}:\n{report}");
        }
    }

    #[test]
    fn f1_has_no_unit() {
        assert!(builtin("F1").unwrap().eta.is_none());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(builtin("F4"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn f2_gamma_matches_xi_expressions() {
        let d = builtin("F2").unwrap();
        let xi = FieldElement::generator(&d.field).unwrap();
        let one = FieldElement::one(&d.field);
        let half = FieldElement::parse(&d.field, "1/2").unwrap();
        let xi2 = &xi * &xi;
        let expected = [
            &half * &xi2,
            &half * &(&one - &xi2),
            &half * &(&one - &xi2),
            -&half,
        ];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(d.gamma.get(i, 0), e);
        }
    }
}
