use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::matrix::{leg_permutation, FieldMatrix};
use crate::cobcat::{ArrowExpr, FactorKind, Node, NormalForm};
use crate::error::{Error, Result};
use crate::scalars::{BigRational, Field, FieldDescriptor, FieldElement};
use crate::sl2z::{decompose, Gen, MatSL2};

/// Raw TQFT data: the representation of the two Dehn twists, the pairing
/// `β`, the copairing `γ`, and optionally the unit `η` and counit `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TqftDatum {
    pub name: String,
    pub field: Field,
    pub n: usize,
    pub rho_a: FieldMatrix,
    pub rho_b: FieldMatrix,
    /// `1 × n²`.
    pub beta: FieldMatrix,
    /// `n² × 1`.
    pub gamma: FieldMatrix,
    /// `n × 1`.
    pub eta: Option<FieldMatrix>,
    /// `1 × n`; derived as `β (1 ⊗ η)` when absent.
    pub eps: Option<FieldMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub datum: String,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, result: Result<Option<String>>) {
        let (passed, detail) = match result {
            Ok(None) => (true, String::new()),
            Ok(Some(d)) => (false, d),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(AxiomCheck {
            name,
            passed,
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `None` when equal, otherwise the first differing entry.
fn compare(lhs: &FieldMatrix, rhs: &FieldMatrix) -> Option<String> {
    if lhs.shape() != rhs.shape() {
        return Some(format!("shapes {:?} vs {:?}", lhs.shape(), rhs.shape()));
    }
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Some(format!(
                    "entry ({i},{j}): {} vs {}",
                    lhs.get(i, j),
                    rhs.get(i, j)
                ));
            }
        }
    }
    None
}

fn swap_matrix(field: &Field, n: usize) -> FieldMatrix {
    FieldMatrix::permutation(field, &leg_permutation(n, &[1, 0]))
}

/// Checks every axiom the data must satisfy to define a functor on the
/// torus categories.
pub fn validate(d: &TqftDatum) -> ValidationReport {
    let mut report = ValidationReport {
        datum: d.name.clone(),
        checks: Vec::new(),
    };
    let n = d.n;
    let mut dims = Vec::new();
    let mut want = |what: &str, m: &FieldMatrix, shape: (usize, usize)| {
        if m.shape() != shape {
            dims.push(format!("{what} is {:?}, expected {:?}", m.shape(), shape));
        }
    };
    want("rho_a", &d.rho_a, (n, n));
    want("rho_b", &d.rho_b, (n, n));
    want("beta", &d.beta, (1, n * n));
    want("gamma", &d.gamma, (n * n, 1));
    if let Some(eta) = &d.eta {
        want("eta", eta, (n, 1));
    }
    if let Some(eps) = &d.eps {
        want("eps", eps, (1, n));
    }
    let fields_agree = [&d.rho_a, &d.rho_b, &d.beta, &d.gamma]
        .into_iter()
        .chain(d.eta.iter())
        .chain(d.eps.iter())
        .all(|m| m.field() == &d.field);
    if !fields_agree {
        dims.push("entries are not all in the declared field".into());
    }
    let dims_ok = dims.is_empty() && n > 0;
    report.push(
        "dimensions",
        Ok((!dims_ok).then(|| {
            if n == 0 {
                "n must be positive".to_string()
            } else {
                dims.join("; ")
            }
        })),
    );
    if !dims_ok {
        return report;
    }

    let f = &d.field;
    let id = FieldMatrix::identity(f, n);
    let (a, b) = (&d.rho_a, &d.rho_b);
    report.push(
        "rho invertible",
        (|| {
            a.inverse()?;
            b.inverse()?;
            Ok(None)
        })()
        .or_else(|e| match e {
            Error::ZeroInverse => Ok(Some("singular twist matrix".into())),
            e => Err(e),
        }),
    );
    report.push(
        "braid relation",
        (|| Ok(compare(&a.mul(b)?.mul(a)?, &b.mul(a)?.mul(b)?)))(),
    );
    report.push(
        "(rho_a rho_b)^6 = 1",
        (|| Ok(compare(&a.mul(b)?.pow(6)?, &id)))(),
    );
    let tau = swap_matrix(f, n);
    report.push(
        "beta tau = beta",
        (|| Ok(compare(&d.beta.mul(&tau)?, &d.beta)))(),
    );
    report.push(
        "tau gamma = gamma",
        (|| Ok(compare(&tau.mul(&d.gamma)?, &d.gamma)))(),
    );
    report.push(
        "snake (beta x 1)(1 x gamma) = 1",
        (|| Ok(compare(&d.beta.kron(&id)?.mul(&id.kron(&d.gamma)?)?, &id)))(),
    );
    report.push(
        "snake (1 x beta)(gamma x 1) = 1",
        (|| Ok(compare(&id.kron(&d.beta)?.mul(&d.gamma.kron(&id)?)?, &id)))(),
    );
    report.push(
        "beta (rho_a x 1) = beta (1 x rho_b)",
        (|| {
            Ok(compare(
                &d.beta.mul(&a.kron(&id)?)?,
                &d.beta.mul(&id.kron(b)?)?,
            ))
        })(),
    );
    if let Some(eta) = &d.eta {
        report.push("rho_a eta = eta", (|| Ok(compare(&a.mul(eta)?, eta)))());
        if let Some(eps) = &d.eps {
            report.push(
                "eps = beta (1 x eta)",
                (|| Ok(compare(eps, &d.beta.mul(&id.kron(eta)?)?)))(),
            );
        }
    }
    report
}

/// A validated datum, ready for evaluation.
#[derive(Clone, Debug)]
pub struct Tqft {
    datum: TqftDatum,
    rho_a_inv: FieldMatrix,
    rho_b_inv: FieldMatrix,
    eps: Option<FieldMatrix>,
}

impl Tqft {
    /// Seals `datum` after a passing validation.
    pub fn new(datum: TqftDatum) -> Result<Self> {
        let report = validate(&datum);
        if !report.passed() {
            return Err(Error::Validation(Box::new(report)));
        }
        let rho_a_inv = datum.rho_a.inverse()?;
        let rho_b_inv = datum.rho_b.inverse()?;
        let eps = match (&datum.eps, &datum.eta) {
            (Some(e), _) => Some(e.clone()),
            (None, Some(eta)) => Some(
                datum
                    .beta
                    .mul(&FieldMatrix::identity(&datum.field, datum.n).kron(eta)?)?,
            ),
            (None, None) => None,
        };
        Ok(Tqft {
            datum,
            rho_a_inv,
            rho_b_inv,
            eps,
        })
    }

    pub fn datum(&self) -> &TqftDatum {
        &self.datum
    }

    pub fn name(&self) -> &str {
        &self.datum.name
    }

    pub fn field(&self) -> &Field {
        &self.datum.field
    }

    pub fn n(&self) -> usize {
        self.datum.n
    }

    pub fn has_unit(&self) -> bool {
        self.datum.eta.is_some()
    }

    fn eta(&self) -> Result<&FieldMatrix> {
        self.datum
            .eta
            .as_ref()
            .ok_or_else(|| Error::MissingUnit(self.datum.name.clone()))
    }

    /// The counit, as given or derived from `η`.
    pub fn eps(&self) -> Result<&FieldMatrix> {
        self.eps
            .as_ref()
            .ok_or_else(|| Error::MissingUnit(self.datum.name.clone()))
    }

    /// Image of `A` under the representation, through the twist word of `A`.
    pub fn rho(&self, a: &MatSL2) -> FieldMatrix {
        let d = decompose(a);
        let mut acc = FieldMatrix::identity(self.field(), self.n());
        for (g, e) in d.word.letters() {
            let (m, inv) = match g {
                Gen::A => (&self.datum.rho_a, &self.rho_a_inv),
                Gen::B => (&self.datum.rho_b, &self.rho_b_inv),
            };
            acc = acc
                .mul(&m.pow_with_inverse(inv, e).expect("square"))
                .expect("square");
        }
        acc
    }

    fn identity_legs(&self, k: usize) -> FieldMatrix {
        FieldMatrix::identity(self.field(), self.n().pow(k as u32))
    }

    /// Functorial evaluation of an expression.
    pub fn eval_expr(&self, e: &ArrowExpr) -> Result<FieldMatrix> {
        Ok(match e.node() {
            Node::Id(k) => self.identity_legs(*k),
            Node::Tau(m, k) => {
                let sigma: Vec<usize> = (0..m + k)
                    .map(|i| if i < *m { i + k } else { i - m })
                    .collect();
                FieldMatrix::permutation(self.field(), &leg_permutation(self.n(), &sigma))
            }
            Node::Cyl(a) => self.rho(a),
            Node::Beta => self.datum.beta.clone(),
            Node::Gamma => self.datum.gamma.clone(),
            Node::Eta => self.eta()?.clone(),
            Node::Eps => self.eps()?.clone(),
            Node::Compose(f, g) => self.eval_expr(f)?.mul(&self.eval_expr(g)?)?,
            Node::Tensor(f, g) => self.eval_expr(f)?.kron(&self.eval_expr(g)?)?,
        })
    }

    fn eval_factor(&self, kind: FactorKind, a: &MatSL2) -> Result<FieldMatrix> {
        let rho = self.rho(a);
        let rho1 = || rho.kron(&self.identity_legs(1));
        let d = &self.datum;
        match kind {
            FactorKind::C0 => self.eps()?.mul(&rho)?.mul(self.eta()?),
            FactorKind::C1 => d.beta.mul(&rho1()?),
            FactorKind::C2 => Ok(rho.clone()),
            FactorKind::C3 => rho1()?.mul(&d.gamma),
            FactorKind::C4 => d.beta.mul(&rho1()?)?.mul(&d.gamma),
            FactorKind::C5 => rho.mul(self.eta()?),
            FactorKind::C6 => self.eps()?.mul(&rho),
        }
    }

    /// Evaluation of a normal form `τ^t ∘ C ∘ τ^s`.
    pub fn eval_normal_form(&self, nf: &NormalForm) -> Result<FieldMatrix> {
        let mut body = FieldMatrix::identity(self.field(), 1);
        for f in nf.factors() {
            body = body.kron(&self.eval_factor(f.kind, &f.param)?)?;
        }
        let n = self.n();
        // column x of the arrow reads column sigma_s(x) of the body, where the
        // leg at source position source_perm[i] becomes port i
        let sp = nf.source_perm().images();
        let mut sigma_s = vec![0; sp.len()];
        for (i, &pos) in sp.iter().enumerate() {
            sigma_s[pos] = i;
        }
        let body = body.permute_cols(&leg_permutation(n, &sigma_s));
        Ok(body.permute_rows(&leg_permutation(n, nf.target_perm().images())))
    }

    /// `F(Bun_A) = tr ρ_A`.
    pub fn bundle_invariant(&self, a: &MatSL2) -> FieldElement {
        self.rho(a).trace().expect("square")
    }

    /// `β ∘ (ρ_A ⊗ 1) ∘ γ`, evaluated as a full contraction.
    pub fn bundle_contraction(&self, a: &MatSL2) -> Result<FieldElement> {
        let e = ArrowExpr::chain(&[
            ArrowExpr::beta(),
            ArrowExpr::tensor(&ArrowExpr::cyl(a.clone()), &ArrowExpr::id(1)),
            ArrowExpr::gamma(),
        ])?;
        Ok(self
            .eval_expr(&e)?
            .as_scalar()
            .expect("closed arrow")
            .clone())
    }

    /// `ε ρ_A η`, the value on the lens space glued along `A`.
    pub fn lens_invariant(&self, a: &MatSL2) -> Result<FieldElement> {
        let v = self.eps()?.mul(&self.rho(a))?.mul(self.eta()?)?;
        Ok(v.as_scalar().expect("1x1").clone())
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct FieldJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct DatumJson {
    name: String,
    field: FieldJson,
    n: usize,
    rho_a: Vec<Vec<String>>,
    rho_b: Vec<Vec<String>>,
    beta: Vec<String>,
    gamma: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eta: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps: Option<Vec<String>>,
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let q: Field = Arc::new(FieldDescriptor::Rational);
    Ok(FieldElement::parse(&q, s)?.re().clone())
}

impl TqftDatum {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DatumJson = serde_json::from_str(text)?;
        let field: Field = Arc::new(match raw.field.kind.to_ascii_lowercase().as_str() {
            "rational" => FieldDescriptor::Rational,
            "quadratic" => {
                let get = |x: &Option<String>, nm: &str| {
                    x.as_deref()
                        .ok_or_else(|| Error::parse(0, format!("quadratic field needs `{nm}`")))
                        .and_then(parse_rat)
                };
                FieldDescriptor::quadratic(get(&raw.field.u, "u")?, get(&raw.field.v, "v")?)?
            }
            other => return Err(Error::parse(0, format!("unknown field kind `{other}`"))),
        });
        let scalars = |v: &[String]| -> Result<Vec<FieldElement>> {
            v.iter().map(|s| FieldElement::parse(&field, s)).collect()
        };
        let square = |rows: &[Vec<String>]| -> Result<FieldMatrix> {
            FieldMatrix::from_rows(
                &field,
                rows.iter().map(|r| scalars(r)).collect::<Result<_>>()?,
            )
        };
        Ok(TqftDatum {
            name: raw.name,
            n: raw.n,
            rho_a: square(&raw.rho_a)?,
            rho_b: square(&raw.rho_b)?,
            beta: FieldMatrix::row_vector(&field, scalars(&raw.beta)?)?,
            gamma: FieldMatrix::column_vector(&field, scalars(&raw.gamma)?)?,
            eta: raw
                .eta
                .map(|v| FieldMatrix::column_vector(&field, scalars(&v)?))
                .transpose()?,
            eps: raw
                .eps
                .map(|v| FieldMatrix::row_vector(&field, scalars(&v)?))
                .transpose()?,
            field,
        })
    }

    pub fn to_json(&self) -> String {
        let strs = |m: &FieldMatrix| {
            m.entries()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
        };
        let rows = |m: &FieldMatrix| {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                .collect()
        };
        let field = match &*self.field {
            FieldDescriptor::Rational => FieldJson {
                kind: "rational".into(),
                u: None,
                v: None,
            },
            FieldDescriptor::Quadratic { u, v } => FieldJson {
                kind: "quadratic".into(),
                u: Some(u.to_string()),
                v: Some(v.to_string()),
            },
        };
        let raw = DatumJson {
            name: self.name.clone(),
            field,
            n: self.n,
            rho_a: rows(&self.rho_a),
            rho_b: rows(&self.rho_b),
            beta: strs(&self.beta),
            gamma: strs(&self.gamma),
            eta: self.eta.as_ref().map(strs),
            eps: self.eps.as_ref().map(strs),
        };
        serde_json::to_string_pretty(&raw).expect("datum serializes")
    }
}

/// `ρ_A` for a validated datum.
pub fn rho(t: &Tqft, a: &MatSL2) -> FieldMatrix {
    t.rho(a)
}

pub fn bundle_invariant(t: &Tqft, a: &MatSL2) -> FieldElement {
    t.bundle_invariant(a)
}

pub fn lens_invariant(t: &Tqft, a: &MatSL2) -> Result<FieldElement> {
    t.lens_invariant(a)
}

/// Exponent helper shared with the closed forms.
pub(crate) fn two_pow(e: u64) -> BigInt {
    BigInt::from(1) << e
}
