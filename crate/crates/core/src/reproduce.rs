//! The comparison tables for Funar's pairs, Stebe's pair, the `X_i`/`Y_i`
//! pairs and the homotopy-equivalent lens spaces.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::FieldElement;
use crate::sl2z::{funar_pair, lens_inseparable, named, torus_bundle_homeomorphic, MatSL2};
use crate::tqft::{builtin, Tqft};

pub const TABLES: [&str; 6] = [
    "funar-f1", "funar-f3", "stebe-f3", "xy-f3", "lens-f2", "lens-f3",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: String,
    pub inputs: Vec<String>,
    pub values: Vec<String>,
    /// The two invariant values differ as exact field elements.
    pub distinguished: bool,
    /// Whether the two inputs give homeomorphic manifolds, by the
    /// classification tests (conjugacy up to flip, or lens inseparability).
    pub homeomorphic: bool,
}

/// Triples `(k, q, v)` for the Funar tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub ks: Vec<i64>,
    pub qv: Vec<(i64, i64)>,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            ks: vec![-2, -1, 1, 2],
            qv: vec![(5, 4), (13, 3)],
        }
    }
}

impl Grid {
    pub const ENV: &'static str = "TORUS_TQFT_GRID";

    /// Parses `k1,k2,...;q:v,q:v,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let (ks, qvs) = text
            .split_once(';')
            .ok_or_else(|| Error::parse(0, "grid must look like `k1,k2;q:v,q:v`"))?;
        let int = |s: &str, at: usize| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::parse(at, format!("bad integer `{}`", s.trim())))
        };
        let ks = ks
            .split(',')
            .map(|k| int(k, 0))
            .collect::<Result<Vec<_>>>()?;
        let offset = text.find(';').unwrap() + 1;
        let qv = qvs
            .split(',')
            .map(|pair| {
                let (q, v) = pair
                    .split_once(':')
                    .ok_or_else(|| Error::parse(offset, format!("expected `q:v`, got `{pair}`")))?;
                Ok((int(q, offset)?, int(v, offset)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Grid { ks, qv })
    }

    /// The grid from `TORUS_TQFT_GRID`, or the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV) {
            Ok(s) if !s.trim().is_empty() => Self::parse(&s),
            _ => Ok(Self::default()),
        }
    }

    pub fn triples(&self) -> Vec<(i64, i64, i64)> {
        self.ks
            .iter()
            .flat_map(|&k| self.qv.iter().map(move |&(q, v)| (k, q, v)))
            .collect()
    }
}

fn sealed(name: &str) -> Tqft {
    Tqft::new(builtin(name).expect("built-in")).expect("built-ins validate")
}

fn row(
    label: String,
    inputs: Vec<String>,
    a: FieldElement,
    b: FieldElement,
    homeo: bool,
) -> TableRow {
    TableRow {
        label,
        inputs,
        distinguished: a != b,
        values: vec![a.to_string(), b.to_string()],
        homeomorphic: homeo,
    }
}

fn bundle_row(t: &Tqft, label: String, names: [String; 2], g: &MatSL2, h: &MatSL2) -> TableRow {
    row(
        label,
        vec![format!("{}={g}", names[0]), format!("{}={h}", names[1])],
        t.bundle_invariant(g),
        t.bundle_invariant(h),
        torus_bundle_homeomorphic(g, h),
    )
}

fn funar_rows(tqft: &str, grid: &Grid) -> Result<Vec<TableRow>> {
    let t = sealed(tqft);
    grid.triples()
        .into_par_iter()
        .map(|(k, q, v)| {
            let (g, h) = funar_pair(k, q, v)?;
            Ok(bundle_row(
                &t,
                format!("G/H k={k} q={q} v={v}"),
                ["G".into(), "H".into()],
                &g,
                &h,
            ))
        })
        .collect()
}

fn catalog(name: &str) -> MatSL2 {
    named(name).expect("catalog entry")
}

fn lens_rows(tqft: &str) -> Result<Vec<TableRow>> {
    let t = sealed(tqft);
    [
        ("L(7,1)/L(7,2)", "Lambda1", "Lambda2"),
        ("L(65,8)/L(65,18)", "Lambda8", "Lambda18"),
    ]
    .into_iter()
    .map(|(label, a, b)| {
        let (ma, mb) = (catalog(a), catalog(b));
        Ok(row(
            label.into(),
            vec![format!("{a}={ma}"), format!("{b}={mb}")],
            t.lens_invariant(&ma)?,
            t.lens_invariant(&mb)?,
            lens_inseparable(&ma, &mb),
        ))
    })
    .collect()
}

/// Computes a table; rows are sorted by label.
pub fn reproduce(table: &str, grid: &Grid) -> Result<Vec<TableRow>> {
    let mut rows = match table {
        "funar-f1" => funar_rows("F1", grid)?,
        "funar-f3" => funar_rows("F3", grid)?,
        "stebe-f3" => vec![bundle_row(
            &sealed("F3"),
            "Stebe G/H".into(),
            ["StebeG".into(), "StebeH".into()],
            &catalog("StebeG"),
            &catalog("StebeH"),
        )],
        "xy-f3" => {
            let t = sealed("F3");
            [21, 51, 53, 55]
                .into_par_iter()
                .map(|i| {
                    let (x, y) = (format!("X{i}"), format!("Y{i}"));
                    let (mx, my) = (catalog(&x), catalog(&y));
                    bundle_row(&t, format!("X{i}/Y{i}"), [x, y], &mx, &my)
                })
                .collect()
        }
        "lens-f2" => lens_rows("F2")?,
        "lens-f3" => lens_rows("F3")?,
        other => return Err(Error::UnknownTable(other.into())),
    };
    rows.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(rows)
}
