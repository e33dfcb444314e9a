//! JSON description files for algebroids, bivectors and cochain literals.
//!
//! Polynomials are strings in the polynomial text syntax. Printing a parsed
//! document and parsing it again gives the same objects.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebroid::{Field, LieAlgebroid, Representation};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, PolyMatrix};
use crate::poisson::PoissonBivector;
use crate::poly::{coords, Coords, Polynomial};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixLiteral {
    Real(Vec<Vec<String>>),
    Complex { re: Vec<Vec<String>>, im: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub rank: usize,
    #[serde(default = "real_field")]
    pub field: String,
    /// Frame name to connection matrix; missing frames act by zero.
    #[serde(default)]
    pub connection: BTreeMap<String, MatrixLiteral>,
}

fn real_field() -> String {
    "real".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub representation: String,
    pub h: MatrixLiteral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidFile {
    #[serde(default)]
    pub coordinates: Vec<String>,
    pub frame: Vec<String>,
    /// One row per frame element; may be omitted over a point.
    #[serde(default)]
    pub anchor: Vec<Vec<String>>,
    /// `"ei,ej"` to frame name to polynomial.
    #[serde(default)]
    pub brackets: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub representations: BTreeMap<String, RepresentationFile>,
    #[serde(default)]
    pub metrics: BTreeMap<String, MetricFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivectorFile {
    pub coordinates: Vec<String>,
    /// `"i,j"` (1-based indices or coordinate names) to polynomial.
    pub bivector: BTreeMap<String, String>,
}

/// A parsed algebroid file. Nothing is validated.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub algebroid: LieAlgebroid,
    pub representations: BTreeMap<String, Representation>,
    /// Metric name to (representation name, matrix).
    pub metrics: BTreeMap<String, (String, CMatrix)>,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn poly(s: &str, c: &Coords, ctx: &str) -> Result<Polynomial> {
    Polynomial::parse(s, c).map_err(|e| perr(format!("{ctx}: {e}")))
}

fn matrix(rows: &[Vec<String>], c: &Coords, size: usize, ctx: &str) -> Result<PolyMatrix> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(perr(format!("{ctx}: expected a {size}x{size} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| poly(s, c, ctx)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMatrix::from_rows(c, rows))
}

fn cmatrix(m: &MatrixLiteral, c: &Coords, size: usize, ctx: &str) -> Result<CMatrix> {
    Ok(match m {
        MatrixLiteral::Real(rows) => CMatrix::real(matrix(rows, c, size, ctx)?),
        MatrixLiteral::Complex { re, im } => CMatrix {
            re: matrix(re, c, size, ctx)?,
            im: matrix(im, c, size, ctx)?,
        },
    })
}

fn print_matrix(m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn print_cmatrix(m: &CMatrix, field: Field) -> MatrixLiteral {
    match field {
        Field::Real => MatrixLiteral::Real(print_matrix(&m.re)),
        Field::Complex => MatrixLiteral::Complex {
            re: print_matrix(&m.re),
            im: print_matrix(&m.im),
        },
    }
}

fn frame_pair(key: &str, a_frame: &[String]) -> Result<(usize, usize)> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let find = |n: &str| {
        a_frame
            .iter()
            .position(|f| f == n)
            .ok_or_else(|| perr(format!("bracket key {key:?}: unknown frame element {n:?}")))
    };
    match parts.as_slice() {
        [x, y] => Ok((find(x)?, find(y)?)),
        _ => Err(perr(format!("bracket key {key:?} must be \"ei,ej\""))),
    }
}

impl AlgebroidFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| perr(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self) -> Result<Document> {
        let c = coords(&self.coordinates).map_err(|e| perr(e.to_string()))?;
        let r = self.frame.len();
        let anchor: Vec<Vec<Polynomial>> = if self.anchor.is_empty() && c.is_empty() {
            vec![Vec::new(); r]
        } else {
            if self.anchor.len() != r {
                return Err(perr(format!("anchor needs {r} rows")));
            }
            self.anchor
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    if row.len() != c.len() {
                        return Err(perr(format!("anchor row {} needs {} entries", i + 1, c.len())));
                    }
                    row.iter().map(|s| poly(s, &c, "anchor")).collect()
                })
                .collect::<Result<_>>()?
        };
        let mut br = BTreeMap::new();
        for (key, val) in &self.brackets {
            let (i, j) = frame_pair(key, &self.frame)?;
            let mut v = vec![Polynomial::zero(&c); r];
            for (name, s) in val {
                let k = self
                    .frame
                    .iter()
                    .position(|f| f == name)
                    .ok_or_else(|| perr(format!("bracket {key}: unknown frame element {name:?}")))?;
                v[k] = poly(s, &c, &format!("bracket {key}"))?;
            }
            br.insert((i, j), v);
        }
        let a = LieAlgebroid::new(&c, self.frame.clone(), anchor, br).map_err(|e| perr(e.to_string()))?;
        let mut reps = BTreeMap::new();
        for (name, rf) in &self.representations {
            let field = match rf.field.as_str() {
                "real" => Field::Real,
                "complex" => Field::Complex,
                f => return Err(perr(format!("representation {name}: unknown field {f:?}"))),
            };
            for k in rf.connection.keys() {
                if !self.frame.contains(k) {
                    return Err(perr(format!("representation {name}: unknown frame element {k:?}")));
                }
            }
            let conn = self
                .frame
                .iter()
                .map(|f| match rf.connection.get(f) {
                    Some(m) => {
                        let m = cmatrix(m, &c, rf.rank, &format!("representation {name}, {f}"))?;
                        if field == Field::Real && !m.is_real() {
                            return Err(perr(format!("representation {name}: complex entries in a real representation")));
                        }
                        Ok(m)
                    }
                    None => Ok(CMatrix::zeros(&c, rf.rank, rf.rank)),
                })
                .collect::<Result<Vec<_>>>()?;
            reps.insert(name.clone(), Representation::new(&a, field, conn)?);
        }
        let mut metrics = BTreeMap::new();
        for (name, mf) in &self.metrics {
            let e = reps
                .get(&mf.representation)
                .ok_or_else(|| perr(format!("metric {name}: unknown representation {:?}", mf.representation)))?;
            let h = cmatrix(&mf.h, &c, e.rank(), &format!("metric {name}"))?;
            metrics.insert(name.clone(), (mf.representation.clone(), h));
        }
        Ok(Document {
            algebroid: a,
            representations: reps,
            metrics,
        })
    }
}

impl Document {
    pub fn parse(src: &str) -> Result<Self> {
        AlgebroidFile::from_json(src)?.build()
    }

    pub fn to_file(&self) -> AlgebroidFile {
        let a = &self.algebroid;
        let mut brackets = BTreeMap::new();
        for i in 0..a.rank() {
            for j in (i + 1)..a.rank() {
                let v: BTreeMap<String, String> = a
                    .c(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(k, p)| (a.frame()[k].clone(), p.to_string()))
                    .collect();
                if !v.is_empty() {
                    brackets.insert(format!("{},{}", a.frame()[i], a.frame()[j]), v);
                }
            }
        }
        let representations = self
            .representations
            .iter()
            .map(|(name, e)| {
                let connection = (0..a.rank())
                    .filter(|&i| !e.omega(i).is_zero())
                    .map(|i| (a.frame()[i].clone(), print_cmatrix(e.omega(i), e.field())))
                    .collect();
                let field = match e.field() {
                    Field::Real => "real",
                    Field::Complex => "complex",
                };
                (
                    name.clone(),
                    RepresentationFile {
                        rank: e.rank(),
                        field: field.into(),
                        connection,
                    },
                )
            })
            .collect();
        let metrics = self
            .metrics
            .iter()
            .map(|(name, (rep, h))| {
                let field = self.representations[rep].field();
                (
                    name.clone(),
                    MetricFile {
                        representation: rep.clone(),
                        h: print_cmatrix(h, field),
                    },
                )
            })
            .collect();
        AlgebroidFile {
            coordinates: a.coords().to_vec(),
            frame: a.frame().to_vec(),
            anchor: (0..a.rank())
                .map(|i| a.anchor(i).iter().map(Polynomial::to_string).collect())
                .collect(),
            brackets,
            representations,
            metrics,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }

    pub fn representation(&self, name: &str) -> Result<&Representation> {
        self.representations
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no representation named {name:?}")))
    }
}

fn coordinate_index(tok: &str, c: &Coords, key: &str) -> Result<usize> {
    let tok = tok.trim();
    if let Ok(i) = tok.parse::<usize>() {
        if i == 0 || i > c.len() {
            return Err(perr(format!("bivector key {key:?}: index {i} out of range")));
        }
        return Ok(i - 1);
    }
    c.iter()
        .position(|x| x == tok)
        .ok_or_else(|| perr(format!("bivector key {key:?}: unknown coordinate {tok:?}")))
}

impl BivectorFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| perr(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// The (unvalidated) bivector.
    pub fn build(&self) -> Result<PoissonBivector> {
        let c = coords(&self.coordinates).map_err(|e| perr(e.to_string()))?;
        let mut m = BTreeMap::new();
        for (key, s) in &self.bivector {
            let parts: Vec<&str> = key.split(',').collect();
            let [x, y] = parts.as_slice() else {
                return Err(perr(format!("bivector key {key:?} must be \"i,j\"")));
            };
            let k = (coordinate_index(x, &c, key)?, coordinate_index(y, &c, key)?);
            if m.insert(k, poly(s, &c, &format!("bivector {key}"))?).is_some() {
                return Err(perr(format!("duplicate bivector key {key:?}")));
            }
        }
        PoissonBivector::new(&c, m).map_err(|e| perr(e.to_string()))
    }

    pub fn from_bivector(pi: &PoissonBivector) -> Self {
        BivectorFile {
            coordinates: pi.coords().to_vec(),
            bivector: pi
                .entries()
                .iter()
                .map(|(&(i, j), p)| (format!("{},{}", i + 1, j + 1), p.to_string()))
                .collect(),
        }
    }
}

pub fn parse_bivector(src: &str) -> Result<PoissonBivector> {
    BivectorFile::from_json(src)?.build()
}

fn multi_index_key(a: &LieAlgebroid, idx: &[usize]) -> String {
    if idx.is_empty() {
        "1".into()
    } else {
        idx.iter().map(|&i| a.frame()[i].as_str()).collect::<Vec<_>>().join("^")
    }
}

/// Cochain literal: `{"e1^e3": "x"}`, with arrays of strings for vector values
/// and the key `"1"` for functions.
pub fn parse_cochain(a: &LieAlgebroid, v: &Value, dim: usize) -> Result<Cochain> {
    let Value::Object(map) = v else {
        return Err(perr("cochain literal must be an object"));
    };
    let mut degree: Option<usize> = None;
    let mut entries = Vec::new();
    for (key, val) in map {
        let idx: Vec<usize> = if key == "1" {
            Vec::new()
        } else {
            key.split('^')
                .map(|n| {
                    a.frame_index(n.trim())
                        .ok_or_else(|| perr(format!("cochain key {key:?}: unknown frame element {n:?}")))
                })
                .collect::<Result<_>>()?
        };
        if *degree.get_or_insert(idx.len()) != idx.len() {
            return Err(perr("cochain literal mixes degrees"));
        }
        let vals: Vec<Polynomial> = match val {
            Value::String(s) if dim == 1 => vec![poly(s, a.coords(), key)?],
            Value::Array(xs) if xs.len() == dim => xs
                .iter()
                .map(|x| match x {
                    Value::String(s) => poly(s, a.coords(), key),
                    _ => Err(perr(format!("cochain key {key:?}: values must be strings"))),
                })
                .collect::<Result<_>>()?,
            _ => return Err(perr(format!("cochain key {key:?}: expected {dim} polynomial string(s)"))),
        };
        entries.push((idx, vals));
    }
    let mut w = Cochain::zero_on(a, degree.unwrap_or(0), dim);
    for (idx, vals) in entries {
        let Some((sign, sorted)) = crate::cochain::sort_sign(&idx) else {
            return Err(perr("cochain key repeats a frame element"));
        };
        let vals = vals.into_iter().map(|p| if sign < 0 { -&p } else { p }).collect();
        let mut single = Cochain::zero_on(a, idx.len(), dim);
        single.set(sorted, vals);
        w = w.add(&single);
    }
    Ok(w)
}

/// Inverse of [`parse_cochain`] on sorted multi-indices.
pub fn render_cochain(a: &LieAlgebroid, w: &Cochain) -> Value {
    let map = w
        .components()
        .iter()
        .map(|(idx, vals)| {
            let v = if vals.len() == 1 {
                Value::String(vals[0].to_string())
            } else {
                Value::Array(vals.iter().map(|p| Value::String(p.to_string())).collect())
            };
            (multi_index_key(a, idx), v)
        })
        .collect();
    Value::Object(map)
}
