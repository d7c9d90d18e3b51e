//! R-matrix data of a braid group representation, and its validation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::extended::ExtendedPoly;
use crate::laurent::LaurentPoly2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Invariant {
    #[serde(rename = "LG11", alias = "lg11")]
    LG11,
    #[serde(rename = "LG21", alias = "lg21")]
    LG21,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::LG11 => "LG11",
            Invariant::LG21 => "LG21",
        })
    }
}

impl FromStr for Invariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lg11" => Ok(Invariant::LG11),
            "lg21" => Ok(Invariant::LG21),
            _ => Err(format!("unknown invariant '{s}' (expected lg21 or lg11)")),
        }
    }
}

/// Sparse rank-4 tensor indexed `(o1, o2, i1, i2)`: the braid generator maps
/// `v_{i1} ⊗ v_{i2}` to `Σ T[o1,o2,i1,i2] v_{o1} ⊗ v_{o2}`.
pub type Tensor = BTreeMap<[usize; 4], ExtendedPoly>;

#[derive(Clone, Debug)]
pub struct RepresentationData {
    pub label: Invariant,
    pub dim: usize,
    pub discriminant: Arc<LaurentPoly2>,
    pub r: Tensor,
    pub r_inv: Tensor,
    /// Diagonal weights used when closing a strand.
    pub mu: Vec<ExtendedPoly>,
}

#[derive(Debug, Error)]
pub enum RepError {
    #[error("invalid representation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid representation data: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct RepFile {
    label: Invariant,
    dim: usize,
    discriminant: LaurentPoly2,
    r: Vec<Value>,
    r_inv: Vec<Value>,
    mu: Vec<(LaurentPoly2, LaurentPoly2)>,
}

impl RepresentationData {
    pub fn builtin(inv: Invariant) -> Self {
        let src = match inv {
            Invariant::LG11 => include_str!("../data/lg11.json"),
            Invariant::LG21 => include_str!("../data/lg21.json"),
        };
        Self::from_json(src).expect("bundled representation data is valid")
    }

    pub fn from_json(s: &str) -> Result<Self, RepError> {
        let f: RepFile = serde_json::from_str(s)?;
        if f.dim < 1 || f.dim > 16 {
            return Err(RepError::Invalid(format!("unsupported dimension {}", f.dim)));
        }
        if f.mu.len() != f.dim {
            return Err(RepError::Invalid(format!("{} weights for dimension {}", f.mu.len(), f.dim)));
        }
        let disc = Arc::new(f.discriminant);
        let tensor = |entries: Vec<Value>| -> Result<Tensor, RepError> {
            let mut t = Tensor::new();
            for e in entries {
                let (o1, o2, i1, i2, base, radical): (usize, usize, usize, usize, LaurentPoly2, LaurentPoly2) =
                    serde_json::from_value(e)?;
                let idx = [o1, o2, i1, i2];
                if idx.iter().any(|&i| i >= f.dim) {
                    return Err(RepError::Invalid(format!("index {idx:?} out of range")));
                }
                let v = ExtendedPoly::new(base, radical, &disc);
                if !v.is_zero() && t.insert(idx, v).is_some() {
                    return Err(RepError::Invalid(format!("duplicate entry {idx:?}")));
                }
            }
            Ok(t)
        };
        Ok(RepresentationData {
            label: f.label,
            dim: f.dim,
            r: tensor(f.r)?,
            r_inv: tensor(f.r_inv)?,
            mu: f.mu.into_iter().map(|(b, r)| ExtendedPoly::new(b, r, &disc)).collect(),
            discriminant: disc,
        })
    }

    pub fn to_json(&self) -> String {
        let entries = |t: &Tensor| -> Vec<Value> {
            t.iter().map(|(k, v)| serde_json::json!([k[0], k[1], k[2], k[3], v.base, v.radical])).collect()
        };
        let f = RepFile {
            label: self.label,
            dim: self.dim,
            discriminant: (*self.discriminant).clone(),
            r: entries(&self.r),
            r_inv: entries(&self.r_inv),
            mu: self.mu.iter().map(|m| (m.base.clone(), m.radical.clone())).collect(),
        };
        serde_json::to_string(&f).unwrap()
    }

    /// Checks the Yang–Baxter equation, that `r_inv` inverts `r`, and that
    /// closing a strand with the weights `mu` is the identity for both.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let all = self.r.values().chain(self.r_inv.values()).chain(self.mu.iter());
        if let Some(bad) = all.clone().find(|v| *v.discriminant() != self.discriminant) {
            rep.failures.push(format!("entry {bad} uses a different discriminant"));
            return rep;
        }
        let d = self.dim;
        let one = ExtendedPoly::one(&self.discriminant);
        let r = by_input(&self.r, d);
        let ri = by_input(&self.r_inv, d);

        rep.yang_baxter = true;
        for a in 0..d * d * d {
            let v: Vector = [(vec![a / (d * d), (a / d) % d, a % d], one.clone())].into_iter().collect();
            let lhs = apply(&apply(&apply(&v, &r, 0), &r, 1), &r, 0);
            let rhs = apply(&apply(&apply(&v, &r, 1), &r, 0), &r, 1);
            if lhs != rhs {
                rep.yang_baxter = false;
                rep.failures.push(format!("Yang-Baxter fails on basis vector {a}"));
                break;
            }
        }

        rep.inverse = true;
        for a in 0..d * d {
            let v: Vector = [(vec![a / d, a % d], one.clone())].into_iter().collect();
            for (x, y, name) in [(&r, &ri, "r·r_inv"), (&ri, &r, "r_inv·r")] {
                if apply(&apply(&v, x, 0), y, 0) != v {
                    rep.inverse = false;
                    rep.failures.push(format!("{name} is not the identity on basis vector {a}"));
                }
            }
        }

        rep.markov_trace = true;
        for (t, name) in [(&self.r, "r"), (&self.r_inv, "r_inv")] {
            for o in 0..d {
                for i in 0..d {
                    let mut acc = ExtendedPoly::zero(&self.discriminant);
                    for j in 0..d {
                        if let Some(x) = t.get(&[o, j, i, j]) {
                            acc = acc.add(&x.mul(&self.mu[j]).unwrap()).unwrap();
                        }
                    }
                    let expect = if o == i { &one } else { &ExtendedPoly::zero(&self.discriminant) };
                    if acc != *expect {
                        rep.markov_trace = false;
                        rep.failures.push(format!("closing {name} with mu gives {acc} at ({o},{i})"));
                    }
                }
            }
        }
        rep
    }
}

type Vector = BTreeMap<Vec<usize>, ExtendedPoly>;
type ByInput = Vec<Vec<(usize, usize, ExtendedPoly)>>;

fn by_input(t: &Tensor, d: usize) -> ByInput {
    let mut out = vec![vec![]; d * d];
    for (k, v) in t {
        out[k[2] * d + k[3]].push((k[0], k[1], v.clone()));
    }
    out
}

fn apply(v: &Vector, t: &ByInput, pos: usize) -> Vector {
    let d = (t.len() as f64).sqrt() as usize;
    let mut out = Vector::new();
    for (idx, x) in v {
        for (o1, o2, c) in &t[idx[pos] * d + idx[pos + 1]] {
            let mut j = idx.clone();
            j[pos] = *o1;
            j[pos + 1] = *o2;
            let y = c.mul(x).unwrap();
            match out.get_mut(&j) {
                Some(z) => *z = z.add(&y).unwrap(),
                None => {
                    out.insert(j, y);
                }
            }
        }
    }
    out.retain(|_, z| !z.is_zero());
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub yang_baxter: bool,
    pub inverse: bool,
    pub markov_trace: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.yang_baxter && self.inverse && self.markov_trace
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "yang-baxter   {}", mark(self.yang_baxter))?;
        writeln!(f, "inverse       {}", mark(self.inverse))?;
        write!(f, "markov trace  {}", mark(self.markov_trace))?;
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}
