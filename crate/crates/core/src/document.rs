//! The JSON document format for complexes and its canonical serialization.
//!
//! Canonical form: top-level keys sorted, one key per line, every value
//! written compactly, group-ring entries as `[element, coefficient]` pairs
//! sorted by element.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{find_diagonal, tensor_complexes, Diagonal, ReducedComplex};
use crate::crossed::{FreeWord, PreCrossedModule};
use crate::groupring::{cyclic_group, FiniteGroup, Group, GroupRingElement, OrientationChar};
use crate::linalg::LambdaMatrix;
use crate::poincare::{PDChainComplex, WeaklyStandardData};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl ToString) -> DocumentError {
    DocumentError::Invalid { path: path.into(), message: message.to_string() }
}

/// A group-ring element as sorted `(element, coefficient)` pairs.
pub type Entry = Vec<(usize, i64)>;
/// A matrix of group-ring entries, row by row.
pub type Matrix = Vec<Vec<Entry>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { order: usize },
    Table { table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecrossedSpec {
    pub e1: usize,
    /// `f(x)` for each `x ∈ E₂`, as `[generator, ±1]` letters.
    pub relators: Vec<Vec<(usize, i8)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeaklyStandardSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Matrix>,
    pub top_cell: usize,
}

/// Fields are kept in alphabetical order so that serialization sorts keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    /// Degree `k` to the matrix of `d_k: C_k → C_{k−1}`.
    pub boundaries: BTreeMap<String, Matrix>,
    /// Degree `k` to `Δ_k` in the tensor basis, entries over `π × π`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<BTreeMap<String, Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formal_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fundamental_cycle: Option<Vec<i64>>,
    pub group: GroupSpec,
    pub name: String,
    /// Values of `ω` on the group's canonical generating set.
    pub orientation: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precrossed: Option<PrecrossedSpec>,
    pub ranks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weakly_standard: Option<WeaklyStandardSpec>,
}

fn small(x: &BigInt, path: &str) -> Result<i64, DocumentError> {
    x.to_i64().ok_or_else(|| invalid(path, format!("coefficient {x} does not fit in 64 bits")))
}

fn encode_element(e: &GroupRingElement, path: &str) -> Result<Entry, DocumentError> {
    e.terms().iter().map(|(g, c)| Ok((*g, small(c, path)?))).collect()
}

pub fn encode_matrix(m: &LambdaMatrix, path: &str) -> Result<Matrix, DocumentError> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| encode_element(m.get(i, j), path)).collect()).collect()
}

pub fn decode_matrix(group: &Group, m: &Matrix, rows: usize, cols: usize, path: &str) -> Result<LambdaMatrix, DocumentError> {
    if m.len() != rows {
        return Err(invalid(path, format!("{} rows, expected {rows}", m.len())));
    }
    let mut out = LambdaMatrix::zeros(group, rows, cols);
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(invalid(format!("{path}[{i}]"), format!("{} entries, expected {cols}", row.len())));
        }
        for (j, entry) in row.iter().enumerate() {
            if let Some(&(g, _)) = entry.iter().find(|(g, _)| *g >= group.order()) {
                return Err(invalid(format!("{path}[{i}][{j}]"), format!("element {g} outside a group of order {}", group.order())));
            }
            out.set(i, j, GroupRingElement::from_terms(group, entry.iter().copied()));
        }
    }
    Ok(out)
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, DocumentError> {
        match self {
            GroupSpec::Cyclic { order } => cyclic_group(*order).map_err(|e| invalid("group.order", e)),
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone()).map_err(|e| invalid("group.table", e)),
        }
    }

    /// `cyclic` when the table is that of `cyclic_group`, else the table.
    pub fn of(group: &Group) -> Self {
        match cyclic_group(group.order()) {
            Ok(c) if *c == **group => GroupSpec::Cyclic { order: group.order() },
            _ => GroupSpec::Table { table: group.table() },
        }
    }
}

impl ComplexDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if inner.is_syntax() || inner.is_eof() {
                DocumentError::Syntax { line: inner.line(), column: inner.column(), message: inner.to_string() }
            } else {
                invalid(if path == "." { "document".into() } else { path }, inner)
            }
        })
    }

    /// Canonical bytes: `from_json(d.to_json())` reproduces `d`, and
    /// `to_json` of a parsed canonical file reproduces the file.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        let fields: BTreeMap<String, serde_json::Value> = match value {
            serde_json::Value::Object(map) => map.into_iter().collect(),
            _ => unreachable!("documents are objects"),
        };
        let lines: Vec<String> = fields
            .iter()
            .map(|(k, v)| format!("  {}: {}", serde_json::to_string(k).expect("string"), serde_json::to_string(&sorted(v)).expect("value")))
            .collect();
        format!("{{\n{}\n}}\n", lines.join(",\n"))
    }

    pub fn group(&self) -> Result<Group, DocumentError> {
        self.group.build()
    }

    pub fn omega(&self, group: &Group) -> Result<OrientationChar, DocumentError> {
        let gens = group.generating_set();
        if self.orientation.len() != gens.len() {
            return Err(invalid("orientation", format!("{} values for {} generators", self.orientation.len(), gens.len())));
        }
        OrientationChar::from_generators(group.clone(), &gens, &self.orientation).map_err(|e| invalid("orientation", e))
    }

    pub fn complex(&self) -> Result<ReducedComplex, DocumentError> {
        let g = self.group()?;
        let top = self.ranks.len();
        if let Some(k) = self.boundaries.keys().find(|k| k.parse::<usize>().map_or(true, |d| d == 0 || d >= top.max(1))) {
            return Err(invalid(format!("boundaries.{k}"), "degree outside 1..=top"));
        }
        let mut boundaries = Vec::new();
        for k in 1..top {
            let path = format!("boundaries.{k}");
            boundaries.push(match self.boundaries.get(&k.to_string()) {
                Some(m) => decode_matrix(&g, m, self.ranks[k - 1], self.ranks[k], &path)?,
                None => LambdaMatrix::zeros(&g, self.ranks[k - 1], self.ranks[k]),
            });
        }
        ReducedComplex::new(&g, self.ranks.clone(), boundaries).map_err(|e| invalid("boundaries", e))
    }

    pub fn diagonal(&self, c: &Arc<ReducedComplex>) -> Result<Diagonal, DocumentError> {
        let Some(components) = &self.diagonal else {
            return find_diagonal(c).map_err(|e| invalid("diagonal", e))?.ok_or_else(|| invalid("diagonal", "no diagonal exists"));
        };
        let t = tensor_complexes(c, c).map_err(|e| invalid("diagonal", e))?;
        let tg = t.complex.group().clone();
        let comps = (0..=c.top())
            .map(|k| {
                let path = format!("diagonal.{k}");
                match components.get(&k.to_string()) {
                    Some(m) => decode_matrix(&tg, m, t.complex.rank(k), c.rank(k), &path),
                    None => Ok(LambdaMatrix::zeros(&tg, t.complex.rank(k), c.rank(k))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Diagonal::from_components(c, comps)
            .map_err(|e| invalid("diagonal", e))?
            .ok_or_else(|| invalid("diagonal", "components do not form a diagonal"))
    }

    pub fn pd(&self) -> Result<PDChainComplex, DocumentError> {
        let n = self.formal_dim.ok_or_else(|| invalid("formal_dim", "missing"))?;
        let cycle = self.fundamental_cycle.as_ref().ok_or_else(|| invalid("fundamental_cycle", "missing"))?;
        let c = Arc::new(self.complex()?);
        let omega = self.omega(c.group())?;
        let diagonal = self.diagonal(&c)?;
        PDChainComplex::new(c, omega, cycle.iter().map(|&x| BigInt::from(x)).collect(), diagonal, n).map_err(|e| invalid("document", e))
    }

    pub fn precrossed(&self) -> Result<Option<PreCrossedModule>, DocumentError> {
        let Some(spec) = &self.precrossed else { return Ok(None) };
        let words = spec
            .relators
            .iter()
            .enumerate()
            .map(|(i, w)| FreeWord::new(spec.e1, w.clone()).map_err(|e| invalid(format!("precrossed.relators[{i}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(PreCrossedModule::new(spec.e1, words).map_err(|e| invalid("precrossed", e))?))
    }

    pub fn weakly_standard(&self, c: &ReducedComplex) -> Result<Option<WeaklyStandardData>, DocumentError> {
        let Some(spec) = &self.weakly_standard else { return Ok(None) };
        let n = self.formal_dim.ok_or_else(|| invalid("formal_dim", "missing"))?;
        if spec.top_cell >= c.rank(n as i64) {
            return Err(invalid("weakly_standard.top_cell", format!("only {} top cells", c.rank(n as i64))));
        }
        let mut subcomplex_ranks: Vec<usize> = (0..=n).map(|k| c.rank(k as i64)).collect();
        subcomplex_ranks[n] -= 1;
        let splitting = match &spec.splitting {
            Some(m) => {
                let cols = m.first().map_or(0, Vec::len);
                Some(decode_matrix(c.group(), m, c.rank(2), cols, "weakly_standard.splitting")?)
            }
            None => None,
        };
        Ok(Some(WeaklyStandardData { top_cell_index: spec.top_cell, subcomplex_ranks, splitting }))
    }

    /// The document of a PD complex, diagonal included.
    pub fn from_pd(name: &str, x: &PDChainComplex, precrossed: Option<PrecrossedSpec>) -> Result<Self, DocumentError> {
        let mut doc = Self::from_complex(name, &x.complex, &x.omega)?;
        let mut diagonal = BTreeMap::new();
        for k in 0..=x.complex.top() {
            let m = x.diagonal.map.component(k);
            if !m.is_zero() {
                diagonal.insert(k.to_string(), encode_matrix(&m, &format!("diagonal.{k}"))?);
            }
        }
        doc.diagonal = Some(diagonal);
        doc.formal_dim = Some(x.formal_dim);
        doc.fundamental_cycle = Some(x.fundamental_cycle.iter().map(|c| small(c, "fundamental_cycle")).collect::<Result<_, _>>()?);
        doc.precrossed = precrossed;
        Ok(doc)
    }

    pub fn from_complex(name: &str, c: &ReducedComplex, omega: &OrientationChar) -> Result<Self, DocumentError> {
        let g = c.group();
        let mut boundaries = BTreeMap::new();
        for k in 1..=c.top() {
            let d = c.boundary(k);
            if !d.is_zero() {
                boundaries.insert(k.to_string(), encode_matrix(&d, &format!("boundaries.{k}"))?);
            }
        }
        Ok(ComplexDocument {
            boundaries,
            diagonal: None,
            formal_dim: None,
            fundamental_cycle: None,
            group: GroupSpec::of(g),
            name: name.to_string(),
            orientation: g.generating_set().iter().map(|&x| omega.value(x)).collect(),
            precrossed: None,
            ranks: c.ranks().to_vec(),
            weakly_standard: None,
        })
    }
}

/// Recursively sorts object keys.
fn sorted(v: &serde_json::Value) -> serde_json::Value {
    match v {
        serde_json::Value::Object(m) => {
            let b: BTreeMap<&String, serde_json::Value> = m.iter().map(|(k, v)| (k, sorted(v))).collect();
            serde_json::Value::Object(b.into_iter().map(|(k, v)| (k.clone(), v)).collect())
        }
        serde_json::Value::Array(a) => serde_json::Value::Array(a.iter().map(sorted).collect()),
        other => other.clone(),
    }
}
