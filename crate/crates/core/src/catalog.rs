//! Built-in algebras and the JSON structure-constant file format.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis_names": ["x", "y", "z"],
//!   "brackets": [
//!     { "i": 0, "j": 1, "result": [ { "k": 2, "coeff": "1" } ] }
//!   ]
//! }
//! ```
//!
//! Coefficients are always strings (`"3/2"`, `"-1"`), never JSON numbers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{format_scalar, int, parse_scalar, zero_vec, Scalar};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub algebra: LieAlgebra,
    pub notes: &'static str,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown algebra '{0}'")]
    NotFound(String),
    #[error("malformed algebra file at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad rational literal {literal:?} at {field}")]
    BadRational { field: String, literal: String },
    #[error("{field}: index {index} out of range for dimension {dim}")]
    IndexOutOfRange {
        field: String,
        index: usize,
        dim: usize,
    },
    #[error("{field}: bracket pair ({i}, {j}) must satisfy i < j")]
    PairOrder { field: String, i: usize, j: usize },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("{field}: duplicate bracket pair ({i}, {j})")]
    DuplicatePair { field: String, i: usize, j: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `(i, j, [(k, c_ij^k), ...])` with integer coefficients.
type IntTable<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

fn table(n: usize, names: &[&str], brackets: IntTable) -> LieAlgebra {
    let brackets: Vec<(usize, usize, Vec<Scalar>)> = brackets
        .iter()
        .map(|(i, j, terms)| {
            let mut v = zero_vec(n);
            for &(k, c) in terms.iter() {
                v[k] = int(c);
            }
            (*i, *j, v)
        })
        .collect();
    LieAlgebra::with_names(n, names.iter().map(|s| s.to_string()).collect(), &brackets)
        .expect("catalog entries are valid Lie algebras")
}

fn abelian(n: usize) -> LieAlgebra {
    let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    LieAlgebra::with_names(n, names, &[]).expect("abelian algebra")
}

/// Dimensions in the notes come from an independent brute-force solve of the
/// Leibniz and cocycle systems.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "abelian(1)",
            algebra: abelian(1),
            notes: "Der 1, D 1, inner-D 1, C_d 0, Der(C(G)) 2",
        },
        CatalogEntry {
            name: "abelian(2)",
            algebra: abelian(2),
            notes: "Der 4, D 2, inner-D 2, C_d 0, Der(C(G)) 6",
        },
        CatalogEntry {
            name: "abelian(3)",
            algebra: abelian(3),
            notes: "Der 9, D 3, inner-D 3, C_d 0, Der(C(G)) 12",
        },
        CatalogEntry {
            name: "affine2",
            algebra: table(2, &["e1", "e2"], &[(0, 1, &[(1, 1)])]),
            notes: "Der 2, D 2, inner-D 2, C_d 0, Der(C(G)) 4",
        },
        CatalogEntry {
            name: "heisenberg3",
            algebra: table(3, &["x", "y", "z"], &[(0, 1, &[(2, 1)])]),
            notes: "Der 6, D 3, inner-D 3, C_d 0, Der(C(G)) 10 (H has dimension 9)",
        },
        CatalogEntry {
            name: "sl2",
            algebra: table(
                3,
                &["h", "e", "f"],
                &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])],
            ),
            notes: "Der 3, D 3, inner-D 3, C_d 0, Der(C(G)) 6",
        },
        CatalogEntry {
            name: "sl2_plus_abelian1",
            algebra: table(
                4,
                &["h", "e", "f", "c"],
                &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])],
            ),
            notes: "Der 4, D 4, inner-D 4, C_d 0, Der(C(G)) 8",
        },
    ]
}

pub fn lookup(name: &str) -> Result<LieAlgebra, CatalogError> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.algebra)
        .ok_or_else(|| CatalogError::NotFound(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub result: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub coeff: String,
}

impl AlgebraFile {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let brackets = g
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| BracketEntry {
                i,
                j,
                result: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| Term {
                        k,
                        coeff: format_scalar(c),
                    })
                    .collect(),
            })
            .collect();
        AlgebraFile {
            dim: g.dim(),
            basis_names: Some(g.basis_names().to_vec()),
            brackets,
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, CatalogError> {
        let n = self.dim;
        if n == 0 {
            return Err(LieError::ZeroDimension.into());
        }
        let names = match &self.basis_names {
            Some(names) if names.len() != n => {
                return Err(CatalogError::Invalid {
                    field: "basis_names".into(),
                    message: format!("expected {n} names, got {}", names.len()),
                })
            }
            Some(names) => names.clone(),
            None => (1..=n).map(|i| format!("e{i}")).collect(),
        };
        let mut seen = std::collections::HashSet::new();
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (b, entry) in self.brackets.iter().enumerate() {
            let field = format!("brackets[{b}]");
            for index in [entry.i, entry.j] {
                if index >= n {
                    return Err(CatalogError::IndexOutOfRange {
                        field,
                        index,
                        dim: n,
                    });
                }
            }
            if entry.i >= entry.j {
                return Err(CatalogError::PairOrder {
                    field,
                    i: entry.i,
                    j: entry.j,
                });
            }
            if !seen.insert((entry.i, entry.j)) {
                return Err(CatalogError::DuplicatePair {
                    field,
                    i: entry.i,
                    j: entry.j,
                });
            }
            let mut v = zero_vec(n);
            for (t, term) in entry.result.iter().enumerate() {
                let tfield = format!("{field}.result[{t}]");
                if term.k >= n {
                    return Err(CatalogError::IndexOutOfRange {
                        field: format!("{tfield}.k"),
                        index: term.k,
                        dim: n,
                    });
                }
                let c = parse_scalar(&term.coeff).ok_or_else(|| CatalogError::BadRational {
                    field: format!("{tfield}.coeff"),
                    literal: term.coeff.clone(),
                })?;
                v[term.k] += c;
            }
            brackets.push((entry.i, entry.j, v));
        }
        Ok(LieAlgebra::with_names(n, names, &brackets)?)
    }
}

pub fn parse_algebra_file(text: &str) -> Result<LieAlgebra, CatalogError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| CatalogError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_algebra()
}

pub fn serialize_algebra(g: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(g)).expect("plain data serializes")
}
