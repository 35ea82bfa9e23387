//! JSON description of switching systems.
//!
//! One file carries the matrix set plus an optional DFA and an optional
//! admissibility matrix; consumers pick the interpretation they need:
//!
//! ```json
//! {
//!   "n": 2,
//!   "m": 2,
//!   "matrices": [[[0.94, 0.56], [-0.35, 0.73]], ...],
//!   "dfa": {"states": 4, "labels": 2, "edges": [[1, 3, 1], [2, 3, 1]]},
//!   "omega": [[1, 0], [1, 1]]
//! }
//! ```
//!
//! Edges are `[from, to, label]` with 1-based integers; a duplicated
//! `(from, label)` pair is a load error.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::automaton::Dfa;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::systems::{ArbitrarySystem, ConstrainedSystem};

/// Serialized form of a system description file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemFile {
    pub n: usize,
    pub m: usize,
    pub matrices: Vec<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dfa: Option<DfaFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<Vec<u8>>>,
}

/// Serialized form of a DFA.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DfaFile {
    pub states: usize,
    pub labels: usize,
    pub edges: Vec<[usize; 3]>,
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    /// Validate and build the matrix set, ignoring any DFA/omega sections.
    pub fn to_arbitrary(&self) -> Result<ArbitrarySystem<f64>> {
        if self.matrices.len() != self.m {
            return Err(Error::Parse {
                field: "matrices".into(),
                message: format!("expected {} matrices, found {}", self.m, self.matrices.len()),
            });
        }
        let mut mats = Vec::with_capacity(self.m);
        for (idx, rows) in self.matrices.iter().enumerate() {
            if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                return Err(Error::Parse {
                    field: format!("matrices[{idx}]"),
                    message: format!("expected a {0}x{0} matrix", self.n),
                });
            }
            mats.push(Matrix::from_rows(rows).map_err(|e| Error::Parse {
                field: format!("matrices[{idx}]"),
                message: e.to_string(),
            })?);
        }
        ArbitrarySystem::new(mats)
    }

    /// Build the DFA section, if present.
    pub fn to_dfa(&self) -> Result<Option<Dfa>> {
        let Some(df) = &self.dfa else {
            return Ok(None);
        };
        if df.labels != self.m {
            return Err(Error::Parse {
                field: "dfa.labels".into(),
                message: format!("DFA has {} labels but the set has {}", df.labels, self.m),
            });
        }
        for (idx, &[from, to, label]) in df.edges.iter().enumerate() {
            if from == 0 || from > df.states || to == 0 || to > df.states {
                return Err(Error::Parse {
                    field: format!("dfa.edges[{idx}]"),
                    message: format!(
                        "edge [{from},{to},{label}] references a state outside [1,{}]",
                        df.states
                    ),
                });
            }
            if label == 0 || label > df.labels {
                return Err(Error::Parse {
                    field: format!("dfa.edges[{idx}]"),
                    message: format!(
                        "edge [{from},{to},{label}] uses a label outside [1,{}]",
                        df.labels
                    ),
                });
            }
        }
        let edges: Vec<(usize, usize, usize)> =
            df.edges.iter().map(|&[f, t, l]| (f, t, l)).collect();
        Dfa::from_edges(df.states, df.labels, &edges).map(Some)
    }

    /// Build the admissibility matrix section, if present.
    pub fn to_omega(&self) -> Result<Option<Matrix<f64>>> {
        let Some(rows) = &self.omega else {
            return Ok(None);
        };
        if rows.len() != self.m || rows.iter().any(|r| r.len() != self.m) {
            return Err(Error::Parse {
                field: "omega".into(),
                message: format!("expected a {0}x{0} matrix", self.m),
            });
        }
        if let Some(&bad) = rows.iter().flatten().find(|&&v| v > 1) {
            return Err(Error::Parse {
                field: "omega".into(),
                message: format!("entries must be 0 or 1, found {bad}"),
            });
        }
        let dense: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as f64).collect())
            .collect();
        Matrix::from_rows(&dense).map(Some)
    }

    /// Build a constrained system; errors when no DFA section is present.
    pub fn to_constrained(&self) -> Result<ConstrainedSystem<f64>> {
        let dfa = self.to_dfa()?.ok_or_else(|| Error::Parse {
            field: "dfa".into(),
            message: "file has no dfa section".into(),
        })?;
        ConstrainedSystem::new(self.to_arbitrary()?, dfa)
    }

    /// Serialize a plain matrix set.
    pub fn from_arbitrary(s: &ArbitrarySystem<f64>) -> Self {
        let matrices = s
            .matrices()
            .iter()
            .map(|a| (0..a.rows()).map(|i| a.row(i).to_vec()).collect())
            .collect();
        Self {
            n: s.dim(),
            m: s.arity(),
            matrices,
            dfa: None,
            omega: None,
        }
    }

    /// Serialize a constrained system (matrix set plus DFA).
    pub fn from_constrained(c: &ConstrainedSystem<f64>) -> Self {
        let mut file = Self::from_arbitrary(c.system());
        file.dfa = Some(DfaFile {
            states: c.dfa().num_states(),
            labels: c.dfa().num_labels(),
            edges: c
                .dfa()
                .edges()
                .into_iter()
                .map(|(f, t, l)| [f, t, l])
                .collect(),
        });
        file
    }
}
