use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::codes::GeneratorMatrix;
use crate::quaternion::{Quat, QuatRing};

/// One slot of a template: a variable or a fixed ring element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Var(usize),
    Const(Quat),
}

/// JSON form of a template. Entries that are bare identifiers other than `i`, `j`, `k`
/// are variables; everything else is quaternion text.
///
/// ```json
/// {"k":1,"n":3,"rows":[["x","1+i","x"]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateFile {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

/// A `k × n` generator matrix with symbolic entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    rows_text: Vec<Vec<String>>,
    slots: Vec<Vec<Entry>>,
    vars: Vec<String>,
}

fn is_variable(text: &str) -> bool {
    let mut chars = text.chars();
    let first_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    first_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !matches!(text, "i" | "j" | "k")
}

impl Template {
    /// The rate-2/6 quasi-cyclic shape `(x,x,y,y,z,z)`, `(y,z,z,x,x,y)`.
    pub fn qc_2x6() -> Self {
        let rows = [["x", "x", "y", "y", "z", "z"], ["y", "z", "z", "x", "x", "y"]];
        let file = TemplateFile {
            k: 2,
            n: 6,
            rows: rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        };
        Template::variables_only(&file).expect("built-in template is well formed")
    }

    fn variables_only(file: &TemplateFile) -> Option<Self> {
        let mut vars: Vec<String> = Vec::new();
        let mut slots = Vec::new();
        for row in &file.rows {
            let mut out = Vec::new();
            for t in row {
                if !is_variable(t) {
                    return None;
                }
                let v = match vars.iter().position(|v| v == t) {
                    Some(v) => v,
                    None => {
                        vars.push(t.clone());
                        vars.len() - 1
                    }
                };
                out.push(Entry::Var(v));
            }
            slots.push(out);
        }
        Some(Template { rows_text: file.rows.clone(), slots, vars })
    }

    /// Builds a template, parsing constant entries in `ring`.
    /// Variables are numbered in order of first appearance, row by row.
    pub fn from_file(file: &TemplateFile, ring: &QuatRing) -> Result<Self, SearchError> {
        if file.k == 0 || file.n == 0 {
            return Err(SearchError::Template("k and n must be at least 1".into()));
        }
        if file.rows.len() != file.k || file.rows.iter().any(|r| r.len() != file.n) {
            return Err(SearchError::Template(format!("rows do not form a {} x {} matrix", file.k, file.n)));
        }
        let mut vars: Vec<String> = Vec::new();
        let mut slots = Vec::new();
        for row in &file.rows {
            let mut out = Vec::new();
            for t in row {
                let t = t.trim();
                if is_variable(t) {
                    let v = match vars.iter().position(|v| v == t) {
                        Some(v) => v,
                        None => {
                            vars.push(t.to_string());
                            vars.len() - 1
                        }
                    };
                    out.push(Entry::Var(v));
                } else {
                    out.push(Entry::Const(ring.parse(t)?));
                }
            }
            slots.push(out);
        }
        Ok(Template { rows_text: file.rows.clone(), slots, vars })
    }

    /// Looks up a built-in template by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "qc-2x6" => Some(Template::qc_2x6()),
            _ => None,
        }
    }

    pub fn k(&self) -> usize {
        self.slots.len()
    }

    pub fn n(&self) -> usize {
        self.slots[0].len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn slots(&self) -> &[Vec<Entry>] {
        &self.slots
    }

    pub fn rows_text(&self) -> &[Vec<String>] {
        &self.rows_text
    }

    /// Substitutes `values[v]` for variable `v`.
    pub fn instantiate(&self, ring: &QuatRing, values: &[Quat]) -> Result<GeneratorMatrix, SearchError> {
        if values.len() != self.vars.len() {
            return Err(SearchError::Template(format!(
                "{} values for {} variables",
                values.len(),
                self.vars.len()
            )));
        }
        let rows = self
            .slots
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Var(v) => values[*v],
                        Entry::Const(c) => *c,
                    })
                    .collect()
            })
            .collect();
        Ok(GeneratorMatrix::new(ring.clone(), rows)?)
    }
}
