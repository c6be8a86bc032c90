//! Instance files: a dimension, named Hermitian matrices and a task list.
//!
//! ```json
//! {"schema": 1, "n": 2,
//!  "matrices": {"A": [["1/1", "0/1"], ["0/1", "0/1"]]},
//!  "tasks": [{"kind": "nd", "matrix": "A"}]}
//! ```
//!
//! Entries are `"p/q"` strings, integers, or `{"re": .., "im": ..}`. The
//! canonical form writes real entries as `"p/q"` and the rest as objects.

use std::collections::BTreeMap;

use hlcert_core::polymatroid::RankFunction;
use hlcert_core::scalar::format_rational;
use hlcert_core::{GaussianRational, HermitianMatrix, Matrix};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry(pub GaussianRational);

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_real() {
            s.serialize_str(&format_rational(&self.0.re))
        } else {
            let mut m = s.serialize_map(Some(2))?;
            m.serialize_entry("re", &format_rational(&self.0.re))?;
            m.serialize_entry("im", &format_rational(&self.0.im))?;
            m.end()
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GaussianRational::deserialize(d).map(Entry)
    }
}

pub type Rows = Vec<Vec<Entry>>;

pub fn rows_of(m: &HermitianMatrix) -> Rows {
    (0..m.dim()).map(|i| m.matrix().row(i).iter().cloned().map(Entry).collect()).collect()
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

fn is_false(v: &bool) -> bool {
    !*v
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Criterion,
    Direct,
    Both,
}

impl Method {
    fn is_default(&self) -> bool {
        *self == Method::Criterion
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Nd {
        matrix: String,
    },
    PsdCheck {
        matrix: String,
    },
    MixedDisc {
        matrices: Vec<String>,
    },
    Intersection {
        matrices: Vec<String>,
    },
    HlCertify {
        forms: Vec<String>,
        p: usize,
        q: usize,
        #[serde(default, skip_serializing_if = "Method::is_default")]
        method: Method,
    },
    HrCertify {
        forms: Vec<String>,
        p: usize,
        q: usize,
        eta: String,
        #[serde(default, skip_serializing_if = "is_false")]
        gram: bool,
    },
    Signature {
        forms: Vec<String>,
    },
    Lefschetz {
        forms: Vec<String>,
        p: usize,
        q: usize,
        eta: String,
    },
    /// Rank function from `matrices` (minus `offset`) or an explicit `table`.
    PolymatroidAxioms {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrices: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "is_zero")]
        offset: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<RankFunction>,
    },
    EnumerateSupport {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrices: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "is_zero")]
        offset: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<RankFunction>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim_x: Option<i64>,
    },
    HlSupport {
        matrices: Vec<String>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Nd { .. } => "nd",
            Task::PsdCheck { .. } => "psd-check",
            Task::MixedDisc { .. } => "mixed-disc",
            Task::Intersection { .. } => "intersection",
            Task::HlCertify { .. } => "hl-certify",
            Task::HrCertify { .. } => "hr-certify",
            Task::Signature { .. } => "signature",
            Task::Lefschetz { .. } => "lefschetz",
            Task::PolymatroidAxioms { .. } => "polymatroid-axioms",
            Task::EnumerateSupport { .. } => "enumerate-support",
            Task::HlSupport { .. } => "hl-support",
        }
    }

    /// Every matrix name the task refers to.
    pub fn references(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        match self {
            Task::Nd { matrix } | Task::PsdCheck { matrix } => out.push(matrix),
            Task::MixedDisc { matrices } | Task::Intersection { matrices } | Task::HlSupport { matrices } => {
                out.extend(matrices.iter().map(String::as_str))
            }
            Task::HlCertify { forms, .. } | Task::Signature { forms } => out.extend(forms.iter().map(String::as_str)),
            Task::HrCertify { forms, eta, .. } | Task::Lefschetz { forms, eta, .. } => {
                out.extend(forms.iter().map(String::as_str));
                out.push(eta);
            }
            Task::PolymatroidAxioms { matrices, .. } | Task::EnumerateSupport { matrices, .. } => {
                out.extend(matrices.iter().flatten().map(String::as_str))
            }
        }
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    schema: u32,
    n: usize,
    #[serde(default)]
    matrices: BTreeMap<String, Rows>,
    #[serde(default)]
    tasks: Vec<Task>,
}

/// A validated instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub n: usize,
    pub matrices: BTreeMap<String, HermitianMatrix>,
    pub tasks: Vec<Task>,
}

impl Serialize for InstanceFile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let matrices: BTreeMap<&String, Rows> = self.matrices.iter().map(|(k, v)| (k, rows_of(v))).collect();
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("schema", &SCHEMA_VERSION)?;
        m.serialize_entry("n", &self.n)?;
        m.serialize_entry("matrices", &matrices)?;
        m.serialize_entry("tasks", &self.tasks)?;
        m.end()
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawInstance = serde_json::from_str(text).map_err(CliError::from_json)?;
        if raw.schema != SCHEMA_VERSION {
            return Err(CliError::Invalid(format!("unsupported schema {} (expected {SCHEMA_VERSION})", raw.schema)));
        }
        let mut matrices = BTreeMap::new();
        for (name, rows) in raw.matrices {
            if rows.len() != raw.n || rows.iter().any(|r| r.len() != raw.n) {
                return Err(CliError::Invalid(format!("matrix {name:?} is not {n}x{n}", n = raw.n)));
            }
            let data = rows.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect();
            let m = Matrix::from_rows(data).map_err(|e| CliError::Invalid(format!("matrix {name:?}: {e}")))?;
            let h = HermitianMatrix::new(m).map_err(|e| CliError::Invalid(format!("matrix {name:?}: {e}")))?;
            matrices.insert(name, h);
        }
        let file = Self { n: raw.n, matrices, tasks: raw.tasks };
        file.check_references()?;
        Ok(file)
    }

    pub fn check_references(&self) -> Result<(), CliError> {
        for (k, task) in self.tasks.iter().enumerate() {
            for name in task.references() {
                if !self.matrices.contains_key(name) {
                    return Err(CliError::Invalid(format!(
                        "task {k} ({}) refers to undefined matrix {name:?}",
                        task.kind()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn matrix(&self, name: &str) -> &HermitianMatrix {
        &self.matrices[name]
    }

    pub fn lookup(&self, names: &[String]) -> Vec<HermitianMatrix> {
        names.iter().map(|n| self.matrix(n).clone()).collect()
    }

    pub fn to_json(&self, pretty: bool) -> String {
        crate::to_json(self, pretty)
    }
}
