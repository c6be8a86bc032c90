//! Batch runner for instance files. Each task produces one report entry,
//! keyed by its position in the task list.

pub mod instance;
pub mod tasks;

use std::collections::BTreeMap;
use std::fmt;

use hlcert_core::Verdict;
use serde::Serialize;
use serde_json::{json, Value};

pub use instance::{InstanceFile, Method, Task};

#[derive(Debug)]
pub enum CliError {
    Parse { line: usize, column: usize, message: String },
    Invalid(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn from_json(e: serde_json::Error) -> Self {
        CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            CliError::Invalid(m) => write!(f, "invalid instance: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Exit status: every verdict holds and no task errored.
pub const EXIT_OK: i32 = 0;
/// Some verdict-bearing task failed.
pub const EXIT_FAILS: i32 = 1;
/// Bad input or a task error.
pub const EXIT_ERROR: i32 = 2;

pub fn to_json<T: Serialize + ?Sized>(v: &T, pretty: bool) -> String {
    let mut s =
        if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("value serializes");
    s.push('\n');
    s
}

/// Task outputs keyed by index. Serializes as `{"0": {...}, "1": {...}}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub entries: BTreeMap<usize, Value>,
    pub any_fails: bool,
    pub any_error: bool,
}

impl Serialize for Report {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.entries.iter().map(|(k, v)| (k.to_string(), v)))
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.any_error {
            EXIT_ERROR
        } else if self.any_fails {
            EXIT_FAILS
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        to_json(self, pretty)
    }
}

/// Run every task. A task error becomes `{"error": ...}` and later tasks still run.
pub fn run(file: &InstanceFile) -> Report {
    let mut report = Report::default();
    for (k, task) in file.tasks.iter().enumerate() {
        let value = match tasks::execute(file, task) {
            Ok(out) => {
                if out.verdict == Some(Verdict::Fails) {
                    report.any_fails = true;
                }
                out.value
            }
            Err(e) => {
                report.any_error = true;
                json!({ "error": e.to_string() })
            }
        };
        report.entries.insert(k, value);
    }
    report
}

pub fn run_str(text: &str) -> Result<Report, CliError> {
    InstanceFile::parse(text).map(|f| run(&f))
}
