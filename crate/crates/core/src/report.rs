//! Deterministic result documents: named check records with verdicts
//! and structured details, serialized to JSON or CSV with no
//! timestamps or environment-dependent fields, so identical runs
//! produce byte-identical output.

use crate::Result;
use serde::Serialize;
use serde_json::Value;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational rows carry data without a pass/fail meaning.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: Verdict,
    pub details: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub system: String,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(system: impl Into<String>) -> Self {
        Report {
            tool: "shiftlab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            system: system.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, verdict: Verdict, details: Value) {
        self.records.push(CheckRecord {
            name: name.into(),
            verdict,
            details,
        });
    }

    pub fn push_serialized<T: Serialize>(
        &mut self,
        name: impl Into<String>,
        verdict: Verdict,
        details: &T,
    ) -> Result<()> {
        self.push(name, verdict, serde_json::to_value(details)?);
        Ok(())
    }

    /// True when no record failed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Flat `name,verdict,details` rows; details are compact JSON in a
    /// quoted CSV field.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::from("name,verdict,details\n");
        for r in &self.records {
            let verdict = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Info => "info",
            };
            let details = serde_json::to_string(&r.details)?;
            out.push_str(&csv_field(&r.name));
            out.push(',');
            out.push_str(verdict);
            out.push(',');
            out.push_str(&csv_field(&details));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json()?.as_bytes())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv()?.as_bytes())
    }
}

fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

/// Write through a sibling temporary file and rename, so readers never
/// observe a half-written document.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = path.parent().unwrap_or_else(|| Path::new("."));
    if !parent.as_os_str().is_empty() {
        std::fs::create_dir_all(parent)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp_path = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp_path, bytes)?;
    std::fs::rename(&tmp_path, path)?;
    Ok(())
}
