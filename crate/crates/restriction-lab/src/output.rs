//! Output plumbing: resolving the output directory, the `results.json`
//! record, and CSV plot files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::LabConfig;

/// Environment variable that overrides the configured output directory.
pub const OUT_ENV: &str = "RESTRICTION_LAB_OUT";

/// One named check inside a run; the run passes when all checks do.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            pass,
            detail: detail.into(),
        }
    }
}

/// What one subcommand hands back to `main` for reporting.
pub struct Outcome {
    /// Command-specific payload for `results.json`.
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
    /// `(file name, content)` pairs of CSV plot data.
    pub csv: Vec<(String, String)>,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The complete `results.json` document.
#[derive(Serialize)]
struct RunRecord<'a> {
    command: &'a str,
    pass: bool,
    checks: &'a [Check],
    config: BTreeMap<String, String>,
    results: &'a serde_json::Value,
}

/// The run's output directory, already created.
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    /// Precedence: `--out` flag, then [`OUT_ENV`], then the config key
    /// `out.dir`, then `./out`.
    pub fn resolve(flag: Option<&Path>, config: &LabConfig) -> anyhow::Result<Self> {
        let root = flag
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(config.string("out.dir")));
        std::fs::create_dir_all(&root)?;
        Ok(Self { root })
    }

    /// Writes `results.json` and every CSV; returns the written paths.
    pub fn write(
        &self,
        command: &str,
        config: &LabConfig,
        outcome: &Outcome,
    ) -> anyhow::Result<Vec<PathBuf>> {
        let record = RunRecord {
            command,
            pass: outcome.pass(),
            checks: &outcome.checks,
            config: config.echo(),
            results: &outcome.results,
        };
        let mut paths = Vec::new();
        let json_path = self.root.join("results.json");
        std::fs::write(&json_path, serde_json::to_string_pretty(&record)?)?;
        paths.push(json_path);
        for (name, content) in &outcome.csv {
            let path = self.root.join(name);
            std::fs::write(&path, content)?;
            paths.push(path);
        }
        Ok(paths)
    }
}
