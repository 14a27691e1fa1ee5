//! Run configuration: a `key = value` text file, overlaid by command-line
//! overrides, resolved into typed getters with documented defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use restriction_core::search::RunConfig;

/// A malformed invocation — bad flag value, bad config line, unknown key.
/// Mapped to exit code 2, and the message always names the offender.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Every key the config file and `--set` accept, with its default.  An
/// allowlist keeps typos loud instead of silently ignored.
pub const KNOWN_KEYS: &[(&str, &str)] = &[
    ("name", "run"),
    ("out.dir", "out"),
    ("grid.n", "256"),
    ("grid.nx", "161"),
    ("grid.nt", "161"),
    ("grid.x", "40.0"),
    ("grid.t", "40.0"),
    ("grid.l6_axis", "321"),
    ("grid.scale", "1.0"),
    ("search.max_iter", "500"),
    ("search.tolerance", "1e-9"),
    ("search.seed", "7"),
    ("search.symmetrize_every", "5"),
    ("search.free_tail_steps", "10"),
    ("search.random_starts", "2"),
    ("gamma.starts", "48"),
    ("perturbation.steps", "0.08,0.04,0.02,0.01"),
    ("decompose.max_steps", "8"),
    ("decompose.s_hat", "1.54"),
    ("smallcap.radii", "0.2,0.1,0.05,0.025"),
];

/// Parsed configuration: raw strings under their keys, with typed access.
#[derive(Debug, Clone, Default)]
pub struct LabConfig {
    entries: BTreeMap<String, String>,
}

impl LabConfig {
    /// Parses `key = value` lines; `#` starts a comment, blank lines are
    /// skipped.  Unknown keys and lines without `=` are usage errors.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(usage(format!(
                    "config line {} is not `key = value`: `{raw}`",
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.iter().any(|(k, _)| *k == key) {
                return Err(usage(format!(
                    "unknown config key `{key}` on line {}",
                    lineno + 1
                )));
            }
            entries.insert(key.to_string(), value.to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("--config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Applies one `key=value` override (the `--set` flag).
    pub fn set(&mut self, pair: &str) -> anyhow::Result<()> {
        let Some((key, value)) = pair.split_once('=') else {
            return Err(usage(format!("--set expects KEY=VALUE, got `{pair}`")));
        };
        let key = key.trim();
        if !KNOWN_KEYS.iter().any(|(k, _)| *k == key) {
            return Err(usage(format!("--set: unknown config key `{key}`")));
        }
        self.entries.insert(key.to_string(), value.trim().to_string());
        Ok(())
    }

    /// Overwrites a key from a dedicated flag (already typed by clap).
    pub fn override_with(&mut self, key: &str, value: impl ToString) {
        debug_assert!(KNOWN_KEYS.iter().any(|(k, _)| *k == key));
        self.entries.insert(key.to_string(), value.to_string());
    }

    /// The raw string for `key`: set value or documented default.
    pub fn raw(&self, key: &str) -> &str {
        if let Some(v) = self.entries.get(key) {
            return v;
        }
        KNOWN_KEYS
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, d)| *d)
            .unwrap_or_else(|| panic!("config key `{key}` is not in KNOWN_KEYS"))
    }

    fn typed<T: std::str::FromStr>(&self, key: &str, what: &str) -> anyhow::Result<T> {
        self.raw(key)
            .parse()
            .map_err(|_| usage(format!("config key `{key}` wants {what}, got `{}`", self.raw(key))))
    }

    pub fn f64(&self, key: &str) -> anyhow::Result<f64> {
        self.typed(key, "a number")
    }

    pub fn usize(&self, key: &str) -> anyhow::Result<usize> {
        self.typed(key, "a non-negative integer")
    }

    pub fn u64(&self, key: &str) -> anyhow::Result<u64> {
        self.typed(key, "a non-negative integer")
    }

    pub fn string(&self, key: &str) -> String {
        self.raw(key).to_string()
    }

    /// Comma-separated list of numbers.
    pub fn f64_list(&self, key: &str) -> anyhow::Result<Vec<f64>> {
        self.raw(key)
            .split(',')
            .map(|s| {
                s.trim().parse().map_err(|_| {
                    usage(format!(
                        "config key `{key}` wants comma-separated numbers, got `{}`",
                        self.raw(key)
                    ))
                })
            })
            .collect()
    }

    /// The full effective configuration (defaults filled in), for the echo
    /// block of `results.json`.
    pub fn echo(&self) -> BTreeMap<String, String> {
        KNOWN_KEYS
            .iter()
            .map(|(k, _)| (k.to_string(), self.raw(k).to_string()))
            .collect()
    }

    /// Assembles the search/compare configuration, with validation failures
    /// reported as usage errors naming the key.
    pub fn run_config(&self, command: &str) -> anyhow::Result<RunConfig> {
        let config = RunConfig {
            circle_n: self.usize("grid.n")?,
            nx: self.usize("grid.nx")?,
            nt: self.usize("grid.nt")?,
            x_half: self.f64("grid.x")?,
            t_half: self.f64("grid.t")?,
            l6_axis: self.usize("grid.l6_axis")?,
            max_iter: self.usize("search.max_iter")?,
            tolerance: self.f64("search.tolerance")?,
            seed: self.u64("search.seed")?,
            symmetrize_every: self.usize("search.symmetrize_every")?,
            free_tail_steps: self.usize("search.free_tail_steps")?,
            random_starts: self.usize("search.random_starts")?,
            grid_scale: self.f64("grid.scale")?,
            name: if self.entries.contains_key("name") {
                self.string("name")
            } else {
                command.to_string()
            },
        };
        config
            .validate()
            .map_err(|e| usage(format!("invalid grid/search configuration: {e}")))?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_assignments_comments_and_blanks() {
        let cfg = LabConfig::parse("# header\ngrid.n = 128\n\nname = demo # trailing\n").unwrap();
        assert_eq!(cfg.usize("grid.n").unwrap(), 128);
        assert_eq!(cfg.string("name"), "demo");
        // Untouched keys fall back to their documented defaults.
        assert_eq!(cfg.f64("grid.x").unwrap(), 40.0);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(LabConfig::parse("grid.m = 12\n").is_err());
        assert!(LabConfig::parse("just words\n").is_err());
        let mut cfg = LabConfig::default();
        assert!(cfg.set("grid.q=1").is_err());
        assert!(cfg.set("no-equals").is_err());
    }

    #[test]
    fn overrides_win_over_file_values() {
        let mut cfg = LabConfig::parse("grid.n = 128\n").unwrap();
        cfg.set("grid.n=64").unwrap();
        assert_eq!(cfg.usize("grid.n").unwrap(), 64);
        cfg.override_with("grid.n", 32usize);
        assert_eq!(cfg.usize("grid.n").unwrap(), 32);
    }

    #[test]
    fn type_errors_name_the_key() {
        let cfg = LabConfig::parse("grid.x = wide\n").unwrap();
        let err = cfg.f64("grid.x").unwrap_err();
        assert!(err.to_string().contains("grid.x"));
        assert!(err.downcast_ref::<UsageError>().is_some());
    }

    #[test]
    fn run_config_reflects_the_documented_defaults() {
        let cfg = LabConfig::default();
        let rc = cfg.run_config("search").unwrap();
        assert_eq!(rc.circle_n, 256);
        assert_eq!(rc.max_iter, 500);
        assert_eq!(rc.x_half, 40.0);
        assert_eq!(rc.name, "search");
    }
}
