//! Line-oriented `key = value` config files. Command-line flags override
//! file values.

use std::collections::HashMap;
use std::path::Path;

#[derive(Debug, Default)]
pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!(
                    "{}:{}: expected `key = value`, got `{raw}`",
                    path.display(),
                    lineno + 1
                ));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    /// Flag value if present, else the config-file value.
    pub fn merge(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.values.get(key).cloned())
    }

    /// Boolean switch: a given flag wins; otherwise the config value.
    pub fn merge_switch(&self, flag: bool, key: &str) -> Result<bool, String> {
        if flag {
            return Ok(true);
        }
        match self.values.get(key) {
            None => Ok(false),
            Some(v) => match v.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                other => Err(format!(
                    "config key {key}: expected a boolean, got `{other}`"
                )),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_comments_and_overrides() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# a comment").unwrap();
        writeln!(file, "seed = 7  # trailing comment").unwrap();
        writeln!(file).unwrap();
        writeln!(file, "m = 1,3,-3").unwrap();
        let cfg = FileConfig::load(Some(file.path())).unwrap();
        assert_eq!(cfg.merge(None, "seed").as_deref(), Some("7"));
        assert_eq!(cfg.merge(Some("9".into()), "seed").as_deref(), Some("9"));
        assert_eq!(cfg.merge(None, "m").as_deref(), Some("1,3,-3"));
        assert_eq!(cfg.merge(None, "missing"), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "just words").unwrap();
        assert!(FileConfig::load(Some(file.path())).is_err());
    }

    #[test]
    fn boolean_switches() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "degrees = true").unwrap();
        writeln!(file, "expect-table1 = nope").unwrap();
        let cfg = FileConfig::load(Some(file.path())).unwrap();
        assert!(cfg.merge_switch(false, "degrees").unwrap());
        assert!(cfg.merge_switch(true, "missing").unwrap());
        assert!(!cfg.merge_switch(false, "missing").unwrap());
        assert!(cfg.merge_switch(false, "expect-table1").is_err());
    }
}
