//! Stable numeric formatting and output sinks.

use std::io::Write;
use std::path::{Path, PathBuf};

/// Fixed 12-significant-digit scientific formatting for CSV and reports.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    // normalize -0 so equal values format identically
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn sig_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => sig(v),
        None => "nan".to_string(),
    }
}

/// Writes `text` to `path` when given, else to stdout.
pub fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), String> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    file.write_all(text.as_bytes())
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_stable() {
        assert_eq!(sig(0.0004), "4.00000000000e-4");
        assert_eq!(sig(-0.0), "0.00000000000e0");
        assert_eq!(sig(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(sig_opt(None), "nan");
    }
}
