//! Typed parsing of flag/config values.

use depol::{GeometricGrid, PlateKind};

pub fn i32_list(s: &str, what: &str) -> Result<Vec<i32>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i32>()
                .map_err(|_| format!("{what}: `{tok}` is not an integer"))
        })
        .collect()
}

pub fn f64_list(s: &str, what: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("{what}: `{tok}` is not a number"))
        })
        .collect()
}

pub fn f64_value(s: &str, what: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("{what}: `{s}` is not a number"))
}

pub fn usize_value(s: &str, what: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("{what}: `{s}` is not a count"))
}

pub fn i32_value(s: &str, what: &str) -> Result<i32, String> {
    s.trim()
        .parse::<i32>()
        .map_err(|_| format!("{what}: `{s}` is not an integer"))
}

pub fn u64_value(s: &str, what: &str) -> Result<u64, String> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| format!("{what}: `{s}` is not an unsigned integer"))
}

/// `lo:hi:points` log-spaced grid.
pub fn grid(s: &str) -> Result<GeometricGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("--grid: expected lo:hi:points, got `{s}`"));
    }
    let lo = f64_value(parts[0], "--grid lo")?;
    let hi = f64_value(parts[1], "--grid hi")?;
    let points = usize_value(parts[2], "--grid points")?;
    if points == 0 {
        return Err("--grid: needs at least one point".into());
    }
    Ok(GeometricGrid { lo, hi, points })
}

/// `lo:hi` slope acceptance band.
pub fn band(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(format!("--slope-band: expected lo:hi, got `{s}`"));
    }
    let lo = f64_value(parts[0], "--slope-band lo")?;
    let hi = f64_value(parts[1], "--slope-band hi")?;
    if lo > hi {
        return Err(format!("--slope-band: lo {lo} exceeds hi {hi}"));
    }
    Ok((lo, hi))
}

/// Plate sequence, one letter per plate: `h` or `q`.
pub fn plate_kinds(s: &str) -> Result<Vec<PlateKind>, String> {
    if s.is_empty() {
        return Err("--arrangement: needs at least one plate".into());
    }
    s.chars()
        .map(|c| match c.to_ascii_lowercase() {
            'h' => Ok(PlateKind::Half),
            'q' => Ok(PlateKind::Quarter),
            other => Err(format!(
                "--arrangement: unknown plate `{other}` (expected h or q)"
            )),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_values() {
        assert_eq!(i32_list("1, 3 ,-3", "--m").unwrap(), vec![1, 3, -3]);
        assert!(i32_list("1,x", "--m").is_err());
        assert_eq!(f64_list("0,0.02", "--xi").unwrap(), vec![0.0, 0.02]);
        assert!(f64_value("abc", "--xi-max").is_err());
    }

    #[test]
    fn grids_and_bands() {
        let g = grid("1e-3:0.0316:8").unwrap();
        assert_eq!(g.points, 8);
        assert!(grid("1:2").is_err());
        assert!(grid("1:2:0").is_err());
        assert_eq!(band("1.8:2.2").unwrap(), (1.8, 2.2));
        assert!(band("2.2:1.8").is_err());
    }

    #[test]
    fn plate_sequences() {
        assert_eq!(
            plate_kinds("hqq").unwrap(),
            vec![PlateKind::Half, PlateKind::Quarter, PlateKind::Quarter]
        );
        assert!(plate_kinds("hxq").is_err());
        assert!(plate_kinds("").is_err());
    }
}
