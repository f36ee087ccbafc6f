//! `depol chain`: uniform arccos(-1/3) retarder chains and the 3^-n law.

use std::path::PathBuf;

use depol::uniform_chain_report;

use crate::output::{sig, write_file};

pub struct ChainConfig {
    pub m_lists: Vec<Vec<i32>>,
    pub out: Option<PathBuf>,
}

/// Default frequency list for an n-plate chain: powers of three, which
/// are always collision-free.
pub fn default_chain(n: usize) -> Vec<i32> {
    (0..n).map(|k| 3_i32.pow(k as u32)).collect()
}

fn fmt_ints(values: &[i32]) -> String {
    let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", inner.join(","))
}

pub fn run(cfg: ChainConfig) -> Result<u8, String> {
    let mut text = String::new();
    let mut csv = String::from("n,m,dop_max,expected,collision\n");
    for m in &cfg.m_lists {
        let report = uniform_chain_report(m).map_err(|e| e.to_string())?;
        let collision = match &report.collision {
            None => "none".to_string(),
            Some(k) => format!("k={}", fmt_ints(k)),
        };
        text.push_str(&format!(
            "n={} m={} dop={:.12} expected={:.12} deviation={} collision={}\n",
            m.len(),
            fmt_ints(m),
            report.dop_max,
            report.expected,
            sig((report.dop_max - report.expected).abs()),
            collision
        ));
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            m.len(),
            m.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            sig(report.dop_max),
            sig(report.expected),
            match &report.collision {
                None => "none".to_string(),
                Some(k) => k
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            }
        ));
    }
    print!("{text}");
    if let Some(path) = &cfg.out {
        write_file(path, &csv)?;
    }
    Ok(0)
}
