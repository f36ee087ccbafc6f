//! `depol search`: enumerate frequency triples and report the quadratic
//! set.

use std::path::PathBuf;

use depol::{enumerate_combos, table1_rows, Arrangement, ComboResult, ErrorBox, QuadraticCriteria};

use crate::output::{sig, sig_opt, write_file};

pub struct SearchConfig {
    pub arrangement: Arrangement,
    pub max_m: i32,
    pub xi_max: f64,
    pub expect_table1: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

fn trimmed(x: f64) -> String {
    // minimal decimal form for the header (0.02 -> "0.02")
    format!("{x}")
}

fn csv_row(r: &ComboResult) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}\n",
        r.arrangement.label(),
        r.m[0],
        r.m[1],
        r.m[2],
        r.metrics.max_abs_m,
        r.metrics.sum_abs_m,
        sig_opt(r.slope),
        sig(r.box_dop),
        r.quadratic
    )
}

pub fn run(cfg: SearchConfig) -> Result<u8, String> {
    let ebox = ErrorBox::new(cfg.xi_max).map_err(|e| e.to_string())?;
    let results = enumerate_combos(
        cfg.arrangement,
        cfg.max_m,
        ebox,
        &QuadraticCriteria::survey(),
        cfg.seed,
    )
    .map_err(|e| e.to_string())?;
    let quadratic: Vec<&ComboResult> = results.iter().filter(|r| r.quadratic).collect();

    let mut csv = format!(
        "arrangement,m1,m2,m3,max_abs_m,sum_abs_m,slope,dop_at_{},quadratic\n",
        trimmed(cfg.xi_max)
    );
    for r in &results {
        csv.push_str(&csv_row(r));
    }
    let summary = format!(
        "# arrangement={} max_m={} combos={} quadratic={}",
        cfg.arrangement.label(),
        cfg.max_m,
        results.len(),
        quadratic.len()
    );
    csv.push_str(&summary);
    csv.push('\n');

    match &cfg.out {
        Some(path) => {
            write_file(path, &csv)?;
            println!("{summary}");
        }
        None => print!("{csv}"),
    }

    if cfg.expect_table1 {
        let missing: Vec<[i32; 3]> = table1_rows(cfg.arrangement)
            .iter()
            .filter(|row| row.iter().all(|m| m.abs() <= cfg.max_m))
            .filter(|row| !quadratic.iter().any(|r| r.m == **row))
            .copied()
            .collect();
        if !missing.is_empty() {
            for m in &missing {
                println!(
                    "expect-table1: row [{},{},{}] not in the quadratic set",
                    m[0], m[1], m[2]
                );
            }
            return Ok(1);
        }
    }
    Ok(0)
}
