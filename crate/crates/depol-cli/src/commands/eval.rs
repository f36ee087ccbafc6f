//! `depol eval`: one cascade, its mean matrix and residual DOP figures.

use std::path::PathBuf;

use depol::{
    dop_for_input, time_average, worst_case_over_phases, CascadeTemplate, Matrix3, PlateKind,
    StokesVector,
};

use crate::output::{sig, write_file};

pub enum Phases {
    Explicit(Vec<f64>),
    Sampled(usize),
}

pub struct EvalConfig {
    pub kinds: Vec<PlateKind>,
    pub m: Vec<i32>,
    pub xi: Vec<f64>,
    pub phases: Phases,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

pub fn validate_plates(kinds: &[PlateKind], m: &[i32], xi: &[f64]) -> Result<(), String> {
    if m.len() != kinds.len() {
        return Err(format!(
            "--m: expected {} frequencies for this arrangement, got {}",
            kinds.len(),
            m.len()
        ));
    }
    if let Some(pos) = m.iter().position(|&v| v == 0) {
        return Err(format!(
            "--m: plate {} has zero drive frequency; frequencies must be nonzero integers",
            pos + 1
        ));
    }
    if xi.len() != kinds.len() {
        return Err(format!(
            "--xi: expected {} errors, got {}",
            kinds.len(),
            xi.len()
        ));
    }
    if let Some(pos) = xi.iter().position(|v| v.abs() > 0.5 || v.is_nan()) {
        return Err(format!(
            "--xi: plate {} error {} outside the sanity bound |xi| <= 0.5",
            pos + 1,
            xi[pos]
        ));
    }
    Ok(())
}

fn arrangement_label(kinds: &[PlateKind]) -> String {
    kinds.iter().map(|k| k.label()).collect()
}

fn fmt_ints(values: &[i32]) -> String {
    let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", inner.join(","))
}

fn fmt_floats(values: &[f64]) -> String {
    let inner: Vec<String> = values.iter().map(|&v| sig(v)).collect();
    format!("[{}]", inner.join(","))
}

pub fn run(cfg: EvalConfig) -> Result<u8, String> {
    validate_plates(&cfg.kinds, &cfg.m, &cfg.xi)?;
    let template =
        CascadeTemplate::from_kinds_and_m(&cfg.kinds, &cfg.m).map_err(|e| e.to_string())?;

    let (mean, worst_zeta, phase_line, dop_zero_zeta) = match &cfg.phases {
        Phases::Explicit(zeta) => {
            if zeta.len() != cfg.kinds.len() {
                return Err(format!(
                    "--zeta: expected {} phases, got {}",
                    cfg.kinds.len(),
                    zeta.len()
                ));
            }
            let spec = template
                .instantiate(&cfg.xi, zeta)
                .map_err(|e| e.to_string())?;
            (
                time_average(&spec),
                zeta.clone(),
                format!("phases: zeta={}", fmt_floats(zeta)),
                None,
            )
        }
        Phases::Sampled(n) => {
            let report = worst_case_over_phases(&template, &cfg.xi, *n, cfg.seed)
                .map_err(|e| e.to_string())?;
            (
                report.mean_matrix,
                report.worst_zeta.clone(),
                format!(
                    "phases: worst of {} tuples ({} random + zero), seed={}",
                    n + 1,
                    n,
                    cfg.seed
                ),
                Some(report.dop_zero_zeta),
            )
        }
    };

    let sigma = mean.singular_values();
    let cardinal: Vec<(&str, f64)> = StokesVector::cardinal_inputs()
        .iter()
        .map(|(name, s)| (*name, dop_for_input(&mean, *s).expect("unit input")))
        .collect();

    let mut text = String::new();
    text.push_str(&format!(
        "cascade: {} m={}\n",
        arrangement_label(&cfg.kinds),
        fmt_ints(&cfg.m)
    ));
    text.push_str(&format!("xi: {}\n", fmt_floats(&cfg.xi)));
    text.push_str(&phase_line);
    text.push('\n');
    if matches!(cfg.phases, Phases::Sampled(_)) {
        text.push_str(&format!("worst zeta: {}\n", fmt_floats(&worst_zeta)));
    }
    text.push_str("mean matrix:\n");
    for row in mean.entries() {
        text.push_str(&format!(
            "  {} {} {}\n",
            sig(row[0]),
            sig(row[1]),
            sig(row[2])
        ));
    }
    text.push_str(&format!(
        "singular values: {} {} {}\n",
        sig(sigma[0]),
        sig(sigma[1]),
        sig(sigma[2])
    ));
    text.push_str(&format!("dop_max: {}\n", sig(sigma[0])));
    if let Some(zero) = dop_zero_zeta {
        text.push_str(&format!("dop at zero phases: {}\n", sig(zero)));
    }
    text.push_str("input dop:\n");
    for (name, dop) in &cardinal {
        text.push_str(&format!("  {name} {}\n", sig(*dop)));
    }
    print!("{text}");

    if let Some(path) = &cfg.out {
        write_file(
            path,
            &csv_report(&cfg, &mean, &sigma, &worst_zeta, dop_zero_zeta, &cardinal),
        )?;
    }
    Ok(0)
}

fn csv_report(
    cfg: &EvalConfig,
    mean: &Matrix3,
    sigma: &[f64; 3],
    worst_zeta: &[f64],
    dop_zero_zeta: Option<f64>,
    cardinal: &[(&str, f64)],
) -> String {
    let join_f = |vals: &[f64]| vals.iter().map(|&v| sig(v)).collect::<Vec<_>>().join(";");
    let mut csv = String::from("key,value\n");
    csv.push_str(&format!("arrangement,{}\n", arrangement_label(&cfg.kinds)));
    csv.push_str(&format!(
        "m,{}\n",
        cfg.m
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(";")
    ));
    csv.push_str(&format!("xi,{}\n", join_f(&cfg.xi)));
    match &cfg.phases {
        Phases::Explicit(_) => csv.push_str("zeta_mode,explicit\n"),
        Phases::Sampled(n) => {
            csv.push_str("zeta_mode,sampled\n");
            csv.push_str(&format!("zeta_samples,{n}\n"));
        }
    }
    csv.push_str(&format!("zeta,{}\n", join_f(worst_zeta)));
    csv.push_str(&format!("seed,{}\n", cfg.seed));
    for (i, row) in mean.entries().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            csv.push_str(&format!("r{}{},{}\n", i + 1, j + 1, sig(*v)));
        }
    }
    for (k, s) in sigma.iter().enumerate() {
        csv.push_str(&format!("sigma{},{}\n", k + 1, sig(*s)));
    }
    csv.push_str(&format!("dop_max,{}\n", sig(sigma[0])));
    if let Some(zero) = dop_zero_zeta {
        csv.push_str(&format!("dop_zero_zeta,{}\n", sig(zero)));
    }
    for (name, dop) in cardinal {
        let key = name
            .replace('+', "plus_")
            .replace('-', "minus_")
            .to_lowercase();
        csv.push_str(&format!("dop_{key},{}\n", sig(*dop)));
    }
    csv
}
