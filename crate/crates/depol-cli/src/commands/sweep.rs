//! `depol sweep`: worst-case DOP against xi_max with a log-log slope fit.

use std::path::PathBuf;

use depol::{
    log_slope, worst_case_dop, CascadeTemplate, ErrorBox, GeometricGrid, PlateKind, XiPlan,
};

use crate::commands::eval::validate_plates;
use crate::output::{emit, sig};

pub struct SweepConfig {
    pub kinds: Vec<PlateKind>,
    pub m: Vec<i32>,
    pub grid: GeometricGrid,
    pub zeta_samples: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

pub fn run(cfg: SweepConfig) -> Result<u8, String> {
    let zeros = vec![0.0; cfg.kinds.len()];
    validate_plates(&cfg.kinds, &cfg.m, &zeros)?;
    cfg.grid.validate_for_scaling().map_err(|e| e.to_string())?;
    let template =
        CascadeTemplate::from_kinds_and_m(&cfg.kinds, &cfg.m).map_err(|e| e.to_string())?;

    let mut csv = String::from("xi_max,dop_max,slope_running\n");
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut below_floor = false;
    for xi_max in cfg.grid.values() {
        let ebox = ErrorBox::new(xi_max).map_err(|e| e.to_string())?;
        let report = worst_case_dop(
            &template,
            ebox,
            cfg.zeta_samples,
            &XiPlan::default(),
            cfg.seed,
        )
        .map_err(|e| e.to_string())?;
        below_floor |= report.dop_max < 1e-14;
        points.push((xi_max, report.dop_max));
        let running = if points.len() >= 2 && !below_floor {
            sig(log_slope(&points))
        } else {
            "nan".to_string()
        };
        csv.push_str(&format!(
            "{},{},{}\n",
            sig(xi_max),
            sig(report.dop_max),
            running
        ));
    }
    if below_floor {
        csv.push_str("# slope=below-floor\n");
    } else {
        csv.push_str(&format!("# slope={}\n", sig(log_slope(&points))));
    }
    emit(cfg.out.as_ref(), &csv)?;
    Ok(0)
}
