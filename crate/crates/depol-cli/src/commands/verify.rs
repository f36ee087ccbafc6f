//! `depol verify`: the built-in verification suite. Exit 0 only if every
//! check passes.

use std::path::PathBuf;

use depol::{
    certify_half_harmonic, derive_seed, minimal_frequency_claims, phase_spread, table1_rows,
    uniform_chain_report, verify_table1, Arrangement, ErrorBox, QuadraticCriteria,
};

use crate::commands::chain::default_chain;
use crate::output::{sig, sig_opt, write_file};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Table1,
    HalfHarmonic,
    Equivalence,
    Phases,
    Chain,
    Minimal,
}

impl Section {
    pub fn parse(s: &str) -> Result<Section, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "table1" => Ok(Section::Table1),
            "halfharmonic" | "half-harmonic" => Ok(Section::HalfHarmonic),
            "equivalence" => Ok(Section::Equivalence),
            "phases" => Ok(Section::Phases),
            "chain" => Ok(Section::Chain),
            "minimal" => Ok(Section::Minimal),
            other => Err(format!(
                "--only: unknown section `{other}` \
                 (expected table1, halfharmonic, equivalence, phases, chain or minimal)"
            )),
        }
    }

    const ALL: [Section; 6] = [
        Section::Table1,
        Section::HalfHarmonic,
        Section::Equivalence,
        Section::Phases,
        Section::Chain,
        Section::Minimal,
    ];
}

pub struct VerifyConfig {
    pub xi_max: f64,
    pub only: Option<Vec<Section>>,
    pub slope_band: Option<(f64, f64)>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

struct Report {
    lines: Vec<String>,
    checks: usize,
    failures: usize,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            checks: 0,
            failures: 0,
        }
    }

    fn check(&mut self, pass: bool, line: String) {
        self.checks += 1;
        if !pass {
            self.failures += 1;
        }
        self.lines
            .push(format!("{line} {}", if pass { "PASS" } else { "FAIL" }));
    }
}

fn fmt_m(m: &[i32; 3]) -> String {
    format!("[{},{},{}]", m[0], m[1], m[2])
}

fn each_table1_row() -> impl Iterator<Item = (Arrangement, [i32; 3])> {
    table1_rows(Arrangement::Hqq)
        .iter()
        .map(|&m| (Arrangement::Hqq, m))
        .chain(
            table1_rows(Arrangement::Qhq)
                .iter()
                .map(|&m| (Arrangement::Qhq, m)),
        )
}

pub fn run(cfg: VerifyConfig) -> Result<u8, String> {
    let sections = cfg.only.clone().unwrap_or_else(|| Section::ALL.to_vec());
    let ebox = ErrorBox::new(cfg.xi_max).map_err(|e| e.to_string())?;
    let mut criteria = QuadraticCriteria::strict();
    if let Some(band) = cfg.slope_band {
        criteria.slope_band = band;
    }
    let mut report = Report::new();
    report.lines.push(format!(
        "depol verify: seed={} xi_max={} slope_band={}:{}",
        cfg.seed, cfg.xi_max, criteria.slope_band.0, criteria.slope_band.1
    ));

    for section in sections {
        match section {
            Section::Table1 => {
                let table = verify_table1(ebox, &criteria, cfg.seed).map_err(|e| e.to_string())?;
                for row in &table.rows {
                    report.check(
                        row.pass,
                        format!(
                            "table1 {} {} ideal={} dop={} slope={} quadratic={}",
                            row.arrangement.label(),
                            fmt_m(&row.m),
                            sig(row.result.ideal_dop),
                            sig(row.result.box_dop),
                            sig_opt(row.result.slope),
                            if row.result.quadratic { "yes" } else { "no" }
                        ),
                    );
                }
            }
            Section::HalfHarmonic => {
                let cert = certify_half_harmonic(0.01, 0.01, 8, derive_seed(cfg.seed, 0x4848))
                    .map_err(|e| e.to_string())?;
                report.check(
                    cert.discriminates(0.10),
                    format!(
                        "halfharmonic xi=(0.01,0.01) numeric={} printed={} err={} \
                         column-norm={} err={} winner={}",
                        sig(cert.numeric_dop),
                        sig(cert.printed),
                        sig(cert.printed_rel_err),
                        sig(cert.column_norm),
                        sig(cert.column_norm_rel_err),
                        cert.winner().label()
                    ),
                );
            }
            Section::Equivalence => {
                for (arrangement, m) in each_table1_row() {
                    let eq = depol::equivalence_check(arrangement, m, ebox, 32, cfg.seed)
                        .map_err(|e| e.to_string())?;
                    report.check(
                        eq.all_ok(),
                        format!(
                            "equivalence {} {} negation={} inversion={} phase_rel={}",
                            arrangement.label(),
                            fmt_m(&m),
                            sig(eq.negation_max_diff),
                            sig(eq.inversion_max_diff),
                            sig(eq.phase_rel_diff)
                        ),
                    );
                }
            }
            Section::Phases => {
                for (index, (arrangement, m)) in each_table1_row().enumerate() {
                    let template = arrangement.template(m).map_err(|e| e.to_string())?;
                    let spread = phase_spread(
                        &template,
                        ebox,
                        32,
                        derive_seed(cfg.seed, 0x7000 + index as u64),
                    )
                    .map_err(|e| e.to_string())?;
                    report.check(
                        spread.relative_spread() < 0.10,
                        format!(
                            "phases {} {} spread={} min={} max={}",
                            arrangement.label(),
                            fmt_m(&m),
                            sig(spread.relative_spread()),
                            sig(spread.min),
                            sig(spread.max)
                        ),
                    );
                }
            }
            Section::Chain => {
                for n in 1..=3 {
                    let chain =
                        uniform_chain_report(&default_chain(n)).map_err(|e| e.to_string())?;
                    let pass =
                        chain.collision.is_none() && (chain.dop_max - chain.expected).abs() <= 1e-9;
                    report.check(
                        pass,
                        format!(
                            "n={n} dop={:.12} expected={:.12}",
                            chain.dop_max, chain.expected
                        ),
                    );
                }
            }
            Section::Minimal => {
                let claims =
                    minimal_frequency_claims(5, ebox, &QuadraticCriteria::survey(), cfg.seed)
                        .map_err(|e| e.to_string())?;
                for c in [&claims.hqq, &claims.qhq] {
                    let pass = c.quadratic_with_max_abs_leq_2 == 0
                        && c.min_max_abs_m == Some(3)
                        && c.min_sum_abs_m == Some(6)
                        && c.min_hwp_abs_m == Some(1)
                        && c.reference_combo_quadratic;
                    report.check(
                        pass,
                        format!(
                            "minimal {} max_m=5 combos={} quadratic={} leq2={} \
                             min_max={:?} min_sum={:?} min_hwp={:?} reference={}",
                            c.arrangement.label(),
                            c.combos_evaluated,
                            c.quadratic_count,
                            c.quadratic_with_max_abs_leq_2,
                            c.min_max_abs_m,
                            c.min_sum_abs_m,
                            c.min_hwp_abs_m,
                            if c.reference_combo_quadratic {
                                "yes"
                            } else {
                                "no"
                            }
                        ),
                    );
                }
            }
        }
    }

    let verdict = if report.failures == 0 {
        format!("verify: PASS ({} checks)", report.checks)
    } else {
        format!(
            "verify: FAIL ({} of {} checks failed)",
            report.failures, report.checks
        )
    };
    report.lines.push(verdict);

    let text = report.lines.join("\n") + "\n";
    print!("{text}");
    if let Some(path) = &cfg.out {
        write_file(path, &text)?;
    }
    Ok(if report.failures == 0 { 0 } else { 1 })
}
