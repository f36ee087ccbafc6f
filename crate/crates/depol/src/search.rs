//! Integer frequency-combination search for three-plate cascades and the
//! published reference combinations.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{
    sample_xi_points, sample_zeta_tuples, scaling_exponent, worst_case_dop, ErrorBox,
    GeometricGrid, XiPlan,
};
use crate::cascade::{residual_dop_max, CascadeTemplate, PlateKind};
use crate::error::{Error, Result};
use crate::seed::derive_seed;
use std::f64::consts::TAU;

/// Three-plate arrangement: which slot carries the halfwave plate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arrangement {
    /// HWP, QWP, QWP (light hits the HWP first).
    Hqq,
    /// QWP, HWP, QWP.
    Qhq,
}

impl Arrangement {
    pub fn kinds(&self) -> [PlateKind; 3] {
        match self {
            Arrangement::Hqq => [PlateKind::Half, PlateKind::Quarter, PlateKind::Quarter],
            Arrangement::Qhq => [PlateKind::Quarter, PlateKind::Half, PlateKind::Quarter],
        }
    }

    pub fn hwp_index(&self) -> usize {
        match self {
            Arrangement::Hqq => 0,
            Arrangement::Qhq => 1,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Arrangement::Hqq => "hqq",
            Arrangement::Qhq => "qhq",
        }
    }

    pub fn template(&self, m: [i32; 3]) -> Result<CascadeTemplate> {
        CascadeTemplate::from_kinds_and_m(&self.kinds(), &m)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Arrangement {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hqq" => Ok(Arrangement::Hqq),
            "qhq" => Ok(Arrangement::Qhq),
            other => Err(format!(
                "unknown arrangement '{other}' (expected hqq or qhq)"
            )),
        }
    }
}

/// Published reference combinations for HWP, QWP, QWP.
pub const TABLE1_HQQ: [[i32; 3]; 15] = [
    [1, -3, 3],
    [1, 3, -3],
    [2, 3, -2],
    [2, -3, -2],
    [3, 1, -3],
    [3, -1, -3],
    [3, -2, 2],
    [3, 2, -3],
    [3, -2, -3],
    [1, 4, -1],
    [4, -1, 1],
    [3, -4, -3],
    [1, 5, -1],
    [5, -1, 1],
    [4, -5, -4],
];

/// Published reference combinations for QWP, HWP, QWP.
pub const TABLE1_QHQ: [[i32; 3]; 10] = [
    [1, -3, 2],
    [1, -4, 2],
    [1, -4, 3],
    [2, -4, 3],
    [2, -1, 4],
    [2, -3, 4],
    [3, -2, 4],
    [4, 1, -5],
    [1, -5, 2],
    [4, -5, 3],
];

pub fn table1_rows(arrangement: Arrangement) -> &'static [[i32; 3]] {
    match arrangement {
        Arrangement::Hqq => &TABLE1_HQQ,
        Arrangement::Qhq => &TABLE1_QHQ,
    }
}

/// Thresholds and sampling effort behind the quadratic verdict. Kept in
/// one struct so acceptance bands are tunable without code changes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticCriteria {
    /// Accepted log-log slope band for the quadratic law.
    pub slope_band: (f64, f64),
    /// Ideal plates must depolarize below this.
    pub ideal_dop_ceiling: f64,
    /// Box check: dop <= factor * xi_max^2.
    pub box_dop_factor: f64,
    pub sweep_grid: GeometricGrid,
    pub box_plan: XiPlan,
    pub box_zeta_samples: usize,
    pub sweep_plan: XiPlan,
    pub sweep_zeta_samples: usize,
}

impl QuadraticCriteria {
    fn slope_grid(points: usize) -> GeometricGrid {
        GeometricGrid {
            lo: 1e-3,
            hi: 10f64.powf(-1.5),
            points,
        }
    }

    /// Full sampling effort; used for the reference-table verification.
    pub fn strict() -> Self {
        QuadraticCriteria {
            slope_band: (1.8, 2.2),
            ideal_dop_ceiling: 1e-10,
            box_dop_factor: 3.0,
            sweep_grid: Self::slope_grid(6),
            box_plan: XiPlan::default(),
            box_zeta_samples: 32,
            sweep_plan: XiPlan::corners_and_axes(),
            sweep_zeta_samples: 8,
        }
    }

    /// Reduced sampling effort for wide enumerations. The verdict margins
    /// (quadratic vs linear laws) are orders of magnitude, so the lighter
    /// plan does not flip memberships.
    pub fn survey() -> Self {
        QuadraticCriteria {
            box_plan: XiPlan::corners_and_axes(),
            box_zeta_samples: 8,
            sweep_grid: Self::slope_grid(5),
            ..Self::strict()
        }
    }

    pub fn slope_in_band(&self, slope: f64) -> bool {
        (self.slope_band.0..=self.slope_band.1).contains(&slope)
    }
}

impl Default for QuadraticCriteria {
    fn default() -> Self {
        QuadraticCriteria::strict()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComboMetrics {
    pub max_abs_m: i32,
    pub sum_abs_m: i32,
    /// |m| of the halfwave plate in this arrangement.
    pub hwp_abs_m: i32,
}

impl ComboMetrics {
    fn of(arrangement: Arrangement, m: [i32; 3]) -> Self {
        ComboMetrics {
            max_abs_m: m.iter().map(|v| v.abs()).max().unwrap(),
            sum_abs_m: m.iter().map(|v| v.abs()).sum(),
            hwp_abs_m: m[arrangement.hwp_index()].abs(),
        }
    }
}

/// Verdict and measurements for one frequency combination.
#[derive(Debug, Clone, PartialEq)]
pub struct ComboResult {
    pub arrangement: Arrangement,
    pub m: [i32; 3],
    /// Worst DOP with ideal plates (degeneracy detector).
    pub ideal_dop: f64,
    pub box_xi_max: f64,
    /// Worst-case DOP over the error box.
    pub box_dop: f64,
    /// (xi_max, worst-case DOP) sweep behind the slope fit.
    pub dop_at: Vec<(f64, f64)>,
    /// Fitted scaling exponent; `None` when the sweep fell below the fit
    /// floor.
    pub slope: Option<f64>,
    pub quadratic: bool,
    pub metrics: ComboMetrics,
}

fn content_key(arrangement: Arrangement, m: [i32; 3]) -> u64 {
    let arr = match arrangement {
        Arrangement::Hqq => 0_u64,
        Arrangement::Qhq => 1,
    };
    let enc = |v: i32| ((v as i64 + 32) as u64) & 0x3F;
    (arr << 18) | (enc(m[0]) << 12) | (enc(m[1]) << 6) | enc(m[2])
}

/// Worst ideal-plate DOP over the zero phase tuple plus two random ones.
fn ideal_plate_dop(template: &CascadeTemplate, seed: u64) -> Result<f64> {
    let p = template.len();
    let zeros = vec![0.0; p];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dop = residual_dop_max(&template.instantiate(&zeros, &zeros)?);
    for _ in 0..2 {
        let zeta: Vec<f64> = (0..p).map(|_| rng.gen_range(0.0..TAU)).collect();
        dop = dop.max(residual_dop_max(&template.instantiate(&zeros, &zeta)?));
    }
    Ok(dop)
}

/// Evaluates one combination against the quadratic criteria. The sampling
/// seed is derived from the combination itself, so a combo measures
/// identically whether it is met in a table check or an enumeration.
pub fn evaluate_combo(
    arrangement: Arrangement,
    m: [i32; 3],
    ebox: ErrorBox,
    criteria: &QuadraticCriteria,
    seed: u64,
) -> Result<ComboResult> {
    let template = arrangement.template(m)?;
    let combo_seed = derive_seed(seed, content_key(arrangement, m));

    let ideal_dop = ideal_plate_dop(&template, derive_seed(combo_seed, 1))?;
    let box_report = worst_case_dop(
        &template,
        ebox,
        criteria.box_zeta_samples,
        &criteria.box_plan,
        derive_seed(combo_seed, 2),
    )?;
    let (slope, dop_at) = match scaling_exponent(
        &template,
        &criteria.sweep_grid,
        criteria.sweep_zeta_samples,
        &criteria.sweep_plan,
        derive_seed(combo_seed, 3),
    ) {
        Ok(fit) => (Some(fit.slope), fit.points),
        Err(Error::BelowFloor { .. }) => (None, Vec::new()),
        Err(e) => return Err(e),
    };

    let xi_max = ebox.xi_max();
    let quadratic = ideal_dop < criteria.ideal_dop_ceiling
        && box_report.dop_max <= criteria.box_dop_factor * xi_max * xi_max
        && slope.is_some_and(|s| criteria.slope_in_band(s));

    Ok(ComboResult {
        arrangement,
        m,
        ideal_dop,
        box_xi_max: xi_max,
        box_dop: box_report.dop_max,
        dop_at,
        slope,
        quadratic,
        metrics: ComboMetrics::of(arrangement, m),
    })
}

/// Evaluates every nonzero integer triple with |m_i| <= max_m, modulo
/// global negation (canonical representative: m1 > 0). Output is sorted
/// by (max|m_i|, sum|m_i|, lexicographic m) and independent of the
/// parallel schedule.
pub fn enumerate_combos(
    arrangement: Arrangement,
    max_m: i32,
    ebox: ErrorBox,
    criteria: &QuadraticCriteria,
    seed: u64,
) -> Result<Vec<ComboResult>> {
    if !(1..=12).contains(&max_m) {
        return Err(Error::MaxMOutOfRange { max_m });
    }
    let nonzero: Vec<i32> = (-max_m..=max_m).filter(|&v| v != 0).collect();
    let mut triples = Vec::new();
    for m1 in 1..=max_m {
        for &m2 in &nonzero {
            for &m3 in &nonzero {
                triples.push([m1, m2, m3]);
            }
        }
    }
    let mut results = triples
        .par_iter()
        .map(|&m| evaluate_combo(arrangement, m, ebox, criteria, seed))
        .collect::<Result<Vec<_>>>()?;
    results.sort_by_key(|r| (r.metrics.max_abs_m, r.metrics.sum_abs_m, r.m));
    Ok(results)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub arrangement: Arrangement,
    pub m: [i32; 3],
    pub result: ComboResult,
    pub pass: bool,
}

/// Per-row verification of the published combination table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Report {
    pub xi_max: f64,
    pub rows: Vec<Table1Row>,
}

impl Table1Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Table1Row> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

/// Confirms the quadratic verdict for all 25 published rows.
pub fn verify_table1(
    ebox: ErrorBox,
    criteria: &QuadraticCriteria,
    seed: u64,
) -> Result<Table1Report> {
    if !(0.005..=0.05).contains(&ebox.xi_max()) {
        return Err(Error::BoxOutsideTable1Range {
            xi_max: ebox.xi_max(),
        });
    }
    let jobs: Vec<(Arrangement, [i32; 3])> = TABLE1_HQQ
        .iter()
        .map(|&m| (Arrangement::Hqq, m))
        .chain(TABLE1_QHQ.iter().map(|&m| (Arrangement::Qhq, m)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(arrangement, m)| {
            let result = evaluate_combo(arrangement, m, ebox, criteria, seed)?;
            Ok(Table1Row {
                arrangement,
                m,
                pass: result.quadratic,
                result,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table1Report {
        xi_max: ebox.xi_max(),
        rows,
    })
}

/// Numeric confirmation of the symmetry observations for one combination.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub arrangement: Arrangement,
    pub m: [i32; 3],
    /// Worst-case DOP over the matched sample set.
    pub dop_max: f64,
    /// Largest per-sample DOP change under global frequency negation.
    pub negation_max_diff: f64,
    /// Largest per-sample DOP change under order inversion (each plate
    /// keeps kind, xi, m, zeta).
    pub inversion_max_diff: f64,
    pub phase_dop_a: f64,
    pub phase_dop_b: f64,
    /// |a - b| / max(a, b) for the two independent phase draws.
    pub phase_rel_diff: f64,
}

impl EquivalenceReport {
    pub fn negation_ok(&self) -> bool {
        self.negation_max_diff < 1e-10
    }

    pub fn inversion_ok(&self) -> bool {
        self.inversion_max_diff < 1e-10
    }

    pub fn phases_ok(&self) -> bool {
        self.phase_rel_diff < 0.10
    }

    pub fn all_ok(&self) -> bool {
        self.negation_ok() && self.inversion_ok() && self.phases_ok()
    }
}

/// Checks that negating all frequencies and inverting the plate order
/// leave the DOP unchanged, sample by sample, and that two independent
/// phase draws agree to within 10%.
pub fn equivalence_check(
    arrangement: Arrangement,
    m: [i32; 3],
    ebox: ErrorBox,
    zeta_samples: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    let template = arrangement.template(m)?;
    let negated = template.negated();
    let reversed = template.reversed();
    let p = template.len();

    let combo_seed = derive_seed(seed, content_key(arrangement, m));
    let mut rng = ChaCha8Rng::seed_from_u64(combo_seed);
    let plan = XiPlan::default();
    let xis = sample_xi_points(p, ebox.xi_max(), &plan, &mut rng);
    let zetas = sample_zeta_tuples(p, zeta_samples, &mut rng);

    let pairs: Vec<(usize, usize)> = (0..xis.len())
        .flat_map(|i| (0..zetas.len()).map(move |j| (i, j)))
        .collect();
    let (dop_max, negation_max_diff, inversion_max_diff) = pairs
        .par_iter()
        .map(|&(i, j)| {
            let xi = &xis[i];
            let zeta = &zetas[j];
            let base = residual_dop_max(&template.instantiate(xi, zeta).expect("validated"));
            let neg = residual_dop_max(&negated.instantiate(xi, zeta).expect("validated"));
            let mut xi_rev = xi.clone();
            xi_rev.reverse();
            let mut zeta_rev = zeta.clone();
            zeta_rev.reverse();
            let inv =
                residual_dop_max(&reversed.instantiate(&xi_rev, &zeta_rev).expect("validated"));
            (base, (neg - base).abs(), (inv - base).abs())
        })
        .reduce(
            || (0.0, 0.0, 0.0),
            |a, b| (a.0.max(b.0), a.1.max(b.1), a.2.max(b.2)),
        );

    // Two independent phase draws, each worst-cased over the xi points.
    let mut phase_dop = [0.0_f64; 2];
    for (slot, dop) in phase_dop.iter_mut().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(combo_seed, 100 + slot as u64));
        let zeta: Vec<f64> = (0..p).map(|_| rng.gen_range(0.0..TAU)).collect();
        *dop = xis
            .par_iter()
            .map(|xi| residual_dop_max(&template.instantiate(xi, &zeta).expect("validated")))
            .reduce(|| 0.0, f64::max);
    }
    let hi = phase_dop[0].max(phase_dop[1]);
    let phase_rel_diff = if hi > 0.0 {
        (phase_dop[0] - phase_dop[1]).abs() / hi
    } else {
        0.0
    };

    Ok(EquivalenceReport {
        arrangement,
        m,
        dop_max,
        negation_max_diff,
        inversion_max_diff,
        phase_dop_a: phase_dop[0],
        phase_dop_b: phase_dop[1],
        phase_rel_diff,
    })
}

/// Per-phase-tuple worst-case DOP, for checking that start phases do not
/// matter.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpread {
    pub dops: Vec<f64>,
    pub min: f64,
    pub max: f64,
}

impl PhaseSpread {
    pub fn relative_spread(&self) -> f64 {
        if self.max > 0.0 {
            (self.max - self.min) / self.max
        } else {
            0.0
        }
    }
}

/// Worst-case DOP (over sign corners and axis points of the box) for each
/// of `tuples` random phase tuples.
pub fn phase_spread(
    template: &CascadeTemplate,
    ebox: ErrorBox,
    tuples: usize,
    seed: u64,
) -> Result<PhaseSpread> {
    if tuples == 0 {
        return Err(Error::NoPhaseSamples);
    }
    let p = template.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xis = sample_xi_points(p, ebox.xi_max(), &XiPlan::corners_and_axes(), &mut rng);
    let zetas: Vec<Vec<f64>> = (0..tuples)
        .map(|_| (0..p).map(|_| rng.gen_range(0.0..TAU)).collect())
        .collect();
    let dops: Vec<f64> = zetas
        .par_iter()
        .map(|zeta| {
            xis.iter()
                .map(|xi| residual_dop_max(&template.instantiate(xi, zeta).expect("validated")))
                .fold(0.0, f64::max)
        })
        .collect();
    let min = dops.iter().copied().fold(f64::INFINITY, f64::min);
    let max = dops.iter().copied().fold(0.0, f64::max);
    Ok(PhaseSpread { dops, min, max })
}

/// Measured minima over the quadratic set of one arrangement.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrangementClaims {
    pub arrangement: Arrangement,
    pub combos_evaluated: usize,
    pub quadratic_count: usize,
    pub quadratic_with_max_abs_leq_2: usize,
    pub min_max_abs_m: Option<i32>,
    pub min_sum_abs_m: Option<i32>,
    pub min_hwp_abs_m: Option<i32>,
    /// The lowest-max-frequency representative named for this
    /// arrangement: [2,3,-2] for HQQ, [1,-3,2] for QHQ.
    pub reference_combo_quadratic: bool,
}

/// Minimal-frequency observations, measured by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalClaims {
    pub max_m: i32,
    pub hqq: ArrangementClaims,
    pub qhq: ArrangementClaims,
}

impl MinimalClaims {
    pub fn all_pass(&self) -> bool {
        [&self.hqq, &self.qhq].iter().all(|c| {
            c.quadratic_with_max_abs_leq_2 == 0
                && c.min_max_abs_m == Some(3)
                && c.min_sum_abs_m == Some(6)
                && c.min_hwp_abs_m == Some(1)
                && c.reference_combo_quadratic
        })
    }
}

fn reference_combo(arrangement: Arrangement) -> [i32; 3] {
    match arrangement {
        Arrangement::Hqq => [2, 3, -2],
        Arrangement::Qhq => [1, -3, 2],
    }
}

/// Enumerates both arrangements up to `max_m` and measures the minimal
/// max-frequency, frequency-sum and HWP-frequency over the quadratic set.
pub fn minimal_frequency_claims(
    max_m: i32,
    ebox: ErrorBox,
    criteria: &QuadraticCriteria,
    seed: u64,
) -> Result<MinimalClaims> {
    let claims_for = |arrangement: Arrangement| -> Result<ArrangementClaims> {
        let results = enumerate_combos(arrangement, max_m, ebox, criteria, seed)?;
        let quadratic: Vec<&ComboResult> = results.iter().filter(|r| r.quadratic).collect();
        let reference = reference_combo(arrangement);
        Ok(ArrangementClaims {
            arrangement,
            combos_evaluated: results.len(),
            quadratic_count: quadratic.len(),
            quadratic_with_max_abs_leq_2: quadratic
                .iter()
                .filter(|r| r.metrics.max_abs_m <= 2)
                .count(),
            min_max_abs_m: quadratic.iter().map(|r| r.metrics.max_abs_m).min(),
            min_sum_abs_m: quadratic.iter().map(|r| r.metrics.sum_abs_m).min(),
            min_hwp_abs_m: quadratic.iter().map(|r| r.metrics.hwp_abs_m).min(),
            reference_combo_quadratic: quadratic.iter().any(|r| r.m == reference),
        })
    };
    Ok(MinimalClaims {
        max_m,
        hqq: claims_for(Arrangement::Hqq)?,
        qhq: claims_for(Arrangement::Qhq)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangement_parsing_and_labels() {
        assert_eq!("hqq".parse::<Arrangement>().unwrap(), Arrangement::Hqq);
        assert_eq!("QHQ".parse::<Arrangement>().unwrap(), Arrangement::Qhq);
        assert!("qqh".parse::<Arrangement>().is_err());
        assert_eq!(Arrangement::Hqq.to_string(), "hqq");
    }

    #[test]
    fn table1_row_counts() {
        assert_eq!(table1_rows(Arrangement::Hqq).len(), 15);
        assert_eq!(table1_rows(Arrangement::Qhq).len(), 10);
        for rows in [table1_rows(Arrangement::Hqq), table1_rows(Arrangement::Qhq)] {
            for row in rows {
                assert!(row[0] > 0, "table rows are canonical: {row:?}");
                assert!(row.iter().all(|&m| m != 0));
            }
        }
    }

    #[test]
    fn max_m_guard() {
        let ebox = ErrorBox::new(0.02).unwrap();
        let criteria = QuadraticCriteria::survey();
        assert!(matches!(
            enumerate_combos(Arrangement::Hqq, 0, ebox, &criteria, 1),
            Err(Error::MaxMOutOfRange { .. })
        ));
        assert!(matches!(
            enumerate_combos(Arrangement::Hqq, 13, ebox, &criteria, 1),
            Err(Error::MaxMOutOfRange { .. })
        ));
    }

    #[test]
    fn enumeration_is_canonical_sorted_and_deterministic() {
        let ebox = ErrorBox::new(0.02).unwrap();
        let criteria = QuadraticCriteria::survey();
        let a = enumerate_combos(Arrangement::Hqq, 2, ebox, &criteria, 42).unwrap();
        let b = enumerate_combos(Arrangement::Hqq, 2, ebox, &criteria, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2 * 4 * 4);
        assert!(a.iter().all(|r| r.m[0] > 0));
        let keys: Vec<_> = a
            .iter()
            .map(|r| (r.metrics.max_abs_m, r.metrics.sum_abs_m, r.m))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn no_quadratic_combo_with_unit_frequencies() {
        let ebox = ErrorBox::new(0.02).unwrap();
        let results =
            enumerate_combos(Arrangement::Hqq, 1, ebox, &QuadraticCriteria::survey(), 42).unwrap();
        assert!(results.iter().all(|r| !r.quadratic));
    }

    #[test]
    fn good_triple_passes_the_survey_criteria() {
        let ebox = ErrorBox::new(0.02).unwrap();
        let result = evaluate_combo(
            Arrangement::Hqq,
            [1, 3, -3],
            ebox,
            &QuadraticCriteria::survey(),
            42,
        )
        .unwrap();
        assert!(result.quadratic, "result = {result:?}");
        assert!(result.ideal_dop < 1e-10);
        assert!(result.box_dop <= 3.0 * 0.02 * 0.02);
        assert!((1.8..=2.2).contains(&result.slope.unwrap()));
    }

    #[test]
    fn degenerate_triple_fails_fast() {
        // Equal QWP frequencies leave a constant (3,3) beat term, so the
        // ideal cascade keeps a large mean.
        let ebox = ErrorBox::new(0.02).unwrap();
        let result = evaluate_combo(
            Arrangement::Hqq,
            [1, 3, 3],
            ebox,
            &QuadraticCriteria::survey(),
            42,
        )
        .unwrap();
        assert!(!result.quadratic);
        assert!(result.ideal_dop >= 0.3, "ideal dop = {}", result.ideal_dop);
    }

    #[test]
    fn symmetries_hold_for_a_reference_combo() {
        let report = equivalence_check(
            Arrangement::Hqq,
            [1, 3, -3],
            ErrorBox::new(0.02).unwrap(),
            8,
            42,
        )
        .unwrap();
        assert!(
            report.negation_ok(),
            "diff = {:e}",
            report.negation_max_diff
        );
        assert!(
            report.inversion_ok(),
            "diff = {:e}",
            report.inversion_max_diff
        );
        assert!(report.phases_ok(), "rel = {}", report.phase_rel_diff);
    }

    #[test]
    fn table1_verification_rejects_out_of_range_boxes() {
        let criteria = QuadraticCriteria::survey();
        assert!(matches!(
            verify_table1(ErrorBox::new(0.1).unwrap(), &criteria, 1),
            Err(Error::BoxOutsideTable1Range { .. })
        ));
        assert!(matches!(
            verify_table1(ErrorBox::new(0.001).unwrap(), &criteria, 1),
            Err(Error::BoxOutsideTable1Range { .. })
        ));
    }

    #[test]
    fn phase_spread_is_small_for_a_good_combo() {
        let template = Arrangement::Hqq.template([1, 3, -3]).unwrap();
        let spread = phase_spread(&template, ErrorBox::new(0.02).unwrap(), 16, 42).unwrap();
        assert!(
            spread.relative_spread() < 0.10,
            "spread = {}",
            spread.relative_spread()
        );
        assert_eq!(spread.dops.len(), 16);
    }
}
