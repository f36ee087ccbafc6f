//! Error-sensitivity analysis: closed-form two-plate means, worst-case
//! residual DOP over retardation-error boxes, scaling-exponent fits and
//! the uniform-retarder-chain alternative.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cascade::{residual_dop_max, time_average};
use crate::cascade::{CascadeTemplate, PlateKind, PlateTemplate};
use crate::error::{Error, Result};
use crate::matrix::Matrix3;

/// Symmetric retardation-error box: |xi_i| <= xi_max for every plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBox {
    xi_max: f64,
}

impl ErrorBox {
    pub fn new(xi_max: f64) -> Result<Self> {
        if !(0.0..=0.3).contains(&xi_max) {
            return Err(Error::BadErrorBox { xi_max });
        }
        Ok(ErrorBox { xi_max })
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }
}

/// Two-plate (HWP then QWP) frequency-pair classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComboClass {
    /// Ideal-plate mean is nonzero: m2 = m1 or m2 = 2*m1. No depolarizer.
    Degenerate,
    /// All special resonances avoided; mean is diag(0, 0, xi2).
    Generic,
    /// 2*m2 = m1; the QWP's second harmonic beats against the HWP drive.
    HalfHarmonic,
    /// m1 = -m2; lowest possible drive frequencies.
    CounterRotating,
}

/// Classifies a two-plate frequency pair. Total over nonzero integers.
pub fn classify_two_plate(m1: i32, m2: i32) -> Result<ComboClass> {
    if m1 == 0 {
        return Err(Error::ZeroFrequency { index: 0 });
    }
    if m2 == 0 {
        return Err(Error::ZeroFrequency { index: 1 });
    }
    let (m1, m2) = (m1 as i64, m2 as i64);
    Ok(if m2 == m1 || m2 == 2 * m1 {
        ComboClass::Degenerate
    } else if m1 == -m2 {
        ComboClass::CounterRotating
    } else if 2 * m2 == m1 {
        ComboClass::HalfHarmonic
    } else {
        ComboClass::Generic
    })
}

/// First-order closed form of the two-plate mean matrix for the class.
/// No closed form exists for degenerate pairs.
pub fn two_plate_mean_approx(
    class: ComboClass,
    xi1: f64,
    xi2: f64,
    zeta1: f64,
    zeta2: f64,
) -> Result<Matrix3> {
    match class {
        ComboClass::Degenerate => Err(Error::DegenerateCombo),
        ComboClass::Generic => Ok(Matrix3::diagonal(0.0, 0.0, xi2)),
        ComboClass::HalfHarmonic => {
            let (s, c) = (2.0 * zeta2 - zeta1).sin_cos();
            Ok(Matrix3::new([
                [0.0, 0.0, xi1 / 2.0 * s],
                [0.0, 0.0, -xi1 / 2.0 * c],
                [0.0, 0.0, xi2],
            ]))
        }
        ComboClass::CounterRotating => {
            let (s, c) = (zeta2 + zeta1).sin_cos();
            let a = xi1 / 2.0;
            Ok(Matrix3::new([
                [-a * c, -a * s, 0.0],
                [-a * s, a * c, 0.0],
                [0.0, 0.0, xi2],
            ]))
        }
    }
}

/// First-order worst-case DOP for the class.
///
/// For the half-harmonic class this returns the published form
/// `sqrt(xi1^2/2 + xi2^2)`; the singular value of the closed-form mean
/// matrix is `sqrt(xi1^2/4 + xi2^2)` instead. Both candidates are exposed
/// by [`half_harmonic_dop_candidates`] and the discrepancy is settled
/// numerically by [`certify_half_harmonic`].
pub fn two_plate_dop_approx(class: ComboClass, xi1: f64, xi2: f64) -> Result<f64> {
    match class {
        ComboClass::Degenerate => Err(Error::DegenerateCombo),
        ComboClass::Generic => Ok(xi2.abs()),
        ComboClass::HalfHarmonic => Ok(half_harmonic_dop_candidates(xi1, xi2).printed),
        ComboClass::CounterRotating => Ok((xi1 / 2.0).abs().max(xi2.abs())),
    }
}

/// The two candidate half-harmonic DOP formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfHarmonicCandidates {
    /// `sqrt(xi1^2/2 + xi2^2)`, as published.
    pub printed: f64,
    /// `sqrt(xi1^2/4 + xi2^2)`, the norm of the closed-form mean column.
    pub column_norm: f64,
}

pub fn half_harmonic_dop_candidates(xi1: f64, xi2: f64) -> HalfHarmonicCandidates {
    HalfHarmonicCandidates {
        printed: (xi1 * xi1 / 2.0 + xi2 * xi2).sqrt(),
        column_norm: (xi1 * xi1 / 4.0 + xi2 * xi2).sqrt(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfHarmonicWinner {
    Printed,
    ColumnNorm,
}

impl HalfHarmonicWinner {
    pub fn label(&self) -> &'static str {
        match self {
            HalfHarmonicWinner::Printed => "printed sqrt(xi1^2/2 + xi2^2)",
            HalfHarmonicWinner::ColumnNorm => "column-norm sqrt(xi1^2/4 + xi2^2)",
        }
    }
}

/// Outcome of the numeric certification of the half-harmonic DOP formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfHarmonicCertification {
    pub xi1: f64,
    pub xi2: f64,
    /// Exact-model worst case over the sampled phases.
    pub numeric_dop: f64,
    pub printed: f64,
    pub printed_rel_err: f64,
    pub column_norm: f64,
    pub column_norm_rel_err: f64,
}

impl HalfHarmonicCertification {
    pub fn winner(&self) -> HalfHarmonicWinner {
        if self.column_norm_rel_err <= self.printed_rel_err {
            HalfHarmonicWinner::ColumnNorm
        } else {
            HalfHarmonicWinner::Printed
        }
    }

    pub fn winner_rel_err(&self) -> f64 {
        self.printed_rel_err.min(self.column_norm_rel_err)
    }

    /// True when the numeric value singles out one candidate: the closer
    /// candidate matches within `tol` and the other one fits strictly
    /// worse.
    pub fn discriminates(&self, tol: f64) -> bool {
        self.winner_rel_err() <= tol && self.printed_rel_err != self.column_norm_rel_err
    }
}

/// Settles the half-harmonic formula discrepancy against the exact model:
/// HWP(m=2) + QWP(m=1) with the given errors, worst-cased over
/// `zeta_samples` random phase pairs plus the zero pair.
pub fn certify_half_harmonic(
    xi1: f64,
    xi2: f64,
    zeta_samples: usize,
    seed: u64,
) -> Result<HalfHarmonicCertification> {
    let template = CascadeTemplate::new(vec![
        PlateTemplate {
            kind: PlateKind::Half,
            m: 2,
        },
        PlateTemplate {
            kind: PlateKind::Quarter,
            m: 1,
        },
    ])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut numeric_dop = 0.0_f64;
    let mut tuples = vec![[0.0_f64; 2]];
    for _ in 0..zeta_samples {
        tuples.push([rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)]);
    }
    for zeta in &tuples {
        let spec = template.instantiate(&[xi1, xi2], zeta)?;
        numeric_dop = numeric_dop.max(residual_dop_max(&spec));
    }
    let candidates = half_harmonic_dop_candidates(xi1, xi2);
    let rel = |cand: f64| (numeric_dop - cand).abs() / cand;
    Ok(HalfHarmonicCertification {
        xi1,
        xi2,
        numeric_dop,
        printed: candidates.printed,
        printed_rel_err: rel(candidates.printed),
        column_norm: candidates.column_norm,
        column_norm_rel_err: rel(candidates.column_norm),
    })
}

/// Which retardation-error samples the worst-case search evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XiPlan {
    /// All 2^p sign corners (+-xi_max per plate).
    pub corners: bool,
    /// All 2p axis points (one plate at +-xi_max, the rest ideal).
    pub axes: bool,
    /// Uniform random interior points.
    pub interior: usize,
}

impl XiPlan {
    pub fn corners_and_axes() -> Self {
        XiPlan {
            corners: true,
            axes: true,
            interior: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.corners && !self.axes && self.interior == 0
    }
}

impl Default for XiPlan {
    fn default() -> Self {
        XiPlan {
            corners: true,
            axes: true,
            interior: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleCounts {
    pub xi_points: usize,
    pub zeta_tuples: usize,
    pub evaluations: usize,
}

/// Worst case found by [`worst_case_dop`], with its arg-max.
#[derive(Debug, Clone, PartialEq)]
pub struct DopReport {
    /// Time-averaged matrix at the worst sample.
    pub mean_matrix: Matrix3,
    /// Its singular values, descending.
    pub sigma: [f64; 3],
    /// Worst-case residual DOP; equals `sigma[0]`.
    pub dop_max: f64,
    pub worst_xi: Vec<f64>,
    pub worst_zeta: Vec<f64>,
    /// Worst case restricted to the all-zero phase tuple, reported
    /// alongside the phase-maximized value.
    pub dop_zero_zeta: f64,
    pub samples_used: SampleCounts,
}

#[derive(Clone, Copy)]
struct Candidate {
    dop: f64,
    xi_idx: usize,
    zeta_idx: usize,
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.partial_cmp(y).unwrap() {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub(crate) fn sample_xi_points(
    plate_count: usize,
    xi_max: f64,
    plan: &XiPlan,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<f64>> {
    let mut points = Vec::new();
    if plan.corners {
        for mask in 0..(1_u64 << plate_count) {
            points.push(
                (0..plate_count)
                    .map(|i| if mask >> i & 1 == 0 { xi_max } else { -xi_max })
                    .collect(),
            );
        }
    }
    if plan.axes {
        for i in 0..plate_count {
            for sign in [1.0, -1.0] {
                let mut xi = vec![0.0; plate_count];
                xi[i] = sign * xi_max;
                points.push(xi);
            }
        }
    }
    for _ in 0..plan.interior {
        points.push(
            (0..plate_count)
                .map(|_| {
                    if xi_max > 0.0 {
                        rng.gen_range(-xi_max..xi_max)
                    } else {
                        0.0
                    }
                })
                .collect(),
        );
    }
    points
}

pub(crate) fn sample_zeta_tuples(
    plate_count: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<f64>> {
    let mut tuples = vec![vec![0.0; plate_count]];
    for _ in 0..samples {
        tuples.push((0..plate_count).map(|_| rng.gen_range(0.0..TAU)).collect());
    }
    tuples
}

/// Maximizes the residual DOP over the retardation-error box and over
/// start phases.
///
/// The error samples follow `plan` (sign corners, axis points, uniform
/// random interior points); phases run over `zeta_samples` random tuples
/// plus the all-zero tuple. All samples are drawn up front from a
/// ChaCha stream seeded with `seed`, then evaluated in parallel and
/// reduced with a canonical tie-break (largest DOP, then lexicographically
/// smallest `(xi, zeta)`), so the result is independent of the schedule.
pub fn worst_case_dop(
    template: &CascadeTemplate,
    ebox: ErrorBox,
    zeta_samples: usize,
    plan: &XiPlan,
    seed: u64,
) -> Result<DopReport> {
    if plan.is_empty() {
        return Err(Error::EmptyPlan);
    }
    if zeta_samples == 0 {
        return Err(Error::NoPhaseSamples);
    }
    let p = template.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xis = sample_xi_points(p, ebox.xi_max(), plan, &mut rng);
    let zetas = sample_zeta_tuples(p, zeta_samples, &mut rng);

    let pairs: Vec<(usize, usize)> = (0..xis.len())
        .flat_map(|i| (0..zetas.len()).map(move |j| (i, j)))
        .collect();
    let pick = |a: Candidate, b: Candidate| -> Candidate {
        match a.dop.partial_cmp(&b.dop).unwrap() {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                let key = lex_cmp(&xis[a.xi_idx], &xis[b.xi_idx])
                    .then_with(|| lex_cmp(&zetas[a.zeta_idx], &zetas[b.zeta_idx]));
                if key == Ordering::Greater {
                    b
                } else {
                    a
                }
            }
        }
    };
    let best = pairs
        .par_iter()
        .map(|&(xi_idx, zeta_idx)| {
            let spec = template
                .instantiate(&xis[xi_idx], &zetas[zeta_idx])
                .expect("validated sample");
            Candidate {
                dop: residual_dop_max(&spec),
                xi_idx,
                zeta_idx,
            }
        })
        .reduce_with(pick)
        .expect("plan produces at least one sample");

    let dop_zero_zeta = xis
        .par_iter()
        .map(|xi| {
            let spec = template
                .instantiate(xi, &zetas[0])
                .expect("validated sample");
            residual_dop_max(&spec)
        })
        .reduce(|| 0.0, f64::max);

    let worst_spec = template
        .instantiate(&xis[best.xi_idx], &zetas[best.zeta_idx])
        .expect("validated sample");
    let mean_matrix = time_average(&worst_spec);
    let sigma = mean_matrix.singular_values();
    Ok(DopReport {
        mean_matrix,
        sigma,
        dop_max: sigma[0],
        worst_xi: xis[best.xi_idx].clone(),
        worst_zeta: zetas[best.zeta_idx].clone(),
        dop_zero_zeta,
        samples_used: SampleCounts {
            xi_points: xis.len(),
            zeta_tuples: zetas.len(),
            evaluations: pairs.len(),
        },
    })
}

/// Worst case over start phases at a fixed error vector: `zeta_samples`
/// random tuples plus the all-zero tuple, reduced like
/// [`worst_case_dop`].
pub fn worst_case_over_phases(
    template: &CascadeTemplate,
    xi: &[f64],
    zeta_samples: usize,
    seed: u64,
) -> Result<DopReport> {
    if zeta_samples == 0 {
        return Err(Error::NoPhaseSamples);
    }
    // Validate the error vector early so bad input fails before sampling.
    template.instantiate(xi, &vec![0.0; template.len()])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zetas = sample_zeta_tuples(template.len(), zeta_samples, &mut rng);
    let best = (0..zetas.len())
        .into_par_iter()
        .map(|zeta_idx| {
            let spec = template
                .instantiate(xi, &zetas[zeta_idx])
                .expect("validated");
            Candidate {
                dop: residual_dop_max(&spec),
                xi_idx: 0,
                zeta_idx,
            }
        })
        .reduce_with(|a, b| match a.dop.partial_cmp(&b.dop).unwrap() {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if lex_cmp(&zetas[a.zeta_idx], &zetas[b.zeta_idx]) == Ordering::Greater {
                    b
                } else {
                    a
                }
            }
        })
        .expect("at least the zero tuple");
    let worst_spec = template.instantiate(xi, &zetas[best.zeta_idx])?;
    let mean_matrix = time_average(&worst_spec);
    let sigma = mean_matrix.singular_values();
    let dop_zero_zeta = residual_dop_max(&template.instantiate(xi, &zetas[0])?);
    Ok(DopReport {
        mean_matrix,
        sigma,
        dop_max: sigma[0],
        worst_xi: xi.to_vec(),
        worst_zeta: zetas[best.zeta_idx].clone(),
        dop_zero_zeta,
        samples_used: SampleCounts {
            xi_points: 1,
            zeta_tuples: zetas.len(),
            evaluations: zetas.len(),
        },
    })
}

/// Geometric grid of xi_max values for scaling sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl GeometricGrid {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.lo];
        }
        let ratio = (self.hi / self.lo).ln();
        (0..self.points)
            .map(|k| self.lo * (ratio * k as f64 / (self.points - 1) as f64).exp())
            .collect()
    }

    /// Preconditions for a scaling-exponent fit: at least 4 points
    /// spanning at least one decade, all within the small-error regime.
    pub fn validate_for_scaling(&self) -> Result<()> {
        let ok = self.points >= 4
            && self.lo > 0.0
            && self.hi > self.lo
            && self.hi / self.lo >= 10.0 * (1.0 - 1e-12)
            && self.hi <= 0.1;
        if ok {
            Ok(())
        } else {
            Err(Error::BadScalingGrid {
                lo: self.lo,
                hi: self.hi,
                points: self.points,
            })
        }
    }
}

/// Result of a scaling sweep: the fitted log-log slope and the per-grid
/// worst-case DOP values behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub slope: f64,
    pub points: Vec<(f64, f64)>,
}

/// Least-squares slope of `ln(dop)` against `ln(xi_max)`.
pub fn log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|&(x, _)| x.ln()).sum::<f64>() / n;
    let my = points.iter().map(|&(_, y)| y.ln()).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y) in points {
        let dx = x.ln() - mx;
        num += dx * (y.ln() - my);
        den += dx * dx;
    }
    num / den
}

/// Least-squares slope of log(worst-case DOP) vs log(xi_max) over a
/// geometric grid. Every grid point reuses the same seed, so the sampled
/// phases are shared and the fit isolates the error scaling.
pub fn scaling_exponent(
    template: &CascadeTemplate,
    grid: &GeometricGrid,
    zeta_samples: usize,
    plan: &XiPlan,
    seed: u64,
) -> Result<ScalingFit> {
    grid.validate_for_scaling()?;
    let mut points = Vec::with_capacity(grid.points);
    for xi_max in grid.values() {
        let report = worst_case_dop(template, ErrorBox::new(xi_max)?, zeta_samples, plan, seed)?;
        if report.dop_max < 1e-14 {
            return Err(Error::BelowFloor {
                xi_max,
                dop: report.dop_max,
            });
        }
        points.push((xi_max, report.dop_max));
    }
    Ok(ScalingFit {
        slope: log_slope(&points),
        points,
    })
}

/// Retardation for which a single rotating waveplate averages to
/// `diag(1/3, 1/3, -1/3)`.
pub fn uniform_chain_retardation() -> f64 {
    (-1.0_f64 / 3.0).acos()
}

/// Chain of `n` identical arccos(-1/3) retarders.
pub fn chain_template(m: &[i32]) -> Result<CascadeTemplate> {
    let delta = uniform_chain_retardation();
    CascadeTemplate::new(
        m.iter()
            .map(|&m| PlateTemplate {
                kind: PlateKind::Custom(delta),
                m,
            })
            .collect(),
    )
}

const CHAIN_MAX_PLATES: usize = 10;

/// Searches for a harmonic collision among the chain frequencies: a
/// nonzero combination `sum(k_i * m_i) = 0` with `k_i` in {0, +-1, +-2}.
/// Each plate's matrix carries harmonics `{0, +-m_i, +-2m_i}`, so absence
/// of collisions makes the mean of the product factor into the product of
/// the per-plate means.
pub fn find_collision(m: &[i32]) -> Result<Option<Vec<i32>>> {
    if m.len() > CHAIN_MAX_PLATES {
        return Err(Error::ChainTooLong {
            got: m.len(),
            max: CHAIN_MAX_PLATES,
        });
    }
    let digits = [0_i32, 1, -1, 2, -2];
    let n = m.len();
    let total = 5_u64.pow(n as u32);
    for code in 1..total {
        let mut c = code;
        let mut k = vec![0_i32; n];
        let mut sum = 0_i64;
        for (i, ki) in k.iter_mut().enumerate() {
            *ki = digits[(c % 5) as usize];
            c /= 5;
            sum += *ki as i64 * m[i] as i64;
        }
        if sum == 0 {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Chain evaluation: measured worst-case DOP, the 3^-n target and any
/// frequency collision found.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub m: Vec<i32>,
    pub dop_max: f64,
    /// 3^-n.
    pub expected: f64,
    pub collision: Option<Vec<i32>>,
}

/// Evaluates an n-plate arccos(-1/3) chain at zero errors and phases,
/// reporting the measured DOP together with any frequency collision.
pub fn uniform_chain_report(m: &[i32]) -> Result<ChainReport> {
    let template = chain_template(m)?;
    let collision = find_collision(m)?;
    let zeros = vec![0.0; m.len()];
    let spec = template.instantiate(&zeros, &zeros)?;
    Ok(ChainReport {
        m: m.to_vec(),
        dop_max: residual_dop_max(&spec),
        expected: 3.0_f64.powi(-(m.len() as i32)),
        collision,
    })
}

/// Worst-case DOP of a collision-free chain; equals 3^-n up to roundoff.
/// Colliding frequency choices are rejected with the offending
/// combination.
pub fn uniform_chain_dop(m: &[i32]) -> Result<f64> {
    let report = uniform_chain_report(m)?;
    match report.collision {
        Some(k) => Err(Error::FrequencyCollision { k }),
        None => Ok(report.dop_max),
    }
}
