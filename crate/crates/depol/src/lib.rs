//! Stokes-space model and design search for rotating-waveplate
//! depolarizers.
//!
//! A depolarizer built from cascaded rotating waveplates ideally averages
//! every input polarization to zero over one rotation interval. Real
//! plates miss their nominal retardations, which leaves a residual degree
//! of polarization. This crate models such cascades exactly in normalized
//! Stokes space, computes the worst-case residual DOP (the largest
//! singular value of the time-averaged rotation matrix), and searches
//! integer drive-frequency combinations for which the residual grows only
//! quadratically with the retardation error.
//!
//! The numerics rely on two small facts:
//! * every entry of the cascade matrix is a trigonometric polynomial in
//!   normalized time, so uniform sampling past the harmonic bound
//!   averages it exactly;
//! * all searches draw their samples from seeded ChaCha streams and
//!   reduce with canonical tie-breaks, so results are reproducible and
//!   independent of thread scheduling.

pub mod analysis;
pub mod cascade;
pub mod error;
pub mod matrix;
pub mod retarder;
pub mod search;
pub mod seed;
pub mod stokes;

pub use analysis::{
    certify_half_harmonic, chain_template, classify_two_plate, find_collision,
    half_harmonic_dop_candidates, log_slope, scaling_exponent, two_plate_dop_approx,
    two_plate_mean_approx, uniform_chain_dop, uniform_chain_report, uniform_chain_retardation,
    worst_case_dop, worst_case_over_phases, ChainReport, ComboClass, DopReport, ErrorBox,
    GeometricGrid, HalfHarmonicCandidates, HalfHarmonicCertification, HalfHarmonicWinner,
    SampleCounts, ScalingFit, XiPlan,
};
pub use cascade::{
    cascade_matrix_at, residual_dop_for_input, residual_dop_max, time_average,
    time_average_with_samples, CascadeSpec, CascadeTemplate, PlateKind, PlateSpec, PlateTemplate,
};
pub use error::{Error, Result};
pub use matrix::Matrix3;
pub use retarder::{hwp_approx_matrix, qwp_approx_matrix, retarder_matrix, Retarder};
pub use search::{
    enumerate_combos, equivalence_check, evaluate_combo, minimal_frequency_claims, phase_spread,
    table1_rows, verify_table1, Arrangement, ArrangementClaims, ComboMetrics, ComboResult,
    EquivalenceReport, MinimalClaims, PhaseSpread, QuadraticCriteria, Table1Report, Table1Row,
    TABLE1_HQQ, TABLE1_QHQ,
};
pub use seed::derive_seed;
pub use stokes::{apply, dop_for_input, StokesVector};
