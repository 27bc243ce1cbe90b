//! The verification battery. Every check returns an [`IdentityReport`]
//! comparing two independently computed sides coefficient by coefficient.

mod battery;
mod bridge;
mod classical;
mod finite;
mod hfunc;
mod key;
mod prospects;
mod report;
mod rho;

pub use battery::{items_for, run_items, BatteryConfig, BatteryItem, NoCache, SeriesCache, Target};
pub use bridge::{colored_bridge, theorem_genfun_bridge, uncolored_bridge};
pub use classical::{classical_checks, partition_counts_oracle, Classical};
pub use finite::{
    compare_sm_sigma, compute_s, compute_sigma, l_form_consistency, l_value, l_value_shifted, limit_check, r_expansion,
    support_check, verify_recurrence_step, verify_sm_sigma, Sigma, SmContext,
};
pub use hfunc::{h_function, h_function_check, h_window};
pub use key::{
    distinct_parts_side, frequency_vectors, goellnitz_summand, key_exponent, key_identity_cell, key_identity_genfun,
    key_sum_side, key_summand, product_side, reduction_cell, reduction_check, reduction_genfun, schur_summand, Reduction,
};
pub use prospects::{bounded_goellnitz, bounded_limit, bounded_sides, capparelli_check, capparelli_product, product_transform_check, quadruple_product, Transform};
pub use report::{
    compare_counts, compare_laurent, compare_qpoly, compare_rational, compare_series, sort_reports, with_injected_fault,
    IdentityReport, Mismatch, ParamValue, Status,
};
pub use rho::{case_analysis_check, rho1_closed, rho1_sum, rho2_closed, rho2_sum, rho_check, RhoKind};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("index {index} equals m = {m}")]
    IndexCollision { index: u32, m: u32 },
    #[error("z-window [{have_lo}, {have_hi}] does not contain the needed [{need_lo}, {need_hi}]")]
    WindowTooSmall {
        need_lo: i32,
        need_hi: i32,
        have_lo: i32,
        have_hi: i32,
    },
    #[error("invalid argument: {0}")]
    Invalid(String),
}
