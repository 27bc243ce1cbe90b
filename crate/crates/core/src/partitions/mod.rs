//! Colored integer partitions: the 2-, 3- and 4-primary alphabets, Type-1
//! gap conditions, exhaustive enumeration, dilations to ordinary partitions
//! and brute-force counters for the uncolored theorems.

mod color;
mod dilation;
mod genfun;
mod partition;
mod type1;
mod uncolored;

pub use color::{Color, ColorClass, ColorScheme};
pub use dilation::{apply_dilation, DilationMap};
pub use genfun::{base_exponent, genfun_type1};
pub use partition::{ColorCounts, ColoredPart, ColoredPartition, ConstraintSolution, PartProfile};
pub use type1::{
    count_g, count_p, count_p_table, distinct_parts_table, enumerate_type1, tally_by_profile, tally_type1,
    validate_type1, value_cost, walk_type1, Frequencies, WalkLimits,
};
pub use uncolored::{
    capparelli_refined, capparelli_table, count_capparelli, count_uncolored, count_uncolored_table, is_g_partition,
    CapparelliSide, Side, Theorem,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("unknown color {0}")]
    UnknownColor(String),
    #[error("unknown scheme {0}")]
    UnknownScheme(String),
    #[error("parse error: {0}")]
    Parse(String),
}
