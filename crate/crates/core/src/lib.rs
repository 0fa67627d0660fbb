//! Level sensitive carry value transformation (LSCVT) fractals and their use
//! as a port layout for CDMA base stations.
//!
//! - [`boolcore`]: three-variable Boolean rules, CVT and LSCVT.
//! - [`pattern`]: level-indexed grids, zero masks, PBM/ASCII rendering.
//! - [`fractal`]: similarity dimension and box-counting estimates.
//! - [`rotation`]: standby-port rotation, efficiency and fairness.
//! - [`cdma`]: Walsh spreading codes and channel superposition.
//! - [`cli`]: the `lscvt` command-line tool.

pub mod boolcore;
pub mod cdma;
pub mod cli;
pub mod error;
pub mod fractal;
pub mod pattern;
pub mod rotation;

pub use boolcore::{
    cvt, eval_rule, level_width, lscvt, rule_from_number, BitWord, BooleanRule, LsCvtResult,
};
pub use cdma::{channel_decode, channel_encode, walsh_codes, ChannelFrame, WalshCodeBook};
pub use error::{Error, Result};
pub use fractal::{box_count, estimate_dimension, similarity_dimension, DimensionEstimate};
pub use pattern::{
    generate_grid, natural_order, render, render_values, zero_mask, MaskFormat, PatternGrid,
    ZeroMask,
};
pub use rotation::{
    build_schedule, depth_speed, efficiency, simulate, standby_set, EfficiencyReport,
    FairnessReport, PortAssignment, RotationSchedule,
};
