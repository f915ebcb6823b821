//! Sampling harness for the symbol bounds, the decay claims and the
//! almost-conservation sweeps.
//!
//! Nothing here asserts a constant. Bounds are reported as empirical suprema of
//! normalized ratios together with a saturation flag; sweeps report a log-log
//! slope.

mod report;
mod samplers;
mod sweeps;
mod symbols;

pub use report::{fit_loglog, BoundReport, DecadeBin, LogLogFit, SweepReport};
pub use samplers::{sample_rng, Stratum};
pub use sweeps::{
    conservation_sweep, pointwise_gap_sweep, smoothing_profile, strichartz_ratio, ConservationSweep,
};
pub use symbols::{
    bernstein_ratio, check_geometry_5_19, check_lemma_5_4, check_lemma_5_9,
    derivative_symbol_check, geometry_ratios, geometry_tuple_bound, resonant_sum_ratio,
    sigma4_gap_ratio, GeometryReport,
};
