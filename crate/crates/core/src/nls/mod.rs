//! Split-step integrator for `i u_t + Laplace u = |u|^2 u` and the quantities
//! it is meant to track.

mod checkpoint;
mod duhamel;
mod quantities;
mod solver;
mod trajectory;

pub use checkpoint::{evolve_checkpointed, read_checkpoint, write_checkpoint, CheckpointWriter};
pub use duhamel::{duhamel_split, free_evolve, free_evolve_spectrum, DecompositionResult};
pub use quantities::{
    energy, energy_i, energy_of_spectrum, kinetic_energy, m_factor, mass, potential_energy, rescale,
};
pub use solver::{
    evolve, evolve_from, strang_step, SolverConfig, StrangStepper, DEFAULT_OVERFLOW_GUARD,
};
pub use trajectory::Trajectory;
