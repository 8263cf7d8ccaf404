//! Two-qubit entanglement dynamics in structured photonic reservoirs.
//!
//! The library models a pair of identical two-level emitters coupled to a
//! shared electromagnetic environment described by three collective
//! parameters: the single-emitter decay rate `γ`, the cross-damping rate
//! `γ₁₂`, and the coherent dipole-dipole shift `g₁₂`. From those it computes
//! transient and steady-state entanglement (Wootters concurrence) by
//! integrating the dissipative master equation, by closed-form expressions,
//! or from coupling tables ingested from full-wave electromagnetic solvers.
//!
//! All rates and times are expressed in units of `γ` (`γ = 1` internally);
//! conversion to physical units happens only at the ingestion and CLI
//! boundaries.

// `!(x > 0.0)` is the NaN-rejecting validation idiom; indexed loops read
// better in the fixed-size matrix code.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod concurrence;
pub mod dynamics;
pub mod error;
pub mod greens;
pub mod linalg;
pub mod model;
pub mod table;
pub mod vacuum;
pub mod waveguide;

pub use concurrence::{dicke_concurrence, wootters_concurrence};
pub use dynamics::{
    dicke_initial_state, evolve, lindblad_rhs, single_qubit_rho_ee, steady_state,
    transient_concurrence_closed_form, IntegratorOptions, LindbladGenerator, Trajectory,
};
pub use error::Error;
pub use model::{
    to_dicke, to_product, validate_state, Basis, CouplingParameters, DensityMatrix, PumpDrive,
    StateTolerances, TimeGrid, ValidationReport,
};
pub use table::{load_coupling_table, load_manifest, CouplingTable};
pub use vacuum::{channel_populations, vacuum_coupling_curve, vacuum_g12, vacuum_gamma12};
pub use waveguide::{cutoff_wavelength, dispersion_curve, effective_index, GuideGeometry};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
