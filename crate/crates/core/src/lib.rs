//! Exact thermodynamics of the mixed spin-(1/2, 1) Heisenberg dimer in
//! crossed magnetic and electric fields.
//!
//! Units: `k_B = μ_B = 1`. Energies, fields (`b = μ_B B`, `e = E`) and
//! temperatures share the unit of the exchange coupling `J`.

pub mod caloric;
pub mod error;
pub mod model;
pub mod oracle;
pub mod phases;
pub mod scan;
pub mod thermo;
pub mod validation;

pub use error::{Error, Result};
pub use model::{analytic_spectrum, hamiltonian_matrix, Fields, HermitianMatrix6, ModelParams, Spectrum};
pub use phases::{classify_ground_state, PhaseLabel};
pub use scan::{Grid2D, Polyline, Range1D};
pub use thermo::{entropy, free_energy, magnetization, polarization, thermo_point, ThermoPoint};
