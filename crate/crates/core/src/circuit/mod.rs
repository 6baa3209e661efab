//! Electrical networks with boundary vertices over an exact field.

pub mod kirchhoff;
pub mod network;
pub mod series_parallel;
pub mod transform;

pub use kirchhoff::{
    conductance, energy_identity_check, essential_edges, laplacian, response, sensitivity, solve,
    transfer_matrix, EnergyForm, KirchhoffSolution,
};
pub use network::{CircuitError, Edge, Embedding, Network};
pub use series_parallel::{build_series_parallel, SeriesParallel};
pub use transform::{merge_parallel, ydelta};
