//! Exact tilings of rectangles and orthogonal polygons by rectangles of
//! prescribed ratios, through complex-conductance electrical networks.

pub mod algebra;
pub mod circuit;
pub mod io;
pub mod polygon;
pub mod posreal;
pub mod synthesis;
pub mod tiling;
pub mod tomography;
pub mod walks;

pub use algebra::{
    euclid_cfrac, nf_eval, sturm_isolate, AlgebraError, CfracOutcome, ContinuedFraction,
    GaussianRational, IsolatingInterval, NumberField, NumberFieldElement, Polynomial, Rational,
    RationalFunction, Scalar,
};
pub use circuit::{
    conductance, response, sensitivity, solve, CircuitError, Edge, Embedding, KirchhoffSolution,
    Network,
};
pub use polygon::{
    extract_sides, is_generic, omega_check, Coord, OmegaReport, OrthogonalPolygon, PolygonError,
    SideData,
};
pub use synthesis::{decide_self_similar, decide_square, CertificateKind, TilingVerdict};
pub use tiling::{
    network_to_tiling, tiling_to_network, validate, RatioLabel, Region, Tile, Tiling, TilingError,
    Validation,
};
pub use tomography::{realize_response_b3, RealizeError, Realization};
pub use walks::{escape_probability, simulate_walk, MarkovChain, WalkEstimate};
