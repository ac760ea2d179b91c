//! Delaunay tori and spheres from elliptic-integral closed forms.
//!
//! The crate builds the meridians of constant-mean-curvature surfaces of
//! revolution (unduloids and nodoids), patches them into closed tori and
//! axis-to-axis spheres, and evaluates area, enclosed volume, Willmore and
//! Helfrich energies both in closed form and by adaptive quadrature.

pub mod assembly;
pub mod cmc;
pub mod curve;
pub mod elliptic;
pub mod error;
pub mod mesh;
pub mod metrics;
pub mod quadrature;
pub mod revolution;
pub mod spheres;

pub use assembly::{
    assemble_torus_profile, balance_function, energy_derivative_parts, limit_diagnostics, solve_balance,
    solution_derivative, torus_energy, BalanceState, TorusEnergy, MIN_C,
};
pub use cmc::{Branch, NodoidParams, UnduloidParams};
pub use curve::{ProfileCurve, Shape};
pub use elliptic::{ellip_e, ellip_k, EllipticModulus, EllipticPair};
pub use error::{Error, Result};
pub use metrics::{compute_metrics, SurfaceMetrics};
pub use revolution::{fundamental_forms, FundamentalForms, ProfilePoint, SampledProfile};
pub use spheres::{assemble_sphere_profile, sphere_energy, DelaunaySphereSpec};
