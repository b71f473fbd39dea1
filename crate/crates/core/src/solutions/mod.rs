//! Closed-form traveling waves built from the two solution sets.
//!
//! `Phi` is evaluated through the bracketed ratio `R(zeta)`, which equals
//! `G'/(G'+G+A)` for the auxiliary linear ODE solution. `u` is recovered by
//! quadrature with `u(0) = 0`, and `v(x, t) = u(x - omega t)`.

mod params;
mod slode;
mod wave;

pub use params::{omega_from_eta, Case, ExpansionParams, ModelParams, TravelFrame};
pub use slode::{slode_solution, SlodeSolution};
pub use wave::{BracketRatio, Phi, PrimitiveTable, TravelingWave, POLE_EPS};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolutionError {
    #[error("model coefficient {name} must be nonzero")]
    ZeroModelCoefficient { name: &'static str },
    #[error("alpha + beta must be nonzero")]
    AlphaBetaCancel,
    #[error("discriminant B^2 - 4C is zero")]
    DegenerateDiscriminant,
    #[error("k1 and k2 must not both be zero")]
    ZeroConstants,
    #[error("eta = -1 gives an undefined wave speed")]
    DegenerateSpeed,
    #[error("non-finite parameter {name}")]
    NonFinite { name: &'static str },
    #[error("pole of Phi at zeta = {at} on the integration path")]
    PoleOnPath { at: f64 },
}
