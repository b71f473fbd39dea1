//! Expansion-method toolkit for the generalized shallow water wave equation
//!
//! ```text
//! v_xxxt + alpha v_x v_xt + beta v_t v_xx - gamma v_xx - v_xt = 0
//! ```
//!
//! The crate is split into four layers:
//!
//! * [`expr`]: exact rational polynomials and the `Y`-closure derivative.
//! * [`pipeline`]: homogeneous balance, ansatz, coefficient-system extraction,
//!   exact verification of solution sets and a multi-start Newton oracle.
//! * [`solutions`]: closed-form traveling waves and their antiderivatives.
//! * [`verifier`]: finite-difference residuals of the reduced ODE and the PDE.

pub mod expr;
pub mod pipeline;
pub mod quadrature;
pub mod solutions;
pub mod verifier;

pub use expr::{PolyInY, Rational, Symbol, SymPoly};
pub use pipeline::{CoefficientSystem, ReducedOde, SetId, SolutionSet};
pub use solutions::{ExpansionParams, ModelParams, Phi, TravelingWave};
pub use verifier::{Grid2D, ResidualReport};
