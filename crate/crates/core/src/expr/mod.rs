//! Exact symbolic arithmetic for the expansion method.
//!
//! [`SymPoly`] is a multivariate polynomial with rational coefficients over a
//! fixed symbol set; [`PolyInY`] is a polynomial in the ansatz variable `Y`
//! whose coefficients are `SymPoly`s, with `zeta`-differentiation given by the
//! Riccati-type closure of the auxiliary linear ODE.

mod parse;
mod poly_y;
mod subst;
mod symbol;
mod sympoly;

pub use parse::ParseError;
pub use poly_y::{closure_rule, PolyInY};
pub use subst::{substitute_set, LocalizedPoly, Substitution};
pub use symbol::{Monomial, Symbol, UnknownSymbol, NUM_SYMBOLS};
pub use sympoly::SymPoly;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
