//! Homogeneous balance, ansatz construction, coefficient-system extraction
//! and verification of solution sets for the reduced traveling-wave ODE
//!
//! ```text
//! Phi'' + (alpha + beta)/2 Phi^2 + eta Phi = 0
//! ```

mod oracle;
mod sets;

use std::fmt;
use std::str::FromStr;

use crate::expr::{rational, ParseError, PolyInY, Rational, Symbol, SymPoly};

pub use oracle::{
    numeric_root_oracle, zero_family_residual_is_exact, OracleConfig, OracleError, OracleParams,
    OracleReport, Root, UNKNOWNS,
};
pub use sets::{verify_solution_set, EquationVerdict, SetId, SolutionSet, VerificationReport};

/// Number of equations in the extracted system (powers `Y^0 .. Y^4`).
pub const SYSTEM_SIZE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("no nonlinear term: nonlinearity degree {0} < 2")]
    NoNonlinearity(u32),
    #[error("balance {derivative_order}/({nonlinearity_degree} - 1) is not a positive integer")]
    NonIntegerBalance {
        derivative_order: u32,
        nonlinearity_degree: u32,
    },
    #[error("ansatz degree {0} is outside the supported range 1..=2")]
    UnsupportedDegree(usize),
    #[error("expanded polynomial has degree {0}, the system holds powers up to Y^4")]
    DegreeTooHigh(usize),
    #[error("system file: {0}")]
    SystemFormat(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A reduced ODE of the form `Phi^(p) + k_nl Phi^q + k_lin Phi = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedOde {
    pub derivative_order: u32,
    pub nonlinearity_degree: u32,
    pub nonlinear_coefficient: SymPoly,
    pub linear_coefficient: SymPoly,
}

impl ReducedOde {
    /// `Phi'' + (alpha + beta)/2 Phi^2 + eta Phi = 0`.
    pub fn gswwe() -> Self {
        let half = rational(1, 2);
        ReducedOde {
            derivative_order: 2,
            nonlinearity_degree: 2,
            nonlinear_coefficient: (&SymPoly::var(Symbol::Alpha) + &SymPoly::var(Symbol::Beta))
                .scale(&half),
            linear_coefficient: SymPoly::var(Symbol::Eta),
        }
    }
}

/// Ansatz degree `N` balancing `deg Phi^(p) = N + p` against `deg Phi^q = qN`.
pub fn homogeneous_balance(ode: &ReducedOde) -> Result<usize, PipelineError> {
    let p = ode.derivative_order;
    let q = ode.nonlinearity_degree;
    if q < 2 {
        return Err(PipelineError::NoNonlinearity(q));
    }
    if p == 0 || p % (q - 1) != 0 {
        return Err(PipelineError::NonIntegerBalance {
            derivative_order: p,
            nonlinearity_degree: q,
        });
    }
    Ok((p / (q - 1)) as usize)
}

/// Same balance found by counting degrees of `D^p(Y^N)` and `(Y^N)^q`
/// directly with the closure derivative, for `N` in `1..=max_n`.
pub fn balance_by_degree_count(ode: &ReducedOde, max_n: usize) -> Option<usize> {
    (1..=max_n).find(|&n| {
        let probe = PolyInY::monomial(SymPoly::one(), n);
        let mut d = probe.clone();
        for _ in 0..ode.derivative_order {
            d = d.differentiate_in_zeta();
        }
        d.degree() == probe.pow(ode.nonlinearity_degree).degree()
    })
}

/// `a0 + a1 Y + ... + aN Y^N` over the fixed coefficient symbols.
pub fn build_ansatz(n: usize) -> Result<PolyInY, PipelineError> {
    if !(1..=2).contains(&n) {
        return Err(PipelineError::UnsupportedDegree(n));
    }
    Ok(PolyInY::from_coeffs(
        (0..=n)
            .map(|k| SymPoly::var(Symbol::ansatz_coefficient(k).expect("k <= 2")))
            .collect(),
    ))
}

/// Substitutes the ansatz into the ODE: `D^p(Phi) + k_nl Phi^q + k_lin Phi`.
pub fn expand_ode(ansatz: &PolyInY, ode: &ReducedOde) -> PolyInY {
    let mut deriv = ansatz.clone();
    for _ in 0..ode.derivative_order {
        deriv = deriv.differentiate_in_zeta();
    }
    let nonlinear = ansatz
        .pow(ode.nonlinearity_degree)
        .scale(&ode.nonlinear_coefficient);
    let linear = ansatz.scale(&ode.linear_coefficient);
    &(&deriv + &nonlinear) + &linear
}

/// Coefficients of `Y^0 .. Y^4`, each of which must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSystem {
    pub equations: [SymPoly; SYSTEM_SIZE],
}

pub fn extract_system(expanded: &PolyInY) -> Result<CoefficientSystem, PipelineError> {
    if let Some(d) = expanded.degree().filter(|&d| d >= SYSTEM_SIZE) {
        return Err(PipelineError::DegreeTooHigh(d));
    }
    Ok(CoefficientSystem {
        equations: std::array::from_fn(|k| expanded.coeff(k)),
    })
}

impl CoefficientSystem {
    /// The system for the degree-2 ansatz in the GSWWE reduction.
    pub fn gswwe() -> Self {
        let ode = ReducedOde::gswwe();
        let ansatz = build_ansatz(2).expect("degree 2 is supported");
        extract_system(&expand_ode(&ansatz, &ode)).expect("degree 4 expansion")
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.equations.iter().any(|e| e.contains(sym))
    }

    /// Per-equation factor `r_k` with `self[k] == r_k * other[k]`, if any.
    pub fn proportionality(&self, other: &CoefficientSystem) -> [Option<Rational>; SYSTEM_SIZE] {
        std::array::from_fn(|k| {
            self.equations[k]
                .proportionality_factor(&other.equations[k])
                .filter(|r| !num_traits::Zero::is_zero(r))
        })
    }

    pub fn is_proportional_to(&self, other: &CoefficientSystem) -> bool {
        self.proportionality(other).iter().all(Option::is_some)
    }
}

/// One line per equation: `Y^k: <polynomial>`.
impl fmt::Display for CoefficientSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.equations.iter().enumerate() {
            writeln!(f, "Y^{k}: {e}")?;
        }
        Ok(())
    }
}

/// Reads the [`Display`](fmt::Display) form back. Blank lines and lines
/// starting with `#` are ignored; a long equation may continue on lines
/// that do not start with a `Y^k:` label.
impl FromStr for CoefficientSystem {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bodies: [Option<String>; SYSTEM_SIZE] = Default::default();
        let mut current: Option<usize> = None;
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("Y^") {
                let (idx, body) = rest
                    .split_once(':')
                    .ok_or_else(|| PipelineError::SystemFormat(format!("missing `:` in `{line}`")))?;
                let k: usize = idx
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&k| k < SYSTEM_SIZE)
                    .ok_or_else(|| PipelineError::SystemFormat(format!("bad power `{idx}`")))?;
                if bodies[k].is_some() {
                    return Err(PipelineError::SystemFormat(format!("duplicate Y^{k}")));
                }
                bodies[k] = Some(body.trim().to_string());
                current = Some(k);
            } else {
                let k = current.ok_or_else(|| {
                    PipelineError::SystemFormat(format!("continuation before any label: `{line}`"))
                })?;
                let b = bodies[k].as_mut().expect("current label is set");
                b.push(' ');
                b.push_str(line);
            }
        }
        let mut equations: [SymPoly; SYSTEM_SIZE] = Default::default();
        for (k, body) in bodies.into_iter().enumerate() {
            let body = body.ok_or_else(|| PipelineError::SystemFormat(format!("missing Y^{k}")))?;
            equations[k] = body.parse()?;
        }
        Ok(CoefficientSystem { equations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ode(p: u32, q: u32) -> ReducedOde {
        ReducedOde {
            derivative_order: p,
            nonlinearity_degree: q,
            ..ReducedOde::gswwe()
        }
    }

    #[test]
    fn balance_values() {
        assert_eq!(homogeneous_balance(&ReducedOde::gswwe()), Ok(2));
        assert_eq!(homogeneous_balance(&ode(4, 3)), Ok(2));
        assert_eq!(homogeneous_balance(&ode(2, 1)), Err(PipelineError::NoNonlinearity(1)));
        assert!(matches!(
            homogeneous_balance(&ode(3, 3)),
            Err(PipelineError::NonIntegerBalance { .. })
        ));
    }

    #[test]
    fn balance_agrees_with_degree_count() {
        for (p, q) in [(2, 2), (4, 3), (3, 2), (6, 4)] {
            assert_eq!(
                balance_by_degree_count(&ode(p, q), 8),
                homogeneous_balance(&ode(p, q)).ok(),
                "p={p} q={q}"
            );
        }
    }

    #[test]
    fn ansatz_shapes() {
        assert_eq!(build_ansatz(2).unwrap().to_string(), "(a0) + (a1)*Y + (a2)*Y^2");
        assert_eq!(build_ansatz(1).unwrap().to_string(), "(a0) + (a1)*Y");
        assert_eq!(build_ansatz(3), Err(PipelineError::UnsupportedDegree(3)));
        assert_eq!(build_ansatz(0), Err(PipelineError::UnsupportedDegree(0)));
    }

    #[test]
    fn ansatz_degrees_match_balance() {
        let ode = ReducedOde::gswwe();
        for n in 1..=2 {
            let a = build_ansatz(n).unwrap();
            let d2 = a.differentiate_in_zeta().differentiate_in_zeta();
            assert_eq!(d2.degree(), Some(n + 2));
            assert_eq!(a.pow(2).degree(), Some(2 * n));
        }
        assert_eq!(expand_ode(&build_ansatz(2).unwrap(), &ode).degree(), Some(4));
    }

    #[test]
    fn constant_ansatz_expansion() {
        let a0 = PolyInY::constant(SymPoly::var(Symbol::A0));
        let e = expand_ode(&a0, &ReducedOde::gswwe());
        let expected: SymPoly = "1/2*a0^2*alpha + 1/2*a0^2*beta + a0*eta".parse().unwrap();
        assert_eq!(e, PolyInY::constant(expected));
    }

    #[test]
    fn extraction_pads_missing_powers() {
        let zero = extract_system(&PolyInY::zero()).unwrap();
        assert!(zero.equations.iter().all(SymPoly::is_zero));
        let quad = PolyInY::y().pow(2);
        let s = extract_system(&quad).unwrap();
        assert!(s.equations[3].is_zero() && s.equations[4].is_zero());
        assert_eq!(s.equations[2], SymPoly::one());
        assert_eq!(
            extract_system(&PolyInY::y().pow(5)),
            Err(PipelineError::DegreeTooHigh(5))
        );
    }

    #[test]
    fn system_text_round_trip() {
        let sys = CoefficientSystem::gswwe();
        let back: CoefficientSystem = sys.to_string().parse().unwrap();
        assert_eq!(back, sys);
    }

    #[test]
    fn system_is_free_of_a() {
        let sys = CoefficientSystem::gswwe();
        for e in &sys.equations {
            let text = e.to_string();
            assert!(!text.split(|c: char| !c.is_alphanumeric()).any(|tok| tok == "A"));
        }
    }
}
