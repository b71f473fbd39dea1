use serde::{Deserialize, Serialize};

use super::SolutionError;

fn finite(name: &'static str, x: f64) -> Result<f64, SolutionError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(SolutionError::NonFinite { name })
    }
}

/// Coefficients `alpha, beta, gamma` of the PDE.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, SolutionError> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if finite(name, v)? == 0.0 {
                return Err(SolutionError::ZeroModelCoefficient { name });
            }
        }
        if alpha + beta == 0.0 {
            return Err(SolutionError::AlphaBetaCancel);
        }
        Ok(ModelParams { alpha, beta, gamma })
    }

    /// `alpha = beta = gamma = 1`.
    pub fn unit() -> Self {
        ModelParams { alpha: 1.0, beta: 1.0, gamma: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    OmegaPositive,
    OmegaNegative,
}

/// Constants of `G'' + B G' + C G + A C = 0` and of its general solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpansionParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub k1: f64,
    pub k2: f64,
    omega: f64,
}

impl ExpansionParams {
    pub fn new(a: f64, b: f64, c: f64, k1: f64, k2: f64) -> Result<Self, SolutionError> {
        finite("A", a)?;
        finite("B", b)?;
        finite("C", c)?;
        finite("k1", k1)?;
        finite("k2", k2)?;
        if k1 == 0.0 && k2 == 0.0 {
            return Err(SolutionError::ZeroConstants);
        }
        Ok(ExpansionParams { a, b, c, k1, k2, omega: b * b - 4.0 * c })
    }

    /// Discriminant `B^2 - 4C`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn case(&self) -> Result<Case, SolutionError> {
        if self.omega > 0.0 {
            Ok(Case::OmegaPositive)
        } else if self.omega < 0.0 {
            Ok(Case::OmegaNegative)
        } else {
            Err(SolutionError::DegenerateDiscriminant)
        }
    }
}

/// Wave speed from `eta = gamma/omega - 1`.
pub fn omega_from_eta(gamma: f64, eta: f64) -> Result<f64, SolutionError> {
    let d = eta + 1.0;
    if d == 0.0 {
        return Err(SolutionError::DegenerateSpeed);
    }
    Ok(gamma / d)
}

/// Traveling coordinate `zeta = n x + m y - omega t` with `eta = gamma/omega - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TravelFrame {
    pub n: f64,
    pub m: f64,
    pub omega: f64,
    pub eta: f64,
}

impl TravelFrame {
    /// The frame used for the GSWWE: `n = 1, m = 0`.
    pub fn from_eta(gamma: f64, eta: f64) -> Result<Self, SolutionError> {
        let omega = omega_from_eta(gamma, eta)?;
        Ok(TravelFrame { n: 1.0, m: 0.0, omega, eta })
    }

    pub fn zeta(&self, x: f64, y: f64, t: f64) -> f64 {
        self.n * x + self.m * y - self.omega * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_eta_relation() {
        assert_eq!(omega_from_eta(1.0, -0.6).unwrap(), 2.5);
        assert_eq!(omega_from_eta(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(omega_from_eta(1.0, -1.0), Err(SolutionError::DegenerateSpeed));
        let f = TravelFrame::from_eta(2.0, 0.25).unwrap();
        assert!((2.0 / f.omega - 1.0 - f.eta).abs() < 1e-15);
    }

    #[test]
    fn model_validation() {
        assert!(ModelParams::new(1.0, 1.0, 1.0).is_ok());
        assert_eq!(
            ModelParams::new(0.0, 1.0, 1.0),
            Err(SolutionError::ZeroModelCoefficient { name: "alpha" })
        );
        assert_eq!(ModelParams::new(1.0, -1.0, 1.0), Err(SolutionError::AlphaBetaCancel));
        assert!(ModelParams::new(1.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn expansion_validation() {
        assert_eq!(ExpansionParams::new(0.0, 1.0, 0.1, 0.0, 0.0), Err(SolutionError::ZeroConstants));
        let e = ExpansionParams::new(0.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(e.case(), Err(SolutionError::DegenerateDiscriminant));
        let e = ExpansionParams::new(0.0, 1.0, 0.1, 1.0, 1.0).unwrap();
        assert!((e.omega() - 0.6).abs() < 1e-15);
        assert_eq!(e.case(), Ok(Case::OmegaPositive));
    }
}
