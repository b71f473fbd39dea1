use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CoefficientSystem, SYSTEM_SIZE};
use crate::expr::{substitute_set, LocalizedPoly, Rational, Substitution, Symbol, SymPoly, NUM_SYMBOLS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetId {
    #[serde(rename = "SET1")]
    Set1,
    #[serde(rename = "SET2")]
    Set2,
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetId::Set1 => "SET1",
            SetId::Set2 => "SET2",
        })
    }
}

/// Symbolic assignment of `(eta, a0, a1, a2)` in terms of `alpha, beta, B, C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub id: SetId,
    pub eta: LocalizedPoly,
    pub a0: LocalizedPoly,
    pub a1: LocalizedPoly,
    pub a2: LocalizedPoly,
}

fn entry(numerator: &str, den_power: u32) -> LocalizedPoly {
    LocalizedPoly::new(numerator.parse().expect("built-in expression parses"), den_power)
}

// a1 and a2 are shared by both sets.
const A1_NUM: &str = "12*(B^2 - 3*B*C - B + 2*C^2 + 2*C)";
const A2_NUM: &str = "-12*(B - C - 1)^2";

impl SolutionSet {
    pub fn set1() -> Self {
        SolutionSet {
            id: SetId::Set1,
            eta: entry("4*C - B^2", 0),
            a0: entry("-12*(-B*C + C^2 + C)", 1),
            a1: entry(A1_NUM, 1),
            a2: entry(A2_NUM, 1),
        }
    }

    pub fn set2() -> Self {
        SolutionSet {
            id: SetId::Set2,
            eta: entry("B^2 - 4*C", 0),
            a0: entry("-2*(B^2 - 6*B*C + 6*C^2 + 2*C)", 1),
            a1: entry(A1_NUM, 1),
            a2: entry(A2_NUM, 1),
        }
    }

    pub fn by_id(id: SetId) -> Self {
        match id {
            SetId::Set1 => SolutionSet::set1(),
            SetId::Set2 => SolutionSet::set2(),
        }
    }

    /// Entries in unknown order `(eta, a0, a1, a2)`.
    pub fn entries(&self) -> [(Symbol, &LocalizedPoly); 4] {
        [
            (Symbol::Eta, &self.eta),
            (Symbol::A0, &self.a0),
            (Symbol::A1, &self.a1),
            (Symbol::A2, &self.a2),
        ]
    }

    pub fn entry_mut(&mut self, sym: Symbol) -> Option<&mut LocalizedPoly> {
        match sym {
            Symbol::Eta => Some(&mut self.eta),
            Symbol::A0 => Some(&mut self.a0),
            Symbol::A1 => Some(&mut self.a1),
            Symbol::A2 => Some(&mut self.a2),
            _ => None,
        }
    }

    pub fn substitution(&self) -> Substitution {
        self.entries()
            .into_iter()
            .map(|(s, v)| (s, v.clone()))
            .collect()
    }

    /// Numeric `(eta, a0, a1, a2)` at the given parameters.
    pub fn evaluate(&self, alpha: f64, beta: f64, b: f64, c: f64) -> [f64; 4] {
        let mut values = [0.0; NUM_SYMBOLS];
        values[Symbol::Alpha.index()] = alpha;
        values[Symbol::Beta.index()] = beta;
        values[Symbol::B.index()] = b;
        values[Symbol::C.index()] = c;
        self.entries().map(|(_, v)| v.eval(&values))
    }

    /// Exact `(eta, a0, a1, a2)`; `alpha + beta` must be nonzero.
    pub fn evaluate_exact(
        &self,
        alpha: &Rational,
        beta: &Rational,
        b: &Rational,
        c: &Rational,
    ) -> [Rational; 4] {
        let mut values: [Rational; NUM_SYMBOLS] = Default::default();
        values[Symbol::Alpha.index()] = alpha.clone();
        values[Symbol::Beta.index()] = beta.clone();
        values[Symbol::B.index()] = b.clone();
        values[Symbol::C.index()] = c.clone();
        let s = alpha + beta;
        self.entries().map(|(_, v)| {
            let mut den = Rational::from_integer(1.into());
            for _ in 0..v.den_power {
                den *= &s;
            }
            v.numerator.eval_exact(&values) / den
        })
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.id)?;
        for (sym, v) in self.entries() {
            writeln!(f, "  {sym} = {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationVerdict {
    pub power: usize,
    pub zero: bool,
    /// Canonical rendering of the substituted equation (`0` when it vanishes).
    pub remainder: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub set: SetId,
    pub equations: Vec<EquationVerdict>,
    pub passed: bool,
}

/// Substitutes `set` into every equation and records which vanish identically.
pub fn verify_solution_set(sys: &CoefficientSystem, set: &SolutionSet) -> VerificationReport {
    let subst = set.substitution();
    let equations: Vec<EquationVerdict> = sys
        .equations
        .iter()
        .enumerate()
        .map(|(power, eq)| {
            let r = substitute_set(eq, &subst);
            EquationVerdict {
                power,
                zero: r.is_zero(),
                remainder: r.to_string(),
            }
        })
        .collect();
    debug_assert_eq!(equations.len(), SYSTEM_SIZE);
    let passed = equations.iter().all(|e| e.zero);
    VerificationReport {
        set: set.id,
        equations,
        passed,
    }
}

impl SolutionSet {
    /// Copy with `eta` replaced by `-eta`.
    pub fn with_eta_negated(&self) -> Self {
        let mut out = self.clone();
        out.eta = LocalizedPoly::new(-&out.eta.numerator, out.eta.den_power);
        out
    }

    /// Copy with `sym`'s entry shifted by the constant `delta`.
    pub fn with_shift(&self, sym: Symbol, delta: i64) -> Self {
        let mut out = self.clone();
        if let Some(e) = out.entry_mut(sym) {
            let ab = &SymPoly::var(Symbol::Alpha) + &SymPoly::var(Symbol::Beta);
            let shift = &SymPoly::from_int(delta) * &ab.pow(e.den_power);
            *e = LocalizedPoly::new(&e.numerator + &shift, e.den_power);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rational;

    #[test]
    fn sets_annihilate_system() {
        let sys = CoefficientSystem::gswwe();
        for set in [SolutionSet::set1(), SolutionSet::set2()] {
            let r = verify_solution_set(&sys, &set);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn wrong_sign_eta_fails() {
        let sys = CoefficientSystem::gswwe();
        let r = verify_solution_set(&sys, &SolutionSet::set1().with_eta_negated());
        assert!(!r.passed);
    }

    #[test]
    fn perturbed_a2_fails_leading_equation() {
        let sys = CoefficientSystem::gswwe();
        let bad = SolutionSet::set1().with_shift(Symbol::A2, 1);
        let r = verify_solution_set(&sys, &bad);
        assert!(!r.equations[4].zero);
    }

    #[test]
    fn verdicts_are_scale_invariant() {
        let mut sys = CoefficientSystem::gswwe();
        for (k, e) in sys.equations.iter_mut().enumerate() {
            *e = e.scale(&rational(-(k as i64) - 3, 7));
        }
        for set in [SolutionSet::set1(), SolutionSet::set2(), SolutionSet::set1().with_eta_negated()] {
            let base = verify_solution_set(&CoefficientSystem::gswwe(), &set);
            let scaled = verify_solution_set(&sys, &set);
            let v = |r: &VerificationReport| r.equations.iter().map(|e| e.zero).collect::<Vec<_>>();
            assert_eq!(v(&base), v(&scaled));
        }
    }

    #[test]
    fn set_values_at_reference_parameters() {
        let s1 = SolutionSet::set1().evaluate(1.0, 1.0, 1.0, 0.1);
        let s2 = SolutionSet::set2().evaluate(1.0, 1.0, 1.0, 0.1);
        for (got, want) in s1.iter().zip([-0.6, -0.06, -0.48, -0.06]) {
            assert!((got - want).abs() < 1e-14, "{s1:?}");
        }
        for (got, want) in s2.iter().zip([0.6, -0.66, -0.48, -0.06]) {
            assert!((got - want).abs() < 1e-14, "{s2:?}");
        }
        let exact = SolutionSet::set1().evaluate_exact(
            &rational(1, 1),
            &rational(1, 1),
            &rational(1, 1),
            &rational(1, 10),
        );
        assert_eq!(exact, [rational(-3, 5), rational(-3, 50), rational(-12, 25), rational(-3, 50)]);
    }
}
