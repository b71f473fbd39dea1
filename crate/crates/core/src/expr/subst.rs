use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::symbol::Symbol;
use super::SymPoly;

/// An element of the polynomial ring localized at `alpha + beta`:
/// `numerator / (alpha + beta)^den_power`.
///
/// Canonical form: either `den_power == 0`, or `numerator` is not divisible
/// by `alpha + beta`. Zero is `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedPoly {
    pub numerator: SymPoly,
    pub den_power: u32,
}

impl LocalizedPoly {
    pub fn new(numerator: SymPoly, den_power: u32) -> Self {
        let mut out = LocalizedPoly { numerator, den_power };
        out.reduce();
        out
    }

    pub fn polynomial(p: SymPoly) -> Self {
        LocalizedPoly { numerator: p, den_power: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.den_power = 0;
            return;
        }
        while self.den_power > 0 {
            match self.numerator.div_alpha_plus_beta() {
                Some(q) => {
                    self.numerator = q;
                    self.den_power -= 1;
                }
                None => break,
            }
        }
    }

    /// Numeric value; the caller must keep `alpha + beta` away from zero.
    pub fn eval(&self, values: &[f64; super::NUM_SYMBOLS]) -> f64 {
        let s = values[Symbol::Alpha.index()] + values[Symbol::Beta.index()];
        self.numerator.eval(values) / s.powi(self.den_power as i32)
    }
}

impl fmt::Display for LocalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den_power {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / (alpha + beta)", self.numerator),
            d => write!(f, "({}) / (alpha + beta)^{d}", self.numerator),
        }
    }
}

/// Assignment of localized polynomials to some of the symbols.
pub type Substitution = BTreeMap<Symbol, LocalizedPoly>;

/// Substitutes every assigned symbol of `p` exactly and returns the result in
/// canonical localized form. The result is zero iff the assignment
/// annihilates `p`.
pub fn substitute_set(p: &SymPoly, s: &Substitution) -> LocalizedPoly {
    let mut powers: HashMap<(Symbol, u32), SymPoly> = HashMap::new();
    let mut parts: Vec<(SymPoly, u32)> = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut num = SymPoly::one();
        let mut den = 0;
        for (&sym, value) in s {
            let e = m.exponent(sym);
            if e == 0 {
                continue;
            }
            rest = rest.with_exponent(sym, 0);
            let pw = powers
                .entry((sym, e))
                .or_insert_with(|| value.numerator.pow(e));
            num = &num * pw;
            den += e * value.den_power;
        }
        let lead = SymPoly::monomial(c.clone(), rest);
        parts.push((&num * &lead, den));
    }
    let max_den = parts.iter().map(|(_, d)| *d).max().unwrap_or(0);
    let sum_ab = &SymPoly::var(Symbol::Alpha) + &SymPoly::var(Symbol::Beta);
    let mut total = SymPoly::zero();
    for (num, d) in parts {
        total += &(&num * &sum_ab.pow(max_den - d));
    }
    LocalizedPoly::new(total, max_den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Symbol::*;

    #[test]
    fn zero_assignment_kills_polynomial() {
        let p: SymPoly = "1/2*a0^2*beta + a0*eta + a1*B*C - 2*a1*C^2 + 2*a2*C^2".parse().unwrap();
        let zero = LocalizedPoly::polynomial(SymPoly::zero());
        let s: Substitution = [A0, A1, A2, Eta].into_iter().map(|x| (x, zero.clone())).collect();
        assert!(substitute_set(&p, &s).is_zero());
    }

    #[test]
    fn denominators_cancel() {
        // (alpha + beta) * a0 with a0 -> B / (alpha + beta) gives B
        let p = &(&SymPoly::var(Alpha) + &SymPoly::var(Beta)) * &SymPoly::var(A0);
        let s: Substitution = [(A0, LocalizedPoly::new(SymPoly::var(B), 1))].into();
        assert_eq!(substitute_set(&p, &s), LocalizedPoly::polynomial(SymPoly::var(B)));
    }

    #[test]
    fn keeps_irreducible_denominator() {
        let p = SymPoly::var(A0).pow(2);
        let s: Substitution = [(A0, LocalizedPoly::new(SymPoly::var(B), 1))].into();
        let r = substitute_set(&p, &s);
        assert_eq!(r.den_power, 2);
        assert_eq!(r.numerator, SymPoly::var(B).pow(2));
    }
}
