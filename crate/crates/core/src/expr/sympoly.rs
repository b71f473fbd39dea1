use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::symbol::{Monomial, Symbol, NUM_SYMBOLS};
use super::Rational;

/// Exact-rational multivariate polynomial over the closed symbol set.
///
/// Terms with zero coefficient are never stored, so structural equality of
/// two values is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        SymPoly::monomial(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        SymPoly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(sym: Symbol) -> Self {
        SymPoly::monomial(Rational::one(), Monomial::var(sym))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = SymPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order (the printing order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, sym: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(sym)).max().unwrap_or(0)
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.degree_in(sym) > 0
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL.into_iter().filter(|&s| self.contains(s)).collect()
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> SymPoly {
        let mut acc = SymPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, sym: Symbol) -> SymPoly {
        SymPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(sym);
            (e > 0).then(|| {
                (
                    m.with_exponent(sym, e - 1),
                    c * Rational::from_integer(BigInt::from(e)),
                )
            })
        }))
    }

    /// Coefficients of the expansion in powers of `sym`: `p = sum_k c_k sym^k`.
    pub fn coefficients_in(&self, sym: Symbol) -> Vec<SymPoly> {
        let mut out = vec![SymPoly::zero(); self.degree_in(sym) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(sym) as usize;
            out[k].add_term(m.with_exponent(sym, 0), c.clone());
        }
        out
    }

    /// Replaces `sym` by the polynomial `value`.
    pub fn substitute(&self, sym: Symbol, value: &SymPoly) -> SymPoly {
        let coeffs = self.coefficients_in(sym);
        // Horner in `value`
        let mut acc = SymPoly::zero();
        for c in coeffs.into_iter().rev() {
            acc = &(&acc * value) + &c;
        }
        acc
    }

    /// Exact division by the linear polynomial `alpha + beta`, when it divides.
    pub fn div_alpha_plus_beta(&self) -> Option<SymPoly> {
        if self.is_zero() {
            return Some(SymPoly::zero());
        }
        let beta = SymPoly::var(Symbol::Beta);
        let c = self.coefficients_in(Symbol::Alpha);
        let n = c.len() - 1;
        if n == 0 {
            return None;
        }
        // synthetic division by (alpha - (-beta))
        let mut q = vec![SymPoly::zero(); n];
        q[n - 1] = c[n].clone();
        for k in (1..n).rev() {
            q[k - 1] = &c[k] - &(&beta * &q[k]);
        }
        let remainder = &c[0] - &(&beta * &q[0]);
        if !remainder.is_zero() {
            return None;
        }
        let alpha = SymPoly::var(Symbol::Alpha);
        let mut out = SymPoly::zero();
        for qk in q.into_iter().rev() {
            out = &(&out * &alpha) + &qk;
        }
        Some(out)
    }

    /// Returns `r` with `self == r * other` when the two are proportional by
    /// a nonzero rational. Both zero counts as proportional with `r = 1`.
    pub fn proportionality_factor(&self, other: &SymPoly) -> Option<Rational> {
        match (self.leading_term(), other.leading_term()) {
            (None, None) => Some(Rational::one()),
            (Some((ma, ca)), Some((mb, cb))) if ma == mb => {
                let r = ca / cb;
                (*self == other.scale(&r)).then_some(r)
            }
            _ => None,
        }
    }

    pub fn eval(&self, values: &[f64; NUM_SYMBOLS]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (e, v) in m.0.iter().zip(values.iter()) {
                    if *e > 0 {
                        t *= v.powi(*e as i32);
                    }
                }
                t
            })
            .sum()
    }

    pub fn eval_exact(&self, values: &[Rational; NUM_SYMBOLS]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.0.iter().zip(values.iter()) {
                for _ in 0..*e {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Renders terms in descending graded-lex order, e.g.
/// `1/2*a0^2*alpha + 1/2*a0^2*beta + a0*eta - 2*a1*C^2`.
impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write_rational(f, &mag)?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write_rational(f, &mag)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&SymPoly> for SymPoly {
    fn add_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SymPoly {
            type Output = SymPoly;
            fn $method(self, rhs: SymPoly) -> SymPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        -&self
    }
}

impl From<Symbol> for SymPoly {
    fn from(sym: Symbol) -> Self {
        SymPoly::var(sym)
    }
}

impl From<i64> for SymPoly {
    fn from(c: i64) -> Self {
        SymPoly::from_int(c)
    }
}
