use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;

use super::symbol::{Symbol, NUM_SYMBOLS};
use super::{Rational, SymPoly};

/// Univariate polynomial in the ansatz variable `Y = G'/(G'+G+A)` with
/// [`SymPoly`] coefficients, `coeffs[k]` multiplying `Y^k`.
///
/// The coefficient vector is trimmed: the last entry is nonzero, and the
/// zero polynomial has no entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyInY {
    coeffs: Vec<SymPoly>,
}

impl PolyInY {
    pub fn zero() -> Self {
        PolyInY::default()
    }

    pub fn constant(c: SymPoly) -> Self {
        PolyInY::from_coeffs(vec![c])
    }

    /// The polynomial `Y`.
    pub fn y() -> Self {
        PolyInY::from_coeffs(vec![SymPoly::zero(), SymPoly::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<SymPoly>) -> Self {
        while coeffs.last().is_some_and(SymPoly::is_zero) {
            coeffs.pop();
        }
        PolyInY { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `Y^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> SymPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[SymPoly] {
        &self.coeffs
    }

    pub fn scale(&self, s: &SymPoly) -> PolyInY {
        PolyInY::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, n: u32) -> PolyInY {
        let mut acc = PolyInY::constant(SymPoly::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.coeffs.iter().any(|c| c.contains(sym))
    }

    /// Derivative along the traveling coordinate.
    ///
    /// Uses `dY/dzeta = (B - C - 1) Y^2 + (2C - B) Y - C`, which follows from
    /// `G'' + B G' + C G + A C = 0`; see [`closure_rule`].
    pub fn differentiate_in_zeta(&self) -> PolyInY {
        let dy = closure_rule();
        let mut out = PolyInY::zero();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let kc = c.scale(&Rational::from_integer(BigInt::from(k)));
            let term = &PolyInY::monomial(kc, k - 1) * &dy;
            out = &out + &term;
        }
        out
    }

    pub fn monomial(c: SymPoly, k: usize) -> PolyInY {
        let mut coeffs = vec![SymPoly::zero(); k];
        coeffs.push(c);
        PolyInY::from_coeffs(coeffs)
    }

    pub fn eval(&self, values: &[f64; NUM_SYMBOLS], y: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * y + c.eval(values))
    }
}

/// `dY/dzeta` as a polynomial in `Y`: `(B - C - 1) Y^2 + (2C - B) Y - C`.
pub fn closure_rule() -> PolyInY {
    let b = SymPoly::var(Symbol::B);
    let c = SymPoly::var(Symbol::C);
    let one = SymPoly::one();
    let two = SymPoly::from_int(2);
    PolyInY::from_coeffs(vec![
        -&c,
        &(&two * &c) - &b,
        &(&b - &c) - &one,
    ])
}

fn zip_coeffs(a: &PolyInY, b: &PolyInY, f: impl Fn(&SymPoly, &SymPoly) -> SymPoly) -> PolyInY {
    let n = a.coeffs.len().max(b.coeffs.len());
    PolyInY::from_coeffs((0..n).map(|k| f(&a.coeff(k), &b.coeff(k))).collect())
}

impl Add for &PolyInY {
    type Output = PolyInY;
    fn add(self, rhs: &PolyInY) -> PolyInY {
        zip_coeffs(self, rhs, |x, y| x + y)
    }
}

impl Sub for &PolyInY {
    type Output = PolyInY;
    fn sub(self, rhs: &PolyInY) -> PolyInY {
        zip_coeffs(self, rhs, |x, y| x - y)
    }
}

impl Mul for &PolyInY {
    type Output = PolyInY;
    fn mul(self, rhs: &PolyInY) -> PolyInY {
        if self.is_zero() || rhs.is_zero() {
            return PolyInY::zero();
        }
        let mut out = vec![SymPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PolyInY::from_coeffs(out)
    }
}

impl fmt::Display for PolyInY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*Y")?,
                _ => write!(f, "({c})*Y^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Symbol::*;

    fn y_plus(c: i64) -> PolyInY {
        &PolyInY::y() + &PolyInY::constant(SymPoly::from_int(c))
    }

    #[test]
    fn difference_of_squares() {
        let p = &y_plus(1) * &y_plus(-1);
        let expected = PolyInY::from_coeffs(vec![SymPoly::from_int(-1), SymPoly::zero(), SymPoly::one()]);
        assert_eq!(p, expected);
    }

    #[test]
    fn zero_absorbs() {
        let p = &y_plus(3) * &PolyInY::monomial(SymPoly::var(B), 2);
        assert!((&PolyInY::zero() * &p).is_zero());
        assert!((&p * &PolyInY::zero()).is_zero());
    }

    #[test]
    fn squared_leading_term() {
        let a2y2 = PolyInY::monomial(SymPoly::var(A2), 2);
        let sq = &a2y2 * &a2y2;
        assert_eq!(sq.degree(), Some(4));
        assert_eq!(sq.coeff(4), SymPoly::var(A2).pow(2));
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let c = PolyInY::constant(&SymPoly::var(A0) * &SymPoly::var(Alpha));
        assert!(c.differentiate_in_zeta().is_zero());
    }

    #[test]
    fn derivative_of_y_is_closure_rule() {
        let d = PolyInY::y().differentiate_in_zeta();
        assert_eq!(d, closure_rule());
        assert_eq!(d.to_string(), "(-C) + (-B + 2*C)*Y + (B - C - 1)*Y^2");
    }

    #[test]
    fn derivative_of_y_squared() {
        // 2(B-C-1)Y^3 + 2(2C-B)Y^2 - 2CY
        let d = PolyInY::y().pow(2).differentiate_in_zeta();
        let b = SymPoly::var(B);
        let c = SymPoly::var(C);
        let two = SymPoly::from_int(2);
        let expected = PolyInY::from_coeffs(vec![
            SymPoly::zero(),
            &(-&two) * &c,
            &two * &(&(&two * &c) - &b),
            &two * &(&(&b - &c) - &SymPoly::one()),
        ]);
        assert_eq!(d, expected);
        assert_eq!(d.degree(), Some(3));
    }

    #[test]
    fn rendering() {
        let p = PolyInY::from_coeffs(vec![SymPoly::var(A0), SymPoly::zero(), SymPoly::var(A2)]);
        assert_eq!(p.to_string(), "(a0) + (a2)*Y^2");
        assert_eq!(PolyInY::zero().to_string(), "0");
    }
}
