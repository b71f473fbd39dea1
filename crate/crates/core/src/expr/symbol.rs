use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Number of symbols in the closed symbol set.
pub const NUM_SYMBOLS: usize = 8;

/// The closed set of symbols appearing in the expansion algebra.
///
/// The declaration order is the canonical variable order used for graded-lex
/// term ordering and for printing. `A` is intentionally absent: it cancels out
/// of the closure rule and must never appear in a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    A0,
    A1,
    A2,
    Alpha,
    Beta,
    Eta,
    B,
    C,
}

impl Symbol {
    pub const ALL: [Symbol; NUM_SYMBOLS] = [
        Symbol::A0,
        Symbol::A1,
        Symbol::A2,
        Symbol::Alpha,
        Symbol::Beta,
        Symbol::Eta,
        Symbol::B,
        Symbol::C,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Ansatz coefficient symbol `a_k`, if `k` is within the fixed set.
    pub fn ansatz_coefficient(k: usize) -> Option<Symbol> {
        match k {
            0 => Some(Symbol::A0),
            1 => Some(Symbol::A1),
            2 => Some(Symbol::A2),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::A0 => "a0",
            Symbol::A1 => "a1",
            Symbol::A2 => "a2",
            Symbol::Alpha => "alpha",
            Symbol::Beta => "beta",
            Symbol::Eta => "eta",
            Symbol::B => "B",
            Symbol::C => "C",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown symbol `{0}`")]
pub struct UnknownSymbol(pub String);

impl FromStr for Symbol {
    type Err = UnknownSymbol;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::ALL
            .iter()
            .copied()
            .find(|sym| sym.name() == s)
            .ok_or_else(|| UnknownSymbol(s.to_string()))
    }
}

/// Exponent vector over [`Symbol::ALL`].
///
/// Ordered graded-lexicographically: higher total degree is greater; ties
/// are broken by comparing exponents in symbol order, larger first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; NUM_SYMBOLS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NUM_SYMBOLS]);

    pub fn var(sym: Symbol) -> Self {
        let mut e = [0; NUM_SYMBOLS];
        e[sym.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, sym: Symbol) -> u32 {
        self.0[sym.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn with_exponent(&self, sym: Symbol, exp: u32) -> Monomial {
        let mut e = self.0;
        e[sym.index()] = exp;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for sym in Symbol::ALL {
            let e = self.exponent(sym);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
