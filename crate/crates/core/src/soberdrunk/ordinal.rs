use std::fmt;

/// An ordinal below ω^ω in Cantor normal form: a sum of terms ω^e·c with
/// strictly decreasing exponents and positive coefficients.
///
/// The derived ordering on the term list is the ordinal order: terms
/// compare by exponent first, then coefficient, and a proper prefix is
/// smaller than any extension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    /// (exponent, coefficient) pairs, exponents strictly decreasing.
    terms: Vec<(u32, u32)>,
}

/// Parity of an ordinal's finite tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u32) -> Ordinal {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(0, n)] }
        }
    }

    pub fn omega() -> Ordinal {
        Ordinal { terms: vec![(1, 1)] }
    }

    /// ω·k.
    pub fn omega_times(k: u32) -> Ordinal {
        if k == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(1, k)] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A limit ordinal: nonzero with no finite tail.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.terms.last().unwrap().0 > 0
    }

    pub fn is_successor(&self) -> bool {
        !self.is_zero() && !self.is_limit()
    }

    /// Decomposes γ = λ̂ + n with λ̂ a limit or zero and n finite.
    pub fn split_limit_nat(&self) -> (Ordinal, u32) {
        match self.terms.last() {
            Some(&(0, n)) => {
                let limit = Ordinal { terms: self.terms[..self.terms.len() - 1].to_vec() };
                (limit, n)
            }
            _ => (self.clone(), 0),
        }
    }

    /// The finite part n of γ = λ̂ + n.
    pub fn nat_part(&self) -> u32 {
        self.split_limit_nat().1
    }

    /// Ordinal sum self + other (absorbing: lower terms of self vanish
    /// below other's leading exponent).
    pub fn plus(&self, other: &Ordinal) -> Ordinal {
        let Some(&(lead_exp, lead_coeff)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u32)> =
            self.terms.iter().copied().take_while(|&(e, _)| e > lead_exp).collect();
        let merged = self
            .terms
            .iter()
            .find(|&&(e, _)| e == lead_exp)
            .map_or(lead_coeff, |&(_, c)| c + lead_coeff);
        terms.push((lead_exp, merged));
        terms.extend(other.terms.iter().skip(1).copied());
        Ordinal { terms }
    }

    pub fn plus_nat(&self, n: u32) -> Ordinal {
        self.plus(&Ordinal::nat(n))
    }

    pub fn succ(&self) -> Ordinal {
        self.plus_nat(1)
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        let (limit, n) = self.split_limit_nat();
        if n == 0 {
            None
        } else {
            Some(limit.plus_nat(n - 1))
        }
    }

    /// Finite value when the ordinal is a natural number.
    pub fn as_nat(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, n)] => Some(*n),
            _ => None,
        }
    }
}

/// The parity of γ = λ̂ + n is the parity of n.
pub fn ord_parity(gamma: &Ordinal) -> Parity {
    if gamma.nat_part().is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}
