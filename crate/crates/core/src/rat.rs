//! Exact rational arithmetic used for all measure values and thresholds.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Exact rational number. No floating point appears anywhere in measure
/// values or thresholds.
pub type Rat = BigRational;

/// Shorthand constructor from an integer numerator/denominator pair.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Canonical text form: `num/den` in lowest terms, integers without the
/// denominator part (`0`, `1`, `3/5`).
pub fn to_text(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the canonical text form. Accepts `int` and `int/posint`.
pub fn parse_text(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// True iff `r` lies in the closed unit interval.
pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for (n, d, s) in [(0, 1, "0"), (1, 1, "1"), (3, 5, "3/5"), (-1, 2, "-1/2"), (6, 4, "3/2")] {
            let r = rat(n, d);
            assert_eq!(to_text(&r), s);
            assert_eq!(parse_text(s).unwrap(), r);
        }
    }

    #[test]
    fn parse_rejects_bad_denominators() {
        assert!(parse_text("1/0").is_none());
        assert!(parse_text("1/-2").is_none());
        assert!(parse_text("x").is_none());
    }
}
