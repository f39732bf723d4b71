//! Exact rational scalars used throughout the calculus.
//!
//! Everything downstream of the move calculus is exact: coefficients are
//! `Rational64` values and are rendered as `p/q` strings in reports.

use num::rational::Rational64;
use num::Zero;

pub type Rat = Rational64;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rational64::new(p, q)
}

pub fn rat_int(p: i64) -> Rat {
    Rational64::from_integer(p)
}

/// Canonical display: `p` when the denominator is 1, otherwise `p/q`.
pub fn rat_str(r: &Rat) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Binomial coefficient with the convention that out-of-range arguments
/// give 0, i.e. `binom(a, b) = 0` whenever `b < 0`, `a < 0` or `b > a`.
pub fn binom(a: i64, b: i64) -> i64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i64 = 1;
    for j in 0..b {
        acc = acc * (a - j) / (j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_pascal_in_range() {
        for a in 0..=12i64 {
            for b in 0..=a {
                let pascal = if b == 0 || b == a {
                    1
                } else {
                    binom(a - 1, b - 1) + binom(a - 1, b)
                };
                assert_eq!(binom(a, b), pascal, "binom({a}, {b})");
            }
        }
    }

    #[test]
    fn binomial_is_zero_outside_range() {
        assert_eq!(binom(3, -1), 0);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(-2, 0), 0);
        assert_eq!(binom(1, 3), 0);
    }

    #[test]
    fn rational_display_omits_unit_denominator() {
        assert_eq!(rat_str(&rat(6, 2)), "3");
        assert_eq!(rat_str(&rat(-1, 5)), "-1/5");
        assert_eq!(rat_str(&rat(1, -10)), "-1/10");
    }
}
