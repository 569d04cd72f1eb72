//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational with the denominator kept
//! positive and the fraction reduced; zero is `0/1`. All arithmetic in the
//! library is exact, there is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

/// `n/d` as a reduced rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rint(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `k!` as a rational.
pub fn factorial(k: usize) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

/// Renders without a denominator when the value is an integer: `3`, `-5/6`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `int` or `int/positive-int`.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() || d.is_negative() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert!(rat(-1, 2).denom() > &BigInt::zero());
    }

    #[test]
    fn rational_sum() {
        // 1/2 + 1/3 = 5/6
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn parse_render_round_trip() {
        for s in ["0", "3", "-5/6", "22/7"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(rat_from_str("1/0"), None);
        assert_eq!(rat_from_str("1/-2"), None);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rint(1));
        assert_eq!(factorial(4), rint(24));
    }
}
