//! Exact rational transition weights.
//!
//! Every quantity that feeds a verdict (weights, discount factors, run
//! values, game values) is a [`Weight`], i.e. an arbitrary-precision
//! rational. No floating point appears anywhere in a decision path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number. `BigRational` keeps the denominator positive
/// and the fraction reduced, which is exactly the invariant we need.
pub type Weight = BigRational;

/// Builds a weight from an integer.
pub fn weight_int(n: i64) -> Weight {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds a weight `p/q`. Panics if `q == 0`.
pub fn weight_ratio(p: i64, q: i64) -> Weight {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q` or a plain integer, with optional leading sign.
pub fn parse_weight(s: &str) -> Option<Weight> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

/// Renders a weight as `p/q`, or just `p` for integers.
pub fn format_weight(w: &Weight) -> String {
    if w.denom().is_one() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// True iff `0 < w < 1`, the valid range for discount factors.
pub fn is_valid_discount(w: &Weight) -> bool {
    w.is_positive() && *w < Weight::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3", "7", "1/2", "-4/6", "10/4"] {
            let w = parse_weight(s).unwrap();
            let again = parse_weight(&format_weight(&w)).unwrap();
            assert_eq!(w, again);
        }
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(parse_weight("2/4").unwrap(), weight_ratio(1, 2));
        assert_eq!(format_weight(&parse_weight("-4/6").unwrap()), "-2/3");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_weight("").is_none());
        assert!(parse_weight("1/0").is_none());
        assert!(parse_weight("a").is_none());
        assert!(parse_weight("1.5").is_none());
    }

    #[test]
    fn discount_range() {
        assert!(is_valid_discount(&weight_ratio(1, 2)));
        assert!(!is_valid_discount(&weight_int(0)));
        assert!(!is_valid_discount(&weight_int(1)));
        assert!(!is_valid_discount(&weight_ratio(-1, 2)));
        assert!(!is_valid_discount(&weight_ratio(3, 2)));
    }
}
