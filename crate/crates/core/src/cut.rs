//! Cut construction for real bounds.
//!
//! `simplest_between` resolves a cut `{L | R}` over real-valued surreals to
//! the earliest-born number strictly between the sides: zero when it
//! qualifies, otherwise the least-birthday integer, otherwise dyadic
//! bisection inside the unit gap. Conventions: `{|} = 0`, and one-sided
//! cuts take the least-birthday integer beyond the bound.

use crate::error::SurrealError;
use crate::rational::Rational;
use crate::surreal::Surreal;

/// Resolves `{left | right}` for finite sets of real-valued bounds.
///
/// Errors with `NonRealBound` if any bound has an infinite or infinitesimal
/// part, and with `MalformedCut` if `max(left) >= min(right)`.
pub fn simplest_between(left: &[Surreal], right: &[Surreal]) -> Result<Surreal, SurrealError> {
    let lower = extremum(left, true)?;
    let upper = extremum(right, false)?;
    if let (Some(l), Some(r)) = (&lower, &upper) {
        if l >= r {
            return Err(SurrealError::MalformedCut {
                left: l.to_string(),
                right: r.to_string(),
            });
        }
    }
    Ok(Surreal::from_rational(simplest_rational(lower, upper)))
}

/// Max of the left side / min of the right side, as rationals.
fn extremum(bounds: &[Surreal], want_max: bool) -> Result<Option<Rational>, SurrealError> {
    let mut best: Option<Rational> = None;
    for bound in bounds {
        let value = bound.to_rational().ok_or_else(|| SurrealError::NonRealBound {
            bound: bound.to_string(),
        })?;
        best = Some(match best {
            None => value,
            Some(current) => {
                if (value > current) == want_max {
                    value
                } else {
                    current
                }
            }
        });
    }
    Ok(best)
}

fn simplest_rational(lower: Option<Rational>, upper: Option<Rational>) -> Rational {
    match (lower, upper) {
        (None, None) => Rational::zero(),
        (Some(l), None) => {
            if l.is_negative() {
                Rational::zero()
            } else {
                Rational::from(l.floor_int() + 1)
            }
        }
        (None, Some(r)) => {
            if r.is_positive() {
                Rational::zero()
            } else {
                Rational::from(r.ceil_int() - 1)
            }
        }
        (Some(l), Some(r)) => simplest_in_interval(l, r),
    }
}

/// Earliest-born rational strictly inside `(l, r)`, `l < r`.
fn simplest_in_interval(l: Rational, r: Rational) -> Rational {
    if l.is_negative() && r.is_positive() {
        return Rational::zero();
    }
    if !r.is_positive() {
        // mirror the negative side onto the positive side
        return -simplest_in_interval(-r, -l);
    }
    // now 0 <= l < r: the earliest-born integer in range is the smallest
    let integer = Rational::from(l.floor_int() + 1);
    if integer < r {
        return integer;
    }
    // no integer inside: bisect dyadically within (floor(l), floor(l)+1)
    let mut lo = Rational::from(l.floor_int());
    let mut hi = &lo + &Rational::one();
    loop {
        let mid = &(&lo + &hi) * &Rational::new(1, 2);
        if mid <= l {
            lo = mid;
        } else if mid >= r {
            hi = mid;
        } else {
            return mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Surreal {
        text.parse().unwrap()
    }

    fn cut(left: &[&str], right: &[&str]) -> Result<Surreal, SurrealError> {
        let l: Vec<Surreal> = left.iter().map(|t| s(t)).collect();
        let r: Vec<Surreal> = right.iter().map(|t| s(t)).collect();
        simplest_between(&l, &r)
    }

    #[test]
    fn the_first_numbers() {
        assert_eq!(cut(&[], &[]).unwrap(), s("0"));
        assert_eq!(cut(&["0"], &[]).unwrap(), s("1"));
        assert_eq!(cut(&[], &["0"]).unwrap(), s("-1"));
        assert_eq!(cut(&["0"], &["1"]).unwrap(), s("1/2"));
    }

    #[test]
    fn equivalent_cuts_name_the_same_number() {
        // {1|} = {-1,1|} = {0,1|} = 2
        assert_eq!(cut(&["1"], &[]).unwrap(), s("2"));
        assert_eq!(cut(&["-1", "1"], &[]).unwrap(), s("2"));
        assert_eq!(cut(&["-1", "0", "1"], &[]).unwrap(), s("2"));
    }

    #[test]
    fn prefers_zero_then_integers_then_bisection() {
        assert_eq!(cut(&["-5"], &["7"]).unwrap(), s("0"));
        assert_eq!(cut(&["1/2"], &["9"]).unwrap(), s("1"));
        assert_eq!(cut(&["1/4"], &["1/3"]).unwrap(), s("5/16"));
        assert_eq!(cut(&["-3"], &["-2"]).unwrap(), s("-5/2"));
        assert_eq!(cut(&["-5"], &["-1/2"]).unwrap(), s("-1"));
    }

    #[test]
    fn rejects_overlapping_and_non_real_bounds() {
        assert!(matches!(
            cut(&["1"], &["1"]),
            Err(SurrealError::MalformedCut { .. })
        ));
        assert!(matches!(
            cut(&["2"], &["0"]),
            Err(SurrealError::MalformedCut { .. })
        ));
        assert!(matches!(
            cut(&["w"], &[]),
            Err(SurrealError::NonRealBound { .. })
        ));
        assert!(matches!(
            cut(&["0"], &["1 + w^-1"]),
            Err(SurrealError::NonRealBound { .. })
        ));
    }
}
