use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::SurrealError;
use crate::rational::Rational;

/// Default bound on exponent nesting depth. `w` has depth 2 and
/// `w^(w^137)` has depth 3, so 8 leaves generous headroom.
pub const DEFAULT_DEPTH_BOUND: usize = 8;

/// Default quotient-term budget for exact division.
pub const DEFAULT_TERM_BUDGET: usize = 32;

/// A surreal number in finite-support Conway normal form: a finite sum of
/// terms `coefficient * w^exponent` with nonzero rational coefficients and
/// strictly decreasing surreal exponents, themselves of the same form.
/// Zero is the empty sum.
///
/// Every constructor and operation returns canonical form, so structural
/// equality coincides with numeric equality and the derived `Eq`/`Hash`
/// agree with [`Ord`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surreal {
    terms: Vec<Term>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Term {
    exponent: Surreal,
    coefficient: Rational,
}

/// Coarse magnitude class, read off the leading term: the sign of the
/// leading exponent decides the scale, the sign of the leading coefficient
/// decides the direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    PositiveInfinite,
    NegativeInfinite,
    FiniteAppreciable,
    Infinitesimal,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Classification::Zero => "Zero",
            Classification::PositiveInfinite => "PositiveInfinite",
            Classification::NegativeInfinite => "NegativeInfinite",
            Classification::FiniteAppreciable => "FiniteAppreciable",
            Classification::Infinitesimal => "Infinitesimal",
        };
        f.write_str(name)
    }
}

/// Outcome of long division: `quotient * divisor + remainder = dividend`,
/// with the remainder's leading exponent below every quotient exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotient: Surreal,
    pub remainder: Surreal,
}

impl Division {
    pub fn is_exact(&self) -> bool {
        self.remainder.is_zero()
    }
}

impl Surreal {
    pub fn zero() -> Self {
        Surreal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Surreal::from_rational(Rational::one())
    }

    /// The first infinite ordinal, `w^1`.
    pub fn omega() -> Self {
        Surreal {
            terms: vec![Term {
                exponent: Surreal::one(),
                coefficient: Rational::one(),
            }],
        }
    }

    /// Embeds a rational as the single term `q * w^0`; the embedding
    /// preserves order, addition, and multiplication exactly.
    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            return Surreal::zero();
        }
        Surreal {
            terms: vec![Term {
                exponent: Surreal::zero(),
                coefficient: q,
            }],
        }
    }

    /// The monomial `w^e`, checked against the default nesting bound.
    pub fn omega_power(exponent: &Surreal) -> Result<Self, SurrealError> {
        Self::omega_power_bounded(exponent, DEFAULT_DEPTH_BOUND)
    }

    /// The monomial `w^e` with an explicit nesting bound.
    pub fn omega_power_bounded(exponent: &Surreal, bound: usize) -> Result<Self, SurrealError> {
        let depth = exponent.depth() + 1;
        if depth > bound {
            return Err(SurrealError::DepthExceeded { depth, bound });
        }
        Ok(Surreal {
            terms: vec![Term {
                exponent: exponent.clone(),
                coefficient: Rational::one(),
            }],
        })
    }

    /// The k-th member of the `w_k = w^(w^k)` hierarchy; `w_0 = w`.
    /// Each `w_k` exceeds any finite product of lower-indexed members.
    pub fn omega_sub(k: u64) -> Result<Self, SurrealError> {
        let inner = Surreal::omega_power(&Surreal::from(i64::try_from(k).unwrap_or(i64::MAX)))?;
        Surreal::omega_power(&inner)
    }

    /// Builds a value from raw `(exponent, coefficient)` pairs, merging
    /// like exponents and dropping zero coefficients. Fails if the result
    /// would exceed the default nesting bound.
    pub fn from_terms(pairs: Vec<(Surreal, Rational)>) -> Result<Self, SurrealError> {
        Self::from_terms_bounded(pairs, DEFAULT_DEPTH_BOUND)
    }

    pub fn from_terms_bounded(
        pairs: Vec<(Surreal, Rational)>,
        bound: usize,
    ) -> Result<Self, SurrealError> {
        let value = Surreal::canonical(
            pairs
                .into_iter()
                .map(|(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        );
        let depth = value.depth();
        if depth > bound {
            return Err(SurrealError::DepthExceeded { depth, bound });
        }
        Ok(value)
    }

    /// Sorts terms by strictly decreasing exponent, merging duplicates and
    /// dropping zero coefficients.
    fn canonical(mut terms: Vec<Term>) -> Surreal {
        terms.sort_by(|a, b| b.exponent.cmp(&a.exponent));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for term in terms {
            match out.last_mut() {
                Some(last) if last.exponent == term.exponent => {
                    last.coefficient = &last.coefficient + &term.coefficient;
                    if last.coefficient.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !term.coefficient.is_zero() {
                        out.push(term);
                    }
                }
            }
        }
        Surreal { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Surreal, &Rational)> {
        self.terms.iter().map(|t| (&t.exponent, &t.coefficient))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Leading `(exponent, coefficient)`, the pair that decides sign and
    /// magnitude class.
    pub fn leading(&self) -> Option<(&Surreal, &Rational)> {
        self.terms.first().map(|t| (&t.exponent, &t.coefficient))
    }

    /// Sign relative to zero.
    pub fn sign(&self) -> Ordering {
        match self.terms.first() {
            None => Ordering::Equal,
            Some(t) => t.coefficient.sign(),
        }
    }

    /// True when the value is a pure real, i.e. a single `w^0` term or zero.
    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    /// Nesting depth of the exponent tower: zero has depth 0, rationals 1,
    /// `w` 2, `w^(w^137)` 3.
    pub fn depth(&self) -> usize {
        match self.terms.iter().map(|t| t.exponent.depth()).max() {
            None => 0,
            Some(deepest) => 1 + deepest,
        }
    }

    pub fn classify(&self) -> Classification {
        match self.terms.first() {
            None => Classification::Zero,
            Some(t) => match t.exponent.sign() {
                Ordering::Greater => {
                    if t.coefficient.is_positive() {
                        Classification::PositiveInfinite
                    } else {
                        Classification::NegativeInfinite
                    }
                }
                Ordering::Equal => Classification::FiniteAppreciable,
                Ordering::Less => Classification::Infinitesimal,
            },
        }
    }

    /// The real (`w^0`) component. Errors on infinite values, where no
    /// real approximation exists.
    pub fn standard_part(&self) -> Result<Rational, SurrealError> {
        match self.classify() {
            Classification::PositiveInfinite | Classification::NegativeInfinite => {
                Err(SurrealError::InfiniteArgument)
            }
            _ => Ok(self
                .terms
                .iter()
                .find(|t| t.exponent.is_zero())
                .map(|t| t.coefficient.clone())
                .unwrap_or_else(Rational::zero)),
        }
    }

    /// Long division by `divisor`, producing at most `max_terms` quotient
    /// terms. Each step cancels the remainder's leading term, so quotient
    /// exponents strictly decrease and an exact finite quotient is reached
    /// in exactly its number of terms.
    pub fn long_division(
        &self,
        divisor: &Surreal,
        max_terms: usize,
    ) -> Result<Division, SurrealError> {
        let Some(lead) = divisor.terms.first() else {
            return Err(SurrealError::ZeroDivision);
        };
        let mut remainder = self.clone();
        let mut quotient = Vec::new();
        for _ in 0..max_terms {
            let Some(top) = remainder.terms.first() else {
                break;
            };
            let term = Term {
                exponent: &top.exponent - &lead.exponent,
                coefficient: &top.coefficient / &lead.coefficient,
            };
            let partial = Surreal {
                terms: vec![term.clone()],
            };
            remainder = &remainder - &(&partial * divisor);
            quotient.push(term);
        }
        Ok(Division {
            quotient: Surreal::canonical(quotient),
            remainder,
        })
    }

    /// Exact quotient, or `ExactQuotientUnavailable` if the remainder is
    /// still nonzero after `term_budget` quotient terms.
    pub fn div_exact(&self, divisor: &Surreal, term_budget: usize) -> Result<Surreal, SurrealError> {
        let division = self.long_division(divisor, term_budget)?;
        if division.is_exact() {
            Ok(division.quotient)
        } else {
            Err(SurrealError::ExactQuotientUnavailable {
                budget: term_budget,
            })
        }
    }

    /// Exact multiplicative inverse within `term_budget` quotient terms.
    /// Whenever this returns, `self * result == 1` exactly.
    pub fn recip_exact(&self, term_budget: usize) -> Result<Surreal, SurrealError> {
        Surreal::one().div_exact(self, term_budget)
    }
}

impl From<i64> for Surreal {
    fn from(n: i64) -> Self {
        Surreal::from_rational(Rational::from(n))
    }
}

impl From<Rational> for Surreal {
    fn from(q: Rational) -> Self {
        Surreal::from_rational(q)
    }
}

impl FromStr for Surreal {
    type Err = SurrealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse(s)
    }
}

impl Ord for Surreal {
    /// Comparison walks both term lists as if subtracting: the first
    /// position where the normal forms differ carries the sign of the
    /// difference, because any later term is infinitely smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut i = 0;
        let mut j = 0;
        loop {
            match (self.terms.get(i), other.terms.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(t), None) => return t.coefficient.sign(),
                (None, Some(u)) => return u.coefficient.sign().reverse(),
                (Some(t), Some(u)) => match t.exponent.cmp(&u.exponent) {
                    Ordering::Greater => return t.coefficient.sign(),
                    Ordering::Less => return u.coefficient.sign().reverse(),
                    Ordering::Equal => match t.coefficient.cmp(&u.coefficient) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Surreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Surreal {
    type Output = Surreal;

    /// Term merge over the two sorted lists. No new exponents appear, so
    /// nesting depth never grows past the deeper operand.
    fn add(self, rhs: &Surreal) -> Surreal {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < rhs.terms.len() {
            let a = &self.terms[i];
            let b = &rhs.terms[j];
            match a.exponent.cmp(&b.exponent) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let coefficient = &a.coefficient + &b.coefficient;
                    if !coefficient.is_zero() {
                        out.push(Term {
                            exponent: a.exponent.clone(),
                            coefficient,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Surreal { terms: out }
    }
}

impl Neg for &Surreal {
    type Output = Surreal;

    fn neg(self) -> Surreal {
        Surreal {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exponent: t.exponent.clone(),
                    coefficient: -&t.coefficient,
                })
                .collect(),
        }
    }
}

impl Sub for &Surreal {
    type Output = Surreal;

    fn sub(self, rhs: &Surreal) -> Surreal {
        self + &(-rhs)
    }
}

impl Mul for &Surreal {
    type Output = Surreal;

    /// Term convolution with `w^x * w^y = w^(x+y)`. Exponent sums never
    /// introduce exponents deeper than the operands', so the nesting bound
    /// is preserved.
    fn mul(self, rhs: &Surreal) -> Surreal {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(Term {
                    exponent: &a.exponent + &b.exponent,
                    coefficient: &a.coefficient * &b.coefficient,
                });
            }
        }
        Surreal::canonical(out)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Surreal {
            type Output = Surreal;
            fn $method(self, rhs: Surreal) -> Surreal {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Surreal> for Surreal {
            type Output = Surreal;
            fn $method(self, rhs: &Surreal) -> Surreal {
                (&self).$method(rhs)
            }
        }

        impl $trait<Surreal> for &Surreal {
            type Output = Surreal;
            fn $method(self, rhs: Surreal) -> Surreal {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Surreal {
    type Output = Surreal;
    fn neg(self) -> Surreal {
        -&self
    }
}

impl fmt::Debug for Surreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Surreal {
        text.parse().unwrap()
    }

    #[test]
    fn zero_is_empty_and_rational_embeds_as_single_term() {
        assert!(Surreal::zero().is_zero());
        assert_eq!(Surreal::from_rational(Rational::zero()), Surreal::zero());
        let half = Surreal::from_rational(Rational::new(1, 2));
        assert_eq!(half.term_count(), 1);
        let (exp, coeff) = half.leading().unwrap();
        assert!(exp.is_zero());
        assert_eq!(coeff, &Rational::new(1, 2));
    }

    #[test]
    fn omega_power_basics() {
        assert_eq!(Surreal::omega_power(&Surreal::one()).unwrap(), Surreal::omega());
        assert_eq!(Surreal::omega_power(&Surreal::zero()).unwrap(), Surreal::one());
        let inv = Surreal::omega_power(&Surreal::from(-1)).unwrap();
        assert_eq!(&inv * &Surreal::omega(), Surreal::one());
    }

    #[test]
    fn omega_minus_omega_is_zero() {
        let w = Surreal::omega();
        assert_eq!(&w + &(-&w), Surreal::zero());
    }

    #[test]
    fn finite_offsets_order_infinite_values() {
        // .5w < .5w + 5000
        assert!(s("1/2*w") < s("1/2*w + 5000"));
        // w > .5w
        assert!(s("w") > s("1/2*w"));
        assert_eq!(s("w").cmp(&s("w")), Ordering::Equal);
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(s("1/2") * s("w"), s("1/2*w"));
        let x = s("3*w^2 - w + 7");
        assert_eq!(&Surreal::one() * &x, x);
        // w_100 * w_5 = w^(w^100 + w^5) < w_137
        let product = Surreal::omega_sub(100).unwrap() * Surreal::omega_sub(5).unwrap();
        assert!(product < Surreal::omega_sub(137).unwrap());
    }

    #[test]
    fn depth_of_nested_towers() {
        assert_eq!(Surreal::zero().depth(), 0);
        assert_eq!(Surreal::one().depth(), 1);
        assert_eq!(Surreal::omega().depth(), 2);
        assert_eq!(Surreal::omega_sub(137).unwrap().depth(), 3);
    }

    #[test]
    fn depth_bound_is_enforced() {
        let mut tower = Surreal::omega();
        for _ in 0..5 {
            tower = Surreal::omega_power(&tower).unwrap();
        }
        assert_eq!(tower.depth(), 7);
        let last = Surreal::omega_power(&tower).unwrap();
        assert_eq!(last.depth(), 8);
        assert_eq!(
            Surreal::omega_power(&last),
            Err(SurrealError::DepthExceeded { depth: 9, bound: 8 })
        );
    }

    #[test]
    fn classification_from_leading_term() {
        assert_eq!(Surreal::zero().classify(), Classification::Zero);
        assert_eq!(s("w - 1").classify(), Classification::PositiveInfinite);
        assert_eq!(s("-2*w + 1000000").classify(), Classification::NegativeInfinite);
        assert_eq!(s("7 + 1/2*w^-1").classify(), Classification::FiniteAppreciable);
        let tiny = Surreal::omega_sub(137).unwrap().recip_exact(4).unwrap();
        assert_eq!(tiny.classify(), Classification::Infinitesimal);
    }

    #[test]
    fn standard_part_reads_the_real_component() {
        assert_eq!(s("1/2*w^-1 + 7").standard_part().unwrap(), Rational::from(7));
        assert_eq!(s("w^-1").standard_part().unwrap(), Rational::zero());
        assert_eq!(Surreal::zero().standard_part().unwrap(), Rational::zero());
        assert_eq!(s("w - 1").standard_part(), Err(SurrealError::InfiniteArgument));
    }

    #[test]
    fn division_examples() {
        assert_eq!(s("w").recip_exact(4).unwrap(), s("w^-1"));
        assert_eq!(s("2/3").recip_exact(4).unwrap(), s("3/2"));
        assert_eq!(s("w^2 + w").div_exact(&s("w"), 8).unwrap(), s("w + 1"));
        assert_eq!(s("w + 1") * s("w"), s("w^2 + w"));
        let x = s("3*w^2");
        assert_eq!(x.div_exact(&x, 4).unwrap(), Surreal::one());
        // w_5 / w_137 = w^(w^5 - w^137)
        let q = Surreal::omega_sub(5)
            .unwrap()
            .div_exact(&Surreal::omega_sub(137).unwrap(), 4)
            .unwrap();
        assert_eq!(q, s("w^(w^5 - w^137)"));
    }

    #[test]
    fn reciprocal_of_omega_plus_one_never_terminates() {
        // remainder after k steps is (-1)^k * w^-k, never zero
        for budget in [1, 2, 8, 40] {
            assert_eq!(
                s("w + 1").recip_exact(budget),
                Err(SurrealError::ExactQuotientUnavailable { budget })
            );
        }
        let division = Surreal::one().long_division(&s("w + 1"), 5).unwrap();
        assert_eq!(division.remainder, s("-1*w^-5"));
        assert_eq!(
            &division.quotient * &s("w + 1") + &division.remainder,
            Surreal::one()
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            s("w").div_exact(&Surreal::zero(), 4),
            Err(SurrealError::ZeroDivision)
        );
    }
}
