//! The scalar abstraction for all geometric predicates.
//!
//! Every predicate in this crate is decided by exact arithmetic over a
//! totally ordered field of rationals; there is no floating point and no
//! tolerance anywhere. The [`Scalar`] trait captures what the algorithms
//! need (field ops by value and by reference, sign tests, integer floor)
//! and is implemented for `num_rational::Ratio<T>` over the usual integer
//! backends. The crate-level alias [`crate::Q`] picks the arbitrary
//! precision instantiation, which is the one every shipped tool uses.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, NumRef, Signed};

/// An exact rational scalar.
///
/// Implementations must be *exact*: `a + b`, `a * b`, comparisons and
/// `floor_int` give the true mathematical answer. Fixed-width backends
/// (`Ratio<i64>`) satisfy this only until they overflow, which panics;
/// they are fine for small hand-written cases but the shipped alias is
/// arbitrary precision.
pub trait Scalar:
    Num + NumRef + Signed + Ord + Clone + Hash + Debug + Display + 'static
{
    fn from_int(n: i64) -> Self;

    /// `num / den`; panics if `den == 0`.
    fn fraction(num: i64, den: i64) -> Self;

    /// Largest integer-valued scalar `<= self`.
    fn floor_int(&self) -> Self;

    fn is_integer(&self) -> bool;

    /// Numerator of the reduced fraction, as an integer-valued scalar.
    fn numer_scalar(&self) -> Self;

    /// Denominator of the reduced fraction (always positive), as an
    /// integer-valued scalar.
    fn denom_scalar(&self) -> Self;

    /// Parses `p/q` or `p` with optional sign; `None` on malformed input
    /// or zero denominator.
    fn parse_frac(s: &str) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromStr + From<i64> + 'static,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from(n))
    }

    fn fraction(num: i64, den: i64) -> Self {
        Ratio::new(T::from(num), T::from(den))
    }

    fn floor_int(&self) -> Self {
        self.floor()
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn numer_scalar(&self) -> Self {
        Ratio::from_integer(self.numer().clone())
    }

    fn denom_scalar(&self) -> Self {
        Ratio::from_integer(self.denom().clone())
    }

    fn parse_frac(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = T::from_str(num.trim()).ok()?;
            let d = T::from_str(den.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Ratio::new(n, d))
        } else {
            T::from_str(s).ok().map(Ratio::from_integer)
        }
    }
}
