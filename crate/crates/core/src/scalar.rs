//! The exact field the engine computes over.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// An exact field element. Implemented for rational numbers over any
/// signed integer type, so callers can pick `BigRational` for unbounded
/// work or `Rational64` for small, fast checks.
pub trait Scalar:
    Num + std::ops::Neg<Output = Self> + Clone + Debug + Display + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    fn is_negative(&self) -> bool;

    /// Image in `Z/p`, or `None` when `p` divides the denominator.
    fn residue(&self, p: u64) -> Option<u64>;

    /// `num / den`, or `None` if it does not fit the scalar type.
    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self>;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + From<i64> + ToPrimitive + TryFrom<BigInt> + Display + Debug + Send + Sync + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        let n = T::try_from(num).ok()?;
        let d = T::try_from(den).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }

    fn residue(&self, p: u64) -> Option<u64> {
        let modulus = T::from(p as i64);
        let reduce = |x: &T| x.mod_floor(&modulus).to_u64().expect("residue below p");
        let den = reduce(self.denom());
        if den == 0 {
            return None;
        }
        Some(reduce(self.numer()) * crate::modular::inverse_mod(den, p) % p)
    }
}
