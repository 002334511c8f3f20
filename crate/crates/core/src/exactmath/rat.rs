use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Exact rational number.
///
/// Wraps a reduced `BigRational`: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
/// All exponents and valuation values in the crate are `Rat`s; denominators
/// of the form `p^(i+1)` grow without bound, so arbitrary precision is
/// mandatory.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Result<Rat, Error> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// Panicking constructor for literals known to have nonzero denominator.
    pub fn frac(num: i64, den: i64) -> Rat {
        Rat::new(num, den).expect("nonzero denominator")
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// `1 / p^k`, exact.
    pub fn inv_pow(p: u32, k: u32) -> Rat {
        let den = BigInt::from(p).pow(k);
        Rat(BigRational::new(BigInt::one(), den))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    /// Multiply by an integer scalar (used for `k * delta` terms).
    pub fn scale(&self, k: u64) -> Rat {
        Rat(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    /// Render as `num/den`, including `den = 1` (wire format for reports).
    pub fn wire(&self) -> String {
        use alloc::format;
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

/// Value semiring `Q ∪ {∞}`.
///
/// `∞ + x = ∞`, `min(∞, x) = x`, and `∞` is greater than every finite value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ValOrInf {
    Finite(Rat),
    Infinity,
}

impl ValOrInf {
    pub fn finite(r: Rat) -> ValOrInf {
        ValOrInf::Finite(r)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ValOrInf::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            ValOrInf::Finite(r) => Some(r),
            ValOrInf::Infinity => None,
        }
    }

    pub fn add(&self, other: &ValOrInf) -> ValOrInf {
        match (self, other) {
            (ValOrInf::Finite(a), ValOrInf::Finite(b)) => ValOrInf::Finite(a + b),
            _ => ValOrInf::Infinity,
        }
    }

    pub fn add_rat(&self, r: &Rat) -> ValOrInf {
        match self {
            ValOrInf::Finite(a) => ValOrInf::Finite(a + r),
            ValOrInf::Infinity => ValOrInf::Infinity,
        }
    }

    pub fn min(self, other: ValOrInf) -> ValOrInf {
        match (self, other) {
            (ValOrInf::Finite(a), ValOrInf::Finite(b)) => ValOrInf::Finite(a.min(b)),
            (ValOrInf::Finite(a), ValOrInf::Infinity) => ValOrInf::Finite(a),
            (ValOrInf::Infinity, b) => b,
        }
    }

    pub fn wire(&self) -> String {
        match self {
            ValOrInf::Finite(r) => r.wire(),
            ValOrInf::Infinity => String::from("inf"),
        }
    }
}

impl From<Rat> for ValOrInf {
    fn from(r: Rat) -> ValOrInf {
        ValOrInf::Finite(r)
    }
}

impl PartialOrd for ValOrInf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ValOrInf {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValOrInf::Finite(a), ValOrInf::Finite(b)) => a.cmp(b),
            (ValOrInf::Finite(_), ValOrInf::Infinity) => Ordering::Less,
            (ValOrInf::Infinity, ValOrInf::Finite(_)) => Ordering::Greater,
            (ValOrInf::Infinity, ValOrInf::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ValOrInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValOrInf::Finite(r) => write!(f, "{r}"),
            ValOrInf::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ValOrInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_of_negatives() {
        let a = Rat::frac(-1, 4);
        let b = Rat::frac(-1, 8);
        assert_eq!(a.clone().min(b.clone()), a);
        assert!(b > a);
    }

    #[test]
    fn addition_is_exact_and_canonical() {
        let s = Rat::int(1) + Rat::frac(-1, 4);
        assert_eq!(s, Rat::frac(3, 4));
        assert_eq!(s.wire(), "3/4");
    }

    #[test]
    fn infinity_dominates() {
        let inf = ValOrInf::Infinity;
        let v = ValOrInf::finite(Rat::frac(3, 4));
        assert!(inf > v);
        assert_eq!(inf.clone().min(v.clone()), v);
        assert_eq!(inf.add(&v), ValOrInf::Infinity);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rat::new(1, 0), Err(crate::Error::DivisionByZero));
        let z = Rat::zero();
        assert!(Rat::one().checked_div(&z).is_err());
    }

    #[test]
    fn inv_pow_builds_small_denominators() {
        assert_eq!(Rat::inv_pow(2, 3), Rat::frac(1, 8));
        assert_eq!(Rat::inv_pow(3, 2), Rat::frac(1, 9));
    }
}
