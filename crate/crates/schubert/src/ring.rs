//! Coefficient rings for Schubert vectors and nil Hecke elements.
//!
//! The operator actions are written once over any exact commutative ring;
//! in practice the ring is either [`Rat`] (arbitrary-precision rationals) or
//! [`crate::poly::MultiPoly`] (for genus coefficients like `a·i + b`).

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

/// Arbitrary-precision rational, the default coefficient ring.
pub type Rat = BigRational;

/// Exact commutative ring with the handful of capabilities the actions need.
/// `Zero`/`One` bring along addition and multiplication.
pub trait Ring:
    Clone + PartialEq + Debug + Send + Sync + 'static + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_int(n: i64) -> Self;
}

impl Ring for Rat {
    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
}

/// `n` as an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
