//! Minimal ring abstraction so polynomial algorithms can run over Z, Z[s],
//! Z[s][t], ... uniformly. Only what Bareiss elimination and primitive
//! pseudo-remainder sequences actually need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// Division known to be exact. Panics on inexact division: every call
    /// site relies on an algebraic identity, so a failure is a bug.
    fn exact_div(&self, other: &Self) -> Self;

    /// Sign of the canonical representative (leading coefficient all the way
    /// down). Zero is not negative.
    fn is_negative(&self) -> bool;
}

/// GCD domains: enough for contents, primitive parts and polynomial gcd.
pub trait GcdRing: Ring {
    /// Normalized gcd: the result is never negative.
    fn gcd(&self, other: &Self) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl GcdRing for BigInt {
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
}
