//! Coefficient fields for exact linear algebra.
//!
//! Two fields are provided: the rationals (arbitrary precision, used for
//! every reported value) and the prime field of order `2^31 - 1`, which
//! answers dimension-only questions faster. Ranks over the prime field can
//! only drop relative to the rationals, so the rational route stays the
//! reference wherever both run.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).mul(&Self::from_i64(den).inv())
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
}

pub type Rational = BigRational;

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        // Integer fast path: most eliminations here never leave Z.
        if self.is_integer() && a.is_integer() && b.is_integer() {
            let v = self.numer() - a.numer() * b.numer();
            *self = BigRational::from_integer(v);
        } else {
            *self -= a * b;
        }
    }
}

/// Integers modulo the Mersenne prime `2^31 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 31) - 1;

    pub fn new(v: u64) -> Self {
        Fp(v % Self::MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % Self::MODULUS;
            }
            base = base * base % Self::MODULUS;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(n: i64) -> Self {
        let m = Self::MODULUS as i64;
        Fp(n.rem_euclid(m) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % Self::MODULUS)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + Self::MODULUS - other.0) % Self::MODULUS)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % Self::MODULUS)
    }
    fn neg(&self) -> Self {
        Fp((Self::MODULUS - self.0) % Self::MODULUS)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(Self::MODULUS - 2)
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.0 * b.0 % Self::MODULUS;
        self.0 = (self.0 + Self::MODULUS - p) % Self::MODULUS;
    }
}

/// Render a rational compactly: integers without a denominator.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
