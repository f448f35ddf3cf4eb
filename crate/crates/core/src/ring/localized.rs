use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactDivision, RingElement};
use crate::error::{Error, Result};

/// An element `numerator / p^denom_exp` of `Z[1/p]`.
///
/// Always normalized: either `denom_exp == 0` or `p` does not divide the
/// numerator, so structural equality is equality in `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalizedInt {
    numerator: BigInt,
    denom_exp: u32,
    prime: u64,
}

impl LocalizedInt {
    pub fn new(numerator: impl Into<BigInt>, denom_exp: u32, prime: u64) -> Self {
        let mut x = LocalizedInt {
            numerator: numerator.into(),
            denom_exp,
            prime,
        };
        x.normalize();
        x
    }

    pub fn from_integer(n: impl Into<BigInt>, prime: u64) -> Self {
        Self::new(n, 0, prime)
    }

    pub fn zero(prime: u64) -> Self {
        Self::new(0, 0, prime)
    }

    pub fn one(prime: u64) -> Self {
        Self::new(1, 0, prime)
    }

    /// `p^k` for any signed `k`.
    pub fn prime_power(prime: u64, k: i64) -> Self {
        if k >= 0 {
            Self::new(BigInt::from(prime).pow(k as u32), 0, prime)
        } else {
            Self::new(1, (-k) as u32, prime)
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_integer(&self) -> bool {
        self.denom_exp == 0
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.denom_exp = 0;
            return;
        }
        let p = BigInt::from(self.prime);
        while self.denom_exp > 0 {
            let (q, r) = self.numerator.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            self.numerator = q;
            self.denom_exp -= 1;
        }
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(
            self.prime, other.prime,
            "Z[1/p] operands with different inverted primes"
        );
    }

    /// Splits the numerator as `± p^j · rest` with `p ∤ rest`, returning
    /// `(j, rest)`. Zero maps to `(0, 0)`.
    fn split_prime_part(&self) -> (u32, BigInt) {
        if self.numerator.is_zero() {
            return (0, BigInt::zero());
        }
        let p = BigInt::from(self.prime);
        let mut rest = self.numerator.clone();
        let mut j = 0;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            j += 1;
        }
        (j, rest)
    }

    /// Units of `Z[1/p]` are exactly `± p^k`.
    pub fn is_unit(&self) -> bool {
        let (_, rest) = self.split_prime_part();
        rest.abs().is_one()
    }

    pub fn inverse(&self) -> Result<Self> {
        let (j, rest) = self.split_prime_part();
        if !rest.abs().is_one() {
            return Err(Error::NotUnit);
        }
        // (± p^j / p^e)^{-1} = ± p^e / p^j
        let num = rest * BigInt::from(self.prime).pow(self.denom_exp);
        Ok(Self::new(num, j, self.prime))
    }

    /// Multiplies by `p^k` for a signed `k`.
    pub fn scale_prime_power(&self, k: i64) -> Self {
        if k >= 0 {
            Self::new(
                &self.numerator * BigInt::from(self.prime).pow(k as u32),
                self.denom_exp,
                self.prime,
            )
        } else {
            Self::new(self.numerator.clone(), self.denom_exp + (-k) as u32, self.prime)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.numerator.pow(e), self.denom_exp * e, self.prime)
    }

    /// Renders as `numerator/p^e`, the form used in serialized reports.
    pub fn to_report_string(&self) -> String {
        format!("{}/{}^{}", self.numerator, self.prime, self.denom_exp)
    }

    pub fn parse_report_string(s: &str, prime: u64) -> Result<Self> {
        let bad = || Error::Parse(format!("expected numerator/p^e, got {s:?}"));
        let (num, den) = s.split_once('/').ok_or_else(bad)?;
        let (base, exp) = den.split_once('^').ok_or_else(bad)?;
        let base: u64 = base.trim().parse().map_err(|_| bad())?;
        if base != prime {
            return Err(Error::Parse(format!("denominator base {base}, expected {prime}")));
        }
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let exp: u32 = exp.trim().parse().map_err(|_| bad())?;
        Ok(Self::new(num, exp, prime))
    }
}

impl fmt::Debug for LocalizedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LocalizedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}^{}", self.numerator, self.prime, self.denom_exp)
        }
    }
}

impl Add for &LocalizedInt {
    type Output = LocalizedInt;

    fn add(self, rhs: &LocalizedInt) -> LocalizedInt {
        self.check_prime(rhs);
        let p = BigInt::from(self.prime);
        let e = self.denom_exp.max(rhs.denom_exp);
        let a = &self.numerator * p.pow(e - self.denom_exp);
        let b = &rhs.numerator * p.pow(e - rhs.denom_exp);
        LocalizedInt::new(a + b, e, self.prime)
    }
}

impl Sub for &LocalizedInt {
    type Output = LocalizedInt;

    fn sub(self, rhs: &LocalizedInt) -> LocalizedInt {
        self + &(-rhs)
    }
}

impl Mul for &LocalizedInt {
    type Output = LocalizedInt;

    fn mul(self, rhs: &LocalizedInt) -> LocalizedInt {
        self.check_prime(rhs);
        LocalizedInt::new(
            &self.numerator * &rhs.numerator,
            self.denom_exp + rhs.denom_exp,
            self.prime,
        )
    }
}

impl Neg for &LocalizedInt {
    type Output = LocalizedInt;

    fn neg(self) -> LocalizedInt {
        LocalizedInt {
            numerator: -&self.numerator,
            denom_exp: self.denom_exp,
            prime: self.prime,
        }
    }
}

impl RingElement for LocalizedInt {
    fn zero_like(&self) -> Self {
        Self::zero(self.prime)
    }
    fn one_like(&self) -> Self {
        Self::one(self.prime)
    }
    fn is_zero_elem(&self) -> bool {
        self.numerator.is_zero()
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
}

impl ExactDivision for LocalizedInt {
    type Divisor = LocalizedInt;

    fn prepare_divisor(&self) -> Result<Self> {
        if self.numerator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone())
    }

    fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check_prime(d);
        // a/p^e ÷ (p^j·rest/p^f) = (a / rest) · p^f / p^(e+j)
        let (j, rest) = d.split_prime_part();
        let (q, r) = self.numerator.div_rem(&rest);
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        let num = q * BigInt::from(self.prime).pow(d.denom_exp);
        Ok(LocalizedInt::new(num, self.denom_exp + j, self.prime))
    }
}
