//! Coefficient rings: `Z[1/p]`, cyclotomic quotients `Z[1/p][X]/(Φ_M)`,
//! finite rings `Z/m`, and matrices with determinants over them.

mod cyclo;
mod localized;
mod matrix;
mod modular;
mod poly;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use cyclo::{CycloDivisor, CycloElem, CycloRing, ZetaSum};
pub use localized::LocalizedInt;
pub use matrix::{bareiss_determinant, expansion_determinant, RingMatrix};
pub use modular::{ModElem, ModRing};
pub use poly::{cyclotomic_polynomial, IntPolynomial};

/// A commutative ring element that knows its own ring, so that neutral
/// elements can be produced from any instance.
pub trait RingElement: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// Exact division in an integral domain. The divisor is prepared once so
/// that repeated divisions by the same pivot stay cheap.
pub trait ExactDivision: RingElement {
    type Divisor: Sync;

    fn prepare_divisor(&self) -> Result<Self::Divisor>;
    fn div_exact(&self, divisor: &Self::Divisor) -> Result<Self>;
}

impl RingElement for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
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
}

impl ExactDivision for BigInt {
    type Divisor = BigInt;

    fn prepare_divisor(&self) -> Result<BigInt> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone())
    }

    fn div_exact(&self, divisor: &BigInt) -> Result<BigInt> {
        let (q, r) = self.div_rem(divisor);
        if !Zero::is_zero(&r) {
            return Err(Error::NotDivisible);
        }
        Ok(q)
    }
}
