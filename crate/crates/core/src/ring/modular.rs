use std::fmt;

use super::RingElement;
use crate::arith::{gcd, mod_inverse, mod_pow};
use crate::error::{Error, Result};

/// The finite ring `Z/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModRing {
    modulus: u64,
}

impl ModRing {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgument(format!("modulus {modulus} < 2")));
        }
        if modulus > u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!("modulus {modulus} too large")));
        }
        Ok(ModRing { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elem(&self, value: i64) -> ModElem {
        ModElem {
            value: (value as i128).rem_euclid(self.modulus as i128) as u64,
            modulus: self.modulus,
        }
    }

    pub fn zero(&self) -> ModElem {
        self.elem(0)
    }

    pub fn one(&self) -> ModElem {
        self.elem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = ModElem> + '_ {
        (0..self.modulus).map(|v| ModElem {
            value: v,
            modulus: self.modulus,
        })
    }

    pub fn idempotents(&self) -> Vec<u64> {
        let m = self.modulus as u128;
        (0..self.modulus)
            .filter(|&x| (x as u128 * x as u128) % m == x as u128)
            .collect()
    }
}

/// A residue in `[0, m)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModElem {
    value: u64,
    modulus: u64,
}

impl ModElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ring(&self) -> ModRing {
        ModRing {
            modulus: self.modulus,
        }
    }

    pub fn is_unit(&self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    pub fn inverse(&self) -> Option<ModElem> {
        mod_inverse(self.value, self.modulus).map(|v| ModElem {
            value: v,
            modulus: self.modulus,
        })
    }

    pub fn pow(&self, e: u64) -> ModElem {
        ModElem {
            value: mod_pow(self.value, e, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul_ref(self) == *self
    }

    fn check(&self, other: &ModElem) {
        assert_eq!(self.modulus, other.modulus, "residues modulo different integers");
    }
}

impl fmt::Debug for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl RingElement for ModElem {
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.check(other);
        ModElem {
            value: ((self.value as u128 + other.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.check(other);
        ModElem {
            value: ((self.value as u128 + (self.modulus - other.value) as u128)
                % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.check(other);
        ModElem {
            value: ((self.value as u128 * other.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn neg_ref(&self) -> Self {
        ModElem {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_six() {
        let r = ModRing::new(6).unwrap();
        assert_eq!(r.elem(4).add_ref(&r.elem(5)), r.elem(3));
        assert_eq!(r.elem(1).sub_ref(&r.elem(5)), r.elem(2));
        assert_eq!(r.elem(-1), r.elem(5));
        assert!(r.elem(5).is_unit());
        assert!(!r.elem(3).is_unit());
        assert_eq!(r.idempotents(), vec![0, 1, 3, 4]);
        assert_eq!(r.elem(5).inverse(), Some(r.elem(5)));
        assert!(ModRing::new(1).is_err());
    }
}
