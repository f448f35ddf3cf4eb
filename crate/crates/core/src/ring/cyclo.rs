use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactDivision, IntPolynomial, LocalizedInt, RingElement, RingMatrix};
use crate::arith::{euler_phi, gcd, is_prime};
use crate::error::{Error, Result};

use super::cyclotomic_polynomial;

struct RingData {
    conductor: u64,
    prime: u64,
    modulus: IntPolynomial,
    degree: usize,
    /// Power-basis expansion of `ζ^k` for every `0 <= k < M`.
    zeta_table: Vec<Vec<(usize, i64)>>,
    units: Vec<u64>,
}

/// `Z[1/p][X]/(Φ_M)`: the subring of `Z^cycl[1/p]` generated by a primitive
/// `M`-th root of unity `ζ`. Cheap to clone.
#[derive(Clone)]
pub struct CycloRing(Arc<RingData>);

impl CycloRing {
    pub fn new(conductor: u64, prime: u64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        if !is_prime(prime) {
            return Err(Error::InvalidArgument(format!("{prime} is not prime")));
        }
        let modulus = cyclotomic_polynomial(conductor);
        let degree = euler_phi(conductor) as usize;
        debug_assert_eq!(modulus.degree(), Some(degree));
        let zeta_table = build_zeta_table(&modulus, conductor as usize, degree);
        let units = (1..=conductor).filter(|&t| gcd(t, conductor) == 1).collect();
        Ok(CycloRing(Arc::new(RingData {
            conductor,
            prime,
            modulus,
            degree,
            zeta_table,
            units,
        })))
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    pub fn prime(&self) -> u64 {
        self.0.prime
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.0.modulus
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Residues `t` in `[1, M]` with `gcd(t, M) = 1`; index the Galois group.
    pub fn galois_units(&self) -> &[u64] {
        &self.0.units
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem {
            ring: self.clone(),
            num: vec![BigInt::zero(); self.degree()],
            den: 0,
        }
    }

    pub fn one(&self) -> CycloElem {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: impl Into<BigInt>) -> CycloElem {
        let mut x = self.zero();
        x.num[0] = n.into();
        x
    }

    pub fn from_localized(&self, c: &LocalizedInt) -> CycloElem {
        assert_eq!(c.prime(), self.prime(), "inverted primes differ");
        let mut x = self.zero();
        x.num[0] = c.numerator().clone();
        x.den = c.denom_exp();
        x
    }

    /// Builds an element from its power-basis coordinates.
    pub fn from_coeffs(&self, coeffs: &[LocalizedInt]) -> Result<CycloElem> {
        if coeffs.len() != self.degree() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for a ring of degree {}",
                coeffs.len(),
                self.degree()
            )));
        }
        if coeffs.iter().any(|c| c.prime() != self.prime()) {
            return Err(Error::RingMismatch("coefficient prime".into()));
        }
        let den = coeffs.iter().map(|c| c.denom_exp()).max().unwrap_or(0);
        let p = BigInt::from(self.prime());
        let num = coeffs
            .iter()
            .map(|c| c.numerator() * p.pow(den - c.denom_exp()))
            .collect();
        Ok(CycloElem::normalized(self.clone(), num, den))
    }

    /// `Σ c_i ζ^i` for an integer polynomial of any length, reduced.
    pub fn from_zeta_poly(&self, coeffs: &[i64]) -> CycloElem {
        let mut acc = ZetaSum::new(self);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                acc.add_integer_zeta(&BigInt::from(c), i as i64);
            }
        }
        acc.finish()
    }

    /// `ζ^u` with `u` taken modulo `M`.
    pub fn zeta_power(&self, u: i64) -> CycloElem {
        let k = u.rem_euclid(self.conductor() as i64) as usize;
        let mut x = self.zero();
        for &(i, c) in &self.0.zeta_table[k] {
            x.num[i] = BigInt::from(c);
        }
        x
    }

    fn same(&self, other: &CycloRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.conductor() == other.conductor() && self.prime() == other.prime())
    }

    fn assert_same(&self, other: &CycloRing) {
        assert!(
            self.same(other),
            "cyclotomic operands from different rings: (M={}, p={}) vs (M={}, p={})",
            self.conductor(),
            self.prime(),
            other.conductor(),
            other.prime()
        );
    }

    /// Fails unless `n` divides the conductor.
    pub fn require_root_order(&self, n: u64) -> Result<()> {
        if n == 0 || self.conductor() % n != 0 {
            return Err(Error::ConductorTooSmall {
                needed: n,
                conductor: self.conductor(),
            });
        }
        Ok(())
    }
}

impl PartialEq for CycloRing {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for CycloRing {}

impl Hash for CycloRing {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.prime().hash(state);
    }
}

impl fmt::Debug for CycloRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[1/{}][ζ_{}]", self.prime(), self.conductor())
    }
}

fn build_zeta_table(modulus: &IntPolynomial, m: usize, degree: usize) -> Vec<Vec<(usize, i64)>> {
    let tail = modulus.tail_terms_i64();
    let mut table = Vec::with_capacity(m);
    let mut current = vec![0i64; degree];
    for k in 0..m {
        if k < degree {
            current = vec![0; degree];
            current[k] = 1;
        } else {
            // X^k = X · X^(k-1); the overflow into degree `degree` is
            // rewritten with X^degree = -(tail of Φ_M).
            let top = current[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&current[..(degree - 1)]);
            if top != 0 {
                for &(i, c) in &tail {
                    next[i] = next[i]
                        .checked_sub(top.checked_mul(c).expect("zeta table overflow"))
                        .expect("zeta table overflow");
                }
            }
            current = next;
        }
        table.push(
            current
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        );
    }
    table
}

/// An element of a [`CycloRing`] in the power basis `1, ζ, …, ζ^(φ(M)-1)`.
///
/// Stored as integer numerators over one shared denominator `p^den`,
/// normalized so that `p` does not divide every numerator when `den > 0`.
#[derive(Clone)]
pub struct CycloElem {
    ring: CycloRing,
    num: Vec<BigInt>,
    den: u32,
}

impl CycloElem {
    fn normalized(ring: CycloRing, num: Vec<BigInt>, den: u32) -> Self {
        let mut x = CycloElem { ring, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den == 0 {
            return;
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = 0;
            return;
        }
        let p = BigInt::from(self.ring.prime());
        while self.den > 0 && self.num.iter().all(|c| c.is_multiple_of(&p)) {
            for c in self.num.iter_mut() {
                *c /= &p;
            }
            self.den -= 1;
        }
    }

    pub fn ring(&self) -> &CycloRing {
        &self.ring
    }

    /// Power-basis coordinates in `Z[1/p]`.
    pub fn coeffs(&self) -> Vec<LocalizedInt> {
        let p = self.ring.prime();
        self.num
            .iter()
            .map(|c| LocalizedInt::new(c.clone(), self.den, p))
            .collect()
    }

    pub fn coeff(&self, i: usize) -> LocalizedInt {
        LocalizedInt::new(self.num[i].clone(), self.den, self.ring.prime())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den == 0 && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in `Z[1/p]`.
    pub fn is_constant(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn constant_part(&self) -> LocalizedInt {
        self.coeff(0)
    }

    fn scale_numerators(&self, factor: &BigInt, extra_den: u32) -> CycloElem {
        CycloElem::normalized(
            self.ring.clone(),
            self.num.iter().map(|c| c * factor).collect(),
            self.den + extra_den,
        )
    }

    /// Multiplication by an element of `Z[1/p]`.
    pub fn scale(&self, c: &LocalizedInt) -> CycloElem {
        assert_eq!(c.prime(), self.ring.prime(), "inverted primes differ");
        self.scale_numerators(c.numerator(), c.denom_exp())
    }

    /// Multiplication by `p^k` for signed `k`.
    pub fn mul_prime_power(&self, k: i64) -> CycloElem {
        if k >= 0 {
            self.scale_numerators(&BigInt::from(self.ring.prime()).pow(k as u32), 0)
        } else {
            CycloElem::normalized(self.ring.clone(), self.num.clone(), self.den + (-k) as u32)
        }
    }

    /// Multiplication by `ζ^k`: a permutation of the `X^M - 1` lift followed
    /// by one reduction.
    pub fn mul_zeta_power(&self, k: i64) -> CycloElem {
        let mut acc = ZetaSum::new(&self.ring);
        acc.add_scaled(self, k);
        acc.finish()
    }

    /// Image under the automorphism `ζ ↦ ζ^t`.
    pub fn galois_conjugate(&self, t: i64) -> Result<CycloElem> {
        let m = self.ring.conductor();
        let t = t.rem_euclid(m as i64) as u64;
        if gcd(t, m) != 1 {
            return Err(Error::NotCoprime {
                value: t as i64,
                modulus: m,
            });
        }
        Ok(self.galois_unchecked(t))
    }

    fn galois_unchecked(&self, t: u64) -> CycloElem {
        if self.is_constant() {
            return self.clone();
        }
        let m = self.ring.conductor();
        let mut acc = ZetaSum::with_den(&self.ring, self.den);
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc.acc[((j as u64 * t) % m) as usize] += c;
            }
        }
        acc.finish()
    }

    /// `∏_{t ≠ 1} σ_t(x)`, so that `x · adjugate(x) = norm(x)`.
    fn adjugate(&self) -> CycloElem {
        let mut acc = self.ring.one();
        for &t in self.ring.galois_units() {
            if t % self.ring.conductor() == 1 % self.ring.conductor() {
                continue;
            }
            acc = &acc * &self.galois_unchecked(t);
        }
        acc
    }

    /// Field norm down to `Z[1/p]`: the product of all Galois conjugates.
    ///
    /// # Panics
    /// If the product has a nonzero coefficient outside degree 0, which
    /// can only come from an arithmetic bug.
    pub fn norm(&self) -> LocalizedInt {
        if self.is_constant() {
            return self.constant_part().pow(self.ring.degree() as u32);
        }
        let prod = self * &self.adjugate();
        assert!(
            prod.is_constant(),
            "norm of {self:?} left the base ring: {prod:?}"
        );
        prod.constant_part()
    }

    /// Units of `Z[ζ_M][1/p]` are exactly the elements of norm `±p^k`.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.norm().is_unit()
    }

    /// `norm(x)^{-1} · ∏_{t≠1} σ_t(x)`.
    pub fn inverse(&self) -> Result<CycloElem> {
        if self.is_constant() {
            let inv = self.constant_part().inverse()?;
            return Ok(self.ring.from_localized(&inv));
        }
        let adj = self.adjugate();
        let norm = self * &adj;
        if !norm.is_constant() {
            panic!("norm of {self:?} left the base ring: {norm:?}");
        }
        let inv = norm.constant_part().inverse()?;
        Ok(adj.scale(&inv))
    }

    /// Image under `ζ_M ↦ ζ_{M'}^{M'/M}`.
    pub fn lift_conductor(&self, new_conductor: u64) -> Result<CycloElem> {
        let m = self.ring.conductor();
        if new_conductor == 0 || new_conductor % m != 0 {
            return Err(Error::InvalidArgument(format!(
                "conductor {m} does not divide {new_conductor}"
            )));
        }
        let target = CycloRing::new(new_conductor, self.ring.prime())?;
        Ok(self.lift_into(&target))
    }

    /// As [`lift_conductor`](Self::lift_conductor) into an existing ring.
    pub fn lift_into(&self, target: &CycloRing) -> CycloElem {
        let m = self.ring.conductor();
        assert_eq!(target.conductor() % m, 0, "conductor does not divide target");
        assert_eq!(target.prime(), self.ring.prime(), "inverted primes differ");
        let step = (target.conductor() / m) as usize;
        let mut acc = ZetaSum::with_den(target, self.den);
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc.acc[j * step] += c;
            }
        }
        acc.finish()
    }

    pub fn pow(&self, mut e: u32) -> CycloElem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Matrix of `y ↦ x·y` on the power basis, columns = images of `ζ^j`.
    pub fn multiplication_matrix(&self) -> RingMatrix<LocalizedInt> {
        let d = self.ring.degree();
        let images: Vec<Vec<LocalizedInt>> = (0..d)
            .map(|j| self.mul_zeta_power(j as i64).coeffs())
            .collect();
        RingMatrix::from_fn(d, d, |i, j| images[j][i].clone())
    }

    /// Coefficients as `numerator/p^e` strings, constant term first.
    pub fn to_report_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.to_report_string()).collect()
    }

    fn divide_by_base(&self, d: &LocalizedInt) -> Result<CycloElem> {
        if d.numerator().is_zero() {
            return Err(Error::DivisionByZero);
        }
        // d = ±p^j·rest / p^f
        let p = BigInt::from(self.ring.prime());
        let mut rest = d.numerator().clone();
        let mut j = 0;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            j += 1;
        }
        let scale = p.pow(d.denom_exp());
        let mut num = Vec::with_capacity(self.num.len());
        for c in &self.num {
            let (q, r) = c.div_rem(&rest);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            num.push(q * &scale);
        }
        Ok(CycloElem::normalized(self.ring.clone(), num, self.den + j))
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElem {}

impl Hash for CycloElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        self.den.hash(state);
        self.num.hash(state);
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.ring.prime();
        let mut first = true;
        if self.den > 0 {
            write!(f, "(")?;
        }
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "ζ")?,
                (1, false) => write!(f, "{mag}ζ")?,
                (_, true) => write!(f, "ζ^{i}")?,
                (_, false) => write!(f, "{mag}ζ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.den > 0 {
            write!(f, ")/{}^{}", p, self.den)?;
        }
        Ok(())
    }
}

impl Add for &CycloElem {
    type Output = CycloElem;

    fn add(self, rhs: &CycloElem) -> CycloElem {
        self.ring.assert_same(&rhs.ring);
        let p = BigInt::from(self.ring.prime());
        let den = self.den.max(rhs.den);
        let sa = p.pow(den - self.den);
        let sb = p.pow(den - rhs.den);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| match (a.is_zero(), b.is_zero()) {
                (true, true) => BigInt::zero(),
                (false, true) => a * &sa,
                (true, false) => b * &sb,
                (false, false) => a * &sa + b * &sb,
            })
            .collect();
        CycloElem::normalized(self.ring.clone(), num, den)
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;

    fn sub(self, rhs: &CycloElem) -> CycloElem {
        self + &(-rhs)
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;

    fn neg(self) -> CycloElem {
        CycloElem {
            ring: self.ring.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den,
        }
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;

    fn mul(self, rhs: &CycloElem) -> CycloElem {
        self.ring.assert_same(&rhs.ring);
        if rhs.is_constant() {
            return self.scale_numerators(&rhs.num[0], rhs.den);
        }
        if self.is_constant() {
            return rhs.scale_numerators(&self.num[0], self.den);
        }
        let m = self.ring.conductor() as usize;
        let mut acc = ZetaSum::with_den(&self.ring, self.den + rhs.den);
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    acc.acc[(i + j) % m] += a * b;
                }
            }
        }
        acc.finish()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: CycloElem) -> CycloElem {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

impl RingElement for CycloElem {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }
    fn one_like(&self) -> Self {
        self.ring.one()
    }
    fn is_zero_elem(&self) -> bool {
        CycloElem::is_zero(self)
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

/// A prepared divisor: `x / d = x · adjugate(d) / norm(d)`.
pub struct CycloDivisor {
    adjugate: Option<CycloElem>,
    norm: LocalizedInt,
}

impl ExactDivision for CycloElem {
    type Divisor = CycloDivisor;

    fn prepare_divisor(&self) -> Result<CycloDivisor> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_constant() {
            return Ok(CycloDivisor {
                adjugate: None,
                norm: self.constant_part(),
            });
        }
        let adjugate = self.adjugate();
        let prod = self * &adjugate;
        assert!(prod.is_constant(), "norm left the base ring");
        Ok(CycloDivisor {
            adjugate: Some(adjugate),
            norm: prod.constant_part(),
        })
    }

    fn div_exact(&self, d: &CycloDivisor) -> Result<CycloElem> {
        match &d.adjugate {
            None => self.divide_by_base(&d.norm),
            Some(adj) => (self * adj).divide_by_base(&d.norm),
        }
    }
}

/// Accumulator for sums of the form `Σ x_i · ζ^{k_i}`: terms are added in
/// `Z[1/p][X]/(X^M - 1)` and reduced modulo `Φ_M` once, in [`finish`](Self::finish).
pub struct ZetaSum {
    ring: CycloRing,
    acc: Vec<BigInt>,
    den: u32,
}

impl ZetaSum {
    pub fn new(ring: &CycloRing) -> Self {
        Self::with_den(ring, 0)
    }

    fn with_den(ring: &CycloRing, den: u32) -> Self {
        ZetaSum {
            ring: ring.clone(),
            acc: vec![BigInt::zero(); ring.conductor() as usize],
            den,
        }
    }

    fn slot(&self, k: i64) -> usize {
        k.rem_euclid(self.ring.conductor() as i64) as usize
    }

    fn raise_den(&mut self, den: u32) {
        if den > self.den {
            let f = BigInt::from(self.ring.prime()).pow(den - self.den);
            for c in self.acc.iter_mut() {
                if !c.is_zero() {
                    *c *= &f;
                }
            }
            self.den = den;
        }
    }

    /// Adds `c · ζ^k` for an integer `c`.
    pub fn add_integer_zeta(&mut self, c: &BigInt, k: i64) {
        let s = self.slot(k);
        if self.den == 0 {
            self.acc[s] += c;
        } else {
            self.acc[s] += c * BigInt::from(self.ring.prime()).pow(self.den);
        }
    }

    /// Adds `ζ^k`.
    pub fn add_zeta(&mut self, k: i64) {
        let s = self.slot(k);
        if self.den == 0 {
            self.acc[s] += 1;
        } else {
            self.acc[s] += BigInt::from(self.ring.prime()).pow(self.den);
        }
    }

    /// Adds `x · ζ^k`.
    pub fn add_scaled(&mut self, x: &CycloElem, k: i64) {
        self.ring.assert_same(&x.ring);
        self.raise_den(x.den);
        let m = self.ring.conductor() as usize;
        let shift = self.slot(k);
        let factor = (x.den < self.den)
            .then(|| BigInt::from(self.ring.prime()).pow(self.den - x.den));
        for (j, c) in x.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = (j + shift) % m;
            match &factor {
                None => self.acc[s] += c,
                Some(f) => self.acc[s] += c * f,
            }
        }
    }

    pub fn finish(self) -> CycloElem {
        let d = self.ring.degree();
        let mut acc = self.acc;
        let mut num: Vec<BigInt> = acc.drain(..d).collect();
        for (k, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, a) in &self.ring.0.zeta_table[k + d] {
                match a {
                    1 => num[i] += &c,
                    -1 => num[i] -= &c,
                    _ => num[i] += &c * a,
                }
            }
        }
        CycloElem::normalized(self.ring, num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(m: u64, p: u64) -> CycloRing {
        CycloRing::new(m, p).unwrap()
    }

    #[test]
    fn zeta_relations() {
        let r4 = ring(4, 2);
        assert_eq!(r4.zeta_power(2), r4.from_integer(-1));
        assert_eq!(r4.zeta_power(0), r4.one());
        assert_eq!(r4.zeta_power(-1), r4.zeta_power(3));
        let r3 = ring(3, 2);
        assert_eq!(&r3.zeta_power(1) + &r3.zeta_power(2), r3.from_integer(-1));
        assert_eq!(&r4.zeta_power(1) * &r4.zeta_power(3), r4.one());
        assert_eq!(&(&r4.zeta_power(1) - &r4.one()) + &r4.one(), r4.zeta_power(1));
    }

    #[test]
    fn norms_from_hand_expansion() {
        let r4 = ring(4, 2);
        let z = r4.zeta_power(1);
        assert_eq!((&z - &r4.one()).norm(), LocalizedInt::from_integer(2, 2));
        let r3 = ring(3, 2);
        let w = &r3.zeta_power(1) - &r3.zeta_power(2);
        assert_eq!(w.norm(), LocalizedInt::from_integer(3, 2));
        assert_eq!(r3.one().norm(), LocalizedInt::one(2));
    }

    #[test]
    fn units_and_inverses() {
        let r4 = ring(4, 2);
        let z = r4.zeta_power(1);
        let zm1 = &z - &r4.one();
        assert!(zm1.is_unit());
        let expected = (&(-&z) - &r4.one()).mul_prime_power(-1);
        assert_eq!(zm1.inverse().unwrap(), expected);
        assert_eq!(z.inverse().unwrap(), r4.zeta_power(3));
        let r3 = ring(3, 2);
        let zm1 = &r3.zeta_power(1) - &r3.one();
        assert!(!zm1.is_unit());
        assert_eq!(zm1.inverse(), Err(Error::NotUnit));
        assert!(!r3.zero().is_unit());
    }

    #[test]
    fn galois_action() {
        let r4 = ring(4, 2);
        let z = r4.zeta_power(1);
        assert_eq!(z.galois_conjugate(3).unwrap(), -&z);
        assert_eq!(z.galois_conjugate(1).unwrap(), z);
        assert!(z.galois_conjugate(2).is_err());
    }

    #[test]
    fn lifting_between_conductors() {
        let r2 = ring(2, 2);
        let minus_one = r2.zeta_power(1);
        assert_eq!(minus_one, r2.from_integer(-1));
        let lifted = minus_one.lift_conductor(4).unwrap();
        assert_eq!(lifted, ring(4, 2).zeta_power(2));
        assert_eq!(r2.one().lift_conductor(12).unwrap(), ring(12, 2).one());
        assert!(r2.one().lift_conductor(3).is_err());
        let r3 = ring(3, 3);
        assert_eq!(r3.zeta_power(1).lift_conductor(9).unwrap(), ring(9, 3).zeta_power(3));
    }

    #[test]
    fn conductor_one_is_the_base_ring() {
        let r1 = ring(1, 5);
        assert_eq!(r1.degree(), 1);
        assert_eq!(r1.zeta_power(7), r1.one());
        assert!(r1.from_integer(25).is_unit());
        assert!(!r1.from_integer(10).is_unit());
    }

    #[test]
    fn exact_division_by_prepared_divisor() {
        let r = ring(8, 3);
        let a = r.from_zeta_poly(&[1, 2, 0, -1]);
        let b = r.from_zeta_poly(&[3, 0, 1]);
        let prod = &a * &b;
        let d = b.prepare_divisor().unwrap();
        assert_eq!(prod.div_exact(&d).unwrap(), a);
        let c = r.from_integer(6);
        let prod = &a * &c;
        assert_eq!(prod.div_exact(&c.prepare_divisor().unwrap()).unwrap(), a);
    }

    #[test]
    fn denominators_are_shared_and_normalized() {
        let r = ring(4, 2);
        let half = r.one().mul_prime_power(-1);
        assert_eq!(&half + &half, r.one());
        let x = &r.zeta_power(1).mul_prime_power(-2) + &half;
        assert_eq!(x.coeffs()[0], LocalizedInt::new(1, 1, 2));
        assert_eq!(x.coeffs()[1], LocalizedInt::new(1, 2, 2));
        assert_eq!(x.to_report_strings(), vec!["1/2^1", "1/2^2"]);
    }

    #[test]
    fn multiplication_matrix_determinant_is_norm() {
        let r = ring(5, 2);
        let x = r.from_zeta_poly(&[2, -1, 0, 3]);
        let det = crate::ring::bareiss_determinant(&x.multiplication_matrix()).unwrap();
        assert_eq!(det, x.norm());
    }
}
