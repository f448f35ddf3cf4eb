//! Characters of `(Z/p^r)^×` and Gauss sums.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;

use crate::arith::{gcd, is_prime, lcm, mod_inverse, mod_pow, pow_u64};
use crate::error::{Error, Result};
use crate::report::Check;
use crate::ring::{CycloElem, CycloRing, ZetaSum};

/// Smallest conductor containing the values of every character mod `p^r`
/// together with every `p^r`-th root of unity.
pub fn value_conductor(p: u64, r: u32) -> u64 {
    if p == 2 {
        pow_u64(2, r).max(4)
    } else {
        pow_u64(p, r) * (p - 1)
    }
}

/// `(Z/p^r)^×` as a product of cyclic groups with explicit generators and a
/// discrete-log table.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitGroupStructure {
    p: u64,
    r: u32,
    modulus: u64,
    generators: Vec<(u64, u64)>,
    dlog: Vec<Option<Vec<u64>>>,
}

fn mult_order(g: u64, n: u64) -> u64 {
    let mut x = g % n;
    let mut k = 1;
    while x != 1 {
        x = x * g % n;
        k += 1;
    }
    k
}

impl UnitGroupStructure {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidArgument("modulus p^0 = 1 has no unit group to describe".into()));
        }
        let n = pow_u64(p, r);
        let phi = n / p * (p - 1);
        let generators = if p == 2 {
            match r {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(n - 1, 2), (5, n / 4)],
            }
        } else {
            let g = (2..n)
                .find(|&g| g % p != 0 && mult_order(g, n) == phi)
                .expect("odd prime powers have primitive roots");
            vec![(g, phi)]
        };
        let mut dlog: Vec<Option<Vec<u64>>> = vec![None; n as usize];
        let mut exps = vec![0u64; generators.len()];
        loop {
            let t = generators
                .iter()
                .zip(&exps)
                .fold(1u64, |acc, (&(g, _), &k)| acc * mod_pow(g, k, n) % n);
            dlog[(t % n) as usize].get_or_insert_with(|| exps.clone());
            // Odometer step over all exponent tuples.
            let Some(j) = (0..exps.len()).rev().find(|&j| exps[j] + 1 < generators[j].1) else {
                break;
            };
            exps[j] += 1;
            exps[j + 1..].iter_mut().for_each(|k| *k = 0);
        }
        let count = dlog.iter().filter(|d| d.is_some()).count() as u64;
        if count != phi {
            return Err(Error::InvalidArgument(format!(
                "generators {generators:?} span {count} of {phi} units mod {n}"
            )));
        }
        Ok(UnitGroupStructure {
            p,
            r,
            modulus: n,
            generators,
            dlog,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(residue, order)` pairs.
    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.modulus / self.p * (self.p - 1)
    }

    /// Exponent of the group (lcm of generator orders).
    pub fn exponent(&self) -> u64 {
        self.generators.iter().fold(1, |acc, &(_, o)| lcm(acc, o))
    }

    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (1..self.modulus).filter(move |t| t % self.p != 0)
    }

    /// Exponents of `t` on the generators.
    pub fn discrete_log(&self, t: i64) -> Result<&[u64]> {
        let r = t.rem_euclid(self.modulus as i64) as u64;
        self.dlog[r as usize].as_deref().ok_or(Error::DivisibleByPrime {
            value: t,
            prime: self.p,
        })
    }
}

/// A character `(Z/p^r)^× → k^×`, determined by `χ(g_j) = ζ^{(M/o_j)·k_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    structure: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    ring: CycloRing,
}

impl Character {
    pub fn new(structure: &Arc<UnitGroupStructure>, ring: &CycloRing, exponents: Vec<u64>) -> Result<Self> {
        ring.require_root_order(structure.exponent())?;
        if exponents.len() != structure.generators.len()
            || exponents.iter().zip(&structure.generators).any(|(&k, &(_, o))| k >= o)
        {
            return Err(Error::InvalidArgument(format!(
                "exponents {exponents:?} for generators {:?}",
                structure.generators
            )));
        }
        Ok(Character {
            structure: structure.clone(),
            exponents,
            ring: ring.clone(),
        })
    }

    pub fn trivial(structure: &Arc<UnitGroupStructure>, ring: &CycloRing) -> Result<Self> {
        Self::new(structure, ring, vec![0; structure.generators.len()])
    }

    pub fn structure(&self) -> &UnitGroupStructure {
        &self.structure
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn ring(&self) -> &CycloRing {
        &self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.structure.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// `k` with `χ(t) = ζ_M^k`, reduced into `[0, M)`.
    pub fn value_exponent(&self, t: u64) -> Result<i64> {
        let logs = self.structure.discrete_log(t as i64)?;
        let m = self.ring.conductor() as u128;
        let k = logs
            .iter()
            .zip(&self.exponents)
            .zip(&self.structure.generators)
            .fold(0u128, |acc, ((&d, &k), &(_, o))| {
                (acc + (d as u128 * k as u128 % o as u128) * (m / o as u128)) % m
            });
        Ok(k as i64)
    }

    pub fn eval(&self, t: i64) -> Result<CycloElem> {
        let r = t.rem_euclid(self.modulus() as i64) as u64;
        if r % self.structure.p == 0 {
            return Err(Error::DivisibleByPrime {
                value: t,
                prime: self.structure.p,
            });
        }
        Ok(self.ring.zeta_power(self.value_exponent(r)?))
    }

    pub fn is_primitive(&self) -> bool {
        let s = &self.structure;
        if s.r == 1 {
            return !self.is_trivial();
        }
        let kernel_gen = 1 + pow_u64(s.p, s.r - 1);
        self.value_exponent(kernel_gen).expect("1 + p^(r-1) is a unit") != 0
    }

    /// For imprimitive `χ` mod `p^r`, `r ≥ 2`: the character mod `p^{r-1}`
    /// through which it factors.
    pub fn reduce(&self) -> Result<Character> {
        let s = &self.structure;
        if s.r < 2 || self.is_primitive() {
            return Err(Error::InvalidArgument("only imprimitive characters mod p^r, r ≥ 2, reduce".into()));
        }
        let lower = Arc::new(UnitGroupStructure::new(s.p, s.r - 1)?);
        let m = self.ring.conductor();
        let exponents = lower
            .generators
            .iter()
            .map(|&(g, o)| {
                let k = self.value_exponent(g)? as u64;
                // χ(g)^o = 1, so M/o divides k.
                Ok(k / (m / o))
            })
            .collect::<Result<Vec<_>>>()?;
        Character::new(&lower, &self.ring, exponents)
    }
}

pub fn enumerate_characters(structure: &UnitGroupStructure, ring: &CycloRing) -> Result<Vec<Character>> {
    ring.require_root_order(structure.exponent())?;
    let s = Arc::new(structure.clone());
    let mut out = vec![vec![]];
    for &(_, o) in &structure.generators {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                (0..o).map(move |k| {
                    let mut e = prefix.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out.into_iter().map(|e| Character::new(&s, ring, e)).collect()
}

/// An additive character `τ : Z/N → k^×`.
#[derive(Clone, Debug, PartialEq)]
pub enum Tau {
    /// `ε_u(t) = ζ_N^{tu}`.
    Eps(u64),
    /// `τ(t) = ζ_M^{e_t}`, one exponent per residue mod `N`.
    ZetaExponents(Vec<i64>),
}

/// `G_N(χ, τ) = Σ_{t ∈ (Z/N)^×} χ(t) τ(t)`.
pub fn gauss_sum(chi: &Character, tau: &Tau) -> Result<CycloElem> {
    let ring = &chi.ring;
    let n = chi.modulus();
    let m = ring.conductor();
    if let Tau::Eps(_) = tau {
        ring.require_root_order(n)?;
    }
    if let Tau::ZetaExponents(e) = tau {
        if e.len() as u64 != n {
            return Err(Error::ShapeMismatch(format!("{} values of τ on Z/{n}", e.len())));
        }
    }
    let mut acc = ZetaSum::new(ring);
    for t in chi.structure.units() {
        let tau_exp = match tau {
            Tau::Eps(u) => ((t as u128 * *u as u128 % n as u128) * (m / n) as u128) as i64,
            Tau::ZetaExponents(e) => e[t as usize],
        };
        acc.add_zeta(chi.value_exponent(t)? + tau_exp);
    }
    Ok(acc.finish())
}

/// Gauss sum of an imprimitive character against a non-injective `ε_u`,
/// evaluated by descending to smaller moduli; the bottom case mod `p` is the
/// closed form for the trivial character.
pub fn gauss_sum_by_descent(chi: &Character, u: u64) -> Result<CycloElem> {
    let s = chi.structure();
    let p = s.p;
    let ring = &chi.ring;
    if s.r == 1 && chi.is_trivial() {
        return Ok(if u % p == 0 {
            ring.from_integer(p as i64 - 1)
        } else {
            ring.from_integer(-1)
        });
    }
    if s.r >= 2 && !chi.is_primitive() && u % p == 0 {
        let lower = gauss_sum_by_descent(&chi.reduce()?, u / p % (s.modulus / p))?;
        return Ok(lower.mul_prime_power(1));
    }
    gauss_sum(chi, &Tau::Eps(u))
}

fn witness(x: &CycloElem) -> serde_json::Value {
    json!(x.to_report_strings())
}

/// Checks every identity that applies to `(χ, u)` for all characters mod `p^r`
/// and all `u ∈ [0, p^r)`.
pub fn check_gauss_identities(p: u64, r: u32, ring: &CycloRing) -> Result<Vec<Check>> {
    let structure = UnitGroupStructure::new(p, r)?;
    ring.require_root_order(structure.modulus())?;
    let characters = enumerate_characters(&structure, ring)?;
    let n = structure.modulus();
    let per_char: Vec<Vec<Check>> = characters
        .par_iter()
        .map(|chi| check_character(chi, n, p, r))
        .collect::<Result<_>>()?;
    Ok(per_char.into_iter().flatten().collect())
}

fn check_character(chi: &Character, n: u64, p: u64, r: u32) -> Result<Vec<Check>> {
    let ring = chi.ring();
    let subject = |u: u64| format!("N={n} chi={:?} u={u}", chi.exponents());
    let mut checks = Vec::new();
    let g1 = gauss_sum(chi, &Tau::Eps(1))?;
    let primitive = chi.is_primitive();

    let total = chi
        .structure()
        .units()
        .map(|t| chi.eval(t as i64))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .fold(ring.zero(), |acc, x| &acc + x);
    if !chi.is_trivial() {
        checks.push(Check::new(
            "character-sum-vanishes",
            format!("N={n} chi={:?}", chi.exponents()),
            total.is_zero(),
            witness(&total),
        ));
    }
    let multiplicative = chi.structure().units().all(|s| {
        chi.structure().units().all(|t| {
            chi.eval((s * t % n) as i64).unwrap() == &chi.eval(s as i64).unwrap() * &chi.eval(t as i64).unwrap()
        })
    });
    checks.push(Check::new(
        "character-multiplicative",
        format!("N={n} chi={:?}", chi.exponents()),
        multiplicative,
        serde_json::Value::Null,
    ));

    for u in 0..n {
        let g = gauss_sum(chi, &Tau::Eps(u))?;
        let coprime = gcd(u, n) == 1;
        if primitive && coprime {
            checks.push(Check::new("primitive-unit", subject(u), g.is_unit(), witness(&g)));
            let u_inv = mod_inverse(u, n).expect("u is coprime to N");
            // χ(u)^{-1} = χ(u^{-1})
            let rhs = &chi.eval(u_inv as i64)? * &g1;
            checks.push(Check::new("primitive-twist", subject(u), g == rhs, witness(&g)));
        } else if primitive {
            checks.push(Check::new("primitive-vanishes", subject(u), g.is_zero(), witness(&g)));
        } else if r == 1 {
            let expected = if coprime { -1 } else { p as i64 - 1 };
            checks.push(Check::new(
                "trivial-mod-p",
                subject(u),
                g == ring.from_integer(expected),
                witness(&g),
            ));
        } else if coprime {
            checks.push(Check::new("imprimitive-vanishes", subject(u), g.is_zero(), witness(&g)));
        } else {
            let reduced = chi.reduce()?;
            let lower = gauss_sum(&reduced, &Tau::Eps(u / p))?;
            let ok = g == lower.mul_prime_power(1);
            let descent = gauss_sum_by_descent(chi, u)?;
            checks.push(Check::new("imprimitive-recursion", subject(u), ok, witness(&g)));
            checks.push(Check::new("descent-agrees", subject(u), descent == g, witness(&descent)));
        }
    }
    Ok(checks)
}

/// The Gauss sum coefficients as integers (the value ring has no inverted
/// denominators in a Gauss sum).
pub fn integral_coeffs(x: &CycloElem) -> Vec<BigInt> {
    x.coeffs().iter().map(|c| c.numerator().clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_for(p: u64, r: u32) -> CycloRing {
        CycloRing::new(value_conductor(p, r), p).unwrap()
    }

    #[test]
    fn generators() {
        let s = UnitGroupStructure::new(3, 2).unwrap();
        assert_eq!(s.generators(), &[(2, 6)]);
        let s = UnitGroupStructure::new(2, 2).unwrap();
        assert_eq!(s.generators(), &[(3, 2)]);
        let s = UnitGroupStructure::new(2, 3).unwrap();
        assert_eq!(s.generators(), &[(7, 2), (5, 2)]);
        let s = UnitGroupStructure::new(2, 1).unwrap();
        assert!(s.generators().is_empty());
        assert_eq!(s.discrete_log(1).unwrap(), &[] as &[u64]);
        for (p, r) in [(2, 4), (2, 5), (3, 3), (5, 2), (7, 2)] {
            let s = UnitGroupStructure::new(p, r).unwrap();
            assert_eq!(s.units().count() as u64, s.order());
            assert!(s.units().all(|t| s.discrete_log(t as i64).is_ok()));
        }
    }

    #[test]
    fn character_counts_and_values() {
        for (p, r, count) in [(2, 1, 1), (3, 1, 2), (2, 3, 4), (3, 3, 18), (5, 2, 20)] {
            let s = UnitGroupStructure::new(p, r).unwrap();
            assert_eq!(enumerate_characters(&s, &ring_for(p, r)).unwrap().len(), count);
        }
        let s = UnitGroupStructure::new(3, 1).unwrap();
        let ring = ring_for(3, 1);
        let chars = enumerate_characters(&s, &ring).unwrap();
        assert!(chars[0].is_trivial() && !chars[0].is_primitive());
        assert_eq!(chars[1].eval(2).unwrap(), ring.from_integer(-1));
        assert!(chars[1].is_primitive());
        assert!(chars.iter().all(|c| c.eval(1).unwrap().is_one()));
        assert!(matches!(chars[1].eval(3), Err(Error::DivisibleByPrime { .. })));
        let small = CycloRing::new(3, 3).unwrap();
        assert!(enumerate_characters(&s, &small).is_err());
    }

    #[test]
    fn primitivity_mod_9_matches_factorization() {
        // χ is imprimitive iff it is constant on residue classes mod 3.
        let s = UnitGroupStructure::new(3, 2).unwrap();
        let ring = ring_for(3, 2);
        for chi in enumerate_characters(&s, &ring).unwrap() {
            let factors = s.units().all(|t| {
                s.units()
                    .filter(|u| u % 3 == t % 3)
                    .all(|u| chi.eval(u as i64).unwrap() == chi.eval(t as i64).unwrap())
            });
            assert_eq!(chi.is_primitive(), !factors, "{:?}", chi.exponents());
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let ring = ring_for(3, 1);
        let s = Arc::new(UnitGroupStructure::new(3, 1).unwrap());
        let triv = Character::trivial(&s, &ring).unwrap();
        assert_eq!(gauss_sum(&triv, &Tau::Eps(1)).unwrap(), ring.from_integer(-1));
        assert_eq!(gauss_sum(&triv, &Tau::Eps(0)).unwrap(), ring.from_integer(2));
        let quad = Character::new(&s, &ring, vec![1]).unwrap();
        // ζ_3 - ζ_3^2 in conductor 6 is ζ^2 - ζ^4.
        let expected = &ring.zeta_power(2) - &ring.zeta_power(4);
        assert_eq!(gauss_sum(&quad, &Tau::Eps(1)).unwrap(), expected);
        let taus = Tau::ZetaExponents(vec![0, 2, 4]);
        assert_eq!(gauss_sum(&quad, &taus).unwrap(), expected);
    }

    #[test]
    fn identities_hold_for_small_moduli() {
        for (p, r) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let checks = check_gauss_identities(p, r, &ring_for(p, r)).unwrap();
            let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "{failed:?}");
        }
    }
}
