//! Strong diagonalizability of group algebras over `Z/m`: the cyclotomic
//! decision, explicit Vandermonde splittings, idempotent atoms, and a
//! brute-force idempotent count used as an independent oracle.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};
use crate::ring::{cyclotomic_polynomial, ModElem, ModRing, RingElement, RingMatrix};

/// Default bound on the number of elements a brute-force search may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// The budget, overridden by the `CYCLO_BUDGET` environment variable.
pub fn budget_from_env() -> Result<u128> {
    match std::env::var("CYCLO_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("CYCLO_BUDGET={s:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagFailure {
    NNotInvertible,
    NoCyclotomicRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagVerdict {
    pub decision: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<DiagFailure>,
}

fn check_args(n: u64, m: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if m < 2 {
        return Err(Error::InvalidArgument("modulus must be at least 2".into()));
    }
    Ok(())
}

/// Whether `Z/m[Z/n]` is strongly diagonalizable: `n` invertible mod `m` and
/// `Φ_n` has a root mod `m`. The witness is the smallest root.
pub fn decide_diag_cyclic(n: u64, m: u64) -> Result<DiagVerdict> {
    check_args(n, m)?;
    if gcd(n, m) != 1 {
        return Ok(DiagVerdict {
            decision: false,
            witness: None,
            reason: Some(DiagFailure::NNotInvertible),
        });
    }
    let phi = cyclotomic_polynomial(n);
    let root = (0..m).find(|&x| phi.eval_mod(x, m) == 0);
    Ok(DiagVerdict {
        decision: root.is_some(),
        witness: root,
        reason: root.is_none().then_some(DiagFailure::NoCyclotomicRoot),
    })
}

/// Decision for `⊕ Z/o_i` through the exponent `lcm(o_i)`.
pub fn decide_diag_group(orders: &[u64], m: u64) -> Result<DiagVerdict> {
    if orders.contains(&0) {
        return Err(Error::InvalidArgument("cyclic factors must have positive order".into()));
    }
    decide_diag_cyclic(group_exponent(orders), m)
}

pub fn group_exponent(orders: &[u64]) -> u64 {
    orders.iter().fold(1, |acc, &o| lcm(acc, o))
}

fn mul_poly_mod(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % m as u128;
        }
    }
    out.into_iter().map(|c| c as u64).collect()
}

/// The evaluation isomorphism `Z/m[X]/(X^n - 1) → (Z/m)^n`,
/// `f ↦ (f(ξ^i))_{0 ≤ i < n}`, together with the facts that make it one.
#[derive(Clone, Debug, PartialEq)]
pub struct VandermondeSplitting {
    pub n: u64,
    pub modulus: u64,
    pub xi: u64,
    /// Entry `(i, j)` is `ξ^{ij}`.
    pub matrix: RingMatrix<ModElem>,
    pub determinant: ModElem,
    /// `ξ^0, …, ξ^{n-1}`.
    pub roots: Vec<u64>,
}

impl VandermondeSplitting {
    /// `(f(ξ^i))_i` for `f` given by its `n` coefficients, constant first.
    pub fn evaluate(&self, f: &[u64]) -> Result<Vec<u64>> {
        if f.len() as u64 != self.n {
            return Err(Error::ShapeMismatch(format!("{} coefficients, expected {}", f.len(), self.n)));
        }
        let m = self.modulus as u128;
        Ok(self
            .roots
            .iter()
            .map(|&a| f.iter().rev().fold(0u128, |acc, &c| (acc * a as u128 + c as u128) % m) as u64)
            .collect())
    }

    /// Product in `Z/m[X]/(X^n - 1)`.
    pub fn multiply(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        let n = self.n as usize;
        let full = mul_poly_mod(f, g, self.modulus);
        let mut out = vec![0u64; n];
        for (k, c) in full.into_iter().enumerate() {
            out[k % n] = ((out[k % n] as u128 + c as u128) % self.modulus as u128) as u64;
        }
        out
    }
}

/// Builds and verifies the splitting for a root `ξ` of `Φ_n` mod `m`.
pub fn vandermonde_iso(n: u64, m: u64, xi: u64) -> Result<VandermondeSplitting> {
    check_args(n, m)?;
    let ring = ModRing::new(m)?;
    if gcd(n, m) != 1 {
        return Err(Error::SplittingFailed(format!("{n} is not invertible mod {m}")));
    }
    if cyclotomic_polynomial(n).eval_mod(xi % m, m) != 0 {
        return Err(Error::SplittingFailed(format!("{xi} is not a root of Φ_{n} mod {m}")));
    }
    let x = ring.elem(xi as i64);
    let roots: Vec<u64> = (0..n).map(|i| x.pow(i).value()).collect();
    let size = n as usize;
    let matrix = RingMatrix::from_fn(size, size, |i, j| x.pow(i as u64 * j as u64));
    let determinant = matrix.determinant()?;
    if !determinant.is_unit() {
        return Err(Error::SplittingFailed(format!(
            "Vandermonde determinant {} is not a unit mod {m}",
            determinant.value()
        )));
    }
    for i in 0..size {
        for j in 0..i {
            let d = ring.elem(roots[i] as i64).sub_ref(&ring.elem(roots[j] as i64));
            if !d.is_unit() {
                return Err(Error::SplittingFailed(format!(
                    "ξ^{i} - ξ^{j} = {} is not a unit mod {m}",
                    d.value()
                )));
            }
        }
    }
    let product = roots.iter().fold(vec![1u64], |acc, &a| {
        mul_poly_mod(&acc, &[(m - a % m) % m, 1], m)
    });
    let mut target = vec![0u64; size + 1];
    target[0] = m - 1;
    target[size] = 1;
    if product != target {
        return Err(Error::SplittingFailed(format!(
            "X^{n} - 1 ≠ ∏(X - ξ^i) mod {m}: got {product:?}"
        )));
    }
    Ok(VandermondeSplitting {
        n,
        modulus: m,
        xi: xi % m,
        matrix,
        determinant,
        roots,
    })
}

/// The nonzero atoms `∏_{e ∈ S} e · ∏_{e ∉ S} (1 - e)` over subsets `S` of the
/// input idempotents, in increasing order. Verifies orthogonality, that they
/// sum to 1, and that each input is the sum of the atoms below it.
pub fn complete_idempotent_set(m: u64, xs: &[u64]) -> Result<Vec<u64>> {
    let ring = ModRing::new(m)?;
    let es: Vec<ModElem> = xs.iter().map(|&x| ring.elem(x as i64)).collect();
    if let Some(e) = es.iter().find(|e| !e.is_idempotent()) {
        return Err(Error::NotIdempotent {
            value: e.value(),
            modulus: m,
        });
    }
    if es.len() >= 32 {
        return Err(Error::InvalidArgument("at most 31 idempotents".into()));
    }
    let one = ring.one();
    let mut atoms: Vec<(u32, ModElem)> = (0u32..1 << es.len())
        .map(|s| {
            let a = es.iter().enumerate().fold(one.clone(), |acc, (i, e)| {
                let factor = if s >> i & 1 == 1 { e.clone() } else { one.sub_ref(e) };
                acc.mul_ref(&factor)
            });
            (s, a)
        })
        .filter(|(_, a)| !a.is_zero_elem())
        .collect();
    atoms.sort_by_key(|(_, a)| a.value());

    for (i, (_, a)) in atoms.iter().enumerate() {
        for (_, b) in &atoms[..i] {
            if !a.mul_ref(b).is_zero_elem() {
                return Err(Error::SplittingFailed(format!("atoms {} and {} are not orthogonal", a.value(), b.value())));
            }
        }
    }
    let total = atoms.iter().fold(ring.zero(), |acc, (_, a)| acc.add_ref(a));
    if total != one {
        return Err(Error::SplittingFailed(format!("atoms sum to {}", total.value())));
    }
    for (i, e) in es.iter().enumerate() {
        let part = atoms
            .iter()
            .filter(|(s, _)| s >> i & 1 == 1)
            .fold(ring.zero(), |acc, (_, a)| acc.add_ref(a));
        if part != *e {
            return Err(Error::SplittingFailed(format!("{} is not a sum of atoms", e.value())));
        }
    }
    Ok(atoms.into_iter().map(|(_, a)| a.value()).collect())
}

/// Number of idempotents of `Z/m[Z/n]` by exhaustive search over all `m^n`
/// elements, refused when `m^n` exceeds `budget`.
pub fn count_idempotents_group_algebra(m: u64, n: u64, budget: u128) -> Result<u64> {
    check_args(n, m)?;
    count_idempotents_abelian(m, &[n], budget)
}

/// Number of idempotents of `Z/m[⊕ Z/o_i]` by exhaustive search.
pub fn count_idempotents_abelian(m: u64, orders: &[u64], budget: u128) -> Result<u64> {
    if m < 2 || orders.contains(&0) {
        return Err(Error::InvalidArgument("need m ≥ 2 and positive cyclic orders".into()));
    }
    let size = orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o));
    let needed = size
        .and_then(|s| u32::try_from(s).ok())
        .and_then(|s| (m as u128).checked_pow(s))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let size = size.expect("checked above") as usize;
    // sub[w * size + u] is the index of w - u, mixed radix with the last
    // factor varying fastest.
    let coords = |mut i: usize| -> Vec<u64> {
        let mut c = vec![0; orders.len()];
        for (k, &o) in orders.iter().enumerate().rev() {
            c[k] = i as u64 % o;
            i /= o as usize;
        }
        c
    };
    let index = |c: &[u64]| c.iter().zip(orders).fold(0usize, |acc, (&x, &o)| acc * o as usize + x as usize);
    let all: Vec<Vec<u64>> = (0..size).map(coords).collect();
    let sub: Vec<usize> = (0..size * size)
        .map(|k| {
            let (w, u) = (&all[k / size], &all[k % size]);
            let d: Vec<u64> = w.iter().zip(u).zip(orders).map(|((a, b), o)| (a + o - b) % o).collect();
            index(&d)
        })
        .collect();
    let mm = m as u128;
    let idempotent = |x: &[u64]| {
        (0..size).all(|w| {
            let s = (0..size).fold(0u128, |acc, u| (acc + x[u] as u128 * x[sub[w * size + u]] as u128) % mm);
            s == x[w] as u128
        })
    };
    // Split the search by the coefficient of the identity.
    Ok((0..m)
        .into_par_iter()
        .map(|c0| {
            let mut x = vec![0u64; size];
            x[0] = c0;
            let mut count = 0u64;
            loop {
                if idempotent(&x) {
                    count += 1;
                }
                let Some(j) = (1..size).rev().find(|&j| x[j] + 1 < m) else {
                    break;
                };
                x[j] += 1;
                x[j + 1..].iter_mut().for_each(|c| *c = 0);
            }
            count
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_verdicts() {
        let v = decide_diag_cyclic(4, 5).unwrap();
        assert_eq!((v.decision, v.witness), (true, Some(2)));
        let v = decide_diag_cyclic(4, 7).unwrap();
        assert_eq!((v.decision, v.reason), (false, Some(DiagFailure::NoCyclotomicRoot)));
        let v = decide_diag_cyclic(1, 9).unwrap();
        assert_eq!((v.decision, v.witness), (true, Some(1)));
        let v = decide_diag_group(&[2, 2], 6).unwrap();
        assert_eq!(v.reason, Some(DiagFailure::NNotInvertible));
        assert!(decide_diag_group(&[2, 2], 5).unwrap().decision);
        assert!(!decide_diag_group(&[4], 7).unwrap().decision);
        assert!(decide_diag_group(&[], 7).unwrap().decision);
        assert_eq!(
            serde_json::to_string(&decide_diag_cyclic(4, 7).unwrap()).unwrap(),
            r#"{"decision":false,"reason":"no-cyclotomic-root"}"#
        );
    }

    #[test]
    fn splittings() {
        let s = vandermonde_iso(4, 5, 2).unwrap();
        assert_eq!(s.matrix.row(1).iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 2, 4, 3]);
        let s = vandermonde_iso(2, 3, 2).unwrap();
        assert_eq!(s.matrix.entries().iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 1, 1, 2]);
        assert_eq!(s.determinant.value(), 1);
        let s = vandermonde_iso(1, 10, 1).unwrap();
        assert_eq!(s.matrix.entries().len(), 1);
        assert!(vandermonde_iso(4, 7, 2).is_err());
        let s = vandermonde_iso(6, 7, 3).unwrap();
        let (f, g) = ([1, 2, 0, 5, 6, 3], [4, 0, 0, 1, 2, 2]);
        let lhs = s.evaluate(&s.multiply(&f, &g)).unwrap();
        let rhs: Vec<u64> = s
            .evaluate(&f)
            .unwrap()
            .iter()
            .zip(s.evaluate(&g).unwrap())
            .map(|(a, b)| a * b % 7)
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn atoms() {
        assert_eq!(complete_idempotent_set(6, &[]).unwrap(), vec![1]);
        assert_eq!(complete_idempotent_set(6, &[0, 1]).unwrap(), vec![1]);
        assert_eq!(complete_idempotent_set(6, &[3]).unwrap(), vec![3, 4]);
        assert_eq!(
            complete_idempotent_set(6, &[2]),
            Err(Error::NotIdempotent { value: 2, modulus: 6 })
        );
    }

    #[test]
    fn idempotent_counts() {
        assert_eq!(count_idempotents_group_algebra(7, 1, DEFAULT_BUDGET).unwrap(), 2);
        assert_eq!(count_idempotents_group_algebra(5, 4, DEFAULT_BUDGET).unwrap(), 16);
        assert_eq!(count_idempotents_group_algebra(7, 4, DEFAULT_BUDGET).unwrap(), 8);
        assert_eq!(count_idempotents_abelian(5, &[2, 2], DEFAULT_BUDGET).unwrap(), 16);
        assert_eq!(count_idempotents_abelian(5, &[], DEFAULT_BUDGET).unwrap(), 2);
        assert!(matches!(
            count_idempotents_group_algebra(10, 8, 1000),
            Err(Error::BudgetExceeded { needed: 100_000_000, budget: 1000 })
        ));
    }
}
