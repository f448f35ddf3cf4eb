//! Finite abelian `p`-groups `⊕ Z/p^{e_i}`, their duals, the `Q/Z`-valued
//! pairing, and homomorphisms.
//!
//! The dual `V^♯` is presented with the same invariant factors as `V`; the
//! pairing of `v` and `l` is `Σ v_i l_i / p^{e_i}` modulo 1. Elements are
//! ordered lexicographically on coordinates and this order indexes every
//! matrix built from a group.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, pow_u64};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinAbGroup {
    p: u64,
    exponents: Vec<u32>,
}

/// An element of `V`, one residue per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElem(pub Vec<u64>);

/// An element of `V^♯`, in the same coordinates as [`GroupElem`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualElem(pub Vec<u64>);

impl FinAbGroup {
    /// The group `⊕ Z/p^{e_i}`; exponents are sorted into non-increasing order.
    pub fn new(p: u64, mut exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidGroup(format!("{p} is not prime")));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factors must be nontrivial".into()));
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        let total: u32 = exponents.iter().sum();
        if p.checked_pow(total).is_none() {
            return Err(Error::InvalidGroup("group order overflows".into()));
        }
        Ok(FinAbGroup { p, exponents })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    pub fn cyclic(p: u64, e: u32) -> Result<Self> {
        Self::new(p, if e == 0 { vec![] } else { vec![e] })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn order(&self) -> u64 {
        pow_u64(self.p, self.exponents.iter().sum())
    }

    /// `log_p` of the exponent; 0 for the trivial group.
    pub fn level(&self) -> u32 {
        self.exponents.first().copied().unwrap_or(0)
    }

    /// `p^{e_1}`, the lcm of element orders.
    pub fn exponent(&self) -> u64 {
        pow_u64(self.p, self.level())
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.exponents.iter().map(|&e| pow_u64(self.p, e)).collect()
    }

    /// Notation such as `4+2` for `Z/4 ⊕ Z/2`; the trivial group is `1`.
    pub fn notation(&self) -> String {
        if self.is_trivial() {
            return "1".into();
        }
        self.moduli()
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Parses [`notation`](Self::notation). The prime is inferred from the
    /// factors; `fallback_prime` is needed only for the trivial group.
    pub fn parse_notation(s: &str, fallback_prime: Option<u64>) -> Result<Self> {
        let s = s.trim();
        let mut p = None;
        let mut exps = Vec::new();
        if !(s.is_empty() || s == "1") {
            for part in s.split('+') {
                let m: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad cyclic order {part:?}")))?;
                let (q, e) = prime_power_decomposition(m)
                    .ok_or_else(|| Error::Parse(format!("{m} is not a prime power > 1")))?;
                if p.is_some_and(|p0| p0 != q) {
                    return Err(Error::Parse(format!("mixed primes in {s:?}")));
                }
                p = Some(q);
                exps.push(e);
            }
        }
        let p = p
            .or(fallback_prime)
            .ok_or_else(|| Error::Parse("cannot infer the prime of the trivial group".into()))?;
        Self::new(p, exps)
    }

    fn check_coords(&self, coords: &[u64]) -> Result<()> {
        if coords.len() != self.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates for a group of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        for (c, m) in coords.iter().zip(self.moduli()) {
            if *c >= m {
                return Err(Error::ShapeMismatch(format!("coordinate {c} not below {m}")));
            }
        }
        Ok(())
    }

    pub fn elem(&self, coords: Vec<u64>) -> Result<GroupElem> {
        self.check_coords(&coords)?;
        Ok(GroupElem(coords))
    }

    pub fn dual_elem(&self, coords: Vec<u64>) -> Result<DualElem> {
        self.check_coords(&coords)?;
        Ok(DualElem(coords))
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.rank()])
    }

    fn coords_at(&self, mut idx: usize) -> Vec<u64> {
        let moduli = self.moduli();
        let mut coords = vec![0; moduli.len()];
        for (c, m) in coords.iter_mut().zip(&moduli).rev() {
            *c = (idx as u64) % m;
            idx /= *m as usize;
        }
        coords
    }

    fn index_of_coords(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(self.moduli())
            .fold(0usize, |acc, (c, m)| acc * m as usize + *c as usize)
    }

    /// Element number `idx` in lexicographic order.
    pub fn element_at(&self, idx: usize) -> GroupElem {
        GroupElem(self.coords_at(idx))
    }

    pub fn dual_at(&self, idx: usize) -> DualElem {
        DualElem(self.coords_at(idx))
    }

    pub fn index_of(&self, v: &GroupElem) -> usize {
        self.index_of_coords(&v.0)
    }

    pub fn dual_index_of(&self, l: &DualElem) -> usize {
        self.index_of_coords(&l.0)
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<GroupElem> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }

    pub fn dual_elements(&self) -> Vec<DualElem> {
        (0..self.order() as usize).map(|i| self.dual_at(i)).collect()
    }

    pub fn add(&self, v: &GroupElem, w: &GroupElem) -> GroupElem {
        GroupElem(
            v.0.iter()
                .zip(&w.0)
                .zip(self.moduli())
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
        )
    }

    pub fn neg(&self, v: &GroupElem) -> GroupElem {
        GroupElem(
            v.0.iter()
                .zip(self.moduli())
                .map(|(a, m)| (m - a) % m)
                .collect(),
        )
    }

    pub fn sub(&self, v: &GroupElem, w: &GroupElem) -> GroupElem {
        self.add(v, &self.neg(w))
    }

    /// `<v, l> = Σ v_i l_i / p^{e_i}` in `Z/p^∞`.
    pub fn pairing(&self, v: &GroupElem, l: &DualElem) -> Result<PadicCircle> {
        self.check_coords(&v.0)?;
        self.check_coords(&l.0)?;
        Ok(self.pairing_unchecked(&v.0, &l.0))
    }

    pub(crate) fn pairing_unchecked(&self, v: &[u64], l: &[u64]) -> PadicCircle {
        let top = self.exponent() as u128;
        let mut acc: u128 = 0;
        for ((a, b), &e) in v.iter().zip(l).zip(&self.exponents) {
            let scale = (self.p as u128).pow(self.level() - e);
            acc = (acc + (*a as u128 * *b as u128 % top) * scale) % top;
        }
        PadicCircle::new(self.p, acc as u64, self.level())
    }

    /// Pairing of element `v_idx` with dual element `l_idx`, as the numerator
    /// of a fraction over the group exponent.
    pub(crate) fn pairing_numerator(&self, v_idx: usize, l_idx: usize) -> u64 {
        let v = self.coords_at(v_idx);
        let l = self.coords_at(l_idx);
        let top = self.exponent() as u128;
        let mut acc: u128 = 0;
        for ((a, b), &e) in v.iter().zip(&l).zip(&self.exponents) {
            let scale = (self.p as u128).pow(self.level() - e);
            acc = (acc + (*a as u128 * *b as u128 % top) * scale) % top;
        }
        acc as u64
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.moduli().iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn prime_power_decomposition(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let q = (2..=m).find(|d| m % d == 0)?;
    let mut rest = m;
    let mut e = 0;
    while rest % q == 0 {
        rest /= q;
        e += 1;
    }
    (rest == 1).then_some((q, e))
}

/// An element `a / p^s` of `Z/p^∞ ⊂ Q/Z`, normalized so that `p ∤ a` when
/// `s > 0` and `s = 0` for the zero class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PadicCircle {
    p: u64,
    numerator: u64,
    level: u32,
}

impl PadicCircle {
    pub fn new(p: u64, numerator: u64, level: u32) -> Self {
        let mut a = numerator % pow_u64(p, level);
        let mut s = level;
        while s > 0 && a % p == 0 {
            a /= p;
            s -= 1;
        }
        if a == 0 {
            s = 0;
        }
        PadicCircle {
            p,
            numerator: a,
            level: s,
        }
    }

    pub fn zero(p: u64) -> Self {
        PadicCircle {
            p,
            numerator: 0,
            level: 0,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Order of the class in `Q/Z`.
    pub fn order(&self) -> u64 {
        pow_u64(self.p, self.level)
    }

    /// Numerator over `p^level` for any `level` at least this element's own.
    pub fn numerator_at(&self, level: u32) -> u64 {
        assert!(level >= self.level, "level below the element's level");
        self.numerator * pow_u64(self.p, level - self.level)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "different primes");
        let s = self.level.max(other.level);
        let m = pow_u64(self.p, s) as u128;
        let a = (self.numerator_at(s) as u128 + other.numerator_at(s) as u128) % m;
        Self::new(self.p, a as u64, s)
    }

    pub fn neg(&self) -> Self {
        let m = self.order();
        Self::new(self.p, (m - self.numerator) % m, self.level)
    }
}

impl fmt::Display for PadicCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numerator, self.order())
        }
    }
}

/// A homomorphism `⊕_j Z/p^{e_j} → ⊕_i Z/p^{e'_i}`; column `j` of the
/// matrix is the image of the `j`-th source generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: Vec<Vec<u64>>,
}

impl GroupHom {
    /// Validates `p^{e_j} a_ij ≡ 0 (mod p^{e'_i})` and reduces the entries.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Vec<Vec<u64>>) -> Result<Self> {
        if source.prime() != target.prime() {
            return Err(Error::InvalidHom("source and target primes differ".into()));
        }
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::InvalidHom(format!(
                "matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        let p = source.prime();
        let mut reduced = matrix;
        for (i, row) in reduced.iter_mut().enumerate() {
            let ti = target.exponents()[i];
            for (j, a) in row.iter_mut().enumerate() {
                let sj = source.exponents()[j];
                *a %= pow_u64(p, ti);
                let needed = pow_u64(p, ti.saturating_sub(sj));
                if *a % needed != 0 {
                    return Err(Error::InvalidHom(format!(
                        "entry ({i},{j}) = {a} is not divisible by {needed}"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix: reduced,
        })
    }

    pub fn identity(v: &FinAbGroup) -> Self {
        let n = v.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        GroupHom {
            source: v.clone(),
            target: v.clone(),
            matrix,
        }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![0; source.rank()]; target.rank()],
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, v: &GroupElem) -> GroupElem {
        GroupElem(apply_matrix(&self.matrix, &v.0, &self.target.moduli()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::InvalidHom("composition of non-composable maps".into()));
        }
        let moduli = self.target.moduli();
        let rows = self.target.rank();
        let cols = inner.source.rank();
        let matrix = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        let m = moduli[i] as u128;
                        (0..inner.target.rank()).fold(0u128, |acc, k| {
                            (acc + self.matrix[i][k] as u128 * inner.matrix[k][j] as u128) % m
                        }) as u64
                    })
                    .collect()
            })
            .collect();
        GroupHom::new(inner.source.clone(), self.target.clone(), matrix)
    }

    /// The dual map `W^♯ → V^♯`, characterized by `<v, f^♯ l> = <f v, l>`.
    pub fn dual(&self) -> GroupHom {
        let p = self.source.prime();
        let src = self.source.exponents();
        let tgt = self.target.exponents();
        // b_ji = a_ij · p^{e_j - e'_i}, an integer because of the validity condition.
        let matrix = (0..src.len())
            .map(|j| {
                (0..tgt.len())
                    .map(|i| {
                        let a = self.matrix[i][j];
                        let b = if src[j] >= tgt[i] {
                            a as u128 * pow_u64(p, src[j] - tgt[i]) as u128
                        } else {
                            (a / pow_u64(p, tgt[i] - src[j])) as u128
                        };
                        (b % pow_u64(p, src[j]) as u128) as u64
                    })
                    .collect()
            })
            .collect();
        GroupHom::new(self.target.clone(), self.source.clone(), matrix)
            .expect("dual of a valid homomorphism is valid")
    }

    pub fn apply_dual(&self, l: &DualElem) -> DualElem {
        DualElem(self.dual().apply(&GroupElem(l.0.clone())).0)
    }
}

fn apply_matrix(matrix: &[Vec<u64>], v: &[u64], moduli: &[u64]) -> Vec<u64> {
    matrix
        .iter()
        .zip(moduli)
        .map(|(row, &m)| {
            row.iter()
                .zip(v)
                .fold(0u128, |acc, (a, x)| (acc + *a as u128 * *x as u128) % m as u128)
                as u64
        })
        .collect()
}

/// Every `p`-group of order at most `max_order`, each once, sorted by order
/// and, within one order, by exponent list in decreasing lexicographic order.
pub fn enumerate_groups(p: u64, max_order: u64) -> Result<Vec<FinAbGroup>> {
    if !is_prime(p) {
        return Err(Error::InvalidGroup(format!("{p} is not prime")));
    }
    let mut out = Vec::new();
    let mut n = 0u32;
    while p.checked_pow(n).is_some_and(|o| o <= max_order) {
        let mut parts = Vec::new();
        partitions(n, n, &mut Vec::new(), &mut parts);
        for exps in parts {
            out.push(FinAbGroup::new(p, exps)?);
        }
        n += 1;
    }
    Ok(out)
}

fn partitions(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=max_part.min(n)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// `|Hom(V, W)| = ∏_{i,j} p^{min(e_j, e'_i)}`.
pub fn hom_count(v: &FinAbGroup, w: &FinAbGroup) -> u128 {
    let p = v.prime() as u128;
    let mut total: u128 = 1;
    for &e in w.exponents() {
        for &f in v.exponents() {
            total = total.saturating_mul(p.saturating_pow(e.min(f)));
        }
    }
    total
}

/// All homomorphisms `V → W`, refusing to enumerate more than `limit`.
pub fn enumerate_homs(v: &FinAbGroup, w: &FinAbGroup, limit: u128) -> Result<Vec<GroupHom>> {
    if v.prime() != w.prime() {
        return Err(Error::InvalidHom("groups over different primes".into()));
    }
    let count = hom_count(v, w);
    if count > limit {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget: limit,
        });
    }
    let p = v.prime();
    // Each entry a_ij runs over the multiples of p^{max(0, e'_i - e_j)} below p^{e'_i}.
    let mut slots = Vec::new();
    for &ti in w.exponents() {
        for &sj in v.exponents() {
            let step = pow_u64(p, ti.saturating_sub(sj));
            let modulus = pow_u64(p, ti);
            slots.push((step, modulus / step));
        }
    }
    let mut digits = vec![0u64; slots.len()];
    let mut out = Vec::with_capacity(count as usize);
    loop {
        let matrix = (0..w.rank())
            .map(|i| {
                (0..v.rank())
                    .map(|j| {
                        let k = i * v.rank() + j;
                        digits[k] * slots[k].0
                    })
                    .collect()
            })
            .collect();
        out.push(GroupHom {
            source: v.clone(),
            target: w.clone(),
            matrix,
        });
        let mut k = 0;
        loop {
            if k == slots.len() {
                debug_assert_eq!(out.len() as u128, count);
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < slots[k].1 {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}
