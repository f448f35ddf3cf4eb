//! The group algebra `k[V]`, the function algebra `k^{V^♯}`, the morphisms
//! `Φ_{V,ε}` and `Φ(α)_V`, the Fourier transform and its inverse `Ψ`.

use rayon::prelude::*;

use crate::alpha::AlphaFunction;
use crate::arith::pow_u64;
use crate::characters::{enumerate_characters, UnitGroupStructure};
use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupElem, PadicCircle};
use crate::ring::{CycloElem, CycloRing, LocalizedInt, RingMatrix, ZetaSum};

/// Exponent `k` with `ε(x) = ζ_M^k`, i.e. `k = a·M/p^s` for `x = a/p^s`.
pub fn epsilon_exponent(ring: &CycloRing, x: &PadicCircle) -> Result<i64> {
    let order = x.order();
    ring.require_root_order(order)?;
    Ok((x.numerator() as u128 * (ring.conductor() / order) as u128 % ring.conductor() as u128) as i64)
}

pub fn epsilon(ring: &CycloRing, x: &PadicCircle) -> Result<CycloElem> {
    Ok(ring.zeta_power(epsilon_exponent(ring, x)?))
}

/// Pairing numerators over the group exponent, row-major with rows indexed by
/// dual elements and columns by group elements.
#[derive(Clone, Debug)]
pub struct PairingTable {
    size: usize,
    exponent: u64,
    numerators: Vec<u64>,
}

impl PairingTable {
    pub fn new(v: &FinAbGroup) -> Self {
        let size = v.order() as usize;
        let numerators = (0..size * size)
            .map(|i| v.pairing_numerator(i % size, i / size))
            .collect();
        PairingTable {
            size,
            exponent: v.exponent(),
            numerators,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `<v, l>` as a numerator over the group exponent.
    pub fn numerator(&self, l: usize, v: usize) -> u64 {
        self.numerators[l * self.size + v]
    }

    /// Exponent of `ε(<v, l>)` in conductor `M`; the caller checks that the
    /// group exponent divides `M`.
    fn zeta_exponent(&self, m: u64, l: usize, v: usize) -> i64 {
        (self.numerator(l, v) * (m / self.exponent)) as i64
    }
}

fn require_exponent(v: &FinAbGroup, ring: &CycloRing) -> Result<()> {
    ring.require_root_order(v.exponent())
}

/// Element of `k[V]`; `coeffs[i]` is the coefficient of `[elements(V)[i]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem {
    group: FinAbGroup,
    coeffs: Vec<CycloElem>,
}

/// Element of `k^{V^♯}`; `values[i]` is the value at `dual_elements(V)[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunElem {
    group: FinAbGroup,
    values: Vec<CycloElem>,
}

fn check_vector(group: &FinAbGroup, ring: &CycloRing, xs: &[CycloElem]) -> Result<()> {
    if xs.len() as u64 != group.order() {
        return Err(Error::ShapeMismatch(format!(
            "{} entries for a group of order {}",
            xs.len(),
            group.order()
        )));
    }
    if xs.iter().any(|x| x.ring() != ring) {
        return Err(Error::RingMismatch("entries from different rings".into()));
    }
    Ok(())
}

impl AlgElem {
    pub fn new(group: &FinAbGroup, ring: &CycloRing, coeffs: Vec<CycloElem>) -> Result<Self> {
        check_vector(group, ring, &coeffs)?;
        Ok(AlgElem {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn zero(group: &FinAbGroup, ring: &CycloRing) -> Self {
        AlgElem {
            group: group.clone(),
            coeffs: vec![ring.zero(); group.order() as usize],
        }
    }

    /// The basis vector `[v]`.
    pub fn basis(group: &FinAbGroup, ring: &CycloRing, v: &GroupElem) -> Self {
        let mut x = Self::zero(group, ring);
        x.coeffs[group.index_of(v)] = ring.one();
        x
    }

    pub fn basis_at(group: &FinAbGroup, ring: &CycloRing, idx: usize) -> Self {
        let mut x = Self::zero(group, ring);
        x.coeffs[idx] = ring.one();
        x
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn ring(&self) -> &CycloRing {
        self.coeffs[0].ring()
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn coeff(&self, v: &GroupElem) -> &CycloElem {
        &self.coeffs[self.group.index_of(v)]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(AlgElem {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        AlgElem {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::ShapeMismatch(format!(
                "elements of k[{}] and k[{}]",
                self.group, other.group
            )));
        }
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch("group algebra elements over different rings".into()));
        }
        Ok(())
    }

    /// Convolution product `(x*y)(w) = Σ_{u+v=w} x(u)y(v)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let g = &self.group;
        let n = self.coeffs.len();
        let mut out = vec![self.ring().zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let u = g.element_at(i);
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let w = g.add(&u, &g.element_at(j));
                let k = g.index_of(&w);
                out[k] = &out[k] + &(a * b);
            }
        }
        Ok(AlgElem {
            group: g.clone(),
            coeffs: out,
        })
    }
}

impl FunElem {
    pub fn new(group: &FinAbGroup, ring: &CycloRing, values: Vec<CycloElem>) -> Result<Self> {
        check_vector(group, ring, &values)?;
        Ok(FunElem {
            group: group.clone(),
            values,
        })
    }

    pub fn zero(group: &FinAbGroup, ring: &CycloRing) -> Self {
        FunElem {
            group: group.clone(),
            values: vec![ring.zero(); group.order() as usize],
        }
    }

    /// Indicator function of the dual element with index `idx`.
    pub fn delta_at(group: &FinAbGroup, ring: &CycloRing, idx: usize) -> Self {
        let mut f = Self::zero(group, ring);
        f.values[idx] = ring.one();
        f
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn ring(&self) -> &CycloRing {
        self.values[0].ring()
    }

    pub fn values(&self) -> &[CycloElem] {
        &self.values
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.group != other.group || self.ring() != other.ring() {
            return Err(Error::ShapeMismatch("functions on different duals".into()));
        }
        Ok(FunElem {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }
}

/// Matrix of `Φ_{V,ε}`: entry `(l, v)` is `ε(<v, l>)`.
pub fn phi_eps_matrix(v: &FinAbGroup, ring: &CycloRing) -> Result<RingMatrix<CycloElem>> {
    require_exponent(v, ring)?;
    let t = PairingTable::new(v);
    let m = ring.conductor();
    let n = t.size();
    Ok(RingMatrix::from_fn(n, n, |l, x| ring.zeta_power(t.zeta_exponent(m, l, x))))
}

/// `Φ_{V,ε}(x) = (l ↦ Σ_v x(v) ε(<v, l>))`.
pub fn phi_eps_apply(x: &AlgElem) -> Result<FunElem> {
    let ring = x.ring().clone();
    require_exponent(&x.group, &ring)?;
    let t = PairingTable::new(&x.group);
    let values = phi_eps_apply_with(&t, &ring, &x.coeffs);
    FunElem::new(&x.group, &ring, values)
}

fn phi_eps_apply_with(t: &PairingTable, ring: &CycloRing, coeffs: &[CycloElem]) -> Vec<CycloElem> {
    let m = ring.conductor();
    (0..t.size())
        .into_par_iter()
        .map(|l| {
            let mut acc = ZetaSum::new(ring);
            for (v, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc.add_scaled(c, t.zeta_exponent(m, l, v));
                }
            }
            acc.finish()
        })
        .collect()
}

/// `f̂(v) = |V|^{-1} Σ_l f(l) ε(-<v, l>)`.
pub fn fourier_hat(f: &FunElem) -> Result<Vec<CycloElem>> {
    let ring = f.ring().clone();
    require_exponent(&f.group, &ring)?;
    if !f.group.is_trivial() && ring.prime() != f.group.prime() {
        return Err(Error::InvalidArgument(format!(
            "|V| = {} is not invertible in Z[1/{}]",
            f.group.order(),
            ring.prime()
        )));
    }
    let t = PairingTable::new(&f.group);
    Ok(fourier_hat_with(&t, &f.group, &ring, &f.values))
}

fn fourier_hat_with(
    t: &PairingTable,
    group: &FinAbGroup,
    ring: &CycloRing,
    values: &[CycloElem],
) -> Vec<CycloElem> {
    let m = ring.conductor();
    let inv_order = LocalizedInt::prime_power(ring.prime(), -(group.exponents().iter().sum::<u32>() as i64));
    (0..t.size())
        .into_par_iter()
        .map(|v| {
            let mut acc = ZetaSum::new(ring);
            for (l, c) in values.iter().enumerate() {
                if !c.is_zero() {
                    acc.add_scaled(c, -t.zeta_exponent(m, l, v));
                }
            }
            acc.finish().scale(&inv_order)
        })
        .collect()
}

/// `Ψ_{V,ε}(f) = Σ_v f̂(v)[v]`.
pub fn psi(f: &FunElem) -> Result<AlgElem> {
    let coeffs = fourier_hat(f)?;
    AlgElem::new(&f.group, f.ring(), coeffs)
}

/// Precomputed `Φ_{V,ε}` and `Ψ_{V,ε}` for repeated application on one group.
pub struct FourierPair {
    group: FinAbGroup,
    ring: CycloRing,
    table: PairingTable,
}

impl FourierPair {
    pub fn new(group: &FinAbGroup, ring: &CycloRing) -> Result<Self> {
        require_exponent(group, ring)?;
        if !group.is_trivial() && ring.prime() != group.prime() {
            return Err(Error::InvalidArgument("|V| must be a power of the inverted prime".into()));
        }
        Ok(FourierPair {
            group: group.clone(),
            ring: ring.clone(),
            table: PairingTable::new(group),
        })
    }

    pub fn phi(&self, x: &AlgElem) -> FunElem {
        FunElem {
            group: self.group.clone(),
            values: phi_eps_apply_with(&self.table, &self.ring, &x.coeffs),
        }
    }

    pub fn psi(&self, f: &FunElem) -> AlgElem {
        AlgElem {
            group: self.group.clone(),
            coeffs: fourier_hat_with(&self.table, &self.group, &self.ring, &f.values),
        }
    }
}

/// Matrix of `Φ(α)_V`: entry `(l, v)` is `α(<v, l>)`.
pub fn phi_alpha_matrix(v: &FinAbGroup, alpha: &AlphaFunction) -> Result<RingMatrix<CycloElem>> {
    if v.prime() != alpha.prime() && !v.is_trivial() {
        return Err(Error::InvalidArgument(format!(
            "α on Z/{}^∞ applied to a {}-group",
            alpha.prime(),
            v.prime()
        )));
    }
    let level = v.level();
    alpha.require_level(level)?;
    let p = alpha.prime();
    let exp = pow_u64(p, level);
    // Only `exponent(V)` distinct pairing values occur.
    let values = (0..exp)
        .map(|a| alpha.eval(&PadicCircle::new(p, a, level)))
        .collect::<Result<Vec<_>>>()?;
    let t = PairingTable::new(v);
    let n = t.size();
    Ok(RingMatrix::from_fn(n, n, |l, x| values[t.numerator(l, x) as usize].clone()))
}

/// Unit test in `k[V]`: `x` is invertible iff every character sum
/// `Σ_v x(v) ε(<v, l>)` is a unit.
pub fn is_unit_group_algebra(x: &AlgElem) -> Result<bool> {
    Ok(phi_eps_apply(x)?.values.iter().all(CycloElem::is_unit))
}

/// Matrix of `y ↦ x*y`: entry `(w, u)` is `x(w - u)`.
pub fn convolution_matrix(x: &AlgElem) -> RingMatrix<CycloElem> {
    let g = &x.group;
    let n = x.coeffs.len();
    let elems = g.elements();
    RingMatrix::from_fn(n, n, |w, u| x.coeffs[g.index_of(&g.sub(&elems[w], &elems[u]))].clone())
}

fn check_monoid_vector(ring: &CycloRing, p: u64, r: u32, coeffs: &[CycloElem]) -> Result<u64> {
    let n = pow_u64(p, r);
    if coeffs.len() as u64 != n {
        return Err(Error::ShapeMismatch(format!(
            "{} coefficients for the monoid Z/{n}",
            coeffs.len()
        )));
    }
    if coeffs.iter().any(|c| c.ring() != ring) {
        return Err(Error::RingMismatch("monoid algebra coefficients".into()));
    }
    Ok(n)
}

/// Unit test in the monoid algebra `k[(Z/p^r, ·)]`, with `coeffs[t]` the
/// coefficient of `[t]`. Invertible iff the augmentation is a unit and the
/// part supported on `(Z/p^r)^×` is a unit of `k[(Z/p^r)^×]`.
pub fn is_unit_monoid_algebra(ring: &CycloRing, p: u64, r: u32, coeffs: &[CycloElem]) -> Result<bool> {
    check_monoid_vector(ring, p, r, coeffs)?;
    let structure = UnitGroupStructure::new(p, r)?;
    let characters = enumerate_characters(&structure, ring)?;
    let augmentation = coeffs.iter().fold(ring.zero(), |acc, c| &acc + c);
    if !augmentation.is_unit() {
        return Ok(false);
    }
    for chi in &characters {
        let mut acc = ZetaSum::new(ring);
        for t in structure.units() {
            let c = &coeffs[t as usize];
            if !c.is_zero() {
                acc.add_scaled(c, chi.value_exponent(t)?);
            }
        }
        if !acc.finish().is_unit() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of `y ↦ x·y` in the monoid algebra, basis `[0], …, [p^r - 1]`.
pub fn monoid_multiplication_matrix(
    ring: &CycloRing,
    p: u64,
    r: u32,
    coeffs: &[CycloElem],
) -> Result<RingMatrix<CycloElem>> {
    let n = check_monoid_vector(ring, p, r, coeffs)?;
    let size = n as usize;
    let mut entries = vec![ring.zero(); size * size];
    for (t, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for u in 0..size {
            let w = (t as u128 * u as u128 % n as u128) as usize;
            let e = &mut entries[w * size + u];
            *e = &*e + c;
        }
    }
    RingMatrix::new(size, size, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u64, e: &[u32]) -> FinAbGroup {
        FinAbGroup::new(p, e.to_vec()).unwrap()
    }

    #[test]
    fn convolution_basics() {
        let v = g(2, &[1]);
        let r = CycloRing::new(2, 2).unwrap();
        let x = AlgElem::new(&v, &r, vec![r.one(), r.one()]).unwrap();
        let sq = x.convolve(&x).unwrap();
        assert_eq!(sq.coeffs(), &[r.from_integer(2), r.from_integer(2)]);
        let w = g(2, &[2, 1]);
        let r4 = CycloRing::new(4, 2).unwrap();
        let a = w.elem(vec![3, 1]).unwrap();
        let b = w.elem(vec![2, 1]).unwrap();
        let prod = AlgElem::basis(&w, &r4, &a).convolve(&AlgElem::basis(&w, &r4, &b)).unwrap();
        assert_eq!(prod, AlgElem::basis(&w, &r4, &w.add(&a, &b)));
        let unit = AlgElem::basis(&w, &r4, &w.zero());
        let y = AlgElem::new(&w, &r4, (0..8).map(|i| r4.zeta_power(i)).collect()).unwrap();
        assert_eq!(unit.convolve(&y).unwrap(), y);
    }

    #[test]
    fn phi_eps_examples() {
        let r1 = CycloRing::new(1, 2).unwrap();
        let m = phi_eps_matrix(&FinAbGroup::trivial(2).unwrap(), &r1).unwrap();
        assert_eq!(m.entries(), &[r1.one()]);
        let r2 = CycloRing::new(2, 2).unwrap();
        let m = phi_eps_matrix(&g(2, &[1]), &r2).unwrap();
        assert_eq!(m.entries(), &[r2.one(), r2.one(), r2.one(), r2.from_integer(-1)]);
        let r4 = CycloRing::new(4, 2).unwrap();
        let m = phi_eps_matrix(&g(2, &[2]), &r4).unwrap();
        assert_eq!(*m.get(1, 1), r4.zeta_power(1));
        assert_eq!(*m.get(2, 1), r4.from_integer(-1));
        assert_eq!(*m.get(3, 1), -r4.zeta_power(1));
        assert!(matches!(
            phi_eps_matrix(&g(2, &[3]), &r4),
            Err(Error::ConductorTooSmall { .. })
        ));
    }

    #[test]
    fn fourier_of_constant_and_characters() {
        let v = g(3, &[1, 1]);
        let r = CycloRing::new(3, 3).unwrap();
        let ones = FunElem::new(&v, &r, vec![r.one(); 9]).unwrap();
        let hat = fourier_hat(&ones).unwrap();
        assert_eq!(hat[0], r.one());
        assert!(hat[1..].iter().all(CycloElem::is_zero));
        for x in 0..9 {
            let f = phi_eps_apply(&AlgElem::basis_at(&v, &r, x)).unwrap();
            let hat = fourier_hat(&f).unwrap();
            for (i, h) in hat.iter().enumerate() {
                assert_eq!(h.is_one(), i == x);
                assert_eq!(h.is_zero(), i != x);
            }
        }
        let t = FinAbGroup::trivial(5).unwrap();
        let r1 = CycloRing::new(1, 5).unwrap();
        let c = FunElem::new(&t, &r1, vec![r1.from_integer(7)]).unwrap();
        assert_eq!(fourier_hat(&c).unwrap(), vec![r1.from_integer(7)]);
        assert!(psi(&FunElem::zero(&v, &r)).unwrap().coeffs().iter().all(CycloElem::is_zero));
    }

    #[test]
    fn phi_alpha_examples() {
        let r = CycloRing::new(4, 2).unwrap();
        let tp = AlphaFunction::tpzc(&r);
        let m = phi_alpha_matrix(&FinAbGroup::trivial(2).unwrap(), &tp).unwrap();
        assert_eq!(m.entries(), &[r.one()]);
        let m = phi_alpha_matrix(&g(2, &[1]), &tp).unwrap();
        assert_eq!(m.entries(), &[r.one(), r.one(), r.one(), r.from_integer(2)]);
        let eps = AlphaFunction::epsilon_table(&r, 2).unwrap();
        for v in [g(2, &[1]), g(2, &[2]), g(2, &[1, 1]), g(2, &[2, 1])] {
            assert_eq!(phi_alpha_matrix(&v, &eps).unwrap(), phi_eps_matrix(&v, &r).unwrap());
        }
        assert!(matches!(
            phi_alpha_matrix(&g(2, &[3]), &eps),
            Err(Error::LevelTooSmall { .. })
        ));
    }

    #[test]
    fn unit_examples() {
        let v = g(3, &[1]);
        let r = CycloRing::new(3, 3).unwrap();
        let one = AlgElem::basis_at(&v, &r, 0);
        assert!(is_unit_group_algebra(&one).unwrap());
        let mut c = vec![r.one(), r.from_integer(-1), r.zero()];
        assert!(!is_unit_group_algebra(&AlgElem::new(&v, &r, c.clone()).unwrap()).unwrap());
        // 2[0] + [1]: character sums 3 and 2 + ζ, 2 + ζ², all of norm 3.
        c = vec![r.from_integer(2), r.one(), r.zero()];
        let x = AlgElem::new(&v, &r, c).unwrap();
        assert!(is_unit_group_algebra(&x).unwrap());
        assert!(convolution_matrix(&x).determinant().unwrap().is_unit());
        assert_eq!(
            convolution_matrix(&one),
            RingMatrix::identity(3, &r.one())
        );
    }

    #[test]
    fn monoid_examples() {
        let r = CycloRing::new(4, 2).unwrap();
        let basis = |t: usize| {
            let mut c = vec![r.zero(); 4];
            c[t] = r.one();
            c
        };
        assert!(is_unit_monoid_algebra(&r, 2, 2, &basis(1)).unwrap());
        assert!(!is_unit_monoid_algebra(&r, 2, 2, &basis(2)).unwrap());
        let mut c = basis(1);
        c[2] = r.one();
        assert!(is_unit_monoid_algebra(&r, 2, 2, &c).unwrap());
        let det = monoid_multiplication_matrix(&r, 2, 2, &c).unwrap().determinant().unwrap();
        assert!(det.is_unit());
    }
}
