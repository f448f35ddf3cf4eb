//! Desk-scale verification drivers: Fourier inversion sweeps, the
//! determinant oracle for `Φ(α)_V`, naturality squares, and the comparison of
//! the three-condition criterion against determinants.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{phi_alpha_matrix, AlgElem, FourierPair, FunElem};
use crate::alpha::AlphaFunction;
use crate::arith::pow_u64;
use crate::characters::value_conductor;
use crate::criterion::{condition2_via_trivial_character, criterion_check};
use crate::error::Result;
use crate::group::{enumerate_groups, enumerate_homs, DualElem, FinAbGroup, GroupElem, GroupHom};
use crate::report::Check;
use crate::ring::{CycloElem, CycloRing, RingMatrix};

/// Default bound on homomorphisms enumerated for one pair of groups.
pub const HOM_LIMIT: u128 = 1 << 20;

/// Checks `Ψ∘Φ = id` on every `[v]` and `Φ∘Ψ = id` on every indicator of
/// `V^♯`, over the conductor `exponent(V)`.
pub fn fourier_inversion_checks(v: &FinAbGroup) -> Result<Vec<Check>> {
    let ring = CycloRing::new(v.exponent(), v.prime())?;
    let pair = FourierPair::new(v, &ring)?;
    let n = v.order() as usize;
    let subject = v.notation();
    let bad_x: Vec<usize> = (0..n)
        .into_par_iter()
        .filter(|&x| {
            let basis = AlgElem::basis_at(v, &ring, x);
            pair.psi(&pair.phi(&basis)) != basis
        })
        .collect();
    let bad_l: Vec<usize> = (0..n)
        .into_par_iter()
        .filter(|&l| {
            let delta = FunElem::delta_at(v, &ring, l);
            pair.phi(&pair.psi(&delta)) != delta
        })
        .collect();
    Ok(vec![
        Check::new("psi-after-phi", subject.clone(), bad_x.is_empty(), json!({ "failing_basis": bad_x })),
        Check::new("phi-after-psi", subject, bad_l.is_empty(), json!({ "failing_basis": bad_l })),
    ])
}

pub fn fourier_sweep(p: u64, max_order: u64) -> Result<Vec<Check>> {
    let groups = enumerate_groups(p, max_order)?;
    let mut out = Vec::new();
    for g in &groups {
        out.extend(fourier_inversion_checks(g)?);
    }
    Ok(out)
}

/// `det Φ(α)_V`.
pub fn iso_determinant(v: &FinAbGroup, alpha: &AlphaFunction) -> Result<CycloElem> {
    phi_alpha_matrix(v, alpha)?.determinant()
}

/// Whether `Φ(α)_V` is invertible, decided by its determinant.
pub fn brute_force_iso(v: &FinAbGroup, alpha: &AlphaFunction) -> Result<bool> {
    Ok(iso_determinant(v, alpha)?.is_unit())
}

/// Cached matrices of `Φ(α)` on a source and a target group, for checking
/// many naturality squares between them.
pub struct NaturalitySquares {
    source: FinAbGroup,
    target: FinAbGroup,
    phi_source: RingMatrix<CycloElem>,
    phi_target: RingMatrix<CycloElem>,
}

impl NaturalitySquares {
    pub fn new(source: &FinAbGroup, target: &FinAbGroup, alpha: &AlphaFunction) -> Result<Self> {
        Ok(NaturalitySquares {
            source: source.clone(),
            target: target.clone(),
            phi_source: phi_alpha_matrix(source, alpha)?,
            phi_target: phi_alpha_matrix(target, alpha)?,
        })
    }

    /// First `(v, l)` where `Φ(α)_W([f(v)])(l) ≠ Φ(α)_V([v])(f^♯(l))`.
    pub fn first_failure(&self, f: &GroupHom) -> Option<(usize, usize)> {
        assert!(f.source() == &self.source && f.target() == &self.target);
        let dual = f.dual();
        let images: Vec<usize> = self
            .source
            .elements()
            .iter()
            .map(|v| self.target.index_of(&f.apply(v)))
            .collect();
        let dual_images: Vec<usize> = self
            .target
            .dual_elements()
            .iter()
            .map(|l| self.source.dual_index_of(&DualElem(dual.apply(&GroupElem(l.0.clone())).0)))
            .collect();
        for (v, &fv) in images.iter().enumerate() {
            for (l, &fl) in dual_images.iter().enumerate() {
                if self.phi_target.get(l, fv) != self.phi_source.get(fl, v) {
                    return Some((v, l));
                }
            }
        }
        None
    }
}

pub fn naturality_check(f: &GroupHom, alpha: &AlphaFunction) -> Result<bool> {
    let sq = NaturalitySquares::new(f.source(), f.target(), alpha)?;
    Ok(sq.first_failure(f).is_none())
}

/// Naturality of `Φ(α)` for every homomorphism between every pair of groups
/// of order at most `max_order`; one check per pair. Fails when some pair has
/// more than `hom_limit` homomorphisms.
pub fn naturality_sweep(p: u64, max_order: u64, alpha: &AlphaFunction, hom_limit: u128) -> Result<Vec<Check>> {
    let groups = enumerate_groups(p, max_order)?;
    let pairs: Vec<(&FinAbGroup, &FinAbGroup)> = groups
        .iter()
        .flat_map(|v| groups.iter().map(move |w| (v, w)))
        .collect();
    pairs
        .par_iter()
        .map(|(v, w)| {
            let sq = NaturalitySquares::new(v, w, alpha)?;
            let homs = enumerate_homs(v, w, hom_limit)?;
            let failure = homs
                .iter()
                .find_map(|f| sq.first_failure(f).map(|at| (f.matrix().to_vec(), at)));
            let witness = match &failure {
                None => json!({ "homs": homs.len() }),
                Some((m, (v_idx, l_idx))) => json!({ "hom": m, "v": v_idx, "l": l_idx }),
            };
            Ok(Check::new(
                "naturality",
                format!("{} -> {}", v.notation(), w.notation()),
                failure.is_none(),
                witness,
            ))
        })
        .collect()
}

fn det_witness(d: &CycloElem) -> Value {
    json!(d.to_report_strings())
}

/// `Φ(α)_V` invertible for the closed-form `α` on every group of order at
/// most `max_order`, the criterion at level `criterion_level`, and naturality
/// for every homomorphism between groups of order at most `naturality_order`.
pub fn sweep_theorem(
    p: u64,
    max_order: u64,
    naturality_order: u64,
    criterion_level: u32,
    hom_limit: u128,
) -> Result<Vec<Check>> {
    let ring = CycloRing::new(value_conductor(p, criterion_level.max(1)), p)?;
    let alpha = AlphaFunction::tpzc(&ring);
    let groups = enumerate_groups(p, max_order)?;
    let mut out: Vec<Check> = groups
        .par_iter()
        .map(|g| {
            let d = iso_determinant(g, &alpha)?;
            Ok(Check::new("tpzc-iso", g.notation(), d.is_unit(), det_witness(&d)))
        })
        .collect::<Result<_>>()?;
    if criterion_level > 0 {
        let rep = criterion_check(&alpha, criterion_level)?;
        out.push(Check::new(
            "tpzc-criterion",
            format!("p={p} i={criterion_level}"),
            rep.overall,
            rep.to_json(),
        ));
    }
    out.extend(naturality_sweep(p, naturality_order, &alpha, hom_limit)?);
    Ok(out)
}

/// Values from which random `α` tables are drawn: `0, 1, 2, ζ, ζ - 1, p`.
pub fn sample_pool(ring: &CycloRing) -> Vec<CycloElem> {
    let z = ring.zeta_power(1);
    vec![
        ring.zero(),
        ring.one(),
        ring.from_integer(2),
        z.clone(),
        &z - &ring.one(),
        ring.from_integer(ring.prime() as i64),
    ]
}

/// Groups of exponent `p^r` other than `Z/p^r`, small enough for exact
/// determinants in the oracle comparison.
pub fn confirmation_groups(p: u64, r: u32) -> Result<Vec<FinAbGroup>> {
    let cap = pow_u64(p, r + 1).max(27);
    Ok(enumerate_groups(p, cap)?
        .into_iter()
        .filter(|g| g.level() == r && g.rank() > 1)
        .collect())
}

pub struct OracleSample {
    pub alpha: AlphaFunction,
    pub extra: Vec<FinAbGroup>,
}

/// Draws `samples` tables on `Z/p^r` over the criterion's value ring, each
/// with up to `extra_groups` confirmation groups.
pub fn draw_oracle_samples(p: u64, r: u32, samples: usize, seed: u64, extra_groups: usize) -> Result<Vec<OracleSample>> {
    let ring = CycloRing::new(value_conductor(p, r), p)?;
    let pool = sample_pool(&ring);
    let candidates = confirmation_groups(p, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let values = (0..pow_u64(p, r))
                .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                .collect();
            let alpha = AlphaFunction::table(&ring, r, values)?;
            let extra = candidates
                .choose_multiple(&mut rng, extra_groups.min(candidates.len()))
                .cloned()
                .collect();
            Ok(OracleSample { alpha, extra })
        })
        .collect()
}

/// Criterion verdict against the determinant on `Z/p^r` and on the sample's
/// confirmation groups; one check per sample.
pub fn oracle_check(index: usize, sample: &OracleSample) -> Result<Check> {
    let alpha = &sample.alpha;
    let r = alpha.level().expect("tables have a level");
    let criterion = criterion_check(alpha, r)?.overall;
    let cyclic = FinAbGroup::cyclic(alpha.prime(), r)?;
    let mut verdicts = vec![json!({ "group": cyclic.notation(), "iso": brute_force_iso(&cyclic, alpha)? })];
    let mut pass = verdicts[0]["iso"] == json!(criterion);
    for g in &sample.extra {
        let iso = brute_force_iso(g, alpha)?;
        pass &= iso == criterion;
        verdicts.push(json!({ "group": g.notation(), "iso": iso }));
    }
    let condition2 = condition2_via_trivial_character(alpha)?.is_unit();
    let direct2 = criterion_check(alpha, 1)?.condition2.holds;
    pass &= condition2 == direct2;
    Ok(Check::new(
        "criterion-vs-determinant",
        format!("sample {index}"),
        pass,
        json!({
            "alpha": alpha_table_json(alpha),
            "criterion": criterion,
            "determinant": verdicts,
        }),
    ))
}

fn alpha_table_json(alpha: &AlphaFunction) -> Value {
    match alpha {
        AlphaFunction::Tpzc { .. } => json!("tpzc"),
        AlphaFunction::Table { values, .. } => {
            json!(values.iter().map(|v| v.to_string()).collect::<Vec<_>>())
        }
    }
}

pub fn criterion_oracle_compare(p: u64, r: u32, samples: usize, seed: u64, extra_groups: usize) -> Result<Vec<Check>> {
    let drawn = draw_oracle_samples(p, r, samples, seed, extra_groups)?;
    drawn
        .par_iter()
        .enumerate()
        .map(|(i, s)| oracle_check(i, s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fourier_inversions() {
        assert!(fourier_sweep(2, 8).unwrap().iter().all(|c| c.pass));
        assert!(fourier_sweep(3, 9).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn tpzc_determinants() {
        let ring = CycloRing::new(4, 2).unwrap();
        let a = AlphaFunction::tpzc(&ring);
        assert!(brute_force_iso(&FinAbGroup::trivial(2).unwrap(), &a).unwrap());
        let d = iso_determinant(&FinAbGroup::cyclic(2, 1).unwrap(), &a).unwrap();
        assert_eq!(d, ring.one());
        assert!(brute_force_iso(&FinAbGroup::cyclic(2, 2).unwrap(), &a).unwrap());
    }

    #[test]
    fn epsilon_and_zero_tables() {
        let ring = CycloRing::new(4, 2).unwrap();
        let eps = AlphaFunction::epsilon_table(&ring, 2).unwrap();
        assert!(criterion_check(&eps, 2).unwrap().overall);
        assert!(brute_force_iso(&FinAbGroup::cyclic(2, 2).unwrap(), &eps).unwrap());
        let zero = AlphaFunction::from_fn(&ring, 2, |_| ring.zero()).unwrap();
        assert!(!criterion_check(&zero, 2).unwrap().overall);
        assert!(!brute_force_iso(&FinAbGroup::cyclic(2, 2).unwrap(), &zero).unwrap());
    }

    #[test]
    fn naturality_into_klein_group() {
        let ring = CycloRing::new(4, 2).unwrap();
        let a = AlphaFunction::tpzc(&ring);
        let v = FinAbGroup::cyclic(2, 2).unwrap();
        let w = FinAbGroup::new(2, vec![1, 1]).unwrap();
        let homs = enumerate_homs(&v, &w, HOM_LIMIT).unwrap();
        assert_eq!(homs.len(), 4);
        assert!(homs.iter().all(|f| naturality_check(f, &a).unwrap()));
        let z = GroupHom::zero(&v, &w);
        let sq = NaturalitySquares::new(&v, &w, &a).unwrap();
        assert!(sq.first_failure(&z).is_none());
        assert!(sq.phi_target.row(0).iter().all(|x| x.is_one()));
    }

    #[test]
    fn oracle_agrees_on_a_few_samples() {
        let checks = criterion_oracle_compare(2, 2, 10, 7, 2).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
