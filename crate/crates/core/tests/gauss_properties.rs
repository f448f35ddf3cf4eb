use std::sync::Arc;

use cyclo_core::characters::{
    check_gauss_identities, enumerate_characters, gauss_sum, gauss_sum_by_descent, value_conductor, Character,
    Tau, UnitGroupStructure,
};
use cyclo_core::ring::CycloRing;

const MODULI: [(u64, u32); 9] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)];

fn ring(p: u64, r: u32) -> CycloRing {
    CycloRing::new(value_conductor(p, r), p).unwrap()
}

#[test]
fn all_identities_up_to_27() {
    for (p, r) in MODULI {
        let checks = check_gauss_identities(p, r, &ring(p, r)).unwrap();
        assert!(!checks.is_empty());
        let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "N = {}: {failed:?}", p.pow(r));
    }
}

#[test]
fn identity_kinds_are_all_exercised() {
    let mut kinds = std::collections::BTreeSet::new();
    for (p, r) in MODULI {
        for c in check_gauss_identities(p, r, &ring(p, r)).unwrap() {
            kinds.insert(c.id);
        }
    }
    for k in [
        "primitive-unit",
        "primitive-twist",
        "primitive-vanishes",
        "imprimitive-vanishes",
        "imprimitive-recursion",
        "descent-agrees",
        "trivial-mod-p",
        "character-sum-vanishes",
        "character-multiplicative",
    ] {
        assert!(kinds.contains(k), "{k} never checked");
    }
}

/// Primitivity against the definition: χ is imprimitive iff it is constant
/// on the classes of `t mod p^{r-1}`.
#[test]
fn primitivity_against_factorization() {
    for (p, r) in MODULI {
        let s = UnitGroupStructure::new(p, r).unwrap();
        let lower = p.pow(r - 1);
        for chi in enumerate_characters(&s, &ring(p, r)).unwrap() {
            let factors = s.units().all(|t| {
                s.units()
                    .filter(|u| u % lower == t % lower)
                    .all(|u| chi.eval(u as i64).unwrap() == chi.eval(t as i64).unwrap())
            });
            assert_eq!(chi.is_primitive(), !factors, "N = {} chi = {:?}", s.modulus(), chi.exponents());
            if r >= 2 && factors {
                let red = chi.reduce().unwrap();
                for t in s.units() {
                    assert_eq!(red.eval(t as i64).unwrap(), chi.eval(t as i64).unwrap());
                }
            }
        }
    }
}

#[test]
fn character_values_are_multiplicative_and_distinct() {
    for (p, r) in MODULI {
        let s = UnitGroupStructure::new(p, r).unwrap();
        let chars = enumerate_characters(&s, &ring(p, r)).unwrap();
        assert_eq!(chars.len() as u64, s.order());
        let tables: std::collections::HashSet<Vec<i64>> = chars
            .iter()
            .map(|c| s.units().map(|t| c.value_exponent(t).unwrap()).collect())
            .collect();
        assert_eq!(tables.len(), chars.len());
    }
}

#[test]
fn trivial_character_closed_form() {
    for p in [2u64, 3, 5, 7] {
        let r = ring(p, 1);
        let s = Arc::new(UnitGroupStructure::new(p, 1).unwrap());
        let chi = Character::trivial(&s, &r).unwrap();
        for u in 0..p {
            let expected = if u == 0 { p as i64 - 1 } else { -1 };
            assert_eq!(gauss_sum(&chi, &Tau::Eps(u)).unwrap(), r.from_integer(expected));
            assert_eq!(gauss_sum_by_descent(&chi, u).unwrap(), r.from_integer(expected));
        }
    }
}

#[test]
fn mod_4_primitive_twist() {
    let r = ring(2, 2);
    let s = Arc::new(UnitGroupStructure::new(2, 2).unwrap());
    let chi = Character::new(&s, &r, vec![1]).unwrap();
    assert!(chi.is_primitive());
    let g1 = gauss_sum(&chi, &Tau::Eps(1)).unwrap();
    let g3 = gauss_sum(&chi, &Tau::Eps(3)).unwrap();
    assert!(g1.is_unit());
    assert_eq!(g3, &chi.eval(3).unwrap().inverse().unwrap() * &g1);
}

#[test]
fn imprimitive_mod_9_vanishes_on_injective_tau() {
    let r = ring(3, 2);
    let s = UnitGroupStructure::new(3, 2).unwrap();
    let imprimitive: Vec<Character> = enumerate_characters(&s, &r)
        .unwrap()
        .into_iter()
        .filter(|c| !c.is_primitive() && !c.is_trivial())
        .collect();
    assert_eq!(imprimitive.len(), 1);
    for u in [1, 2, 4, 5, 7, 8] {
        assert!(gauss_sum(&imprimitive[0], &Tau::Eps(u)).unwrap().is_zero());
    }
}

#[test]
fn conductor_too_small_is_rejected() {
    let s = UnitGroupStructure::new(5, 1).unwrap();
    assert!(enumerate_characters(&s, &CycloRing::new(5, 5).unwrap()).is_err());
    let s = Arc::new(UnitGroupStructure::new(3, 1).unwrap());
    let chi = Character::trivial(&s, &CycloRing::new(2, 3).unwrap()).unwrap();
    assert!(gauss_sum(&chi, &Tau::Eps(1)).is_err());
}
