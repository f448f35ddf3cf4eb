use std::collections::HashSet;

use proptest::prelude::*;

use cyclo_core::group::{
    enumerate_groups, enumerate_homs, hom_count, DualElem, FinAbGroup, GroupElem, GroupHom, PadicCircle,
};

fn small_groups() -> Vec<FinAbGroup> {
    let mut gs = enumerate_groups(2, 64).unwrap();
    gs.extend(enumerate_groups(3, 27).unwrap());
    gs.extend(enumerate_groups(5, 25).unwrap());
    gs
}

#[test]
fn pairing_is_nondegenerate_and_reflexive() {
    for v in small_groups() {
        let elems = v.elements();
        let duals = v.dual_elements();
        assert_eq!(elems.len() as u64, v.order());
        for x in &elems[1..] {
            assert!(duals.iter().any(|l| !v.pairing(x, l).unwrap().is_zero()), "{v}: {x:?}");
        }
        for l in &duals[1..] {
            assert!(elems.iter().any(|x| !v.pairing(x, l).unwrap().is_zero()), "{v}: {l:?}");
        }
        // V → V^♯♯: distinct elements give distinct functions on V^♯.
        let images: HashSet<Vec<PadicCircle>> = elems
            .iter()
            .map(|x| duals.iter().map(|l| v.pairing(x, l).unwrap()).collect())
            .collect();
        assert_eq!(images.len(), elems.len(), "{v}");
    }
}

#[test]
fn pairing_is_biadditive() {
    for v in enumerate_groups(2, 16).unwrap().into_iter().chain(enumerate_groups(3, 9).unwrap()) {
        let elems = v.elements();
        let duals = v.dual_elements();
        for a in &elems {
            for b in &elems {
                for l in &duals {
                    let lhs = v.pairing(&v.add(a, b), l).unwrap();
                    let rhs = v.pairing(a, l).unwrap().add(&v.pairing(b, l).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
            // Additivity in the dual variable; V^♯ has the coordinates of V.
            for l in &duals {
                for m in &duals {
                    let sum = v.dual_elem(v.add(&GroupElem(l.0.clone()), &GroupElem(m.0.clone())).0).unwrap();
                    let lhs = v.pairing(a, &sum).unwrap();
                    let rhs = v.pairing(a, l).unwrap().add(&v.pairing(a, m).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

fn pairing_table(v: &FinAbGroup) -> Vec<PadicCircle> {
    let duals = v.dual_elements();
    v.elements()
        .iter()
        .flat_map(|x| duals.iter().map(|l| v.pairing(x, l).unwrap()).collect::<Vec<_>>())
        .collect()
}

#[test]
fn duality_on_all_small_homs() {
    let mut groups = enumerate_groups(2, 16).unwrap();
    groups.extend(enumerate_groups(3, 9).unwrap());
    let tables: Vec<Vec<PadicCircle>> = groups.iter().map(pairing_table).collect();
    for (v, tv) in groups.iter().zip(&tables) {
        for (w, tw) in groups.iter().zip(&tables).filter(|(w, _)| w.prime() == v.prime()) {
            let homs = enumerate_homs(v, w, 1 << 20).unwrap();
            assert_eq!(homs.len() as u128, hom_count(v, w));
            let distinct: HashSet<Vec<Vec<u64>>> = homs.iter().map(|f| f.matrix().to_vec()).collect();
            assert_eq!(distinct.len(), homs.len());
            let (nv, nw) = (v.order() as usize, w.order() as usize);
            for f in &homs {
                let d = f.dual();
                let fv: Vec<usize> = v.elements().iter().map(|x| w.index_of(&f.apply(x))).collect();
                let dl: Vec<usize> = w
                    .dual_elements()
                    .iter()
                    .map(|l| v.dual_index_of(&DualElem(d.apply(&GroupElem(l.0.clone())).0)))
                    .collect();
                for x in 0..nv {
                    for l in 0..nw {
                        assert_eq!(tw[fv[x] * nw + l], tv[x * nv + dl[l]], "{v} -> {w}, {:?}", f.matrix());
                    }
                }
                assert_eq!(d.dual(), *f);
            }
        }
    }
}

#[test]
fn spec_examples() {
    let z4 = FinAbGroup::cyclic(2, 2).unwrap();
    assert!(v_pair(&z4, &[0], &[3]).is_zero());
    assert_eq!(v_pair(&z4, &[1], &[1]), PadicCircle::new(2, 1, 2));
    let k = FinAbGroup::new(2, vec![1, 1]).unwrap();
    assert!(v_pair(&k, &[1, 1], &[1, 1]).is_zero());
    assert_eq!(GroupHom::identity(&k).dual(), GroupHom::identity(&k));
    let z2 = FinAbGroup::cyclic(2, 1).unwrap();
    assert_eq!(enumerate_homs(&z2, &z2, 10).unwrap().len(), 2);
    assert_eq!(enumerate_homs(&FinAbGroup::trivial(2).unwrap(), &k, 10).unwrap().len(), 1);
    assert_eq!(enumerate_homs(&z4, &z2, 10).unwrap().len(), 2);
    assert!(enumerate_homs(&k, &k, 3).is_err());
    assert_eq!(FinAbGroup::trivial(3).unwrap().elements().len(), 1);
    let coords: Vec<Vec<u64>> = k.elements().into_iter().map(|e| e.0).collect();
    assert_eq!(coords, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    let g = FinAbGroup::parse_notation("4+2", None).unwrap();
    assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"p":2,"exponents":[2,1]}"#);
    assert_eq!(g.notation(), "4+2");
}

fn v_pair(v: &FinAbGroup, x: &[u64], l: &[u64]) -> PadicCircle {
    v.pairing(&v.elem(x.to_vec()).unwrap(), &v.dual_elem(l.to_vec()).unwrap()).unwrap()
}

fn hom_between() -> impl Strategy<Value = (GroupHom, GroupHom)> {
    let gs = enumerate_groups(2, 16).unwrap();
    (
        proptest::sample::select(gs.clone()),
        proptest::sample::select(gs.clone()),
        proptest::sample::select(gs),
        any::<u64>(),
        any::<u64>(),
    )
        .prop_map(|(u, v, w, i, j)| {
            let f = enumerate_homs(&u, &v, 1 << 20).unwrap();
            let g = enumerate_homs(&v, &w, 1 << 20).unwrap();
            (f[(i % f.len() as u64) as usize].clone(), g[(j % g.len() as u64) as usize].clone())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dual_reverses_composition((f, g) in hom_between()) {
        let gf = g.compose(&f).unwrap();
        prop_assert_eq!(gf.dual(), f.dual().compose(&g.dual()).unwrap());
    }

    #[test]
    fn circle_group_laws(a in 0u64..729, b in 0u64..729, c in 0u64..729, s in 0u32..7, t in 0u32..7) {
        let x = PadicCircle::new(3, a, s);
        let y = PadicCircle::new(3, b, t);
        let z = PadicCircle::new(3, c, 6);
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert!(x.add(&x.neg()).is_zero());
        prop_assert_eq!(x.add(&PadicCircle::zero(3)), x);
        prop_assert_eq!(PadicCircle::new(3, x.numerator_at(6), 6), x);
    }
}
