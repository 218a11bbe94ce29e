use std::sync::Arc;

use grouplab::classes::{self, ClassParams, FormationFunction};
use grouplab::permgroup::{named_group, quotient};
use grouplab::submodular::{self as sm, Embedding, PrimePowerIndex, SubmodularClass};
use grouplab::{Permutation, SubgroupId, SubgroupLattice};

fn lattice(name: &str, args: &[u64]) -> SubgroupLattice {
    SubgroupLattice::new(Arc::new(named_group(name, args).unwrap()))
}

fn generated(l: &SubgroupLattice, cycles: &[&str]) -> SubgroupId {
    let g = l.group();
    let seed: Vec<usize> = cycles
        .iter()
        .map(|c| g.index_of(&Permutation::parse_cycles(c, g.degree()).unwrap()).unwrap())
        .collect();
    l.generated_subgroup(&seed)
}

// Hol(Z5) acts on Z5 = {0..4} as points 1..5; b is x -> 2x.
const B5: &str = "(2 3 5 4)";
const B5_SQUARED: &str = "(2 5)(3 4)";
// Hol(Z7) with y: x -> 3x.
const Y7: &str = "(2 4 3 7 5 6)";

#[test]
fn hol5_order_and_invariants() {
    let g = named_group("holomorph_cyclic", &[5]).unwrap();
    assert_eq!(g.order(), 20);
    let inv = g.basic_invariants();
    assert!(!inv.is_abelian);
    assert_eq!(inv.prime_divisors, vec![2, 5]);
}

#[test]
fn hol5_cyclic_four_is_two_modularly_embedded() {
    let l = lattice("holomorph_cyclic", &[5]);
    let w = l.whole();
    let y = generated(&l, &[B5]);
    assert_eq!(l.order(y), 4);
    assert_eq!(l.core(y), l.trivial());
    assert!(sm::is_n_modularly_embedded(&w, y, 2).unwrap());
    assert!(!sm::is_n_modularly_embedded(&w, y, 1).unwrap());
    assert_eq!(sm::embedding(&l, y, l.top()), Some(Embedding::Modular { n: 2, p: 5, q: 2 }));
}

#[test]
fn hol5_square_of_b_has_a_two_step_chain() {
    let l = lattice("holomorph_cyclic", &[5]);
    let w = l.whole();
    let h = generated(&l, &[B5_SQUARED]);
    let y = generated(&l, &[B5]);
    assert_eq!(l.order(h), 2);
    let chain = sm::k_submodular_chain(&w, h, 2).unwrap().expect("2-submodular");
    assert_eq!(chain.terms(), vec![h, y, l.top()]);
    assert_eq!(chain.steps[0].kind, Embedding::Normal);
    assert_eq!(chain.steps[1].kind, Embedding::Modular { n: 2, p: 5, q: 2 });
    // also 1-submodular through the dihedral subgroup of order 10
    let d10 = l.ids().find(|&i| l.order(i) == 10).unwrap();
    assert!(l.is_subgroup_of(h, d10));
    assert_eq!(sm::embedding(&l, h, d10), Some(Embedding::Modular { n: 1, p: 5, q: 2 }));
    assert!(sm::is_k_submodular(&w, h, 1).unwrap());
    assert_eq!(sm::is_submodular(&w, h).unwrap(), sm::is_k_submodular(&w, h, 1).unwrap());
}

#[test]
fn hol5_is_two_lm_but_not_lm() {
    let l = lattice("holomorph_cyclic", &[5]);
    let w = l.whole();
    assert!(sm::is_k_lm_group(&w, 2).unwrap().holds);
    let one = sm::is_k_lm_group(&w, 1).unwrap();
    assert!(!one.holds);
    assert!(one.counterexample.is_some());
    assert!(!sm::is_lm_group(&w).holds);

    let a = generated(&l, &[B5]);
    let b = l.conjugates(a).into_iter().find(|&c| c != a).unwrap();
    assert_eq!(l.join(a, b), l.top());
    assert!(l.maximal_subgroups(l.top()).contains(&a));
    let d = l.meet(a, b);
    assert_eq!(d, l.trivial());
    assert!(l.n_maximal_chain_exists(d, b, 2).unwrap());
    assert_eq!(
        sm::n_maximal_with_index(&l, d, b).unwrap(),
        Some(PrimePowerIndex { n: 2, q: Some(2) })
    );
}

#[test]
fn hol5_class_memberships() {
    let l = lattice("holomorph_cyclic", &[5]);
    let w = l.whole();
    for class in SubmodularClass::ALL {
        assert!(sm::in_class(&w, class, 2).unwrap(), "{class:?} at k=2");
        assert!(!sm::in_class(&w, class, 1).unwrap(), "{class:?} at k=1");
    }
    for v in 1..=3 {
        assert!(sm::thm31_characterization(&w, v, 2).unwrap());
        assert!(!sm::thm31_characterization(&w, v, 1).unwrap());
    }
    for v in 1..=4 {
        assert!(sm::thm32_characterization(&w, v, 2).unwrap());
        assert!(!sm::thm32_characterization(&w, v, 1).unwrap());
    }
    assert!(w.is_supersoluble());
}

#[test]
fn hol5_quotient_by_normal_five() {
    let g = Arc::new(named_group("holomorph_cyclic", &[5]).unwrap());
    let l = SubgroupLattice::new(g.clone());
    let p5 = l.whole().sylow(5);
    let phi = quotient(&g, l.subgroup(p5).mask()).unwrap();
    assert!(phi.is_homomorphism());
    let q = phi.target();
    assert_eq!(q.order(), 4);
    assert!(q.basic_invariants().is_cyclic);
}

#[test]
fn hol7_cyclic_six_is_u1_subnormal_but_not_submodular() {
    let l = lattice("holomorph_cyclic", &[7]);
    assert_eq!(l.group().order(), 42);
    let w = l.whole();
    let y = generated(&l, &[Y7]);
    assert_eq!(l.order(y), 6);
    assert_eq!(l.core(y), l.trivial());
    let u1 = classes::oracle("U_k", ClassParams { m: None, k: Some(1) }).unwrap();
    assert_eq!(classes::residual(&w, &u1).unwrap(), l.trivial());
    assert!(classes::is_f_subnormal(&w, y, &u1).unwrap());
    for k in 1..=3 {
        assert!(!sm::is_k_submodular(&w, y, k).unwrap());
    }
    assert!(!sm::is_submodular(&w, y).unwrap());
}

#[test]
fn hol7_fails_maximal_class_for_small_k() {
    let l = lattice("holomorph_cyclic", &[7]);
    let w = l.whole();
    for k in 1..=3 {
        assert!(!sm::in_class(&w, SubmodularClass::X, k).unwrap());
        for v in 1..=3 {
            assert!(!sm::thm31_characterization(&w, v, k).unwrap());
        }
    }
    assert_eq!(w.exponent(), 42);
    assert!(w.is_ore_dispersive());
}

#[test]
fn hol5_local_formation_h() {
    let l = lattice("holomorph_cyclic", &[5]);
    let w = l.whole();
    assert!(classes::in_local_formation(&w, &FormationFunction::H { k: 2 }).unwrap());
    assert!(!classes::in_local_formation(&w, &FormationFunction::H { k: 1 }).unwrap());
}

#[test]
fn frobenius_twenty_matches_hol5_invariants() {
    let a = named_group("frobenius_metacyclic", &[5, 2, 2]).unwrap();
    let b = named_group("holomorph_cyclic", &[5]).unwrap();
    assert_eq!(a.order(), b.order());
    assert_eq!(a.exponent(), b.exponent());
    let la = SubgroupLattice::new(Arc::new(a));
    let lb = SubgroupLattice::new(Arc::new(b));
    assert_eq!(la.len(), lb.len());
    assert_eq!(la.conjugacy_class_count(), lb.conjugacy_class_count());
}
