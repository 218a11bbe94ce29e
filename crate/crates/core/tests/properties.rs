mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::Set;
use grouplab::arith;
use grouplab::classes::{self, ClassParams};
use grouplab::permgroup::quotient;
use grouplab::submodular as sm;
use grouplab::{FiniteGroup, Permutation, SubgroupId, SubgroupLattice};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn group_of_degree(max_degree: usize) -> impl Strategy<Value = Arc<FiniteGroup>> {
    (1..=max_degree)
        .prop_flat_map(|d| (Just(d), prop::collection::vec(perm(d), 0..=2)))
        .prop_map(|(d, gens)| Arc::new(FiniteGroup::generate(d, gens).unwrap()))
}

fn as_set(l: &SubgroupLattice, id: SubgroupId) -> Set {
    l.subgroup(id).members().iter().copied().collect()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn cycle_notation_round_trips(p in (1usize..=7).prop_flat_map(perm)) {
        let text = p.to_cycles();
        prop_assert_eq!(Permutation::parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn closure_is_sound_and_deterministic(g in group_of_degree(5)) {
        for x in 0..g.order() {
            prop_assert!(g.inv(x) < g.order());
            prop_assert_eq!(g.mul(x, g.inv(x)), 0);
        }
        let again = FiniteGroup::generate(g.degree(), g.generators().to_vec()).unwrap();
        prop_assert_eq!(again.elements(), g.elements());
    }

    #[test]
    fn lagrange_and_completeness(g in group_of_degree(5), seed in subsequence((0..120usize).collect::<Vec<_>>(), 0..4)) {
        let l = SubgroupLattice::new(g.clone());
        for h in l.ids() {
            prop_assert_eq!(g.order() % l.order(h), 0);
        }
        let seed: Vec<usize> = seed.into_iter().filter(|&x| x < g.order()).collect();
        let closed = common::closure(&g, seed.iter().copied());
        let found = l.lookup_members(&closed.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(found, Some(l.generated_subgroup(&seed)));
    }

    #[test]
    fn covers_are_minimal_gaps(g in group_of_degree(4)) {
        let l = SubgroupLattice::new(g);
        for a in l.ids() {
            let covers: BTreeSet<SubgroupId> = l.covers(a).iter().copied().collect();
            for b in l.ids() {
                let gap = a != b
                    && l.is_subgroup_of(a, b)
                    && !l.ids().any(|c| c != a && c != b && l.is_subgroup_of(a, c) && l.is_subgroup_of(c, b));
                prop_assert_eq!(covers.contains(&b), gap);
            }
        }
    }

    #[test]
    fn core_and_conjugacy(g in group_of_degree(5)) {
        let l = SubgroupLattice::new(g.clone());
        let normal = l.normal_subgroups();
        let mut seen = 0;
        for h in l.ids() {
            let c = l.core(h);
            prop_assert!(l.is_normal(c) && l.is_subgroup_of(c, h));
            for &n in &normal {
                if l.is_subgroup_of(n, h) {
                    prop_assert!(l.is_subgroup_of(n, c));
                }
            }
            let conj = l.conjugates(h);
            prop_assert!(conj.iter().all(|&x| l.order(x) == l.order(h) && l.conjugacy_class(x) == l.conjugacy_class(h)));
            prop_assert_eq!(l.index(l.normalizer(h), l.top()), conj.len());
            if conj[0] == h {
                seen += conj.len();
            }
        }
        prop_assert_eq!(seen, l.len());
    }

    #[test]
    fn join_and_meet_agree_with_sets(g in group_of_degree(4)) {
        let l = SubgroupLattice::new(g.clone());
        for a in l.ids() {
            for b in l.ids() {
                let (sa, sb) = (as_set(&l, a), as_set(&l, b));
                prop_assert_eq!(as_set(&l, l.meet(a, b)), common::intersection(&sa, &sb));
                prop_assert_eq!(as_set(&l, l.join(a, b)), common::closure(&g, sa.union(&sb).copied()));
            }
        }
    }

    #[test]
    fn sylow_counts(g in group_of_degree(5)) {
        let l = SubgroupLattice::new(g.clone());
        let w = l.whole();
        for p in w.prime_divisors() {
            let n = w.sylows(p).len() as u64;
            let order = g.order() as u64;
            prop_assert_eq!(n % p, 1);
            prop_assert_eq!((order / arith::p_part(order, p)) % n, 0);
        }
    }

    #[test]
    fn chief_factor_orders_are_independent_of_series(g in group_of_degree(5)) {
        let l = SubgroupLattice::new(g);
        let w = l.whole();
        let factors = w.chief_factors();
        // every maximal chain of normal subgroups from 1 to G gives the same multiset of orders
        let mut chains: Vec<(SubgroupId, Vec<usize>)> = vec![(l.trivial(), vec![])];
        let mut multisets = BTreeSet::new();
        while let Some((k, orders)) = chains.pop() {
            if k == l.top() {
                let mut o = orders;
                o.sort();
                multisets.insert(o);
                continue;
            }
            for f in factors.iter().filter(|f| f.below == k) {
                let mut o = orders.clone();
                o.push(f.order);
                chains.push((f.above, o));
            }
        }
        prop_assert_eq!(multisets.len(), 1);
    }

    #[test]
    fn supersoluble_groups_are_ore_dispersive(g in group_of_degree(5)) {
        let l = SubgroupLattice::new(g);
        let w = l.whole();
        if w.try_is_supersoluble().unwrap() {
            prop_assert!(w.is_ore_dispersive());
            let d = l.derived(l.top());
            prop_assert!(l.subgroup_section(d).is_nilpotent());
        }
    }

    #[test]
    fn quotients_are_sound(g in group_of_degree(5)) {
        let l = SubgroupLattice::new(g.clone());
        for n in l.normal_subgroups() {
            let phi = quotient(&g, l.subgroup(n).mask()).unwrap();
            prop_assert!(phi.is_homomorphism());
            prop_assert_eq!(phi.target().order() * l.order(n), g.order());
            prop_assert_eq!(&phi.kernel(), l.subgroup(n).mask());
        }
    }

    #[test]
    fn k_submodularity_is_monotone_and_conjugation_invariant(g in group_of_degree(4)) {
        let l = SubgroupLattice::new(g.clone());
        let w = l.whole();
        for h in l.ids() {
            let verdicts: Vec<bool> = (1..=3).map(|k| sm::is_k_submodular(&w, h, k).unwrap()).collect();
            prop_assert!(verdicts.windows(2).all(|p| !p[0] || p[1]));
            for c in l.conjugates(h) {
                for k in 1..=3 {
                    prop_assert_eq!(sm::is_k_submodular(&w, c, k).unwrap(), verdicts[k as usize - 1]);
                }
            }
        }
        for class in sm::SubmodularClass::ALL {
            let v: Vec<bool> = (1..=3).map(|k| sm::in_class(&w, class, k).unwrap()).collect();
            prop_assert!(v.windows(2).all(|p| !p[0] || p[1]));
        }
    }

    #[test]
    fn intersections_with_subgroups_stay_k_submodular(g in group_of_degree(4), k in 1u32..=2) {
        let l = SubgroupLattice::new(g);
        let w = l.whole();
        let sub: Vec<SubgroupId> = l.ids().filter(|&h| sm::is_k_submodular(&w, h, k).unwrap()).collect();
        for &h in &sub {
            for u in l.ids() {
                let s = l.subgroup_section(u);
                prop_assert!(sm::is_k_submodular(&s, l.meet(h, u), k).unwrap());
            }
            for &h2 in &sub {
                prop_assert!(sm::is_k_submodular(&w, l.meet(h, h2), k).unwrap());
            }
        }
    }

    #[test]
    fn k_submodularity_is_transitive(g in group_of_degree(4), k in 1u32..=2) {
        let l = SubgroupLattice::new(g);
        let w = l.whole();
        for r in l.ids().filter(|&r| sm::is_k_submodular(&w, r, k).unwrap()) {
            let s = l.subgroup_section(r);
            for h in s.subgroups() {
                if sm::is_k_submodular(&s, h, k).unwrap() {
                    prop_assert!(sm::is_k_submodular(&w, h, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn modularity_of_maximals_collapses_at_k1(g in group_of_degree(5)) {
        let l = SubgroupLattice::new(g);
        let w = l.whole();
        for &m in l.maximal_subgroups(l.top()) {
            let modular = sm::is_modular_subgroup(&w, m).unwrap();
            prop_assert_eq!(sm::is_k_submodular(&w, m, 1).unwrap(), modular);
            prop_assert_eq!(sm::schmidt_maximal_modular(&w, m).unwrap(), modular);
        }
    }

    #[test]
    fn residuals_shrink_for_larger_classes(g in group_of_degree(5)) {
        let l = SubgroupLattice::new(g);
        let w = l.whole();
        let nil = classes::oracle("N", ClassParams::default()).unwrap();
        let sup = classes::oracle("U", ClassParams::default()).unwrap();
        let sol = classes::oracle("S", ClassParams::default()).unwrap();
        let rn = classes::residual(&w, &nil).unwrap();
        let ru = classes::residual(&w, &sup).unwrap();
        let rs = classes::residual(&w, &sol).unwrap();
        prop_assert!(l.is_subgroup_of(ru, rn));
        prop_assert!(l.is_subgroup_of(rs, ru));
    }
}
