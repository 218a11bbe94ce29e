//! Structural invariants of sections `T/N` of a subgroup lattice.
//!
//! A [`Section`] is a pair `N ⊴ T` of subgroups of the lattice's group. The
//! subgroups of `T/N` correspond to the lattice interval `[N, T]`, so every
//! subgroup and every quotient of a subgroup can be studied without building
//! a new group. The whole group is the section `G/1`.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::arith;
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::permgroup::FiniteGroup;
use crate::{GroupError, Result};

#[derive(Clone, Copy)]
pub struct Section<'a> {
    lat: &'a SubgroupLattice,
    top: SubgroupId,
    bottom: SubgroupId,
}

impl std::fmt::Debug for Section<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Section({:?}/{:?})", self.top, self.bottom)
    }
}

/// A chief factor `H/K` of a section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiefFactor {
    pub below: SubgroupId,
    pub above: SubgroupId,
    pub order: usize,
    /// Least `M` with `⟨H, M⟩ = T` and `H ∩ M = K`, if any.
    pub complement: Option<SubgroupId>,
    /// `C_T(H/K)`.
    pub centralizer: SubgroupId,
}

impl ChiefFactor {
    pub fn is_complemented(&self) -> bool {
        self.complement.is_some()
    }
}

impl SubgroupLattice {
    /// The whole group as a section.
    pub fn whole(&self) -> Section<'_> {
        Section { lat: self, top: self.top(), bottom: self.trivial() }
    }

    /// The subgroup `h` regarded as a group in its own right.
    pub fn subgroup_section(&self, h: SubgroupId) -> Section<'_> {
        Section { lat: self, top: h, bottom: self.trivial() }
    }

    /// The section `top/bottom`; `bottom` must be normal in `top`.
    pub fn section(&self, top: SubgroupId, bottom: SubgroupId) -> Result<Section<'_>> {
        if !self.is_subgroup_of(bottom, top) {
            return Err(GroupError::NotContained { lower: bottom.index(), upper: top.index() });
        }
        if !self.is_normal_in(bottom, top) {
            return Err(GroupError::NotNormal);
        }
        Ok(Section { lat: self, top, bottom })
    }

    /// A concrete permutation group equal to the subgroup `h`.
    pub fn subgroup_group(&self, h: SubgroupId) -> Result<FiniteGroup> {
        let g = self.group();
        let gens = self.subgroup(h).generators().iter().map(|&x| g.element(x).clone()).collect();
        Ok(FiniteGroup::generate_with_cap(g.degree(), gens, g.order())?
            .named(format!("{} < {}", h, g.name())))
    }
}

impl<'a> Section<'a> {
    pub fn lattice(&self) -> &'a SubgroupLattice {
        self.lat
    }

    pub fn top(&self) -> SubgroupId {
        self.top
    }

    pub fn bottom(&self) -> SubgroupId {
        self.bottom
    }

    pub fn order(&self) -> usize {
        self.lat.index(self.bottom, self.top)
    }

    pub fn is_trivial(&self) -> bool {
        self.top == self.bottom
    }

    /// Whether `h` corresponds to a subgroup of this section.
    pub fn contains(&self, h: SubgroupId) -> bool {
        self.lat.is_subgroup_of(self.bottom, h) && self.lat.is_subgroup_of(h, self.top)
    }

    /// Subgroups of the section, ascending by id.
    pub fn subgroups(&self) -> impl Iterator<Item = SubgroupId> + 'a {
        self.lat.interval(self.bottom, self.top)
    }

    /// The section `s/bottom` for a subgroup `s` of this section.
    pub fn subsection(&self, s: SubgroupId) -> Result<Section<'a>> {
        if !self.contains(s) {
            return Err(GroupError::NotContained { lower: self.bottom.index(), upper: s.index() });
        }
        Ok(Section { lat: self.lat, top: s, bottom: self.bottom })
    }

    /// The quotient `top/n` for `bottom <= n ⊴ top`.
    pub fn quotient(&self, n: SubgroupId) -> Result<Section<'a>> {
        if !self.contains(n) {
            return Err(GroupError::NotContained { lower: self.bottom.index(), upper: n.index() });
        }
        self.lat.section(self.top, n)
    }

    /// Order of the coset `x N` in `T/N`.
    pub fn element_order(&self, x: usize) -> usize {
        let g = self.lat.group();
        let n = self.lat.subgroup(self.bottom);
        let mut y = x;
        let mut k = 1;
        while !n.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        self.lat
            .subgroup(self.top)
            .members()
            .iter()
            .fold(1, |acc, &x| arith::lcm(acc, self.element_order(x) as u64))
    }

    pub fn derived(&self) -> SubgroupId {
        self.lat.join(self.lat.derived(self.top), self.bottom)
    }

    pub fn is_abelian(&self) -> bool {
        self.lat.is_subgroup_of(self.lat.derived(self.top), self.bottom)
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.lat.subgroup(self.top).members().iter().any(|&x| self.element_order(x) == n)
    }

    pub fn is_soluble(&self) -> bool {
        let mut d = self.top;
        loop {
            let next = self.lat.join(self.lat.derived(d), self.bottom);
            if next == d {
                return d == self.bottom;
            }
            d = next;
        }
    }

    pub fn prime_divisors(&self) -> Vec<u64> {
        arith::prime_divisors(self.order() as u64)
    }

    /// All Sylow `p`-subgroups, ascending by id. Just `[bottom]` when `p`
    /// does not divide the order.
    pub fn sylows(&self, p: u64) -> Vec<SubgroupId> {
        let target = self.lat.order(self.bottom) * arith::p_part(self.order() as u64, p) as usize;
        self.subgroups().filter(|&s| self.lat.order(s) == target).collect()
    }

    /// The Sylow `p`-subgroup with the least id.
    pub fn sylow(&self, p: u64) -> SubgroupId {
        self.sylows(p)[0]
    }

    /// One Sylow subgroup per prime divisor, primes ascending.
    pub fn all_sylow(&self) -> Vec<(u64, SubgroupId)> {
        self.prime_divisors().into_iter().map(|p| (p, self.sylow(p))).collect()
    }

    pub fn is_normal(&self, h: SubgroupId) -> bool {
        self.contains(h) && self.lat.is_normal_in(h, self.top)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.prime_divisors()
            .into_iter()
            .all(|p| self.lat.is_normal_in(self.sylow(p), self.top))
    }

    /// Normal subgroups of the section, ascending by id.
    pub fn normal_subgroups(&self) -> Vec<SubgroupId> {
        self.lat
            .normal_subgroups_of(self.top)
            .intersection(self.lat.above(self.bottom))
            .map(|i| SubgroupId(i as u32))
            .collect()
    }

    /// Maximal subgroups of the section, ascending by id.
    pub fn maximal_subgroups(&self) -> Vec<SubgroupId> {
        self.lat
            .maximal_subgroups(self.top)
            .iter()
            .copied()
            .filter(|&m| self.lat.is_subgroup_of(self.bottom, m))
            .collect()
    }

    /// `Core_T(h)`, which contains `bottom` when `h` does.
    pub fn core(&self, h: SubgroupId) -> SubgroupId {
        self.lat.core_in(h, self.top)
    }

    pub fn frattini(&self) -> SubgroupId {
        self.maximal_subgroups()
            .into_iter()
            .reduce(|a, b| self.lat.meet(a, b))
            .unwrap_or(self.top)
    }

    /// `{g in T : [g, x] in K for every x in H}` for normal `K <= H`.
    pub fn centralizer_of_factor(&self, h: SubgroupId, k: SubgroupId) -> SubgroupId {
        let g = self.lat.group();
        let kk = self.lat.subgroup(k);
        let hgens = self.lat.subgroup(h).generators();
        let mut mask: FixedBitSet = g.empty_set();
        for &x in self.lat.subgroup(self.top).members() {
            if hgens.iter().all(|&y| kk.contains(g.commutator(x, y))) {
                mask.insert(x);
            }
        }
        self.lat.lookup(&mask).expect("a factor centralizer is a subgroup")
    }

    /// Every pair `K < H` of normal subgroups with nothing normal strictly
    /// between, ordered by `(K, H)`.
    pub fn chief_factors(&self) -> Vec<ChiefFactor> {
        let normals = self.normal_subgroups();
        let mut out = Vec::new();
        for &k in &normals {
            let mut minimal: Vec<SubgroupId> = Vec::new();
            for &h in &normals {
                if h == k || !self.lat.is_subgroup_of(k, h) {
                    continue;
                }
                if minimal.iter().all(|&m| !self.lat.is_subgroup_of(m, h)) {
                    minimal.push(h);
                }
            }
            for h in minimal {
                let complement = self
                    .subgroups()
                    .find(|&m| self.lat.join(h, m) == self.top && self.lat.meet(h, m) == k);
                out.push(ChiefFactor {
                    below: k,
                    above: h,
                    order: self.lat.index(k, h),
                    complement,
                    centralizer: self.centralizer_of_factor(h, k),
                });
            }
        }
        out
    }

    /// Supersolubility by chief factors, cross-checked against the
    /// prime-index criterion for maximal subgroups.
    pub fn try_is_supersoluble(&self) -> Result<bool> {
        let by_factors = self.is_soluble()
            && self.chief_factors().iter().all(|f| arith::is_prime(f.order as u64));
        let by_maximals = self
            .maximal_subgroups()
            .into_iter()
            .all(|m| arith::is_prime(self.lat.index(m, self.top) as u64));
        if by_factors != by_maximals {
            return Err(GroupError::Inconsistency(format!(
                "supersolubility criteria disagree on {self:?}: chief factors {by_factors}, maximal indices {by_maximals}"
            )));
        }
        Ok(by_factors)
    }

    pub fn is_supersoluble(&self) -> bool {
        self.try_is_supersoluble().expect("supersolubility criteria agree")
    }

    /// Sylow tower for the primes in decreasing order.
    pub fn is_ore_dispersive(&self) -> bool {
        let order = self.order() as u64;
        let normal_orders: Vec<usize> = self
            .normal_subgroups()
            .into_iter()
            .map(|n| self.lat.index(self.bottom, n))
            .collect();
        let mut product = 1u64;
        for p in self.prime_divisors().into_iter().rev() {
            product *= arith::p_part(order, p);
            if !normal_orders.contains(&(product as usize)) {
                return false;
            }
        }
        true
    }

    /// The Fitting subgroup, as the join of the normal nilpotent subgroups.
    pub fn fitting(&self) -> Result<SubgroupId> {
        let mut f = self.bottom;
        for n in self.normal_subgroups() {
            let s = Section { lat: self.lat, top: n, bottom: self.bottom };
            if s.is_nilpotent() {
                f = self.lat.join(f, n);
            }
        }
        let s = Section { lat: self.lat, top: f, bottom: self.bottom };
        if !s.is_nilpotent() {
            return Err(GroupError::Inconsistency(format!(
                "join of normal nilpotent subgroups of {self:?} is not nilpotent"
            )));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::permgroup::named_group;

    fn lattice(name: &str, args: &[u64]) -> SubgroupLattice {
        SubgroupLattice::new(Arc::new(named_group(name, args).unwrap()))
    }

    #[test]
    fn sylow_subgroups() {
        let z6 = lattice("cyclic", &[6]);
        assert_eq!(z6.order(z6.whole().sylow(2)), 2);
        let s4 = lattice("sym", &[4]);
        let w = s4.whole();
        assert_eq!(s4.order(w.sylow(2)), 8);
        assert_eq!(w.sylows(2).len(), 3);
        assert_eq!(w.sylows(3).len(), 4);
        assert_eq!(w.sylow(5), s4.trivial());
        let hol = lattice("holomorph_cyclic", &[5]);
        let p5 = hol.whole().sylow(5);
        assert!(hol.is_normal(p5));
        assert_eq!(hol.order(p5), 5);
    }

    #[test]
    fn solubility_and_nilpotency() {
        assert!(lattice("sym", &[4]).whole().is_soluble());
        assert!(!lattice("alt", &[5]).whole().is_soluble());
        assert!(lattice("holomorph_cyclic", &[7]).whole().is_soluble());
        assert!(lattice("dihedral", &[8]).whole().is_nilpotent());
        assert!(!lattice("sym", &[3]).whole().is_nilpotent());
        assert!(!lattice("holomorph_cyclic", &[5]).whole().is_nilpotent());
    }

    #[test]
    fn fitting_subgroups() {
        let s4 = lattice("sym", &[4]);
        assert_eq!(s4.order(s4.whole().fitting().unwrap()), 4);
        let hol = lattice("holomorph_cyclic", &[5]);
        assert_eq!(hol.order(hol.whole().fitting().unwrap()), 5);
        let q8 = lattice("dicyclic", &[2]);
        assert_eq!(q8.whole().fitting().unwrap(), q8.top());
    }

    #[test]
    fn chief_factors_of_examples() {
        let zp = lattice("cyclic", &[7]);
        let f = zp.whole().chief_factors();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].order, 7);
        assert_eq!(f[0].complement, Some(zp.trivial()));
        assert_eq!(f[0].centralizer, zp.top());

        let hol = lattice("holomorph_cyclic", &[5]);
        let w = hol.whole();
        let f = w.chief_factors();
        let bottom = f.iter().find(|c| c.below == hol.trivial()).unwrap();
        assert_eq!(bottom.order, 5);
        assert!(bottom.is_complemented());
        assert_eq!(hol.index(bottom.centralizer, hol.top()), 4);

        let s4 = lattice("sym", &[4]);
        let f = s4.whole().chief_factors();
        let v4 = f.iter().find(|c| c.below == s4.trivial()).unwrap();
        assert_eq!(v4.order, 4);
        assert_eq!(v4.centralizer, v4.above);
    }

    #[test]
    fn supersolubility() {
        assert!(lattice("holomorph_cyclic", &[5]).whole().is_supersoluble());
        assert!(!lattice("sym", &[4]).whole().is_supersoluble());
        assert!(!lattice("alt", &[4]).whole().is_supersoluble());
        assert!(!lattice("alt", &[5]).whole().is_supersoluble());
        assert!(lattice("dihedral", &[6]).whole().is_supersoluble());
    }

    #[test]
    fn ore_dispersive() {
        assert!(!lattice("sym", &[4]).whole().is_ore_dispersive());
        assert!(lattice("holomorph_cyclic", &[7]).whole().is_ore_dispersive());
        assert!(lattice("elem_abelian", &[2, 3]).whole().is_ore_dispersive());
    }

    #[test]
    fn quotient_sections() {
        let hol = lattice("holomorph_cyclic", &[5]);
        let p5 = hol.whole().sylow(5);
        let q = hol.whole().quotient(p5).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_cyclic());
        assert_eq!(q.exponent(), 4);
        let y = hol.ids().find(|&i| hol.order(i) == 4).unwrap();
        assert!(matches!(hol.section(hol.top(), y), Err(GroupError::NotNormal)));
    }

    #[test]
    fn exponents() {
        assert_eq!(lattice("sym", &[3]).whole().exponent(), 6);
        assert_eq!(lattice("holomorph_cyclic", &[7]).whole().exponent(), 42);
    }
}
