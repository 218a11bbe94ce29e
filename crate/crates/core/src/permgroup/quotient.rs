use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, Permutation};
use crate::{GroupError, Result};

/// A surjective homomorphism between two concrete groups, stored as an
/// image table over the source's element ordinals.
#[derive(Clone, Debug)]
pub struct Epimorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<u32>,
}

impl Epimorphism {
    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn image(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn kernel(&self) -> FixedBitSet {
        let mut k = self.source.empty_set();
        for (x, &y) in self.map.iter().enumerate() {
            if y == 0 {
                k.insert(x);
            }
        }
        k
    }

    pub fn image_of_set(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.target.empty_set();
        for x in set.ones() {
            out.insert(self.image(x));
        }
        out
    }

    pub fn preimage_of_set(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.source.empty_set();
        for (x, &y) in self.map.iter().enumerate() {
            if set.contains(y as usize) {
                out.insert(x);
            }
        }
        out
    }

    /// Exhaustive check of `φ(xy) = φ(x)φ(y)` together with surjectivity.
    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        let hom = (0..s.order()).all(|x| {
            (0..s.order()).all(|y| self.image(s.mul(x, y)) == t.mul(self.image(x), self.image(y)))
        });
        let mut hit = t.empty_set();
        for &y in &self.map {
            hit.insert(y as usize);
        }
        hom && hit.count_ones(..) == t.order()
    }
}

/// `G/N` realised as the action of `G` on the cosets of `N`.
///
/// Coset `i` is the `i`-th coset met when scanning the elements of `G` in
/// ordinal order; `g` sends `Nx` to `Nxg`. The epimorphism is verified to be
/// a homomorphism with kernel exactly `N` before it is returned.
pub fn quotient(group: &Arc<FiniteGroup>, normal: &FixedBitSet) -> Result<Epimorphism> {
    let g = group.as_ref();
    if !g.is_closed(normal) {
        return Err(GroupError::NotASubgroup);
    }
    let members: Vec<usize> = normal.ones().collect();
    for &s in g.generator_ordinals() {
        if members.iter().any(|&n| !normal.contains(g.conj(n, s))) {
            return Err(GroupError::NotNormal);
        }
    }

    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        for &n in &members {
            coset_of[g.mul(n, x)] = c;
        }
        reps.push(x);
    }
    let index = reps.len();
    let action = |x: usize| -> Permutation {
        let images = reps.iter().map(|&r| coset_of[g.mul(r, x)]).collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    };

    let gens = g.generator_ordinals().iter().map(|&s| action(s)).collect();
    let target = FiniteGroup::generate_with_cap(index, gens, g.order().max(1))?
        .named(format!("{}/N{}", g.name(), members.len()));
    let map = (0..g.order())
        .map(|x| target.index_of(&action(x)).expect("image lies in the quotient") as u32)
        .collect();
    let epi = Epimorphism {
        source: Arc::clone(group),
        target: Arc::new(target),
        map,
    };
    if !epi.is_homomorphism() || epi.kernel() != *normal {
        return Err(GroupError::Inconsistency(
            "coset action is not an epimorphism with the expected kernel".into(),
        ));
    }
    Ok(epi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::named_group;

    fn mask(g: &FiniteGroup, xs: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut m = g.empty_set();
        m.extend(xs);
        m
    }

    #[test]
    fn quotient_by_whole_and_trivial() {
        let g = Arc::new(named_group("sym", &[3]).unwrap());
        let all = mask(&g, 0..g.order());
        assert_eq!(quotient(&g, &all).unwrap().target().order(), 1);
        let one = mask(&g, [0]);
        let q = quotient(&g, &one).unwrap();
        assert_eq!(q.target().order(), 6);
        assert_eq!(q.target().degree(), 6);
    }

    #[test]
    fn holomorph_mod_translations_is_cyclic_of_order_four() {
        let g = Arc::new(named_group("holomorph_cyclic", &[5]).unwrap());
        let t = g.generator_ordinals()[0];
        let n = g.closure(&[t]);
        assert_eq!(n.count_ones(..), 5);
        let q = quotient(&g, &n).unwrap();
        assert_eq!(q.target().order(), 4);
        assert!(q.target().basic_invariants().is_cyclic);
        // brute force: |Q| * |N| = |G|, kernel = N
        assert_eq!(q.target().order() * 5, g.order());
        assert_eq!(q.kernel(), n);
    }

    #[test]
    fn non_normal_is_rejected() {
        let g = Arc::new(named_group("sym", &[3]).unwrap());
        let t = g.generator_ordinals()[0];
        let h = g.closure(&[t]);
        assert_eq!(quotient(&g, &h).unwrap_err(), GroupError::NotNormal);
        let not_closed = mask(&g, [0, t, g.generator_ordinals()[1]]);
        assert_eq!(quotient(&g, &not_closed).unwrap_err(), GroupError::NotASubgroup);
    }
}
