use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::Permutation;
use crate::arith;
use crate::{GroupError, Result};

/// Default bound on the order of any group the engine will build.
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// A permutation group stored with its full element list and Cayley table.
///
/// Elements are numbered in breadth-first order from the identity (ordinal
/// 0), extending by the generators in the order given, so generating twice
/// from the same list yields the same numbering.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    generator_ordinals: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicInvariants {
    pub is_abelian: bool,
    pub is_cyclic: bool,
    pub order: usize,
    pub prime_divisors: Vec<u64>,
}

impl FiniteGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::generate_with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn generate_with_cap(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let ngens = generators.len();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0u32);
        // right multiplication by each generator, and the BFS parent of each element
        let mut by_gen: Vec<u32> = Vec::new();
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut i = 0;
        while i < elements.len() {
            for (s, g) in generators.iter().enumerate() {
                let y = elements[i].then(g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::OrderCapExceeded { cap });
                        }
                        let j = elements.len() as u32;
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push((i as u32, s as u32));
                        j
                    }
                };
                by_gen.push(j);
            }
            i += 1;
        }

        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (pb, s) = parent[b];
                let left = table[a * n + pb as usize] as usize;
                table[a * n + b] = by_gen[left * ngens + s as usize];
            }
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            inverses[a] = row.iter().position(|&c| c == 0).expect("group has inverses") as u32;
        }
        let generator_ordinals = generators
            .iter()
            .map(|g| index[g] as usize)
            .collect();
        Ok(FiniteGroup {
            name: String::new(),
            degree,
            generators,
            generator_ordinals,
            elements,
            index,
            table,
            inverses,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element ordinals of the generators, in generator order.
    pub fn generator_ordinals(&self) -> &[usize] {
        &self.generator_ordinals
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, ordinal: usize) -> &Permutation {
        &self.elements[ordinal]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub const IDENTITY: usize = 0;

    /// Product `a * b` (apply `a` first).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != Self::IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1, |acc, a| arith::lcm(acc, self.element_order(a) as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generator_ordinals;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn basic_invariants(&self) -> BasicInvariants {
        let n = self.order();
        let is_abelian = (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)));
        BasicInvariants {
            is_abelian,
            is_cyclic: (0..n).any(|a| self.element_order(a) == n),
            order: n,
            prime_divisors: arith::prime_divisors(n as u64),
        }
    }

    /// Number of conjugacy classes of elements.
    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut classes = 0;
        for x in 0..n {
            if seen.contains(x) {
                continue;
            }
            classes += 1;
            let mut stack = vec![x];
            seen.insert(x);
            while let Some(y) = stack.pop() {
                for &g in &self.generator_ordinals {
                    let z = self.conj(y, g);
                    if !seen.contains(z) {
                        seen.insert(z);
                        stack.push(z);
                    }
                }
            }
        }
        classes
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> FixedBitSet {
        let mut trivial = self.empty_set();
        trivial.insert(Self::IDENTITY);
        self.extend(&[Self::IDENTITY], &trivial, gens).1
    }

    /// The subgroup generated by a subgroup `base` and the elements `gens`.
    ///
    /// `gens` must contain generators of `base` as well as the new elements.
    /// The result is built as a union of right cosets `base * x`, so the work
    /// is proportional to the size of the result.
    pub fn extend(
        &self,
        base: &[usize],
        base_mask: &FixedBitSet,
        gens: &[usize],
    ) -> (Vec<usize>, FixedBitSet) {
        let mut mask = base_mask.clone();
        let mut members = base.to_vec();
        let mut reps = vec![Self::IDENTITY];
        let mut r = 0;
        while r < reps.len() {
            let rep = reps[r];
            r += 1;
            for &s in gens {
                let x = self.mul(rep, s);
                if mask.contains(x) {
                    continue;
                }
                for &h in base {
                    let y = self.mul(h, x);
                    mask.insert(y);
                    members.push(y);
                }
                reps.push(x);
            }
        }
        members.sort_unstable();
        (members, mask)
    }

    /// Checks that `mask` is closed under products (hence a subgroup).
    pub fn is_closed(&self, mask: &FixedBitSet) -> bool {
        mask.contains(Self::IDENTITY)
            && mask
                .ones()
                .all(|a| mask.ones().all(|b| mask.contains(self.mul(a, b))))
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}
